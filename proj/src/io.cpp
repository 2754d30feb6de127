#include "io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace cda {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw InternalError("number formatting failed");
  return std::string(buf, ptr);
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("malformed JSON in " + what);
  return j;
}

Universe universe_from_json(const json& j, const std::string& what) {
  if (!j.contains("context") || !j.contains("system"))
    throw DataError(what + " must list 'context' and 'system' variables");
  Universe u;
  for (const auto& v : j.at("context")) u.context.push_back(v.get<std::string>());
  for (const auto& v : j.at("system")) u.system.push_back(v.get<std::string>());
  for (int a = 0; a < u.n(); ++a)
    for (int b = a + 1; b < u.n(); ++b)
      if (u.name(a) == u.name(b)) throw DataError("duplicate variable name '" + u.name(a) + "'");
  return u;
}

int resolve(const Universe& u, const std::string& name, const std::string& what) {
  int idx = u.index_of(name);
  if (idx < 0) throw DataError(what + " references unknown variable '" + name + "'");
  return idx;
}

}  // namespace

GraphFile parse_graph_json(const std::string& text) {
  json j = parse_json(text, "graph file");
  Universe u = universe_from_json(j, "graph file");
  std::vector<std::pair<int, int>> directed, bidirected;
  if (j.contains("directed"))
    for (const auto& e : j.at("directed")) {
      if (!e.is_array() || e.size() != 2) throw DataError("directed edge must be a [tail, head] pair");
      directed.emplace_back(resolve(u, e[0].get<std::string>(), "directed edge"),
                            resolve(u, e[1].get<std::string>(), "directed edge"));
    }
  if (j.contains("bidirected"))
    for (const auto& e : j.at("bidirected")) {
      if (!e.is_array() || e.size() != 2) throw DataError("bidirected edge must be an [a, b] pair");
      bidirected.emplace_back(resolve(u, e[0].get<std::string>(), "bidirected edge"),
                              resolve(u, e[1].get<std::string>(), "bidirected edge"));
    }
  try {
    return GraphFile{u, Admg(u.n_context(), u.n_system(), std::move(directed), std::move(bidirected))};
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid graph: ") + e.what());
  }
}

std::string graph_to_json(const Universe& u, const Admg& g) {
  json j;
  j["context"] = u.context;
  j["system"] = u.system;
  json dir = json::array(), bid = json::array();
  for (auto [t, h] : g.directed()) dir.push_back({u.name(t), u.name(h)});
  for (auto [a, b] : g.bidirected()) bid.push_back({u.name(a), u.name(b)});
  j["directed"] = dir;
  j["bidirected"] = bid;
  return j.dump(2) + "\n";
}

GraphFile load_graph(const std::string& path) { return parse_graph_json(read_file(path)); }

void save_graph(const Universe& u, const Admg& g, const std::string& path) {
  write_file(path, graph_to_json(u, g));
}

TaskMeta parse_meta_json(const std::string& text) {
  json j = parse_json(text, "sidecar");
  TaskMeta meta;
  meta.universe = universe_from_json(j, "sidecar");
  if (!j.contains("c1") || !j.contains("target"))
    throw DataError("sidecar must name 'c1' and 'target'");
  meta.c1 = j.at("c1").get<std::string>();
  meta.target = j.at("target").get<std::string>();
  resolve(meta.universe, meta.c1, "sidecar c1");
  resolve(meta.universe, meta.target, "sidecar target");
  return meta;
}

std::string meta_to_json(const TaskMeta& meta) {
  json j;
  j["context"] = meta.universe.context;
  j["system"] = meta.universe.system;
  j["c1"] = meta.c1;
  j["target"] = meta.target;
  return j.dump(2) + "\n";
}

std::string constraints_to_jsonl(const std::vector<WeightedConstraint>& cs, const Universe& u) {
  std::string out;
  for (const auto& c : cs) {
    json j;
    j["a"] = u.name(c.query.a);
    j["b"] = u.name(c.query.b);
    json names = json::array();
    for (int v : mask_to_vars(c.query.cond)) names.push_back(u.name(v));
    j["S"] = names;
    j["independent"] = c.independent;
    if (std::isinf(c.weight))
      j["weight"] = "inf";
    else
      j["weight"] = c.weight;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<WeightedConstraint> parse_constraints_jsonl(const std::string& text,
                                                        const Universe& u) {
  std::vector<WeightedConstraint> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_json(line, "constraint line " + std::to_string(lineno));
    WeightedConstraint c;
    c.query.a = resolve(u, j.at("a").get<std::string>(), "constraint");
    c.query.b = resolve(u, j.at("b").get<std::string>(), "constraint");
    std::vector<int> cond;
    for (const auto& s : j.at("S")) cond.push_back(resolve(u, s.get<std::string>(), "constraint"));
    c.query.cond = mask_of(cond);
    c.independent = j.at("independent").get<bool>();
    const auto& w = j.at("weight");
    if (w.is_string()) {
      if (w.get<std::string>() != "inf")
        throw DataError("constraint weight must be a number or \"inf\" (line " +
                        std::to_string(lineno) + ")");
      c.weight = std::numeric_limits<double>::infinity();
    } else {
      c.weight = w.get<double>();
      if (!(c.weight >= 0)) throw DataError("negative constraint weight (line " +
                                            std::to_string(lineno) + ")");
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace cda
