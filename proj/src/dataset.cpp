#include "dataset.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "io.hpp"

namespace cda {

const std::string& Universe::name(int v) const {
  if (v < 0 || v >= n()) throw std::invalid_argument("variable index out of range");
  return v < n_context() ? context[v] : system[v - n_context()];
}

int Universe::index_of(const std::string& target) const {
  for (int v = 0; v < n(); ++v)
    if (name(v) == target) return v;
  return -1;
}

std::vector<int> DomainDataset::source_rows() const {
  std::vector<int> out;
  for (int r = 0; r < rows(); ++r)
    if (values(r, c1_col) == 0.0) out.push_back(r);
  return out;
}

std::vector<int> DomainDataset::target_rows() const {
  std::vector<int> out;
  for (int r = 0; r < rows(); ++r)
    if (values(r, c1_col) == 1.0) out.push_back(r);
  return out;
}

void validate_task_dataset(const DomainDataset& ds) {
  if (ds.cols() != ds.universe.n())
    throw DataError("column count does not match the variable universe");
  if (ds.c1_col < 0 || ds.c1_col >= ds.cols() ||
      ds.universe.role(ds.c1_col) != VarRole::context)
    throw DataError("c1 column must name a context variable");
  if (ds.y_col < 0 || ds.y_col >= ds.cols() ||
      ds.universe.role(ds.y_col) != VarRole::system)
    throw DataError("target column must name a system variable");

  int n_source = 0, n_target = 0;
  for (int r = 0; r < ds.rows(); ++r) {
    double c1 = ds.values(r, ds.c1_col);
    if (c1 != 0.0 && c1 != 1.0)
      throw DataError("c1 column '" + ds.universe.name(ds.c1_col) +
                      "' has non-binary value at row " + std::to_string(r));
    bool target_row = c1 == 1.0;
    (target_row ? n_target : n_source)++;
    for (int c = 0; c < ds.cols(); ++c) {
      bool missing = std::isnan(ds.values(r, c));
      bool allowed = target_row && c == ds.y_col;
      if (missing && !allowed)
        throw DataError("missing value at row " + std::to_string(r) + ", column '" +
                        ds.universe.name(c) + "'");
      if (!missing && allowed)
        throw DataError("target value present in target-domain row " + std::to_string(r) +
                        "; expected it to be masked");
    }
  }
  if (n_source < 1) throw DataError("dataset has no source rows (c1 = 0)");
  if (n_target < 1) throw DataError("dataset has no target rows (c1 = 1)");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_cell(const std::string& field, int row, int col) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw DataError("unparseable number '" + field + "' at row " + std::to_string(row) +
                    ", column " + std::to_string(col));
  return v;
}

}  // namespace

DomainDataset load_dataset(const std::string& csv_path, const std::string& meta_path) {
  TaskMeta meta = parse_meta_json(read_file(meta_path));
  const std::string text = read_file(csv_path);

  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file: " + csv_path);
  std::vector<std::string> header = split_csv_line(line);

  // map file columns onto the universe order from the sidecar
  std::vector<int> file_col_of(meta.universe.n(), -1);
  for (int v = 0; v < meta.universe.n(); ++v) {
    for (std::size_t f = 0; f < header.size(); ++f)
      if (header[f] == meta.universe.name(v)) {
        file_col_of[v] = static_cast<int>(f);
        break;
      }
    if (file_col_of[v] < 0)
      throw DataError("CSV is missing column '" + meta.universe.name(v) + "'");
  }

  std::vector<std::vector<double>> parsed;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw DataError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(header.size()));
    std::vector<double> vals(meta.universe.n());
    for (int v = 0; v < meta.universe.n(); ++v)
      vals[v] = parse_cell(fields[file_col_of[v]], row, file_col_of[v]);
    parsed.push_back(std::move(vals));
    ++row;
  }
  if (parsed.empty()) throw DataError("CSV has no data rows: " + csv_path);

  DomainDataset ds;
  ds.universe = meta.universe;
  ds.values.resize(static_cast<long>(parsed.size()), meta.universe.n());
  for (std::size_t r = 0; r < parsed.size(); ++r)
    for (int c = 0; c < meta.universe.n(); ++c) ds.values(static_cast<long>(r), c) = parsed[r][c];
  ds.c1_col = meta.universe.index_of(meta.c1);
  ds.y_col = meta.universe.index_of(meta.target);
  if (ds.c1_col < 0) throw DataError("sidecar c1 '" + meta.c1 + "' is not a known column");
  if (ds.y_col < 0) throw DataError("sidecar target '" + meta.target + "' is not a known column");
  return ds;
}

void save_dataset(const DomainDataset& ds, const std::string& csv_path,
                  const std::string& meta_path) {
  std::string out;
  for (int c = 0; c < ds.cols(); ++c) {
    if (c) out.push_back(',');
    out += ds.universe.name(c);
  }
  out.push_back('\n');
  for (int r = 0; r < ds.rows(); ++r) {
    for (int c = 0; c < ds.cols(); ++c) {
      if (c) out.push_back(',');
      double v = ds.values(r, c);
      if (!std::isnan(v)) out += format_double(v);
    }
    out.push_back('\n');
  }
  write_file(csv_path, out);

  TaskMeta meta;
  meta.universe = ds.universe;
  meta.c1 = ds.universe.name(ds.c1_col);
  meta.target = ds.universe.name(ds.y_col);
  write_file(meta_path, meta_to_json(meta));
}

}  // namespace cda
