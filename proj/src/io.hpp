#pragma once

#include <string>
#include <vector>

#include "admg.hpp"
#include "dataset.hpp"
#include "stats.hpp"

namespace cda {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

struct GraphFile {
  Universe universe;
  Admg graph;
};

GraphFile parse_graph_json(const std::string& text);
std::string graph_to_json(const Universe& u, const Admg& g);
GraphFile load_graph(const std::string& path);
void save_graph(const Universe& u, const Admg& g, const std::string& path);

/// Dataset sidecar: variable names, roles, the domain indicator and the
/// target variable.
struct TaskMeta {
  Universe universe;
  std::string c1;
  std::string target;
};

TaskMeta parse_meta_json(const std::string& text);
std::string meta_to_json(const TaskMeta& meta);

/// One JSON object per line: {"a","b","S","independent","weight"} with
/// weight either a number or the string "inf".
std::string constraints_to_jsonl(const std::vector<WeightedConstraint>& cs, const Universe& u);
std::vector<WeightedConstraint> parse_constraints_jsonl(const std::string& text,
                                                        const Universe& u);

}  // namespace cda
