#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "admg.hpp"

namespace cda {

/// Named variable universe: context variables first, then system variables.
/// Column/node indices throughout the toolkit refer to this order.
struct Universe {
  std::vector<std::string> context;
  std::vector<std::string> system;

  int n_context() const { return static_cast<int>(context.size()); }
  int n_system() const { return static_cast<int>(system.size()); }
  int n() const { return n_context() + n_system(); }
  VarRole role(int v) const { return v < n_context() ? VarRole::context : VarRole::system; }
  const std::string& name(int v) const;
  int index_of(const std::string& name) const;  // -1 when absent

  friend bool operator==(const Universe&, const Universe&) = default;
};

/// Multi-domain tabular data. Rows are samples; columns follow the universe
/// order. For a task dataset the target column is NaN exactly on the rows
/// where the domain indicator c1 equals 1.
struct DomainDataset {
  Universe universe;
  Eigen::MatrixXd values;  // rows x universe.n()
  int c1_col = -1;
  int y_col = -1;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  bool y_missing(int row) const { return std::isnan(values(row, y_col)); }
  std::vector<int> source_rows() const;  // c1 == 0
  std::vector<int> target_rows() const;  // c1 == 1
};

/// Throws DataError with row/column diagnostics when the task invariants do
/// not hold (binary c1, target masked exactly on target rows, no other
/// missing cells, at least one source and one target row).
void validate_task_dataset(const DomainDataset& ds);

DomainDataset load_dataset(const std::string& csv_path, const std::string& meta_path);
void save_dataset(const DomainDataset& ds, const std::string& csv_path,
                  const std::string& meta_path);

}  // namespace cda
