#pragma once

#include <optional>
#include <vector>

#include "hyperflow/rat.hpp"

namespace hyperflow {

/// A system of exact-rational linear constraints over nonnegative variables.
/// Rows are either equalities or <= inequalities.
struct LinearSystem {
  struct Row {
    std::vector<Rat> coeff;  // one per variable
    Rat rhs;
    bool is_eq = true;
  };

  size_t nvars = 0;
  std::vector<Row> rows;

  Row& add_row(bool eq) {
    rows.push_back(Row{std::vector<Rat>(nvars, Rat(0)), Rat(0), eq});
    return rows.back();
  }
};

/// Phase-one simplex with Bland's rule, all arithmetic exact. Returns a
/// feasible point for { Ax (=|<=) b, x >= 0 } or nullopt when the system is
/// infeasible. Deterministic.
std::optional<std::vector<Rat>> find_feasible(const LinearSystem& sys);

}  // namespace hyperflow
