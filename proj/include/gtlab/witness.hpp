#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/numerics.hpp"

namespace gtlab {

/// Finite sequence (x_i, y_i, t_i): x_i in M_n, y_i in M_m, t_i > 0.
struct WitnessSequence {
  std::vector<CMatrix> xs;
  std::vector<CMatrix> ys;
  std::vector<double> ts;

  std::size_t size() const { return ts.size(); }
  bool empty() const { return ts.empty(); }

  /// Throws std::invalid_argument on length mismatch, non-positive t or
  /// inconsistent matrix shapes.
  void validate() const;

  void push_back(CMatrix x, CMatrix y, double t);
};

/// Which normalization of the row/column constraint is in force.
///   standard: max{ |S xx*| + |S t^2 x*x|, |S t^-2 yy*| + |S y*y| } <= 2
///   loose:    same with each norm replaced by its square root
enum class Constraint { standard, loose };

std::string_view to_string(Constraint c);
Constraint constraint_from_string(std::string_view name);

struct ConstraintReport {
  Constraint flavor = Constraint::standard;
  double row_x = 0.0;  ///< ||sum x_i x_i^*||
  double col_x = 0.0;  ///< ||sum t_i^2 x_i^* x_i||
  double row_y = 0.0;  ///< ||sum t_i^-2 y_i y_i^*||
  double col_y = 0.0;  ///< ||sum y_i^* y_i||
  double x_value = 0.0;
  double y_value = 0.0;
  double violation = 0.0;  ///< max(0, max(x_value, y_value) - 2)
};

/// Combines the four norms under the given flavor.
ConstraintReport combine_norms(Constraint flavor, double row_x, double col_x, double row_y,
                               double col_y);

ConstraintReport check_constraint(const WitnessSequence& w, Constraint flavor);

/// sum_i u(x_i, y_i).
Complex witness_value(const FormTensor& u, const WitnessSequence& w);
/// sum_i |u(x_i, y_i)|.
double witness_abs_sum(const FormTensor& u, const WitnessSequence& w);

/// ||sum x_i x_i^*|| / ||sum x_i^* x_i||, the row/column inflation of a
/// sequence in M_n.
double row_column_ratio(const std::vector<CMatrix>& xs);

}  // namespace gtlab
