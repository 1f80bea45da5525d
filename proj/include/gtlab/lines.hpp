#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "gtlab/numerics.hpp"
#include "gtlab/states.hpp"

namespace gtlab {

/// The positive parameter t of a line matrix, carried together with t^2.
///
/// Line matrices depend on t only through t^2. Constructing from t^2 keeps
/// interval endpoints exact (t^2 = 3 gives the bit-exact block pattern of
/// L(sqrt 3)); constructing from t uses t*t.
class Slope {
 public:
  static Slope from_t(double t);
  static Slope from_t_squared(double t_squared);

  double t() const { return t_; }
  double t_squared() const { return t2_; }

 private:
  Slope(double t, double t2) : t_(t), t2_(t2) {}
  double t_;
  double t2_;
};

/// One nonzero entry of L(t), 0-based.
struct LineEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double length = 0.0;
};

/// Length of [i-1, i) intersected with [(j-1)t^2, j t^2) for 1-based i, j.
double line_entry(std::size_t i, std::size_t j, Slope s);

/// Nonzero entries of L(t) in row-major order, O(d + nnz).
std::vector<LineEntry> line_entries(std::size_t d, Slope s);

/// Dense d x d line matrix.
CMatrix line_matrix(std::size_t d, Slope s);

/// z = Z_d^{-1/2} (i^{-1/2})_i.
std::vector<double> line_vector(std::size_t d);

/// <z, L(t) z>.
double line_value(std::size_t d, Slope s);

/// (2t/Z_d)(ln(sqrt(m+1) + sqrt(m+t^2)) - ln(t+1)) with m = d min(1, t^2):
/// the closed-form lower bound on line_value.
double analytic_lower_bound(std::size_t d, Slope s);

/// Relative deficit (t - line_value) / t.
double line_deficit(std::size_t d, Slope s);

/// A d x d matrix with a single (possibly zero) entry.
struct MatrixUnit {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  CMatrix dense(std::size_t d) const;
};

/// L(t), z and the d^2 rank-one pieces L^r(t) for one (d, t).
///
/// pieces[i + j*d] (0-based) carries sqrt(L(i,j)) at (i,j); all d^2 pieces
/// are kept, `nonzero` lists the indices of the ones that are not zero.
struct LineFamily {
  std::size_t dim = 0;
  Slope slope = Slope::from_t(1.0);
  CMatrix matrix;
  std::vector<double> z;
  std::vector<MatrixUnit> pieces;
  std::vector<std::size_t> nonzero;

  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;
};

LineFamily line_family(std::size_t d, Slope s);

/// sum_r P_r P_r^* as a dense d x d matrix.
CMatrix row_gram(std::span<const MatrixUnit> pieces, std::size_t d);
/// sum_r P_r^* P_r as a dense d x d matrix.
CMatrix column_gram(std::span<const MatrixUnit> pieces, std::size_t d);

/// <s, (p (x) q) s> for single-entry matrices.
Complex state_form_value(const SchmidtState& s, const MatrixUnit& p, const MatrixUnit& q);

/// sum_r <Phi_d, (L^r (x) L^r) Phi_d>, summed over the family's nonzero pieces.
double embezzled_line_value(const LineFamily& family, const SchmidtState& phi);

/// Smallest C with t - line_value(d,t) <= C t ln(1 + max(t, 1/t)) / (1 + ln d)
/// over the grid. Grid cells are independent tasks; the reduction is a max.
double fit_constant(std::span<const Slope> t_grid, std::span<const std::size_t> d_grid,
                    Exec exec = Exec::parallel);

/// Writes an 8-bit binary PGM (P5, maxval 255), one pixel per entry of
/// Re(l), the largest entry mapped to 255, plus a sidecar CSV of the raw
/// entries next to it (same stem, .csv). Returns the CSV path.
std::filesystem::path heatmap_export(const CMatrix& l, const std::filesystem::path& pgm_path);

/// CSV text of Re(l) using shortest round-trip decimal formatting.
std::string matrix_csv(const CMatrix& l);
CMatrix parse_matrix_csv(const std::string& text);

}  // namespace gtlab
