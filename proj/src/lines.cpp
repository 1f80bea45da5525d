#include "gtlab/lines.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gtlab {
namespace {

void require_dim(std::size_t d) {
  if (d == 0) throw std::invalid_argument("line matrices need d >= 1");
}

}  // namespace

Slope Slope::from_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("line parameter t must be positive and finite, got " +
                                std::to_string(t));
  }
  return Slope(t, t * t);
}

Slope Slope::from_t_squared(double t_squared) {
  if (!(t_squared > 0.0) || !std::isfinite(t_squared)) {
    throw std::invalid_argument("line parameter t^2 must be positive and finite, got " +
                                std::to_string(t_squared));
  }
  return Slope(std::sqrt(t_squared), t_squared);
}

double line_entry(std::size_t i, std::size_t j, Slope s) {
  const double t2 = s.t_squared();
  const double lo = std::max(static_cast<double>(i) - 1.0, static_cast<double>(j - 1) * t2);
  const double hi = std::min(static_cast<double>(i), static_cast<double>(j) * t2);
  return std::max(0.0, hi - lo);
}

std::vector<LineEntry> line_entries(std::size_t d, Slope s) {
  require_dim(d);
  const double t2 = s.t_squared();
  std::vector<LineEntry> out;
  for (std::size_t i = 1; i <= d; ++i) {
    // Columns whose interval can meet [i-1, i); one column of slack each side
    // absorbs rounding in the divisions, the exact formula decides.
    const double first = std::floor((static_cast<double>(i) - 1.0) / t2);
    const double last = std::ceil(static_cast<double>(i) / t2) + 1.0;
    const std::size_t j0 = first < 1.0 ? 1 : static_cast<std::size_t>(first);
    const std::size_t j1 = last > static_cast<double>(d) ? d : static_cast<std::size_t>(last);
    for (std::size_t j = j0; j <= j1; ++j) {
      const double len = line_entry(i, j, s);
      if (len > 0.0) out.push_back({i - 1, j - 1, len});
    }
  }
  return out;
}

CMatrix line_matrix(std::size_t d, Slope s) {
  require_dim(d);
  CMatrix l = CMatrix::Zero(d, d);
  for (const auto& e : line_entries(d, s)) l(e.row, e.col) = e.length;
  return l;
}

std::vector<double> line_vector(std::size_t d) {
  require_dim(d);
  return embezzlement_state(d).coeffs;
}

double line_value(std::size_t d, Slope s) {
  // Same summation order as harmonic_number; L(1) = Id gives exactly 1.
  const auto entries = line_entries(d, s);
  double sum = 0.0;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const double ij = static_cast<double>(it->row + 1) * static_cast<double>(it->col + 1);
    sum += it->length / std::sqrt(ij);
  }
  return sum / harmonic_number(d);
}

double analytic_lower_bound(std::size_t d, Slope s) {
  require_dim(d);
  const double t = s.t();
  const double m = static_cast<double>(d) * std::min(1.0, s.t_squared());
  return (2.0 * t / harmonic_number(d)) *
         (std::log(std::sqrt(m + 1.0) + std::sqrt(m + s.t_squared())) - std::log(t + 1.0));
}

double line_deficit(std::size_t d, Slope s) { return (s.t() - line_value(d, s)) / s.t(); }

CMatrix MatrixUnit::dense(std::size_t d) const {
  CMatrix m = CMatrix::Zero(d, d);
  m(row, col) = value;
  return m;
}

std::vector<double> LineFamily::row_sums() const {
  std::vector<double> sums(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) sums[i] += matrix(i, j).real();
  return sums;
}

std::vector<double> LineFamily::column_sums() const {
  std::vector<double> sums(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) sums[j] += matrix(i, j).real();
  return sums;
}

LineFamily line_family(std::size_t d, Slope s) {
  require_dim(d);
  LineFamily f;
  f.dim = d;
  f.slope = s;
  f.matrix = line_matrix(d, s);
  f.z = line_vector(d);
  f.pieces.resize(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const double entry = f.matrix(i, j).real();
      f.pieces[i + j * d] = MatrixUnit{i, j, std::sqrt(entry)};
      if (entry > 0.0) f.nonzero.push_back(i + j * d);
    }
  }
  return f;
}

CMatrix row_gram(std::span<const MatrixUnit> pieces, std::size_t d) {
  // (p E_ij)(q E_kl)^* = p q delta_jl E_ik; only r = r' terms appear here.
  CMatrix g = CMatrix::Zero(d, d);
  for (const auto& p : pieces) g(p.row, p.row) += p.value * p.value;
  return g;
}

CMatrix column_gram(std::span<const MatrixUnit> pieces, std::size_t d) {
  CMatrix g = CMatrix::Zero(d, d);
  for (const auto& p : pieces) g(p.col, p.col) += p.value * p.value;
  return g;
}

Complex state_form_value(const SchmidtState& s, const MatrixUnit& p, const MatrixUnit& q) {
  if (!s.canonical()) return state_form_value(s, p.dense(s.dim), q.dense(s.dim));
  if (p.row != q.row || p.col != q.col) return {0.0, 0.0};
  return p.value * q.value * s.coeffs[p.row] * s.coeffs[p.col];
}

double embezzled_line_value(const LineFamily& family, const SchmidtState& phi) {
  double sum = 0.0;
  for (std::size_t r : family.nonzero) {
    sum += state_form_value(phi, family.pieces[r], family.pieces[r]).real();
  }
  return sum;
}

double fit_constant(std::span<const Slope> t_grid, std::span<const std::size_t> d_grid,
                    Exec exec) {
  const std::size_t cells = t_grid.size() * d_grid.size();
  const auto ratios = map_indices<double>(cells, exec, [&](std::size_t c) {
    const Slope s = t_grid[c / d_grid.size()];
    const std::size_t d = d_grid[c % d_grid.size()];
    const double t = s.t();
    const double deficit = std::max(0.0, t - line_value(d, s));
    const double scale = t * std::log(1.0 + std::max(t, 1.0 / t)) /
                         (1.0 + std::log(static_cast<double>(d)));
    return deficit / scale;
  });
  double c_hat = 0.0;
  for (double r : ratios) c_hat = std::max(c_hat, r);
  return c_hat;
}

std::string matrix_csv(const CMatrix& l) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      if (j) out += ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, l(i, j).real());
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

CMatrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) throw std::runtime_error("malformed CSV entry: " + line);
      row.push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged CSV matrix");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return CMatrix();
  CMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::filesystem::path heatmap_export(const CMatrix& l, const std::filesystem::path& pgm_path) {
  const double top = l.size() == 0 ? 0.0 : l.real().maxCoeff();
  std::ofstream pgm(pgm_path, std::ios::binary);
  if (!pgm) throw std::runtime_error("cannot open " + pgm_path.string() + " for writing");
  pgm << "P5\n" << l.cols() << ' ' << l.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      const double v = l(i, j).real();
      long level = top > 0.0 ? std::lround(255.0 * v / top) : 0;
      level = std::clamp(level, 0L, 255L);
      pgm.put(static_cast<char>(static_cast<unsigned char>(level)));
    }
  }
  if (!pgm) throw std::runtime_error("write failed for " + pgm_path.string());

  std::filesystem::path csv_path = pgm_path;
  csv_path.replace_extension(".csv");
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
  csv << matrix_csv(l);
  if (!csv) throw std::runtime_error("write failed for " + csv_path.string());
  return csv_path;
}

}  // namespace gtlab
