#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/witness.hpp"

namespace gtlab {

struct SearchOptions {
  std::size_t length = 2;
  Constraint flavor = Constraint::standard;
  /// Hold every t_i at this value (1 gives the unweighted NC supremum).
  std::optional<double> fixed_t;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 3000;
  /// Starting point for restart 0; its length overrides `length`.
  std::optional<WitnessSequence> initial;
  Exec exec = Exec::parallel;
};

struct SearchResult {
  double value = 0.0;  ///< |sum u(x_i, y_i)| at `witness`
  WitnessSequence witness;
  ConstraintReport constraint;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;
};

/// Local search for a lower bound on the constrained supremum of
/// |sum u(x_i, y_i)|. Ascent runs on the scale-invariant ratio
/// |sum u| * s_x * s_y, where s_x, s_y rescale the x and y sides onto the
/// constraint surface; t_i move in log space; steps backtrack on failure.
/// The returned witness is feasible.
SearchResult os_search(const FormTensor& u, const SearchOptions& options);

/// Rescales x and y sides independently onto the constraint surface
/// (both sides equal to 2). Exact by homogeneity.
WitnessSequence project_to_constraint(WitnessSequence w, Constraint flavor);

struct EtaSearchResult {
  /// sqrt of the best row/column ratio found: a lower bound on eta(M_n).
  double eta_lower_bound = 0.0;
  double best_ratio = 0.0;
  std::vector<CMatrix> best_sequence;
  /// Ratio of the matrix-unit sequence (E_{1j})_j, which equals n.
  double matrix_unit_ratio = 0.0;
};

EtaSearchResult eta_witness_search(std::size_t n, std::size_t length, std::size_t restarts,
                                   std::uint64_t seed, Exec exec = Exec::parallel);

/// (E_{11}, ..., E_{1n}) in M_n.
std::vector<CMatrix> matrix_unit_sequence(std::size_t n);

}  // namespace gtlab
