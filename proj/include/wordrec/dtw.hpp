#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wordrec/errors.hpp"
#include "wordrec/matrix.hpp"

namespace wordrec {

// Path constraints for the alignment search.
//
// band_radius: cells with |i - j| > max(band_radius, |n - m|) are
// infeasible (the window is widened to |n - m| so the corner stays
// reachable). Absent = unconstrained.
//
// max_run: at most this many consecutive vertical-only or
// horizontal-only steps before a step on the other axis or a diagonal
// is forced. Absent = unconstrained.
//
// normalize: rank by distance / (n + m) instead of the raw accumulated
// distance (recognition only; both values are always computed).
struct DtwConfig {
  std::optional<int> band_radius;
  std::optional<int> max_run;
  bool normalize = true;
};

struct WarpResult {
  double distance = 0.0;             // accumulated cost at (n, m)
  double normalized_distance = 0.0;  // distance / (n + m)
  std::vector<std::pair<std::size_t, std::size_t>> path;  // 1-based, (1,1)..(n,m)
  std::size_t cells_visited = 0;     // feasible cells filled by the DP
};

// Squared Euclidean distance sum_k (q_k - c_k)^2. Throws DimensionMismatch.
double local_distance(std::span<const double> q, std::span<const double> c);

// Aligns the rows of Q (length n) against the rows of C (length m) with
// the recurrence D(i,j) = min(D(i-1,j-1), D(i-1,j), D(i,j-1)) + d(i,j)
// and base case D(1,1) = d(1,1). The backtraced path is deterministic:
// ties prefer the diagonal, then the vertical predecessor, then the
// horizontal one.
// Throws EmptySequence, DimensionMismatch, InfeasibleConstraints (the
// slope constraint can make every path infeasible).
WarpResult dtw_align(const Matrix& q, const Matrix& c, const DtwConfig& cfg = {});

// The full n x m accumulated-cost matrix of the same recurrence;
// infeasible cells hold +infinity.
Matrix dtw_cost_matrix(const Matrix& q, const Matrix& c, const DtwConfig& cfg = {});

// Cost-matrix CSV: n rows x m comma-separated columns, the literal
// "inf" for infeasible cells.
void write_cost_matrix_csv(const Matrix& cost, const std::filesystem::path& path);

// Path CSV: two 1-based columns "i,j", one line per path point.
void write_path_csv(const std::vector<std::pair<std::size_t, std::size_t>>& path,
                    const std::filesystem::path& out);

}  // namespace wordrec
