#include "wordrec/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>

#include "wordrec/errors.hpp"
#include "wordrec/numeric_text.hpp"

namespace wordrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Effective Sakoe-Chiba window: |i - j| <= radius, widened to |n - m|
// so the (n, m) corner is always reachable.
struct Band {
  std::optional<std::size_t> radius;

  bool contains(std::size_t i, std::size_t j) const {
    if (!radius) return true;
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    return hi - lo <= *radius;
  }
  std::size_t row_begin(std::size_t i) const {
    if (!radius || i < *radius) return 0;
    return i - *radius;
  }
  std::size_t row_end(std::size_t i, std::size_t cols) const {  // exclusive
    if (!radius) return cols;
    return std::min(cols, i + *radius + 1);
  }
};

Band make_band(const DtwConfig& cfg, std::size_t n, std::size_t m) {
  Band band;
  if (cfg.band_radius) {
    if (*cfg.band_radius < 0) throw InvalidConfig("band radius must be non-negative");
    const std::size_t gap = n > m ? n - m : m - n;
    band.radius = std::max(static_cast<std::size_t>(*cfg.band_radius), gap);
  }
  return band;
}

void check_inputs(const Matrix& q, const Matrix& c) {
  if (q.rows() == 0 || c.rows() == 0) throw EmptySequence("DTW inputs must be non-empty");
  if (q.cols() != c.cols() || q.cols() == 0)
    throw DimensionMismatch("DTW inputs have dimensions " + std::to_string(q.cols()) + " and " +
                            std::to_string(c.cols()));
}

// --- unconstrained / band-only recurrence ---

enum Step : std::uint8_t { kDiag = 0, kVert = 1, kHorz = 2, kStart = 3 };

struct ClassicDp {
  Matrix cost;                  // n x m accumulated cost, +inf outside the band
  std::vector<std::uint8_t> bp; // chosen predecessor per cell
  std::size_t visited = 0;
};

ClassicDp classic_fill(const Matrix& q, const Matrix& c, const Band& band) {
  const std::size_t n = q.rows(), m = c.rows();
  ClassicDp dp;
  dp.cost = Matrix(n, m, kInf);
  dp.bp.assign(n * m, kStart);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jb = band.row_begin(i), je = band.row_end(i, m);
    for (std::size_t j = jb; j < je; ++j) {
      const double d = local_distance(q.row(i), c.row(j));
      ++dp.visited;
      if (i == 0 && j == 0) {
        dp.cost(0, 0) = d;
        continue;
      }
      const double diag = (i > 0 && j > 0) ? dp.cost(i - 1, j - 1) : kInf;
      const double vert = i > 0 ? dp.cost(i - 1, j) : kInf;
      const double horz = j > 0 ? dp.cost(i, j - 1) : kInf;
      double best;
      std::uint8_t step;
      if (diag <= vert && diag <= horz) {
        best = diag;
        step = kDiag;
      } else if (vert <= horz) {
        best = vert;
        step = kVert;
      } else {
        best = horz;
        step = kHorz;
      }
      dp.cost(i, j) = best + d;
      dp.bp[i * m + j] = step;
    }
  }
  return dp;
}

std::vector<std::pair<std::size_t, std::size_t>> classic_backtrace(const ClassicDp& dp,
                                                                   std::size_t n, std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> path;
  std::size_t i = n - 1, j = m - 1;
  for (;;) {
    path.emplace_back(i + 1, j + 1);
    if (i == 0 && j == 0) break;
    switch (dp.bp[i * m + j]) {
      case kDiag: --i; --j; break;
      case kVert: --i; break;
      case kHorz: --j; break;
      default: throw Error("corrupt DTW backpointer");
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// --- slope-constrained recurrence ---
//
// The DP state is extended with the arrival direction and the length of
// the current non-diagonal run: state 0 = arrived diagonally (or the
// start cell), states 1..S = vertical run of that length, states
// S+1..2S = horizontal run. A run longer than S is infeasible.

struct SlopeDp {
  std::size_t n = 0, m = 0, max_run = 0;
  std::vector<double> cost;        // n * m * (2S+1)
  std::vector<std::int32_t> bp;    // predecessor state, -1 = path start
  std::size_t visited = 0;

  std::size_t states() const { return 2 * max_run + 1; }
  std::size_t idx(std::size_t i, std::size_t j, std::size_t s) const {
    return (i * m + j) * states() + s;
  }
  double cell_min(std::size_t i, std::size_t j) const {
    double best = kInf;
    for (std::size_t s = 0; s < states(); ++s) best = std::min(best, cost[idx(i, j, s)]);
    return best;
  }
};

SlopeDp slope_fill(const Matrix& q, const Matrix& c, const Band& band, std::size_t max_run) {
  const std::size_t n = q.rows(), m = c.rows();
  SlopeDp dp;
  dp.n = n;
  dp.m = m;
  dp.max_run = max_run;
  dp.cost.assign(n * m * dp.states(), kInf);
  dp.bp.assign(n * m * dp.states(), -1);

  const std::size_t S = max_run;
  // scans predecessor states in ascending order: diagonal first, then
  // vertical runs, then horizontal runs — fixed so backtraces are
  // deterministic
  const auto argmin_state = [&](std::size_t i, std::size_t j, bool allow_vert, bool allow_horz,
                                double& best) {
    std::int32_t arg = -1;
    best = kInf;
    for (std::size_t s = 0; s < dp.states(); ++s) {
      if (!allow_vert && s >= 1 && s <= S) continue;
      if (!allow_horz && s > S) continue;
      const double v = dp.cost[dp.idx(i, j, s)];
      if (v < best) {
        best = v;
        arg = static_cast<std::int32_t>(s);
      }
    }
    return arg;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jb = band.row_begin(i), je = band.row_end(i, m);
    for (std::size_t j = jb; j < je; ++j) {
      const double d = local_distance(q.row(i), c.row(j));
      ++dp.visited;
      if (i == 0 && j == 0) {
        dp.cost[dp.idx(0, 0, 0)] = d;
        continue;
      }
      // diagonal arrival: any predecessor state, run resets
      if (i > 0 && j > 0) {
        double best;
        const std::int32_t arg = argmin_state(i - 1, j - 1, true, true, best);
        if (arg >= 0 && best < kInf) {
          dp.cost[dp.idx(i, j, 0)] = best + d;
          dp.bp[dp.idx(i, j, 0)] = arg;
        }
      }
      if (i > 0) {
        // vertical run starts: predecessor must not be mid-vertical-run
        double best;
        const std::int32_t arg = argmin_state(i - 1, j, false, true, best);
        if (arg >= 0 && best < kInf) {
          dp.cost[dp.idx(i, j, 1)] = best + d;
          dp.bp[dp.idx(i, j, 1)] = arg;
        }
        // vertical run continues
        for (std::size_t k = 2; k <= S; ++k) {
          const double prev = dp.cost[dp.idx(i - 1, j, k - 1)];
          if (prev < kInf) {
            dp.cost[dp.idx(i, j, k)] = prev + d;
            dp.bp[dp.idx(i, j, k)] = static_cast<std::int32_t>(k - 1);
          }
        }
      }
      if (j > 0) {
        double best;
        const std::int32_t arg = argmin_state(i, j - 1, true, false, best);
        if (arg >= 0 && best < kInf) {
          dp.cost[dp.idx(i, j, S + 1)] = best + d;
          dp.bp[dp.idx(i, j, S + 1)] = arg;
        }
        for (std::size_t k = 2; k <= S; ++k) {
          const double prev = dp.cost[dp.idx(i, j - 1, S + k - 1)];
          if (prev < kInf) {
            dp.cost[dp.idx(i, j, S + k)] = prev + d;
            dp.bp[dp.idx(i, j, S + k)] = static_cast<std::int32_t>(S + k - 1);
          }
        }
      }
    }
  }
  return dp;
}

std::vector<std::pair<std::size_t, std::size_t>> slope_backtrace(const SlopeDp& dp) {
  // terminal state: lowest cost, ascending state order on ties
  std::size_t i = dp.n - 1, j = dp.m - 1;
  std::size_t s = 0;
  double best = kInf;
  for (std::size_t cand = 0; cand < dp.states(); ++cand) {
    const double v = dp.cost[dp.idx(i, j, cand)];
    if (v < best) {
      best = v;
      s = cand;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> path;
  for (;;) {
    path.emplace_back(i + 1, j + 1);
    const std::int32_t prev = dp.bp[dp.idx(i, j, s)];
    if (prev < 0) break;
    if (s == 0) {
      --i; --j;
    } else if (s <= dp.max_run) {
      --i;
    } else {
      --j;
    }
    s = static_cast<std::size_t>(prev);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

double local_distance(std::span<const double> q, std::span<const double> c) {
  if (q.size() != c.size())
    throw DimensionMismatch("vectors of dimension " + std::to_string(q.size()) + " and " +
                            std::to_string(c.size()));
  double acc = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double diff = q[k] - c[k];
    acc += diff * diff;
  }
  return acc;
}

WarpResult dtw_align(const Matrix& q, const Matrix& c, const DtwConfig& cfg) {
  check_inputs(q, c);
  const std::size_t n = q.rows(), m = c.rows();
  const Band band = make_band(cfg, n, m);

  WarpResult result;
  if (cfg.max_run) {
    if (*cfg.max_run < 1) throw InvalidConfig("max run length must be at least 1");
    const SlopeDp dp = slope_fill(q, c, band, static_cast<std::size_t>(*cfg.max_run));
    result.distance = dp.cell_min(n - 1, m - 1);
    if (!std::isfinite(result.distance))
      throw InfeasibleConstraints("slope constraint admits no path for lengths " +
                                  std::to_string(n) + " and " + std::to_string(m));
    result.path = slope_backtrace(dp);
    result.cells_visited = dp.visited;
  } else {
    const ClassicDp dp = classic_fill(q, c, band);
    result.distance = dp.cost(n - 1, m - 1);
    result.path = classic_backtrace(dp, n, m);
    result.cells_visited = dp.visited;
  }
  result.normalized_distance = result.distance / static_cast<double>(n + m);
  return result;
}

Matrix dtw_cost_matrix(const Matrix& q, const Matrix& c, const DtwConfig& cfg) {
  check_inputs(q, c);
  const std::size_t n = q.rows(), m = c.rows();
  const Band band = make_band(cfg, n, m);

  if (cfg.max_run) {
    if (*cfg.max_run < 1) throw InvalidConfig("max run length must be at least 1");
    const SlopeDp dp = slope_fill(q, c, band, static_cast<std::size_t>(*cfg.max_run));
    Matrix cost(n, m, kInf);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (band.contains(i, j)) cost(i, j) = dp.cell_min(i, j);
    return cost;
  }
  return classic_fill(q, c, band).cost;
}

void write_cost_matrix_csv(const Matrix& cost, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (j) out << ',';
      const double v = cost(i, j);
      out << (std::isinf(v) ? std::string("inf") : format_double17(v));
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoFailure("short write to " + path.string());
}

void write_path_csv(const std::vector<std::pair<std::size_t, std::size_t>>& path,
                    const std::filesystem::path& out) {
  std::ofstream f(out, std::ios::trunc);
  if (!f) throw IoFailure("cannot open " + out.string() + " for writing");
  for (const auto& [i, j] : path) f << i << ',' << j << '\n';
  f.flush();
  if (!f) throw IoFailure("short write to " + out.string());
}

}  // namespace wordrec
