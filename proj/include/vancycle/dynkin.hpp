#pragma once

// Dynkin data of f(x, y) = g(x) + h(y): the 0-dimensional chains of g and h,
// the grid of join cycles and their intersection matrix.

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"
#include "vancycle/realpoly.hpp"

namespace vancycle {

/// 1-based grid coordinates (row i along h, column j along g), matching v_{i,j}.
struct GridPos {
  std::size_t row = 1;
  std::size_t col = 1;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

/// Chain of 0-dimensional vanishing cycles in spatial order. Spatial
/// neighbours intersect with -1, everything else with 0.
struct ChainDiagram {
  AxisRole role = AxisRole::G;
  /// labels[position] = critical-value label (1-based) of that cycle.
  std::vector<std::size_t> labels;

  std::size_t size() const noexcept { return labels.size(); }

  static ChainDiagram identity(std::size_t n, AxisRole role) {
    ChainDiagram c;
    c.role = role;
    c.labels.resize(n);
    std::iota(c.labels.begin(), c.labels.end(), std::size_t{1});
    return c;
  }

  /// Chain of a real Morsification of t^(n+1) (positive leading
  /// coefficient): critical values alternate between minima and maxima,
  /// all minima equal and all maxima equal, ties broken spatially.
  static ChainDiagram morse_model(std::size_t n, AxisRole role) {
    ChainDiagram c;
    c.role = role;
    c.labels.resize(n);
    const bool first_is_min = (n + 1) % 2 == 0;
    std::vector<std::size_t> minima, maxima;
    for (std::size_t k = 0; k < n; ++k) ((k % 2 == 0) == first_is_min ? minima : maxima).push_back(k);
    // g ranks values ascending, h descending.
    const auto& first = role == AxisRole::G ? minima : maxima;
    const auto& second = role == AxisRole::G ? maxima : minima;
    std::size_t label = 1;
    for (std::size_t k : first) c.labels[k] = label++;
    for (std::size_t k : second) c.labels[k] = label++;
    return c;
  }

  /// <chain[a], chain[b]> for 0-based spatial positions.
  int intersection(std::size_t a, std::size_t b) const {
    return (a + 1 == b || b + 1 == a) ? -1 : 0;
  }
};

inline ChainDiagram chain_diagram(const CriticalData& cd, AxisRole role) {
  if (cd.role != role) throw PreconditionError("critical data was computed for the other axis role");
  ChainDiagram c;
  c.role = role;
  c.labels = cd.value_rank;
  return c;
}

enum class SignMode { Plus, Minus };

/// Column-major enumeration of the (e-1) x (d-1) grid of join cycles.
class IndexMap {
 public:
  IndexMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return rows_ * cols_; }

  /// 0-based linear index of a 1-based grid position.
  std::size_t linear(GridPos p) const {
    if (p.row < 1 || p.row > rows_ || p.col < 1 || p.col > cols_)
      throw IndexOutOfRange("grid position (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    return (p.col - 1) * rows_ + (p.row - 1);
  }

  GridPos position(std::size_t k) const {
    if (k >= size()) throw IndexOutOfRange("cycle index " + std::to_string(k + 1) + " outside 1.." + std::to_string(size()));
    return {k % rows_ + 1, k / rows_ + 1};
  }

 private:
  std::size_t rows_, cols_;
};

/// Join cycles gamma_i * sigma_j laid out by spatial chain position, with
/// the f-critical value of every cell grouped by exact equality.
struct JoinGrid {
  ChainDiagram hchain;
  ChainDiagram gchain;
  /// group_of[linear index] = 0-based coincidence group; groups are numbered
  /// by their first cell in linear order.
  std::vector<std::size_t> group_of;
  std::vector<std::vector<std::size_t>> groups;
  /// Decimal approximation of each cell's critical value.
  std::vector<double> approx_value;
  /// Axis coincidence classes (value_class) per spatial position; used by
  /// the symmetry check.
  std::vector<std::size_t> g_value_class;
  std::vector<std::size_t> h_value_class;

  std::size_t rows() const noexcept { return hchain.size(); }
  std::size_t cols() const noexcept { return gchain.size(); }
  std::size_t size() const noexcept { return rows() * cols(); }
  IndexMap index() const { return IndexMap(rows(), cols()); }
};

namespace detail {

inline Interval add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

/// Exact decision of c^h_a + c^g_b == c^h_c + c^g_d.
inline bool sums_equal(AlgebraicNumber ha, AlgebraicNumber gb, AlgebraicNumber hc, AlgebraicNumber gd) {
  for (int it = 0; it <= kMaxRefinement; ++it) {
    if (ha.exact && gb.exact && hc.exact && gd.exact) return *ha.exact + *gb.exact == *hc.exact + *gd.exact;
    if (!add(ha.bounds(), gb.bounds()).overlaps(add(hc.bounds(), gd.bounds()))) return false;
    for (auto* a : {&ha, &gb, &hc, &gd}) {
      a->refine();
      if (it % 8 == 0) a->try_recognize_rational();
    }
  }
  throw UndecidedCoincidence("cannot decide equality of critical values " + std::to_string(ha.approx() + gb.approx()) +
                             " and " + std::to_string(hc.approx() + gd.approx()));
}

inline JoinGrid grid_skeleton(const ChainDiagram& hchain, const ChainDiagram& gchain) {
  JoinGrid grid;
  grid.hchain = hchain;
  grid.gchain = gchain;
  grid.group_of.assign(grid.size(), 0);
  grid.approx_value.assign(grid.size(), 0.0);
  return grid;
}

inline void finish_groups(JoinGrid& grid, const std::vector<std::size_t>& rep) {
  std::vector<std::size_t> id_of(rep.size(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < rep.size(); ++k) {
    std::size_t root = rep[k];
    if (id_of[root] == static_cast<std::size_t>(-1)) {
      id_of[root] = grid.groups.size();
      grid.groups.emplace_back();
    }
    grid.group_of[k] = id_of[root];
    grid.groups[id_of[root]].push_back(k);
  }
}

}  // namespace detail

inline JoinGrid join_grid(const ChainDiagram& hchain, const ChainDiagram& gchain, const CriticalData& hcd,
                          const CriticalData& gcd) {
  if (hchain.size() != hcd.size() || gchain.size() != gcd.size())
    throw PreconditionError("chains do not match their critical data");
  JoinGrid grid = detail::grid_skeleton(hchain, gchain);
  grid.g_value_class = gcd.value_class;
  grid.h_value_class = hcd.value_class;
  const IndexMap idx = grid.index();
  const std::size_t n = grid.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t k = 0; k < n; ++k) {
    GridPos p = idx.position(k);
    grid.approx_value[k] = hcd.critical_values[p.row - 1].approx() + gcd.critical_values[p.col - 1].approx();
    rep[k] = k;
    for (std::size_t prev = 0; prev < k; ++prev) {
      if (rep[prev] != prev) continue;
      GridPos q = idx.position(prev);
      bool same_h = hcd.same_value(p.row - 1, q.row - 1);
      bool same_g = gcd.same_value(p.col - 1, q.col - 1);
      bool equal;
      if (same_h || same_g)
        equal = same_h && same_g;
      else
        equal = detail::sums_equal(hcd.critical_values[p.row - 1], gcd.critical_values[p.col - 1],
                                   hcd.critical_values[q.row - 1], gcd.critical_values[q.col - 1]);
      if (equal) {
        rep[k] = prev;
        break;
      }
    }
  }
  detail::finish_groups(grid, rep);
  return grid;
}

/// Grid of f0 = x^d + y^e after a real Morsification of each summand
/// (alternating chains); every cell is its own group.
inline JoinGrid model_grid(std::size_t d, std::size_t e) {
  if (d < 2 || e < 2) throw PreconditionError("model grid needs d, e >= 2");
  JoinGrid grid = detail::grid_skeleton(ChainDiagram::morse_model(e - 1, AxisRole::H),
                                        ChainDiagram::morse_model(d - 1, AxisRole::G));
  grid.g_value_class.resize(d - 1);
  grid.h_value_class.resize(e - 1);
  std::iota(grid.g_value_class.begin(), grid.g_value_class.end(), std::size_t{0});
  std::iota(grid.h_value_class.begin(), grid.h_value_class.end(), std::size_t{0});
  std::vector<std::size_t> rep(grid.size());
  std::iota(rep.begin(), rep.end(), std::size_t{0});
  detail::finish_groups(grid, rep);
  return grid;
}

struct IntersectionMatrix {
  IntMatrix entries;
  SignMode sign_mode = SignMode::Plus;
  std::size_t size() const noexcept { return entries.size(); }
};

namespace detail {

inline int sgn(long v) { return (v > 0) - (v < 0); }

}  // namespace detail

/// Intersection numbers of the join cycles. Labels drive the sign factors,
/// spatial adjacency drives the 0-dimensional intersections.
inline IntersectionMatrix intersection_matrix(const JoinGrid& grid, SignMode mode = SignMode::Plus) {
  const IndexMap idx = grid.index();
  const std::size_t n = grid.size();
  IntersectionMatrix psi{IntMatrix(n), mode};
  const int flip = mode == SignMode::Plus ? 1 : -1;
  for (std::size_t a = 0; a < n; ++a) {
    GridPos p = idx.position(a);
    long i = static_cast<long>(grid.hchain.labels[p.row - 1]);
    long j = static_cast<long>(grid.gchain.labels[p.col - 1]);
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      GridPos q = idx.position(b);
      long i2 = static_cast<long>(grid.hchain.labels[q.row - 1]);
      long j2 = static_cast<long>(grid.gchain.labels[q.col - 1]);
      int gamma = grid.hchain.intersection(p.row - 1, q.row - 1);
      int sigma = grid.gchain.intersection(p.col - 1, q.col - 1);
      int v = 0;
      if (p.row == q.row)
        v = detail::sgn(j2 - j) * sigma;
      else if (p.col == q.col)
        v = detail::sgn(i2 - i) * gamma;
      else if ((i2 - i) * (j2 - j) > 0)
        v = detail::sgn(i2 - i) * gamma * sigma;
      psi.entries(a, b) = flip * v;
    }
  }
  return psi;
}

/// Everything derived from a pair (g, h).
struct DynkinData {
  CriticalData gcd, hcd;
  ChainDiagram gchain, hchain;
  JoinGrid grid;
  IntersectionMatrix psi;
};

inline DynkinData dynkin_data(const RealPoly& g, const RealPoly& h, SignMode mode = SignMode::Plus) {
  DynkinData dd;
  dd.gcd = critical_data(g, AxisRole::G);
  dd.hcd = critical_data(h, AxisRole::H);
  dd.gchain = chain_diagram(dd.gcd, AxisRole::G);
  dd.hchain = chain_diagram(dd.hcd, AxisRole::H);
  dd.grid = join_grid(dd.hchain, dd.gchain, dd.hcd, dd.gcd);
  dd.psi = intersection_matrix(dd.grid, mode);
  return dd;
}

}  // namespace vancycle
