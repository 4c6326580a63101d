#pragma once

// The map induced on fiber homology by (x, y) -> (g1(x), y) when
// g = g2(g1), its kernel, and the check that the kernel is the monodromy
// orbit span of a symmetric cycle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vancycle/dynkin.hpp"
#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"
#include "vancycle/monodromy.hpp"
#include "vancycle/realpoly.hpp"

namespace vancycle {

struct ColumnKind {
  bool collapsed = false;
  std::size_t target_col = 0;  ///< 1-based column of F's grid (when mapped)
  int sign = 0;                ///< sign of g1' at the critical point (when mapped)
};

struct PushforwardMatrix {
  RealPoly inner, outer;
  std::size_t source_rows = 0, source_cols = 0;  ///< (e-1, d-1)
  std::size_t target_rows = 0, target_cols = 0;  ///< (e-1, deg g2 - 1)
  std::vector<ColumnKind> column_kinds;          ///< per source g-column
  /// target_dim x source_dim, row-major, column-major cycle indexing on both sides.
  std::vector<std::int64_t> entries;

  std::size_t source_dim() const noexcept { return source_rows * source_cols; }
  std::size_t target_dim() const noexcept { return target_rows * target_cols; }
  std::int64_t at(std::size_t r, std::size_t c) const { return entries[r * source_dim() + c]; }
};

namespace detail {

/// Number of roots of the squarefree q inside a critical-point box of g
/// (open box with non-root endpoints, or an exact point).
inline int roots_in_box(const RealPoly& q, const Interval& box) {
  if (q.degree() < 1) return 0;
  if (box.is_point()) return q(box.lo) == 0 ? 1 : 0;
  return SturmSequence(q).count(box.lo, box.hi);
}

}  // namespace detail

inline PushforwardMatrix pushforward_matrix(const RealPoly& g, const RealPoly& g1, const RealPoly& h) {
  if (g1.degree() < 2) throw NotAComposition("inner polynomial must have degree >= 2");
  auto outer = outer_for(g, g1);
  if (!outer || outer->degree() < 2)
    throw NotAComposition(g.to_string() + " is not g2(" + g1.to_string() + ") with deg g2 >= 2");
  const RealPoly& g2 = *outer;
  const RealPoly dg1 = g1.derivative();
  if (!poly_gcd(compose(g2.derivative(), g1), dg1).is_constant())
    throw DegenerateOverlap("a critical point of g1 maps to a critical point of g2");

  CriticalData gcd = critical_data(g, AxisRole::G);
  CriticalData g2cd = critical_data(g2, AxisRole::G);
  CriticalData hcd = critical_data(h, AxisRole::H);

  PushforwardMatrix pm;
  pm.inner = g1;
  pm.outer = g2;
  pm.source_rows = hcd.size();
  pm.source_cols = gcd.size();
  pm.target_rows = hcd.size();
  pm.target_cols = g2cd.size();

  const RealPoly dg = g.derivative();
  const RealPoly shared = poly_gcd(dg, dg1);  // critical points of g1 among those of g
  std::vector<Interval> targets = g2cd.critical_points;
  const RealPoly dg2 = g2.derivative();
  for (std::size_t j = 0; j < gcd.size(); ++j) {
    Interval box = gcd.critical_points[j];
    ColumnKind kind;
    if (detail::roots_in_box(shared, box) > 0) {
      kind.collapsed = true;
    } else {
      for (int it = 0;; ++it) {
        Interval img = eval_interval(g1, box);
        Interval slope = eval_interval(dg1, box);
        std::vector<std::size_t> hits;
        for (std::size_t t = 0; t < targets.size(); ++t)
          if (img.overlaps(targets[t])) hits.push_back(t);
        bool sign_known = slope.lo > 0 || slope.hi < 0;
        if (hits.size() == 1 && sign_known) {
          kind.target_col = hits[0] + 1;
          kind.sign = slope.lo > 0 ? 1 : -1;
          break;
        }
        if ((hits.empty() && img.is_point()) || it > 4 * kMaxRefinement)
          throw PreconditionError("could not match a critical point of g to one of g2");
        bisect_root(dg, box);
        for (std::size_t t : hits) bisect_root(dg2, targets[t]);
      }
    }
    pm.column_kinds.push_back(kind);
  }

  pm.entries.assign(pm.target_dim() * pm.source_dim(), 0);
  for (std::size_t j = 0; j < pm.source_cols; ++j) {
    const ColumnKind& kind = pm.column_kinds[j];
    if (kind.collapsed) continue;
    for (std::size_t i = 0; i < pm.source_rows; ++i) {
      std::size_t src = j * pm.source_rows + i;
      std::size_t dst = (kind.target_col - 1) * pm.target_rows + i;
      pm.entries[dst * pm.source_dim() + src] = kind.sign;
    }
  }
  return pm;
}

struct KernelResult {
  SubspaceBasis kernel;
  std::size_t image_rank = 0;
  bool surjective = false;
};

/// Exact kernel of an integer target_dim x source_dim matrix.
inline KernelResult kernel_basis(const PushforwardMatrix& pm) {
  const std::size_t n = pm.source_dim();
  std::vector<CycleVector> rows;
  for (std::size_t r = 0; r < pm.target_dim(); ++r) {
    CycleVector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = static_cast<long>(pm.at(r, c));
    rows.push_back(std::move(v));
  }
  SubspaceBasis row_space = rref_basis(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : row_space.pivot_cols()) is_pivot[p] = true;
  std::vector<CycleVector> kernel_vectors;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    CycleVector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < row_space.rank(); ++r) v[row_space.pivot_cols()[r]] = -row_space.rows()[r][f];
    kernel_vectors.push_back(std::move(v));
  }
  KernelResult res;
  res.kernel = rref_basis(kernel_vectors, n);
  res.image_rank = row_space.rank();
  res.surjective = res.image_rank == pm.target_dim();
  return res;
}

struct KernelLemmaCheck {
  bool holds = false;
  std::size_t kernel_rank = 0;
  std::size_t orbit_rank = 0;
  bool surjective = false;
  bool cycle_maps_to_zero = false;
};

/// Kernel of the pushforward versus the orbit span of the cycle at `cycle`,
/// which must sit in a column collapsed by g1.
inline KernelLemmaCheck verify_kernel_lemma(const RealPoly& g, const RealPoly& g1, const RealPoly& h, GridPos cycle) {
  PushforwardMatrix pm = pushforward_matrix(g, g1, h);
  if (cycle.row < 1 || cycle.row > pm.source_rows || cycle.col < 1 || cycle.col > pm.source_cols)
    throw IndexOutOfRange("cycle outside the grid");
  if (!pm.column_kinds[cycle.col - 1].collapsed)
    throw PreconditionError("column " + std::to_string(cycle.col) + " is not a critical point of g1");
  KernelResult ker = kernel_basis(pm);
  DynkinData dd = dynkin_data(g, h);
  auto gens = group_generators(dd.psi, dd.grid);
  const std::size_t k = dd.grid.index().linear(cycle);
  SubspaceBasis orbit = orbit_span(gens, k, dd.grid.size());
  KernelLemmaCheck chk;
  chk.kernel_rank = ker.kernel.rank();
  chk.orbit_rank = orbit.rank();
  chk.surjective = ker.surjective;
  chk.cycle_maps_to_zero = ker.kernel.contains(CycleVector::unit(dd.grid.size(), k));
  chk.holds = same_subspace(ker.kernel, orbit);
  return chk;
}

}  // namespace vancycle
