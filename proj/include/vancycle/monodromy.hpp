#pragma once

// Picard-Lefschetz operators, monodromy orbit spans, symmetry detection and
// the one-critical-value orbit lemma for f0 = x^d + y^e.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "vancycle/dynkin.hpp"
#include "vancycle/eigen_backend.hpp"
#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"

namespace vancycle {

/// Monodromy around one critical value, as a matrix in the join-cycle basis.
struct PLOperator {
  IntMatrix matrix;
  /// 0-based linear indices of the cycles vanishing at that value.
  std::vector<std::size_t> site;
};

/// delta -> delta - <delta, delta_k> delta_k (k is 0-based).
inline PLOperator pl_twist(const IntersectionMatrix& psi, std::size_t k) {
  const std::size_t n = psi.size();
  if (k >= n) throw IndexOutOfRange("twist index " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) m(k, c) -= psi.entries(c, k);
  return {std::move(m), {k}};
}

/// One operator per coincidence group: the product of its member twists in
/// ascending index order. Members must be pairwise disjoint.
inline std::vector<PLOperator> group_generators(const IntersectionMatrix& psi, const JoinGrid& grid) {
  if (psi.size() != grid.size()) throw DimensionMismatch("matrix and grid sizes differ");
  std::vector<PLOperator> out;
  out.reserve(grid.groups.size());
  for (const auto& group : grid.groups) {
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if (psi.entries(group[a], group[b]) != 0) {
          auto idx = grid.index();
          GridPos p = idx.position(group[a]), q = idx.position(group[b]);
          throw NonCommutingGroup("cycles v_{" + std::to_string(p.row) + "," + std::to_string(p.col) + "} and v_{" +
                                  std::to_string(q.row) + "," + std::to_string(q.col) +
                                  "} share a critical value but intersect");
        }
    IntMatrix m = IntMatrix::identity(psi.size());
    for (std::size_t k : group) m = pl_twist(psi, k).matrix * m;
    out.push_back({std::move(m), group});
  }
  return out;
}

inline std::vector<IntMatrix> matrices(const std::vector<PLOperator>& ops) {
  std::vector<IntMatrix> m;
  m.reserve(ops.size());
  for (const auto& op : ops) m.push_back(op.matrix);
  return m;
}

/// Span of the monodromy orbit of the k-th join cycle (0-based).
inline SubspaceBasis orbit_span(const std::vector<PLOperator>& generators, std::size_t k, std::size_t n) {
  if (k >= n) throw IndexOutOfRange("cycle index outside the lattice");
  auto mats = matrices(generators);
  return invariant_closure(mats, CycleVector::unit(n, k));
}

// ---------------------------------------------------------------------------
// Symmetry

struct SymmetryReport {
  std::vector<std::size_t> horizontal_ps;
  std::vector<std::size_t> vertical_ps;
  /// p -> symmetric columns (resp. rows): the multiples of p.
  std::map<std::size_t, std::vector<std::size_t>> horizontal_positions;
  std::map<std::size_t, std::vector<std::size_t>> vertical_positions;

  bool empty() const { return horizontal_ps.empty() && vertical_ps.empty(); }
};

namespace detail {

/// Values of p (1 < p < n, p | n) such that every position j with
/// gcd(j, n) = p has value(j - k) == value(j + k) for k < p.
inline std::vector<std::size_t> axis_symmetries(const std::vector<std::size_t>& value_class) {
  const std::size_t n = value_class.size() + 1;
  std::vector<std::size_t> ps;
  for (std::size_t p = 2; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t j = p; j < n && ok; j += p) {
      if (std::gcd(j, n) != p) continue;
      for (std::size_t k = 1; k < p && ok; ++k) ok = value_class[j - k - 1] == value_class[j + k - 1];
    }
    if (ok) ps.push_back(p);
  }
  return ps;
}

inline std::vector<std::size_t> multiples_below(std::size_t p, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t j = p; j < n; j += p) out.push_back(j);
  return out;
}

}  // namespace detail

/// Horizontal symmetry depends only on g's coincidences, vertical only on h's.
inline SymmetryReport detect_symmetry(const JoinGrid& grid) {
  SymmetryReport rep;
  rep.horizontal_ps = detail::axis_symmetries(grid.g_value_class);
  rep.vertical_ps = detail::axis_symmetries(grid.h_value_class);
  for (std::size_t p : rep.horizontal_ps) rep.horizontal_positions[p] = detail::multiples_below(p, grid.cols() + 1);
  for (std::size_t p : rep.vertical_ps) rep.vertical_positions[p] = detail::multiples_below(p, grid.rows() + 1);
  return rep;
}

// ---------------------------------------------------------------------------
// Orbit lemma for one critical value

/// A lemma combination: sum of the listed cycles (in-range terms only).
struct LemmaTarget {
  int family = 0;  ///< 1..6 in the order of the lemma's statement
  std::vector<GridPos> terms;

  std::string describe() const {
    std::string s;
    for (const auto& t : terms) {
      if (!s.empty()) s += "+";
      s += "v_{" + std::to_string(t.row) + "," + std::to_string(t.col) + "}";
    }
    return s;
  }

  CycleVector vector(const IndexMap& idx) const {
    CycleVector v(idx.size());
    for (const auto& t : terms) v[idx.linear(t)] += 1;
    return v;
  }
};

/// The six families of combinations claimed to lie in the orbit span of
/// v_{i,j} for x^d + y^e. Out-of-grid terms are dropped; empty and repeated
/// combinations are skipped.
inline std::vector<LemmaTarget> lemma_target_terms(std::size_t d, std::size_t e, std::size_t i, std::size_t j) {
  if (d < 2 || e < 2) throw PreconditionError("lemma needs d, e >= 2");
  if (i < 1 || i > e - 1 || j < 1 || j > d - 1) throw IndexOutOfRange("cycle position outside the grid");
  const long rows = static_cast<long>(e) - 1, cols = static_cast<long>(d) - 1;
  const long p = static_cast<long>(std::gcd(d, j)), r = static_cast<long>(std::gcd(e, i));
  const long li = static_cast<long>(i), lj = static_cast<long>(j);
  std::vector<LemmaTarget> out;
  auto add = [&](int family, std::initializer_list<std::pair<long, long>> cells) {
    LemmaTarget t;
    t.family = family;
    for (auto [row, col] : cells)
      if (row >= 1 && row <= rows && col >= 1 && col <= cols)
        t.terms.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col)});
    if (t.terms.empty()) return;
    auto key = [](const LemmaTarget& x) {
      auto terms = x.terms;
      std::sort(terms.begin(), terms.end(),
                [](const GridPos& a, const GridPos& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
      return terms;
    };
    auto mine = key(t);
    for (const auto& o : out)
      if (key(o) == mine) return;
    out.push_back(std::move(t));
  };
  for (long m = 1; m <= static_cast<long>(d) / p - 1; ++m) {
    long c = m * p;
    add(1, {{li, c}});
    for (long k = 1; k <= p - 1; ++k) add(2, {{li, c - k}, {li, c + k}});
    for (long k = 1; k <= p - 1; ++k) add(3, {{li - 1, c - k}, {li - 1, c + k}, {li + 1, c - k}, {li + 1, c + k}});
  }
  for (long n = 1; n <= static_cast<long>(e) / r - 1; ++n) {
    long row = n * r;
    add(4, {{row, lj}});
    for (long l = 1; l <= r - 1; ++l) add(5, {{row - l, lj}, {row + l, lj}});
    for (long l = 1; l <= r - 1; ++l)
      add(6, {{row - l, lj - 1}, {row + l, lj - 1}, {row - l, lj + 1}, {row + l, lj + 1}});
  }
  return out;
}

inline std::vector<CycleVector> lemma_targets(std::size_t d, std::size_t e, std::size_t i, std::size_t j) {
  IndexMap idx(e - 1, d - 1);
  std::vector<CycleVector> out;
  for (const auto& t : lemma_target_terms(d, e, i, j)) out.push_back(t.vector(idx));
  return out;
}

/// Intersection matrix of f0 = x^d + y^e after Morsification.
inline IntersectionMatrix model_matrix(std::size_t d, std::size_t e, SignMode mode = SignMode::Plus) {
  return intersection_matrix(model_grid(d, e), mode);
}

enum class Backend { Exact, Eigen, Both, Auto };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Eigen: return "eigen";
    case Backend::Both: return "both";
    case Backend::Auto: return "auto";
  }
  return "?";
}

inline Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "eigen") return Backend::Eigen;
  if (s == "both") return Backend::Both;
  if (s == "auto") return Backend::Auto;
  throw InputError("unknown backend '" + s + "' (exact|eigen|both|auto)");
}

/// Products d*e above this use the eigen backend under Backend::Auto.
inline constexpr std::size_t kAutoExactLimit = 400;

struct LemmaFailure {
  GridPos cycle;
  std::string combination;
  std::string reason = "not in span";
};

struct LemmaReport {
  std::size_t d = 0, e = 0;
  Backend backend = Backend::Exact;  ///< resolved backend actually used
  std::size_t cycles = 0;
  std::size_t targets_checked = 0;
  std::size_t exact_spot_checks = 0;
  /// Exact Krylov rank and eigen support per cycle (where computed; -1 if not).
  std::vector<long> exact_ranks;
  std::vector<long> eigen_supports;
  bool eigen_reliable = true;
  std::vector<LemmaFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct LemmaOptions {
  Backend backend = Backend::Exact;
  double eigen_tol = kDefaultEigenTol;
  double separation_tol = kDefaultSeparationTol;
  /// Allows gcd(d, e) > 2; results are exploratory.
  bool allow_any_gcd = false;
};

/// Checks every lemma combination of every cycle against the Krylov span of
/// the model intersection matrix.
inline LemmaReport verify_lemma(std::size_t d, std::size_t e, const LemmaOptions& opt = {}) {
  if (d < 2 || e < 2) throw PreconditionError("verify_lemma needs d, e >= 2");
  if (std::gcd(d, e) > 2 && !opt.allow_any_gcd)
    throw GcdOutOfRange("gcd(" + std::to_string(d) + "," + std::to_string(e) + ") = " +
                        std::to_string(std::gcd(d, e)) + " exceeds 2");
  LemmaReport rep;
  rep.d = d;
  rep.e = e;
  Backend backend = opt.backend;
  if (backend == Backend::Auto) backend = d * e > kAutoExactLimit ? Backend::Eigen : Backend::Exact;
  rep.backend = backend;
  const IntersectionMatrix psi = model_matrix(d, e);
  const IndexMap idx(e - 1, d - 1);
  const std::size_t n = idx.size();
  rep.cycles = n;
  rep.exact_ranks.assign(n, -1);
  rep.eigen_supports.assign(n, -1);

  const bool use_exact = backend == Backend::Exact || backend == Backend::Both;
  const bool use_eigen = backend == Backend::Eigen || backend == Backend::Both;
  std::optional<EigenKrylov> eig;
  if (use_eigen) {
    eig.emplace(psi.entries, opt.separation_tol);
    rep.eigen_reliable = eig->reliable();
  }
  // Under Auto with the eigen route, every 20th cycle is also checked exactly.
  const bool spot = opt.backend == Backend::Auto && backend == Backend::Eigen;
  KrylovSpans spans(psi.entries);

  for (std::size_t k = 0; k < n; ++k) {
    GridPos pos = idx.position(k);
    CycleVector seed = CycleVector::unit(n, k);
    auto targets = lemma_target_terms(d, e, pos.row, pos.col);
    std::optional<SubspaceBasis> span;
    if (use_exact || (spot && k % 20 == 0)) {
      span = spans.span(seed);
      rep.exact_ranks[k] = static_cast<long>(span->rank());
      if (!use_exact) ++rep.exact_spot_checks;
    }
    if (eig) rep.eigen_supports[k] = static_cast<long>(eig->support(seed, opt.eigen_tol).support_dim);
    for (const auto& t : targets) {
      CycleVector v = t.vector(idx);
      ++rep.targets_checked;
      if (span && !span->contains(v)) rep.failures.push_back({pos, t.describe(), "not in exact Krylov span"});
      if (eig && !eig->member(seed, v, opt.eigen_tol))
        rep.failures.push_back({pos, t.describe(), "not in eigen Krylov support"});
    }
    if (backend == Backend::Both && rep.exact_ranks[k] != rep.eigen_supports[k])
      rep.failures.push_back({pos, "", "exact rank " + std::to_string(rep.exact_ranks[k]) + " != eigen support " +
                                           std::to_string(rep.eigen_supports[k])});
  }
  return rep;
}

}  // namespace vancycle
