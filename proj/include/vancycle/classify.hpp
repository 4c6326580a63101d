#pragma once

// Classification of a vanishing cycle: either its monodromy orbit spans the
// whole fiber homology, or a symmetry of the critical values explains the
// deficit and g (or h) decomposes accordingly.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>

#include "vancycle/dynkin.hpp"
#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"
#include "vancycle/monodromy.hpp"
#include "vancycle/pushforward.hpp"
#include "vancycle/realpoly.hpp"

namespace vancycle {

enum class Verdict { FullHomology, Symmetric };
enum class Axis { Horizontal, Vertical };

inline const char* verdict_name(Verdict v) { return v == Verdict::FullHomology ? "full_homology" : "symmetric"; }
inline const char* axis_name(Axis a) { return a == Axis::Horizontal ? "horizontal" : "vertical"; }

struct ClassificationReport {
  GridPos cycle;
  Verdict verdict = Verdict::FullHomology;
  std::size_t orbit_rank = 0;
  std::size_t ambient_rank = 0;
  SubspaceBasis orbit;
  // Filled for Symmetric only.
  Axis axis = Axis::Horizontal;
  std::size_t p = 0;
  std::optional<Decomposition> decomposition;
  std::optional<KernelLemmaCheck> pushforward;
  /// Why the pushforward check was skipped, if it was.
  std::string pushforward_note;
};

struct ClassifyOptions {
  bool allow_any_gcd = false;
  bool check_pushforward = true;
};

namespace detail {

/// Tries the symmetries of one axis. `poly` is the polynomial along that
/// axis, `other` the one across it and `pos` the cycle in the frame where
/// `poly` plays the g role.
inline bool explain_by_axis(ClassificationReport& rep, Axis axis, const std::vector<std::size_t>& ps,
                            std::size_t along, const RealPoly& poly, const RealPoly& other, GridPos pos,
                            const ClassifyOptions& opt) {
  const std::size_t deg = static_cast<std::size_t>(poly.degree());
  for (std::size_t p : ps) {
    if (along % p != 0) continue;
    auto dec = decompose(poly, deg / p);
    if (!dec) continue;
    rep.verdict = Verdict::Symmetric;
    rep.axis = axis;
    rep.p = p;
    rep.decomposition = dec;
    if (opt.check_pushforward) {
      try {
        rep.pushforward = verify_kernel_lemma(poly, dec->inner, other, pos);
      } catch (const DegenerateOverlap& e) {
        rep.pushforward_note = e.what();
      } catch (const PreconditionError& e) {
        throw ContractViolation(std::string("symmetric cycle sits off the collapsed columns: ") + e.what());
      }
      if (rep.pushforward && !rep.pushforward->cycle_maps_to_zero)
        throw ContractViolation("symmetric cycle is not killed by the pushforward");
    }
    return true;
  }
  return false;
}

}  // namespace detail

/// cycle is the 1-based grid position (i, j) of v_{i,j}.
inline ClassificationReport classify_cycle(const RealPoly& g, const RealPoly& h, GridPos cycle,
                                           const ClassifyOptions& opt = {}) {
  const std::size_t d = static_cast<std::size_t>(g.degree()), e = static_cast<std::size_t>(h.degree());
  if (std::gcd(d, e) > 2 && !opt.allow_any_gcd)
    throw GcdOutOfRange("gcd(deg g, deg h) = " + std::to_string(std::gcd(d, e)) + " exceeds 2");
  DynkinData dd = dynkin_data(g, h);
  const std::size_t k = dd.grid.index().linear(cycle);
  auto gens = group_generators(dd.psi, dd.grid);

  ClassificationReport rep;
  rep.cycle = cycle;
  rep.ambient_rank = dd.grid.size();
  rep.orbit = orbit_span(gens, k, rep.ambient_rank);
  rep.orbit_rank = rep.orbit.rank();
  if (rep.orbit_rank == rep.ambient_rank) return rep;

  SymmetryReport sym = detect_symmetry(dd.grid);
  if (detail::explain_by_axis(rep, Axis::Horizontal, sym.horizontal_ps, cycle.col, g, h, cycle, opt)) return rep;
  // The vertical case is the horizontal one with the roles of g and h swapped.
  if (detail::explain_by_axis(rep, Axis::Vertical, sym.vertical_ps, cycle.row, h, g, {cycle.col, cycle.row}, opt))
    return rep;
  throw ContractViolation("orbit of v_{" + std::to_string(cycle.row) + "," + std::to_string(cycle.col) + "} has rank " +
                          std::to_string(rep.orbit_rank) + " < " + std::to_string(rep.ambient_rank) +
                          " but no decomposable symmetry covers it");
}

}  // namespace vancycle
