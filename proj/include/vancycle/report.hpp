#pragma once

// JSON forms of the reports. Keys keep insertion order so output is stable.

#include <json.hpp>

#include <string>
#include <vector>

#include "vancycle/classify.hpp"
#include "vancycle/dynkin.hpp"
#include "vancycle/exactlin.hpp"
#include "vancycle/monodromy.hpp"
#include "vancycle/pushforward.hpp"
#include "vancycle/sweep.hpp"

namespace vancycle {

using Json = nlohmann::ordered_json;

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const CycleVector& v) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(to_string(v[i]));
  return a;
}

inline Json to_json(const SubspaceBasis& b) {
  Json rows = Json::array();
  for (const auto& r : b.rows()) rows.push_back(to_json(r));
  return {{"dim", b.ambient_dim()}, {"rank", b.rank()}, {"rows", std::move(rows)}};
}

inline Json grid_pos_json(GridPos p) { return Json::array({p.row, p.col}); }

inline Json dynkin_json(const DynkinData& dd) {
  const IndexMap idx = dd.grid.index();
  Json groups = Json::array();
  for (const auto& g : dd.grid.groups) {
    Json cells = Json::array();
    for (std::size_t k : g) cells.push_back(grid_pos_json(idx.position(k)));
    groups.push_back(std::move(cells));
  }
  return {{"labels_g", dd.gchain.labels},
          {"labels_h", dd.hchain.labels},
          {"sign_mode", dd.psi.sign_mode == SignMode::Plus ? "plus" : "minus"},
          {"groups", std::move(groups)},
          {"psi", to_json(dd.psi.entries)}};
}

inline Json decomposition_json(const Decomposition& dec) {
  return {{"g1", dec.inner.to_string('x')}, {"g2", dec.outer.to_string('z')}};
}

inline Json kernel_check_json(const KernelLemmaCheck& c) {
  return {{"holds", c.holds},
          {"kernel_rank", c.kernel_rank},
          {"orbit_rank", c.orbit_rank},
          {"surjective", c.surjective},
          {"cycle_maps_to_zero", c.cycle_maps_to_zero}};
}

inline Json classification_json(const ClassificationReport& r) {
  Json j = {{"cycle", grid_pos_json(r.cycle)},
            {"verdict", verdict_name(r.verdict)},
            {"orbit_rank", r.orbit_rank},
            {"ambient_rank", r.ambient_rank}};
  if (r.verdict == Verdict::Symmetric) {
    j["axis"] = axis_name(r.axis);
    j["p"] = r.p;
    if (r.decomposition) j["decomposition"] = decomposition_json(*r.decomposition);
    if (r.pushforward) j["pushforward"] = kernel_check_json(*r.pushforward);
    if (!r.pushforward_note.empty()) j["pushforward_note"] = r.pushforward_note;
  }
  j["orbit"] = to_json(r.orbit);
  return j;
}

// Per-cycle values; cycles a backend skipped become null.
template <class T>
Json optional_counts(const std::vector<T>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x < 0 ? Json(nullptr) : Json(x));
  return out;
}

inline Json lemma_report_json(const LemmaReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return {{"d", r.d},
          {"e", r.e},
          {"backend", backend_name(r.backend)},
          {"status", r.passed() ? "pass" : "fail"},
          {"cycles", r.cycles},
          {"targets_checked", r.targets_checked},
          {"exact_spot_checks", r.exact_spot_checks},
          {"eigen_reliable", r.eigen_reliable},
          {"exact_ranks", optional_counts(r.exact_ranks)},
          {"eigen_supports", optional_counts(r.eigen_supports)},
          {"failures", std::move(failures)}};
}

inline Json pushforward_json(const PushforwardMatrix& pm) {
  Json kinds = Json::array();
  for (std::size_t j = 0; j < pm.column_kinds.size(); ++j) {
    const auto& k = pm.column_kinds[j];
    if (k.collapsed)
      kinds.push_back({{"column", j + 1}, {"kind", "collapsed"}});
    else
      kinds.push_back({{"column", j + 1}, {"kind", "mapped"}, {"target_column", k.target_col}, {"sign", k.sign}});
  }
  Json rows = Json::array();
  for (std::size_t r = 0; r < pm.target_dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < pm.source_dim(); ++c) row.push_back(pm.at(r, c));
    rows.push_back(std::move(row));
  }
  return {{"g1", pm.inner.to_string('x')},
          {"g2", pm.outer.to_string('z')},
          {"source_dims", {pm.source_rows, pm.source_cols}},
          {"target_dims", {pm.target_rows, pm.target_cols}},
          {"column_kinds", std::move(kinds)},
          {"matrix", std::move(rows)}};
}

struct SweepJsonOptions {
  bool include_timing = false;
};

/// Worker count, checkpoint path and timing are left out so reports compare
/// byte for byte across runs.
inline Json sweep_report_json(const SweepReport& r, SweepJsonOptions opt = {}) {
  Json j = Json::object();
  if (r.config)
    j["config"] = {{"max_product", r.config->max_product},
                   {"gcd_max", r.config->gcd_max},
                   {"backend", backend_name(r.config->backend)},
                   {"eigen_tol", r.config->eigen_tol},
                   {"experimental_gcd", r.config->experimental_gcd}};
  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back(to_json(p));
  j["pairs"] = std::move(pairs);
  Json summary = {{"total", r.total()}, {"passed", r.passed()}, {"failed", r.failed()}};
  if (r.interrupted) summary["interrupted"] = true;
  if (opt.include_timing && r.wall_time) summary["wall_time"] = *r.wall_time;
  j["summary"] = std::move(summary);
  return j;
}

inline Json cross_validation_json(std::size_t d, std::size_t e, const std::vector<CrossValidationRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back({{"cycle", grid_pos_json(r.cycle)},
                 {"exact_rank", r.exact_rank},
                 {"eigen_support", r.eigen_support},
                 {"reliable", r.reliable},
                 {"agree", r.agree()}});
  return {{"d", d}, {"e", e}, {"cycles", std::move(a)}};
}

}  // namespace vancycle
