#pragma once

// Re-verification of the orbit lemma over every admissible (d, e) up to a
// product bound, on a worker pool, with an append-only checkpoint.

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vancycle/eigen_backend.hpp"
#include "vancycle/errors.hpp"
#include "vancycle/monodromy.hpp"

namespace vancycle {

struct SweepConfig {
  std::size_t max_product = 30;
  std::size_t gcd_max = 2;
  Backend backend = Backend::Auto;
  std::size_t workers = 1;
  std::optional<std::string> checkpoint_path;
  double eigen_tol = kDefaultEigenTol;
  /// Required for gcd_max > 2; such results are exploratory.
  bool experimental_gcd = false;
  /// Test hook: stop handing out new pairs after this many were computed.
  std::optional<std::size_t> stop_after;

  void validate() const {
    if (max_product < 4) throw PreconditionError("max_product must be at least 4");
    if (workers < 1) throw PreconditionError("need at least one worker");
    if (gcd_max < 1) throw PreconditionError("gcd_max must be positive");
    if (gcd_max > 2 && !experimental_gcd)
      throw GcdOutOfRange("gcd_max above 2 needs the experimental gcd switch");
    if (!(eigen_tol > 0)) throw PreconditionError("eigen tolerance must be positive");
  }
};

struct PairResult {
  std::size_t d = 0, e = 0;
  Backend backend = Backend::Exact;  ///< backend actually used
  std::size_t cycles = 0;
  std::size_t targets_checked = 0;
  std::size_t exact_spot_checks = 0;
  bool eigen_reliable = true;
  std::vector<LemmaFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct SweepReport {
  std::optional<SweepConfig> config;
  std::vector<PairResult> pairs;
  /// Pairs taken from the checkpoint instead of being recomputed.
  std::size_t resumed = 0;
  bool interrupted = false;
  std::optional<double> wall_time;

  std::size_t total() const { return pairs.size(); }
  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const PairResult& p) { return p.passed(); }));
  }
  std::size_t failed() const { return total() - passed(); }
};

/// Ascending d, then e; d, e >= 2, d*e <= max_product, gcd(d, e) <= gcd_max.
inline std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(const SweepConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t d = 2; 2 * d <= cfg.max_product; ++d)
    for (std::size_t e = 2; d * e <= cfg.max_product; ++e)
      if (std::gcd(d, e) <= cfg.gcd_max) out.emplace_back(d, e);
  return out;
}

inline PairResult run_pair(std::size_t d, std::size_t e, const SweepConfig& cfg) {
  LemmaOptions opt;
  opt.backend = cfg.backend;
  opt.eigen_tol = cfg.eigen_tol;
  opt.allow_any_gcd = cfg.experimental_gcd;
  LemmaReport rep = verify_lemma(d, e, opt);
  PairResult r;
  r.d = d;
  r.e = e;
  r.backend = rep.backend;
  r.cycles = rep.cycles;
  r.targets_checked = rep.targets_checked;
  r.exact_spot_checks = rep.exact_spot_checks;
  r.eigen_reliable = rep.eigen_reliable;
  r.failures = std::move(rep.failures);
  return r;
}

// ---------------------------------------------------------------------------
// JSON for pair records; one record per checkpoint line.

inline nlohmann::ordered_json to_json(const LemmaFailure& f) {
  return {{"cycle", {f.cycle.row, f.cycle.col}}, {"combination", f.combination}, {"reason", f.reason}};
}

inline nlohmann::ordered_json to_json(const PairResult& p) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : p.failures) failures.push_back(to_json(f));
  return {{"d", p.d},
          {"e", p.e},
          {"status", p.passed() ? "pass" : "fail"},
          {"backend", backend_name(p.backend)},
          {"cycles", p.cycles},
          {"targets_checked", p.targets_checked},
          {"exact_spot_checks", p.exact_spot_checks},
          {"eigen_reliable", p.eigen_reliable},
          {"failures", std::move(failures)}};
}

inline PairResult pair_from_json(const nlohmann::ordered_json& j) {
  PairResult p;
  p.d = j.at("d").get<std::size_t>();
  p.e = j.at("e").get<std::size_t>();
  p.backend = parse_backend(j.at("backend").get<std::string>());
  p.cycles = j.at("cycles").get<std::size_t>();
  p.targets_checked = j.at("targets_checked").get<std::size_t>();
  p.exact_spot_checks = j.value("exact_spot_checks", std::size_t{0});
  p.eigen_reliable = j.value("eigen_reliable", true);
  for (const auto& f : j.at("failures")) {
    LemmaFailure lf;
    lf.cycle = {f.at("cycle").at(0).get<std::size_t>(), f.at("cycle").at(1).get<std::size_t>()};
    lf.combination = f.at("combination").get<std::string>();
    lf.reason = f.at("reason").get<std::string>();
    p.failures.push_back(std::move(lf));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Checkpoint

/// Completed pairs recorded in a checkpoint file. A damaged line (the tail
/// of a killed run) is ignored.
inline std::map<std::pair<std::size_t, std::size_t>, PairResult> read_checkpoint(const std::string& path) {
  std::map<std::pair<std::size_t, std::size_t>, PairResult> done;
  std::ifstream in(path);
  if (!in) return done;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    try {
      PairResult p = pair_from_json(nlohmann::ordered_json::parse(line));
      done[{p.d, p.e}] = std::move(p);
    } catch (const std::exception&) {
    }
  }
  return done;
}

class CheckpointWriter {
 public:
  explicit CheckpointWriter(const std::string& path) {
    // A killed writer may leave a partial last line; start on a fresh one.
    bool needs_newline = false;
    if (std::ifstream in(path, std::ios::binary | std::ios::ate); in && in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      needs_newline = in.get() != '\n';
    }
    f_ = std::fopen(path.c_str(), "ab");
    if (!f_) throw Error("cannot open checkpoint " + path);
    if (needs_newline) write_line("");
  }
  ~CheckpointWriter() {
    if (f_) std::fclose(f_);
  }
  CheckpointWriter(const CheckpointWriter&) = delete;
  CheckpointWriter& operator=(const CheckpointWriter&) = delete;

  void append(const PairResult& p) { write_line(to_json(p).dump()); }

 private:
  void write_line(const std::string& s) {
    std::lock_guard lock(mu_);
    std::string line = s + "\n";
    if (std::fwrite(line.data(), 1, line.size(), f_) != line.size() || std::fflush(f_) != 0 || ::fsync(fileno(f_)) != 0)
      throw Error("checkpoint write failed");
  }
  std::FILE* f_ = nullptr;
  std::mutex mu_;
};

// ---------------------------------------------------------------------------

inline SweepReport sweep_run(const SweepConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto pairs = enumerate_pairs(cfg);

  SweepReport rep;
  rep.config = cfg;
  std::vector<std::optional<PairResult>> slots(pairs.size());
  std::optional<CheckpointWriter> writer;
  if (cfg.checkpoint_path) {
    auto done = read_checkpoint(*cfg.checkpoint_path);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto it = done.find(pairs[k]);
      if (it == done.end()) continue;
      // A record from another backend does not count.
      Backend want = cfg.backend;
      if (want == Backend::Auto)
        want = pairs[k].first * pairs[k].second > kAutoExactLimit ? Backend::Eigen : Backend::Exact;
      if (it->second.backend != want) continue;
      slots[k] = it->second;
      ++rep.resumed;
    }
    writer.emplace(*cfg.checkpoint_path);
  }

  std::atomic<std::size_t> next{0}, computed{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr error;
  auto work = [&] {
    while (!stop) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) return;
      if (slots[k]) continue;
      if (cfg.stop_after && computed.fetch_add(1) >= *cfg.stop_after) {
        stop = true;
        return;
      }
      try {
        PairResult r = run_pair(pairs[k].first, pairs[k].second, cfg);
        if (writer) writer->append(r);
        slots[k] = std::move(r);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min<std::size_t>(cfg.workers, std::max<std::size_t>(pairs.size(), 1));
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  for (auto& s : slots) {
    if (s)
      rep.pairs.push_back(std::move(*s));
    else
      rep.interrupted = true;
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------

struct CrossValidationRow {
  GridPos cycle;
  std::size_t exact_rank = 0;
  std::size_t eigen_support = 0;
  bool reliable = true;
  bool agree() const { return exact_rank == eigen_support; }
};

/// Exact Krylov rank against eigen support for every cycle of x^d + y^e.
inline std::vector<CrossValidationRow> cross_validate(std::size_t d, std::size_t e, double tol = kDefaultEigenTol,
                                                      bool allow_any_gcd = false) {
  if (d < 2 || e < 2) throw PreconditionError("cross validation needs d, e >= 2");
  if (std::gcd(d, e) > 2 && !allow_any_gcd) throw GcdOutOfRange("gcd(d, e) exceeds 2");
  const IntersectionMatrix psi = model_matrix(d, e);
  const IndexMap idx(e - 1, d - 1);
  KrylovSpans spans(psi.entries);
  EigenKrylov eig(psi.entries);
  std::vector<CrossValidationRow> rows;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    CycleVector v = CycleVector::unit(idx.size(), k);
    CrossValidationRow row;
    row.cycle = idx.position(k);
    row.exact_rank = spans.span(v).rank();
    row.eigen_support = eig.support(v, tol).support_dim;
    row.reliable = eig.reliable();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vancycle
