// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "fixtures.hpp"
#include "vancycle/classify.hpp"
#include "vancycle/report.hpp"
#include "vancycle/sweep.hpp"

using namespace vancycle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << ": " << title << " [" << o.detail << "; "
       << std::fixed;
  line.precision(2);
  line << seconds_since(t0) << " s]";
  std::cout << line.str() << std::endl;
}

// g with integer critical points given by roots (g' = lead * prod(x - r)).
RealPoly antiderivative_of_roots(const std::vector<Rat>& roots, const Rat& lead, const Rat& constant) {
  RealPoly dp = RealPoly::constant(lead);
  for (const auto& r : roots) dp = dp * RealPoly(std::vector<Rat>{-r, 1});
  std::vector<Rat> c(static_cast<std::size_t>(dp.degree()) + 2);
  c[0] = constant;
  for (int k = 0; k <= dp.degree(); ++k) c[k + 1] = dp.coeff(k) / (k + 1);
  return RealPoly(c);
}

std::vector<Rat> distinct_rationals(std::mt19937& rng, std::size_t n, int lo, int hi, int den) {
  std::uniform_int_distribution<int> dist(lo * den, hi * den);
  std::vector<Rat> out;
  while (out.size() < n) {
    Rat r(dist(rng), den);
    r.canonicalize();
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- criteria ---------------------------------------------------------------

Outcome oracle_matrix() {
  const auto t0 = Clock::now();
  DynkinData dd = dynkin_data(parse_poly(fixtures::kExampleG), parse_poly(fixtures::kExampleH));
  const double t = seconds_since(t0);
  bool labels = dd.gchain.labels == std::vector<std::size_t>{3, 4, 2, 5, 1} &&
                dd.hchain.labels == std::vector<std::size_t>{2, 3, 1};
  std::size_t wrong = 0;
  IntMatrix ref = fixtures::reference_psi();
  for (std::size_t r = 0; r < 15; ++r)
    for (std::size_t c = 0; c < 15; ++c) wrong += dd.psi.entries(r, c) != ref(r, c);
  std::ostringstream s;
  s << "labels " << (labels ? "match" : "differ") << ", " << wrong << " of 225 entries differ, built in " << t << " s";
  return {labels && wrong == 0 && t < 1.0, s.str()};
}

Outcome orbit_example() {
  IndexMap idx(3, 5);
  SubspaceBasis span = krylov_span(model_matrix(6, 4).entries, CycleVector::unit(15, idx.linear({2, 2})));
  std::vector<std::vector<GridPos>> combos = {
      {{2, 2}}, {{2, 4}}, {{2, 1}, {2, 3}}, {{2, 3}, {2, 5}}, {{1, 2}, {3, 2}}, {{1, 1}, {1, 3}, {3, 1}, {3, 3}}};
  std::size_t in = 0;
  for (const auto& c : combos) {
    CycleVector v(15);
    for (auto p : c) v[idx.linear(p)] += 1;
    in += span.contains(v);
  }
  return {in == combos.size(), std::to_string(in) + "/6 combinations in a span of rank " + std::to_string(span.rank())};
}

Outcome lemma_sweep() {
  SweepConfig cfg;
  cfg.max_product = 200;
  cfg.backend = Backend::Exact;
  cfg.workers = workers();
  SweepReport r = sweep_run(cfg);
  std::ostringstream s;
  s << r.passed() << "/" << r.total() << " pairs pass, " << r.wall_time.value_or(0) << " s on " << cfg.workers
    << " worker(s)";
  return {r.failed() == 0 && r.total() == enumerate_pairs(cfg).size() && *r.wall_time < 600, s.str()};
}

Outcome backend_agreement() {
  SweepConfig cfg;
  cfg.max_product = 120;
  std::size_t pairs = 0, cycles = 0, disagreements = 0, unreliable = 0;
  for (auto [d, e] : enumerate_pairs(cfg)) {
    ++pairs;
    for (const auto& row : cross_validate(d, e, 1e-9)) {
      ++cycles;
      disagreements += !row.agree();
      unreliable += !row.reliable;
    }
  }
  std::ostringstream s;
  s << pairs << " pairs, " << cycles << " cycles, " << disagreements << " disagreements, " << unreliable
    << " unreliable";
  return {disagreements == 0, s.str()};
}

Outcome generic_transitivity() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> deg(2, 7);
  std::size_t instances = 0, cycles = 0, deficient = 0;
  while (instances < 50) {
    std::size_t d = deg(rng), e = deg(rng);
    if ((d - 1) * (e - 1) > 24 || std::gcd(d, e) > 2) continue;
    RealPoly g = antiderivative_of_roots(distinct_rationals(rng, d - 1, -4, 4, 3), Rat(1 + rng() % 3), Rat(rng() % 5));
    RealPoly h = antiderivative_of_roots(distinct_rationals(rng, e - 1, -4, 4, 2), Rat(-1 - static_cast<long>(rng() % 2)),
                                         Rat(static_cast<long>(rng() % 7), 5));
    DynkinData dd = dynkin_data(g, h);
    if (dd.grid.groups.size() != dd.grid.size()) continue;  // not generic, draw again
    ++instances;
    auto gens = group_generators(dd.psi, dd.grid);
    for (std::size_t k = 0; k < dd.grid.size(); ++k) {
      ++cycles;
      deficient += orbit_span(gens, k, dd.grid.size()).rank() != dd.grid.size();
    }
  }
  std::ostringstream s;
  s << instances << " random pairs, " << cycles << " cycles, " << deficient << " without full orbit";
  return {deficient == 0, s.str()};
}

Outcome symmetry_pipeline() {
  std::mt19937 rng(77);
  const std::vector<RealPoly> hs = {parse_poly("y^3-3*y"), parse_poly("y^5-5*y^3+4*y")};
  std::size_t families = 0, symmetric = 0, full = 0, kernel_ok = 0, problems = 0, violations = 0;
  std::string first_problem;
  auto problem = [&](const std::string& what) {
    if (first_problem.empty()) first_problem = what;
    ++problems;
  };
  for (int trial = 0; families < 24 && trial < 500; ++trial) {
    const std::size_t outer_deg = 2 + trial % 2;  // quadratic or cubic g2
    const RealPoly& h = hs[(trial / 2) % 2];
    const std::size_t d = 2 * outer_deg, e = static_cast<std::size_t>(h.degree());
    if (std::gcd(d, e) > 2 || (d - 1) * (e - 1) > 24) continue;
    // g2 with distinct positive critical points so that g = g2(x^2) is Morse.
    RealPoly g2 = antiderivative_of_roots(distinct_rationals(rng, outer_deg - 1, 1, 5, 4),
                                          Rat(1 + static_cast<long>(rng() % 3)), Rat(static_cast<long>(rng() % 5)));
    const RealPoly x2 = parse_poly("x^2");
    RealPoly g = compose(g2, x2);
    DynkinData dd = dynkin_data(g, h);
    ++families;
    SymmetryReport sym = detect_symmetry(dd.grid);
    if (sym.horizontal_ps != std::vector<std::size_t>{outer_deg})
      problem("symmetry p differs from deg g2 for " + g.to_string('x'));
    auto dec = decompose(g, 2);
    if (!dec || dec->inner != x2 || dec->outer != g2) problem("decompose did not recover g2 for " + g.to_string('x'));
    for (std::size_t i = 1; i < e; ++i)
      for (std::size_t j = 1; j < d; ++j) {
        const bool at_symmetric = j % outer_deg == 0;
        try {
          ClassificationReport r = classify_cycle(g, h, {i, j});
          if (at_symmetric) {
            ++symmetric;
            if (r.verdict != Verdict::Symmetric) problem("expected symmetric verdict");
            if (r.pushforward && r.pushforward->holds) ++kernel_ok;
            if (!verify_kernel_lemma(g, x2, h, {i, j}).holds) problem("kernel lemma fails");
          } else {
            ++full;
            if (r.verdict != Verdict::FullHomology) problem("expected full homology");
          }
        } catch (const ContractViolation& ex) {
          ++violations;
          problem(ex.what());
        }
      }
  }
  std::ostringstream s;
  s << families << " families, " << symmetric << " symmetric cycles (" << kernel_ok << " kernel = orbit), " << full
    << " full, " << violations << " contract violations";
  if (!first_problem.empty()) s << "; first problem: " << first_problem;
  return {problems == 0 && families >= 20 && kernel_ok == symmetric, s.str()};
}

Outcome structural_invariants() {
  SweepConfig cfg;
  cfg.max_product = 60;
  std::size_t pairs = 0, checks = 0, broken = 0;
  for (auto [d, e] : enumerate_pairs(cfg)) {
    ++pairs;
    JoinGrid grid = model_grid(d, e);
    IntersectionMatrix psi = intersection_matrix(grid);
    const IntMatrix& m = psi.entries;
    const std::size_t n = m.size();
    auto check = [&](bool ok) {
      ++checks;
      broken += !ok;
    };
    check(m.transpose() == -m);
    check(intersection_matrix(grid, SignMode::Minus).entries == -m);
    std::vector<IntMatrix> twists;
    for (std::size_t k = 0; k < n; ++k) {
      IntMatrix t = pl_twist(psi, k).matrix;
      check(t.transpose() * m * t == m);
      check(t.determinant() == 1);
      twists.push_back(std::move(t));
    }
    // Twists of disjoint cycles commute, so grouping same-value cycles is sound.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (m(a, b) == 0) check(twists[a] * twists[b] == twists[b] * twists[a]);
    auto gens = group_generators(psi, grid);
    KrylovSpans spans(m);
    for (std::size_t k = 0; k < n; ++k)
      check(is_subspace_of(spans.span(CycleVector::unit(n, k)), orbit_span(gens, k, n)));
  }
  std::ostringstream s;
  s << pairs << " pairs, " << checks << " checks, " << broken << " broken";
  return {broken == 0, s.str()};
}

Outcome determinism_and_resume() {
  SweepConfig cfg;
  cfg.max_product = 100;
  cfg.backend = Backend::Exact;
  cfg.workers = 1;
  const std::string one = sweep_report_json(sweep_run(cfg)).dump();
  cfg.workers = 8;
  const std::string eight = sweep_report_json(sweep_run(cfg)).dump();

  // Kill a checkpointing run from outside, then resume it.
  const auto path = (std::filesystem::temp_directory_path() / ("vancycle_accept_" + std::to_string(::getpid())))
                        .string();
  std::filesystem::remove(path);
  SweepConfig ck = cfg;
  ck.workers = 2;
  ck.checkpoint_path = path;
  std::cout.flush();
  pid_t child = ::fork();
  if (child < 0) return {false, "fork failed"};
  if (child == 0) {
    try {
      sweep_run(ck);
    } catch (...) {
    }
    ::_exit(0);
  }
  auto lines = [&] {
    std::ifstream in(path);
    std::size_t n = 0;
    for (std::string l; std::getline(in, l);) ++n;
    return n;
  };
  const auto t0 = Clock::now();
  while (lines() < 60 && seconds_since(t0) < 300) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  ::kill(child, SIGKILL);
  int status = 0;
  ::waitpid(child, &status, 0);
  const bool killed = WIFSIGNALED(status);
  ck.workers = 3;
  SweepReport resumed = sweep_run(ck);
  const bool resume_equal = sweep_report_json(resumed).dump() == one;
  std::filesystem::remove(path);

  std::ostringstream s;
  s << "1 vs 8 workers " << (one == eight ? "identical" : "DIFFER") << "; child "
    << (killed ? "killed" : "finished before kill") << " after " << resumed.resumed << " pairs, resumed report "
    << (resume_equal ? "identical" : "DIFFERS");
  return {one == eight && resume_equal && resumed.resumed > 0 && resumed.resumed < resumed.total(), s.str()};
}

}  // namespace

int main() {
  report(1, "worked example matrix and chain labels", oracle_matrix);
  report(2, "orbit example for (6,4) at v_{2,2}", orbit_example);
  report(3, "exact lemma sweep to d*e <= 200", lemma_sweep);
  report(4, "exact ranks equal eigen supports to d*e <= 120", backend_agreement);
  report(5, "generic pairs have transitive monodromy", generic_transitivity);
  report(6, "symmetry, decomposition and kernel pipeline", symmetry_pipeline);
  report(7, "structural invariants to d*e <= 60", structural_invariants);
  report(8, "determinism across workers and kill/resume", determinism_and_resume);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
