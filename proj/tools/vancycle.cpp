// Command-line front end.
//   exit 0: done / verified, 1: verification failure or contract violation,
//   2: input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vancycle/classify.hpp"
#include "vancycle/matrix_io.hpp"
#include "vancycle/report.hpp"
#include "vancycle/sweep.hpp"

using namespace vancycle;

namespace {

GridPos parse_cycle(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("cycle must be given as i,j");
  auto num = [&](const std::string& t) -> std::size_t {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size() || v == 0) throw InputError("bad cycle coordinate '" + t + "'");
    return v;
  };
  return {num(s.substr(0, comma)), num(s.substr(comma + 1))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

std::string cell(GridPos p) { return "v_{" + std::to_string(p.row) + "," + std::to_string(p.col) + "}"; }

// --- dynkin ----------------------------------------------------------------

struct DynkinArgs {
  std::string g, h;
  bool minus = false, json = false;
};

int run_dynkin(const DynkinArgs& a) {
  DynkinData dd = dynkin_data(parse_poly(a.g), parse_poly(a.h), a.minus ? SignMode::Minus : SignMode::Plus);
  if (a.json) {
    std::cout << dynkin_json(dd).dump() << "\n";
    return 0;
  }
  std::cout << "labels g: " << join(dd.gchain.labels) << "\n"
            << "labels h: " << join(dd.hchain.labels) << "\n"
            << "cycles:   " << dd.grid.size() << "\n"
            << "groups:   " << dd.grid.groups.size() << "\n";
  const IndexMap idx = dd.grid.index();
  std::cout << "grid (critical value [group]):\n";
  for (std::size_t i = 1; i <= dd.grid.rows(); ++i) {
    std::cout << "  i=" << i << ":";
    for (std::size_t j = 1; j <= dd.grid.cols(); ++j) {
      const std::size_t k = idx.linear({i, j});
      std::ostringstream v;
      v << std::fixed << std::setprecision(6) << dd.grid.approx_value[k];
      std::cout << " " << std::setw(12) << v.str() << " [" << std::setw(2) << dd.grid.group_of[k] + 1 << "]";
    }
    std::cout << "\n";
  }
  for (const auto& grp : dd.grid.groups)
    if (grp.size() > 1) {
      std::cout << "  shared value:";
      for (std::size_t k : grp) std::cout << " " << cell(idx.position(k));
      std::cout << "\n";
    }
  std::cout << "psi:\n" << format_matrix(dd.psi.entries);
  return 0;
}

// --- krylov ----------------------------------------------------------------

struct KrylovArgs {
  std::size_t d = 0, e = 0;
  std::string cycle, matrix, vector;
  bool check_example = false, targets = false, json = false;
};

int run_krylov(const KrylovArgs& a) {
  const bool model = a.d || a.e || !a.cycle.empty();
  const bool files = !a.matrix.empty() || !a.vector.empty();
  if (model == files) throw InputError("give either --d/--e/--cycle or --matrix/--vector");
  if (files) {
    if (a.matrix.empty() || a.vector.empty()) throw InputError("--matrix and --vector go together");
    if (a.check_example || a.targets) throw InputError("lemma checks need --d/--e/--cycle");
    IntMatrix m = parse_matrix(read_file(a.matrix));
    CycleVector v = parse_vector(read_file(a.vector));
    SubspaceBasis span = krylov_span(m, v);
    if (a.json)
      std::cout << to_json(span).dump() << "\n";
    else
      std::cout << "rank " << span.rank() << " of " << span.ambient_dim() << "\n";
    return 0;
  }
  if (a.d < 2 || a.e < 2 || a.cycle.empty()) throw InputError("--d, --e (>= 2) and --cycle are required");
  const GridPos pos = parse_cycle(a.cycle);
  const IndexMap idx(a.e - 1, a.d - 1);
  const std::size_t k = idx.linear(pos);
  IntersectionMatrix psi = model_matrix(a.d, a.e);
  SubspaceBasis span = krylov_span(psi.entries, CycleVector::unit(idx.size(), k));

  std::vector<LemmaTarget> checks;
  if (a.check_example) {
    if (a.d != 6 || a.e != 4 || !(pos == GridPos{2, 2}))
      throw InputError("--check-example is the worked case --d 6 --e 4 --cycle 2,2");
    checks = {{1, {{2, 2}}},
              {1, {{2, 4}}},
              {2, {{2, 1}, {2, 3}}},
              {2, {{2, 3}, {2, 5}}},
              {5, {{1, 2}, {3, 2}}},
              {3, {{1, 1}, {1, 3}, {3, 1}, {3, 3}}}};
  } else if (a.targets) {
    checks = lemma_target_terms(a.d, a.e, pos.row, pos.col);
  }
  bool all = true;
  Json members = Json::array();
  for (const auto& t : checks) {
    bool in = span.contains(t.vector(idx));
    all = all && in;
    members.push_back({{"combination", t.describe()}, {"member", in}});
  }
  if (a.json) {
    Json j = {{"d", a.d}, {"e", a.e}, {"cycle", grid_pos_json(pos)}, {"rank", span.rank()}, {"dim", idx.size()}};
    if (!checks.empty()) j["members"] = members;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "Krylov span of " << cell(pos) << " for x^" << a.d << " + y^" << a.e << ": rank " << span.rank()
              << " of " << idx.size() << "\n";
    for (const auto& m : members)
      std::cout << "  " << std::left << std::setw(40) << m["combination"].get<std::string>() << " "
                << (m["member"].get<bool>() ? "true" : "false") << "\n";
  }
  return all ? 0 : 1;
}

// --- classify --------------------------------------------------------------

struct ClassifyArgs {
  std::string g, h, cycle;
  bool json = false, experimental_gcd = false;
};

int run_classify(const ClassifyArgs& a) {
  ClassifyOptions opt;
  opt.allow_any_gcd = a.experimental_gcd;
  ClassificationReport r = classify_cycle(parse_poly(a.g), parse_poly(a.h), parse_cycle(a.cycle), opt);
  if (a.json) {
    std::cout << classification_json(r).dump() << "\n";
  } else {
    std::cout << cell(r.cycle) << ": " << verdict_name(r.verdict) << " (orbit rank " << r.orbit_rank << " of "
              << r.ambient_rank << ")\n";
    if (r.verdict == Verdict::Symmetric) {
      std::cout << "  axis " << axis_name(r.axis) << ", p = " << r.p << "\n";
      if (r.decomposition)
        std::cout << "  g1 = " << r.decomposition->inner.to_string('x')
                  << ", g2 = " << r.decomposition->outer.to_string('z') << "\n";
      if (r.pushforward)
        std::cout << "  pushforward kernel rank " << r.pushforward->kernel_rank << ", equals orbit: "
                  << (r.pushforward->holds ? "yes" : "no") << "\n";
      if (!r.pushforward_note.empty()) std::cout << "  pushforward skipped: " << r.pushforward_note << "\n";
    }
  }
  return 0;
}

// --- verify-lemma ----------------------------------------------------------

struct LemmaArgs {
  std::size_t d = 0, e = 0;
  std::string backend = "exact";
  double eigen_tol = kDefaultEigenTol;
  bool json = false, experimental_gcd = false;
};

int run_verify_lemma(const LemmaArgs& a) {
  LemmaOptions opt;
  opt.backend = parse_backend(a.backend);
  opt.eigen_tol = a.eigen_tol;
  opt.allow_any_gcd = a.experimental_gcd;
  LemmaReport r = verify_lemma(a.d, a.e, opt);
  if (a.json) {
    std::cout << lemma_report_json(r).dump() << "\n";
  } else {
    std::cout << "d=" << r.d << " e=" << r.e << " backend=" << backend_name(r.backend) << ": "
              << (r.passed() ? "pass" : "FAIL") << " (" << r.cycles << " cycles, " << r.targets_checked
              << " combinations)\n";
    for (const auto& f : r.failures) std::cout << "  " << cell(f.cycle) << " " << f.combination << ": " << f.reason << "\n";
    if (!r.eigen_reliable) std::cout << "  warning: eigenvalues not separated, eigen results unreliable\n";
  }
  return r.passed() ? 0 : 1;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::size_t max_product = 0, gcd_max = 2, jobs = 0;
  std::string backend = "auto", checkpoint;
  double eigen_tol = kDefaultEigenTol;
  bool json = false, experimental_gcd = false;
};

int run_sweep(const SweepArgs& a) {
  SweepConfig cfg;
  cfg.max_product = a.max_product;
  cfg.gcd_max = a.gcd_max;
  cfg.backend = parse_backend(a.backend);
  cfg.workers = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  if (!a.checkpoint.empty()) cfg.checkpoint_path = a.checkpoint;
  cfg.eigen_tol = a.eigen_tol;
  cfg.experimental_gcd = a.experimental_gcd;
  SweepReport r = sweep_run(cfg);
  if (a.json) {
    std::cout << sweep_report_json(r).dump() << "\n";
  } else {
    for (const auto& p : r.pairs) {
      std::cout << "d=" << std::setw(3) << p.d << " e=" << std::setw(3) << p.e << "  " << std::setw(5)
                << backend_name(p.backend) << "  " << (p.passed() ? "pass" : "FAIL") << "  " << p.cycles
                << " cycles\n";
      for (const auto& f : p.failures)
        std::cout << "    " << cell(f.cycle) << " " << f.combination << ": " << f.reason << "\n";
    }
    std::cout << "total " << r.total() << ", passed " << r.passed() << ", failed " << r.failed();
    if (r.resumed) std::cout << " (" << r.resumed << " from checkpoint)";
    std::cout << ", " << std::fixed << std::setprecision(2) << r.wall_time.value_or(0) << " s\n";
    if (a.experimental_gcd) std::cout << "note: gcd above 2 admitted, results are exploratory\n";
  }
  return r.failed() == 0 ? 0 : 1;
}

// --- cross-validate --------------------------------------------------------

struct CrossArgs {
  std::size_t d = 0, e = 0;
  double tol = kDefaultEigenTol;
  bool json = false;
};

int run_cross(const CrossArgs& a) {
  auto rows = cross_validate(a.d, a.e, a.tol);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.agree();
  if (a.json) {
    std::cout << cross_validation_json(a.d, a.e, rows).dump() << "\n";
  } else {
    std::cout << "cycle        exact  eigen\n";
    for (const auto& r : rows)
      std::cout << std::left << std::setw(12) << cell(r.cycle) << std::right << std::setw(6) << r.exact_rank
                << std::setw(7) << r.eigen_support << (r.agree() ? "" : "  MISMATCH")
                << (r.reliable ? "" : "  UNRELIABLE") << "\n";
  }
  return ok ? 0 : 1;
}

// --- decompose -------------------------------------------------------------

struct DecomposeArgs {
  std::string g;
  std::size_t inner_degree = 0;
  bool json = false;
};

int run_decompose(const DecomposeArgs& a) {
  RealPoly g = parse_poly(a.g);
  const std::size_t d = static_cast<std::size_t>(g.degree());
  std::vector<std::size_t> degrees;
  if (a.inner_degree) {
    if (a.inner_degree < 2 || a.inner_degree >= d || d % a.inner_degree)
      throw InputError("inner degree must be a proper divisor of deg g = " + std::to_string(d));
    degrees.push_back(a.inner_degree);
  } else {
    for (std::size_t k = 2; k < d; ++k)
      if (d % k == 0) degrees.push_back(k);
  }
  Json found = Json::array();
  for (std::size_t k : degrees)
    if (auto dec = decompose(g, k)) found.push_back(decomposition_json(*dec));
  if (a.json) {
    std::cout << Json{{"poly", g.to_string('x')}, {"decompositions", found}}.dump() << "\n";
  } else if (found.empty()) {
    std::cout << g.to_string('x') << ": no decomposition" << (a.inner_degree ? " with that inner degree" : "") << "\n";
  } else {
    for (const auto& f : found)
      std::cout << "g2(z) = " << f["g2"].get<std::string>() << ",  g1(x) = " << f["g1"].get<std::string>() << "\n";
  }
  // Asking for a specific split that does not exist counts as a failure.
  return (a.inner_degree && found.empty()) ? 1 : 0;
}

// --- pushforward -----------------------------------------------------------

struct PushArgs {
  std::string g, g1, h, verify_cycle;
  bool json = false;
};

int run_pushforward(const PushArgs& a) {
  RealPoly g = parse_poly(a.g), g1 = parse_poly(a.g1), h = parse_poly(a.h);
  PushforwardMatrix pm = pushforward_matrix(g, g1, h);
  KernelResult ker = kernel_basis(pm);
  std::optional<KernelLemmaCheck> chk;
  if (!a.verify_cycle.empty()) chk = verify_kernel_lemma(g, g1, h, parse_cycle(a.verify_cycle));
  if (a.json) {
    Json j = pushforward_json(pm);
    j["kernel_rank"] = ker.kernel.rank();
    j["surjective"] = ker.surjective;
    if (chk) j["verdict"] = kernel_check_json(*chk);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "g = (" << pm.outer.to_string('z') << ") o (" << pm.inner.to_string('x') << ")\n";
    for (std::size_t j = 0; j < pm.column_kinds.size(); ++j) {
      const auto& k = pm.column_kinds[j];
      std::cout << "  column " << j + 1 << ": ";
      if (k.collapsed)
        std::cout << "collapsed\n";
      else
        std::cout << "-> column " << k.target_col << ", sign " << (k.sign > 0 ? "+" : "-") << "\n";
    }
    std::cout << format_matrix(pm.target_dim(), pm.source_dim(), pm.entries);
    std::cout << "kernel rank " << ker.kernel.rank() << ", surjective " << (ker.surjective ? "yes" : "no") << "\n";
    if (chk)
      std::cout << "kernel equals orbit of " << a.verify_cycle << ": " << (chk->holds ? "true" : "false")
                << " (orbit rank " << chk->orbit_rank << ")\n";
  }
  return (!chk || chk->holds) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-cycle monodromy of g(x) + h(y)"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  const auto backends = CLI::IsMember({"exact", "eigen", "both", "auto"});

  DynkinArgs dyn;
  auto* c_dyn = app.add_subcommand("dynkin", "chain labels, join-cycle groups and intersection matrix");
  c_dyn->add_option("--g", dyn.g, "polynomial in x")->required();
  c_dyn->add_option("--h", dyn.h, "polynomial in y")->required();
  c_dyn->add_flag("--minus", dyn.minus, "use the opposite sign convention");
  c_dyn->add_flag("--json", dyn.json);

  KrylovArgs kry;
  auto* c_kry = app.add_subcommand("krylov", "Krylov span of a cycle under the intersection matrix");
  c_kry->add_option("--d", kry.d, "degree in x of x^d + y^e");
  c_kry->add_option("--e", kry.e, "degree in y");
  c_kry->add_option("--cycle", kry.cycle, "grid position i,j");
  c_kry->add_option("--matrix", kry.matrix, "matrix file");
  c_kry->add_option("--vector", kry.vector, "vector file");
  auto* f_ex = c_kry->add_flag("--check-example", kry.check_example, "check the six combinations of the worked case");
  c_kry->add_flag("--targets", kry.targets, "check every lemma combination of the cycle")->excludes(f_ex);
  c_kry->add_flag("--json", kry.json);

  ClassifyArgs cls;
  auto* c_cls = app.add_subcommand("classify", "full homology or symmetric, with witnesses");
  c_cls->add_option("--g", cls.g)->required();
  c_cls->add_option("--h", cls.h)->required();
  c_cls->add_option("--cycle", cls.cycle, "grid position i,j")->required();
  c_cls->add_flag("--experimental-gcd", cls.experimental_gcd, "admit gcd(deg g, deg h) > 2");
  c_cls->add_flag("--json", cls.json);

  LemmaArgs lem;
  auto* c_lem = app.add_subcommand("verify-lemma", "check the orbit lemma for x^d + y^e");
  c_lem->add_option("--d", lem.d)->required();
  c_lem->add_option("--e", lem.e)->required();
  c_lem->add_option("--backend", lem.backend)->check(backends);
  c_lem->add_option("--eigen-tol", lem.eigen_tol)->check(CLI::PositiveNumber);
  c_lem->add_flag("--experimental-gcd", lem.experimental_gcd);
  c_lem->add_flag("--json", lem.json);

  SweepArgs swp;
  auto* c_swp = app.add_subcommand("sweep", "verify the lemma for every admissible (d, e)");
  c_swp->add_option("--max-product", swp.max_product)->required();
  c_swp->add_option("--gcd-max", swp.gcd_max);
  c_swp->add_option("--jobs", swp.jobs, "worker threads")->envname("VANCYCLE_JOBS");
  c_swp->add_option("--backend", swp.backend)->check(backends);
  c_swp->add_option("--checkpoint", swp.checkpoint, "line-delimited JSON checkpoint");
  c_swp->add_option("--eigen-tol", swp.eigen_tol)->check(CLI::PositiveNumber);
  c_swp->add_flag("--experimental-gcd", swp.experimental_gcd);
  c_swp->add_flag("--json", swp.json);

  CrossArgs crs;
  auto* c_crs = app.add_subcommand("cross-validate", "exact rank against eigen support per cycle");
  c_crs->add_option("--d", crs.d)->required();
  c_crs->add_option("--e", crs.e)->required();
  c_crs->add_option("--tol", crs.tol)->check(CLI::PositiveNumber);
  c_crs->add_flag("--json", crs.json);

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "write g as g2(g1(x))");
  c_dec->add_option("--g", dec.g)->required();
  c_dec->add_option("--inner-degree", dec.inner_degree);
  c_dec->add_flag("--json", dec.json);

  PushArgs psh;
  auto* c_psh = app.add_subcommand("pushforward", "map induced by (x, y) -> (g1(x), y)");
  c_psh->add_option("--g", psh.g)->required();
  c_psh->add_option("--g1", psh.g1)->required();
  c_psh->add_option("--h", psh.h)->required();
  c_psh->add_option("--verify-cycle", psh.verify_cycle, "symmetric cycle i,j");
  c_psh->add_flag("--json", psh.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_dyn) return run_dynkin(dyn);
    if (*c_kry) return run_krylov(kry);
    if (*c_cls) return run_classify(cls);
    if (*c_lem) return run_verify_lemma(lem);
    if (*c_swp) return run_sweep(swp);
    if (*c_crs) return run_cross(crs);
    if (*c_dec) return run_decompose(dec);
    if (*c_psh) return run_pushforward(psh);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
