// dvl: numerical laboratory for Volterra operators and multiplicative
// Hankel forms on weighted Hilbert spaces of Dirichlet series.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dvl/experiments.hpp"
#include "dvl/kernels.hpp"
#include "dvl/operators.hpp"
#include "dvl/parallel.hpp"
#include "dvl/report.hpp"
#include "dvl/series.hpp"
#include "dvl/spaces.hpp"

namespace {

using namespace dvl;
using experiments::RunContext;
using weights::WeightFamily;

struct GlobalOpts {
  std::string family;
  double beta = 0.0;
  bool family_given = false;
  bool beta_given = false;
  int threads = par::hardware_threads();
  std::uint64_t seed = 20260809;
  std::uint64_t prime_limit = 1'000'000'000;
  double quad_tol = 1e-10;
  int quad_maxdiv = 4000;
  std::string kernel = "auto";
  std::string out = ".";
};

WeightFamily make_family(const GlobalOpts& g) {
  if (!g.family_given || !g.beta_given)
    throw std::invalid_argument(
        "--family and --beta are required for this command");
  if (g.family == "div") return WeightFamily::divisor_power(g.beta);
  if (g.family == "zeta") return WeightFamily::zeta_power(g.beta);
  throw std::invalid_argument("unknown family '" + g.family +
                              "' (expected div or zeta)");
}

RunContext make_ctx(const GlobalOpts& g) {
  RunContext ctx;
  ctx.quad.absolute_tolerance = g.quad_tol;
  ctx.quad.max_subdivisions = g.quad_maxdiv;
  ctx.prime_limit = g.prime_limit;
  ctx.seed = g.seed;
  ctx.threads = g.threads;
  return ctx;
}

series::DirichletSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open series file " + path);
  return series::read_csv(in);
}

void emit(const report::ExperimentReport& r, const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const fs::path csv = fs::path(outdir) / (r.name + ".csv");
  const fs::path json = fs::path(outdir) / (r.name + ".json");
  {
    std::ofstream os(csv, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write to " + csv.string());
    report::write_csv(r, os);
  }
  {
    std::ofstream os(json, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write to " + json.string());
    report::write_json_sidecar(r, os);
  }
  std::cout << "wrote " << csv.string() << " (" << r.rows.size()
            << " rows) and " << json.string() << "\n";
}

std::vector<double> parse_ladder(const std::string& csv) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    v.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (v.empty()) throw std::invalid_argument("empty ladder");
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{"dvl - Volterra operators and multiplicative Hankel forms on "
               "weighted Dirichlet-series spaces"};
  app.set_version_flag("--version", std::string("dvl ") + report::kToolVersion);
  app.set_config("--config", "", "flat key=value config; flags win");
  app.require_subcommand(1);

  GlobalOpts g;
  auto* fam_opt =
      app.add_option("--family", g.family, "weight family: div or zeta")
          ->check(CLI::IsMember({"div", "zeta"}));
  auto* beta_opt = app.add_option("--beta", g.beta, "family exponent beta > 0");
  app.add_option("--threads", g.threads, "worker threads (results invariant)");
  app.add_option("--seed", g.seed, "RNG seed for iterative estimators");
  app.add_option("--prime-limit", g.prime_limit, "prime streaming bound");
  app.add_option("--quad-tol", g.quad_tol, "quadrature absolute tolerance");
  app.add_option("--quad-maxdiv", g.quad_maxdiv, "quadrature subdivision cap");
  app.add_option("--kernel", g.kernel, "kernel backend: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.add_option("--out", g.out, "output directory for CSV/JSON");

  // ---- weights ----
  auto* cmd_weights = app.add_subcommand("weights", "print n,w_n rows as CSV");
  cmd_weights->fallthrough();
  std::uint64_t wn_max = 50;
  cmd_weights->add_option("--n-max", wn_max, "largest index");

  // ---- norm ----
  auto* cmd_norm = app.add_subcommand("norm", "print the H^2_w norm of a series");
  cmd_norm->fallthrough();
  std::string norm_file;
  cmd_norm->add_option("--series", norm_file, "CSV file with n,re,im rows")
      ->required();
  bool norm_bloch = false;
  double bloch_theta = 0.0, bloch_sigma_max = 6.0, bloch_t_max = 4.0;
  std::uint32_t bloch_points = 400;
  cmd_norm->add_flag("--bloch", norm_bloch,
                     "also print the grid Bloch lower bound");
  cmd_norm->add_option("--bloch-theta", bloch_theta, "half-plane abscissa");
  cmd_norm->add_option("--bloch-sigma-max", bloch_sigma_max);
  cmd_norm->add_option("--bloch-t-max", bloch_t_max);
  cmd_norm->add_option("--bloch-points", bloch_points, "grid points per axis");

  // ---- section ----
  auto* cmd_section =
      app.add_subcommand("section", "build a finite section and export it");
  cmd_section->fallthrough();
  std::string sec_kind = "volterra";
  std::string sec_symbol;
  std::string sec_export;
  std::uint32_t sec_N = 64;
  bool sec_zero_constant = false;
  bool sec_norm = false;
  double sec_tol = 1e-10;
  int sec_iters = 20000;
  cmd_section->add_option("--kind", sec_kind, "volterra or hankel")
      ->check(CLI::IsMember({"volterra", "hankel"}));
  cmd_section->add_option("--symbol", sec_symbol, "symbol CSV file")->required();
  cmd_section->add_option("--N", sec_N, "basis truncation");
  cmd_section->add_flag("--zero-constant", sec_zero_constant,
                        "restrict to the constant-free space");
  cmd_section->add_option("--export", sec_export,
                          "write 'row col value' triples to this file");
  cmd_section->add_flag("--estimate-norm", sec_norm,
                        "power-iteration estimate of the largest singular value");
  cmd_section->add_option("--tol", sec_tol, "power iteration tolerance");
  cmd_section->add_option("--max-iters", sec_iters, "power iteration cap");

  // ---- experiment ----
  auto* cmd_exp = app.add_subcommand("experiment", "run a scripted experiment");
  cmd_exp->fallthrough();
  cmd_exp->require_subcommand(1);

  auto* e_diag = cmd_exp->add_subcommand("diagonal");
  e_diag->fallthrough();
  std::uint64_t q = 2;
  std::uint32_t K = 1000;
  e_diag->add_option("--q", q, "prime index of the basis symbol");
  e_diag->add_option("--K", K, "largest k");

  auto* e_prim = cmd_exp->add_subcommand("primitive_zw");
  e_prim->fallthrough();
  double prim_a = 0.5, prim_gamma = 1.0;
  int prim_jmax = 22;
  e_prim->add_option("--a", prim_a);
  e_prim->add_option("--gamma", prim_gamma);
  e_prim->add_option("--jmax", prim_jmax);

  auto* e_homo = cmd_exp->add_subcommand("homo_sharpness");
  e_homo->fallthrough();
  double homo_eps = 0.5;
  std::string homo_ladder = "40,50,60,70,80";
  e_homo->add_option("--eps", homo_eps);
  e_homo->add_option("--x-ladder", homo_ladder, "comma-separated x values");

  auto* e_hj = cmd_exp->add_subcommand("hj");
  e_hj->fallthrough();
  int hj_j = 1;
  double hj_delta = 0.5, hj_eta = 1.0;
  std::string hj_ladder = "10,21.5,46.4,100,215,464,1000";
  bool hj_no_tail = false;
  e_hj->add_option("--j", hj_j, "which of h1, h2, h3");
  e_hj->add_option("--delta", hj_delta);
  e_hj->add_option("--eta", hj_eta);
  e_hj->add_option("--sigma-ladder", hj_ladder, "sigma' values");
  e_hj->add_flag("--no-tail", hj_no_tail, "disable the tail model");

  auto* e_triple = cmd_exp->add_subcommand("triple_sum");
  e_triple->fallthrough();
  double tri_delta = 0.9, tri_eta = 0.9;
  std::string tri_ladder = "1e3,2e3,1e4,2e4,1e5,2e5,1e6,2e6";
  e_triple->add_option("--delta", tri_delta);
  e_triple->add_option("--eta", tri_eta);
  e_triple->add_option("--P-ladder", tri_ladder);

  auto* e_hv = cmd_exp->add_subcommand("hankel_volterra");
  e_hv->fallthrough();
  double hv_a = 0.5;
  std::string hv_ladder = "64,128,256,512,1024,2048,4096,8192";
  e_hv->add_option("--a", hv_a);
  e_hv->add_option("--N-ladder", hv_ladder);

  auto* e_psi = cmd_exp->add_subcommand("psi_symbol");
  e_psi->fallthrough();
  double psi_lambda = 1.0;
  std::string psi_ladder = "0.49,0.5";
  std::uint64_t psi_N = 100'000'000;
  e_psi->add_option("--lambda", psi_lambda);
  e_psi->add_option("--sigma-ladder", psi_ladder);
  e_psi->add_option("--N", psi_N);

  auto* e_two = cmd_exp->add_subcommand("two_prime");
  e_two->fallthrough();
  std::string two_ladder = "1e4,1e6,1e8";
  e_two->add_option("--M-ladder", two_ladder);

  auto* e_int = cmd_exp->add_subcommand("int0ld");
  e_int->fallthrough();
  double int_p = 2.0;
  std::string int_ladder = "1e-6,1e-5,1e-4,1e-3,1e-2,1e-1,0.3,0.6,0.9";
  e_int->add_option("--p", int_p);
  e_int->add_option("--T-ladder", int_ladder);

  auto* e_col = cmd_exp->add_subcommand("column_norms");
  e_col->fallthrough();
  std::string col_symbol;
  std::uint64_t col_nmax = 256;
  std::uint64_t col_N = 1 << 14;
  e_col->add_option("--symbol", col_symbol,
                    "symbol CSV (default: e_{w,2})");
  e_col->add_option("--n-max", col_nmax, "ladder runs over n = 2..n-max");
  e_col->add_option("--N", col_N, "image truncation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  g.family_given = fam_opt->count() > 0;
  g.beta_given = beta_opt->count() > 0;
  kernels::select(g.kernel);
  const RunContext ctx = make_ctx(g);

  if (*cmd_weights) {
    const auto w = make_family(g);
    const auto tbl = weights::weight_table(w, std::uint32_t(wn_max));
    std::cout << "n,weight\n";
    for (std::uint64_t n = 1; n <= wn_max; ++n)
      std::cout << n << ',' << report::format_g17(tbl[n]) << '\n';
    return 0;
  }

  if (*cmd_norm) {
    const auto w = make_family(g);
    const auto f = load_series(norm_file);
    std::cout << report::format_g17(spaces::norm_h2w(w, f)) << '\n';
    if (norm_bloch) {
      // grid supremum of a truncated derivative: always a lower bound
      spaces::Grid grid;
      const double span = bloch_sigma_max - bloch_theta;
      for (std::uint32_t i = 1; i <= bloch_points; ++i)
        grid.sigmas.push_back(bloch_theta + span * double(i) /
                                                double(bloch_points));
      for (std::uint32_t i = 0; i <= bloch_points; ++i)
        grid.ts.push_back(-bloch_t_max +
                          2.0 * bloch_t_max * double(i) / double(bloch_points));
      const double lb = spaces::bloch_norm_estimate(f, bloch_theta, grid,
                                                    f.truncation());
      std::cout << "bloch_lb=" << report::format_g17(lb) << '\n';
    }
    return 0;
  }

  if (*cmd_section) {
    const auto w = make_family(g);
    const auto symbol = load_series(sec_symbol);
    const auto section =
        sec_kind == "volterra"
            ? operators::build_volterra_section(w, symbol, sec_N)
            : operators::build_hankel_section(w, symbol, sec_N,
                                              sec_zero_constant);
    if (!sec_export.empty()) {
      std::ofstream os(sec_export, std::ios::binary);
      if (!os)
        throw std::invalid_argument("cannot write to " + sec_export);
      section.write_coordinate(os);
      std::cout << "wrote " << sec_export << " (" << section.entries().size()
                << " entries)\n";
    }
    if (sec_norm) {
      const auto est =
          operators::largest_singular_value(section, sec_tol, sec_iters, g.seed);
      std::cout << "norm_lb=" << report::format_g17(est.value)
                << " iterations=" << est.iterations
                << " converged=" << (est.converged ? "true" : "false") << '\n';
    }
    return 0;
  }

  // experiments
  report::ExperimentReport r;
  if (*e_diag) {
    r = experiments::exp_diagonal(make_family(g), q, K, ctx);
  } else if (*e_prim) {
    r = experiments::exp_primitive_zw(make_family(g), prim_a, prim_gamma,
                                      prim_jmax, ctx);
  } else if (*e_homo) {
    const auto ladder = parse_ladder(homo_ladder);
    r = experiments::exp_homo_sharpness(make_family(g), homo_eps, ladder, ctx);
  } else if (*e_hj) {
    const auto ladder = parse_ladder(hj_ladder);
    r = experiments::exp_hj(hj_j, hj_delta, hj_eta, ladder, g.prime_limit,
                            !hj_no_tail, ctx);
  } else if (*e_triple) {
    const auto ladder = parse_ladder(tri_ladder);
    r = experiments::exp_triple_sum(tri_delta, tri_eta, ladder, ctx);
  } else if (*e_hv) {
    const auto raw = parse_ladder(hv_ladder);
    std::vector<std::uint32_t> ladder(raw.begin(), raw.end());
    r = experiments::exp_hankel_vs_volterra(make_family(g), hv_a, ladder, ctx);
  } else if (*e_psi) {
    const auto ladder = parse_ladder(psi_ladder);
    r = experiments::exp_psi_symbol(psi_lambda, ladder, psi_N, ctx);
  } else if (*e_two) {
    const auto raw = parse_ladder(two_ladder);
    std::vector<std::uint64_t> ladder(raw.begin(), raw.end());
    r = experiments::exp_two_prime(make_family(g), ladder, ctx);
  } else if (*e_int) {
    const auto ladder = parse_ladder(int_ladder);
    r = experiments::exp_int0ld(make_family(g), int_p, ladder, ctx);
  } else if (*e_col) {
    const auto w = make_family(g);
    series::DirichletSeries symbol =
        col_symbol.empty() ? series::basis_vector(w, 2, col_N)
                           : load_series(col_symbol);
    std::vector<std::uint64_t> ladder;
    for (std::uint64_t n = 2; n <= col_nmax; ++n) ladder.push_back(n);
    r = experiments::exp_column_norms(w, symbol, ladder, col_N, ctx);
  }
  emit(r, g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dvl::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
