// circle-cli: lattice counts, error-term scans, exponent fits, analytic
// approximations, near-circle diagnostics and verification suites.
//
// Exit codes: 0 ok, 1 failed checks or internal error, 2 invalid input,
// 3 unwritable output, 4 too few dyadic blocks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circle/asymptotics.hpp"
#include "circle/counting.hpp"
#include "circle/harness.hpp"
#include "circle/nearfar.hpp"

namespace {

using namespace circle;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitWrite = 3;
constexpr int kExitBlocks = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw WriteError("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss circle problem toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file");

  // count
  auto* count = app.add_subcommand("count", "exact lattice count P(t)");
  std::int64_t count_t = 0;
  std::string count_method = "rows";
  count->add_option("--t", count_t, "radius squared")->required();
  count->add_option("--method", count_method, "brute | rows | kernel");

  // scan
  auto* scan = app.add_subcommand("scan", "tabulate P(t) and delta(t) to CSV");
  std::int64_t t_min = 1, t_max = 1, stride = 1;
  std::string scan_method = "rows", scan_out = "scan.csv", manifest_path;
  int jobs = 0;
  bool slow_ok = false;
  scan->add_option("--t-min", t_min)->required();
  scan->add_option("--t-max", t_max)->required();
  scan->add_option("--stride", stride);
  scan->add_option("--method", scan_method, "brute | rows | kernel");
  scan->add_option("--out", scan_out, "CSV path, relative to $CIRCLE_OUT_DIR when set");
  scan->add_option("--manifest", manifest_path, "manifest path (default <out>.manifest.json)");
  auto* jobs_opt = scan->add_option("--jobs", jobs, "worker threads");
  scan->add_flag("--slow-ok", slow_ok, "allow brute force past t = 1e6");

  // fit-exponent
  auto* fit = app.add_subcommand("fit-exponent", "dyadic-max exponent regression of a scan CSV");
  std::string fit_csv;
  std::size_t min_blocks = 4;
  fit->add_option("--csv", fit_csv)->required();
  fit->add_option("--min-blocks", min_blocks);

  // approx
  auto* approx = app.add_subcommand("approx", "Bessel-sum and quadrature approximations of P(t)");
  std::int64_t approx_t = 0, approx_Q = 0, mu_max = 0, nu_max = 0;
  bool with_quad = false;
  approx->add_option("--t", approx_t)->required();
  auto* q_opt = approx->add_option("--Q", approx_Q, "odd modulus (default from config)");
  approx->add_option("--mu-max", mu_max, "mu cutoff (default Q^2)");
  approx->add_option("--nu-max", nu_max, "nu cutoff (default Q^2)");
  approx->add_flag("--quadrature", with_quad, "also run the quadrature referee and T (t <= 400)");

  // nearfar
  auto* nearfar = app.add_subcommand("nearfar", "near-circle sums, L(t, R) and the pick identity");
  std::int64_t nf_t = 0, nf_R = 0, nf_mu = 9;
  double nf_eta = 0.0;
  nearfar->add_option("--t", nf_t)->required();
  nearfar->add_option("--R", nf_R, "near-circle cutoff (default floor t^(1/4 + epsilon))");
  nearfar->add_option("--mu-max", nf_mu, "mu cutoff for L");
  auto* eta_opt = nearfar->add_option("--eta", nf_eta, "split exponent in (0, 1/8]");

  // verify
  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string suite, report_path;
  std::uint64_t seed = 20241019;
  verify->add_option("--suite", suite)->required();
  verify->add_option("--report", report_path, "JSON report path, '-' for stdout");
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  std::vector<std::string> cmdline(argv, argv + argc);
  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);

    if (count->parsed()) {
      const auto r = count_lattice(count_t, parse_count_method(count_method));
      std::cout << "P(" << count_t << ") = " << r.count << "\n";
      return 0;
    }

    if (scan->parsed()) {
      const auto method = parse_count_method(scan_method);
      if (method == CountMethod::brute && t_max > 1'000'000 && !slow_ok) {
        throw InputError("brute force past t = 1e6 needs --slow-ok");
      }
      if (jobs_opt->count() > 0) cfg.jobs = jobs;
      if (cfg.jobs < 1) throw InputError("--jobs must be >= 1");
      const std::string out_path = resolve_output_path(scan_out);
      const std::string man_path =
          manifest_path.empty() ? out_path + ".manifest.json" : resolve_output_path(manifest_path);
      RunManifest man;
      man.command_line = cmdline;
      man.config = cfg.snapshot();
      man.version = library_version();
      man.started_at = utc_timestamp();
      const auto records = run_scan(t_min, t_max, stride, method, cfg.jobs);
      write_file(out_path, render_scan_csv(records));
      man.finished_at = utc_timestamp();
      man.output_digest = scan_digest(records);
      write_file(man_path, man.to_json() + "\n");
      std::cout << "wrote " << records.size() << " rows to " << out_path << "\n"
                << "digest " << man.output_digest << "\n";
      return 0;
    }

    if (fit->parsed()) {
      std::vector<ScanRecord> records;
      try {
        records = parse_scan_csv(read_file(fit_csv));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const auto f = fit_exponent(records, min_blocks);
      std::cout << "slope " << fmt(f.slope) << "\n"
                << "band95 " << fmt(f.band_low) << " " << fmt(f.band_high) << "\n"
                << "blocks " << f.blocks.size() << "\n"
                << "sign_changes " << f.sign_changes << "\n";
      for (const auto& b : f.blocks) {
        std::cout << "block k=" << b.k << " t=" << b.t_at_max << " max=" << fmt(b.max_abs)
                  << " residual=" << fmt(b.residual, 6) << "\n";
      }
      return 0;
    }

    if (approx->parsed()) {
      const std::int64_t Q = q_opt->count() > 0 ? approx_Q : cfg.default_Q;
      const auto params = TruncationParams::make(Q, mu_max, nu_max);
      const auto b = F_bessel(approx_t, params);
      std::cout << "t " << approx_t << "\nQ " << Q << "\nmu_max " << params.mu_max << "\nnu_max "
                << params.nu_max << "\nP " << b.exact_P << "\nF_bessel " << fmt(b.approx_value, 15)
                << "\nabs_error " << fmt(b.abs_error) << "\nnormalized_error "
                << fmt(b.normalized_error) << "\n";
      if (with_quad) {
        const auto c = compare_T_vs_F(approx_t, params, cfg.quad_tol);
        std::cout << "F_quadrature " << fmt(c.F_value, 15) << "\nT " << fmt(c.T_value, 15)
                  << "\nT_minus_F_ratio " << fmt(c.ratio) << "\n";
      }
      return 0;
    }

    if (nearfar->parsed()) {
      const double eta = eta_opt->count() > 0 ? nf_eta : cfg.default_eta;
      const auto sp = SplitParams::make(nf_t, eta);
      const std::int64_t R = nf_R > 0 ? nf_R : default_R(nf_t, cfg.default_epsilon);
      const auto r = nearfar_report(nf_t, R, nf_mu, cfg.quad_tol);
      std::cout << "t " << r.t << "\nR " << r.R << "\neta " << fmt(sp.eta) << "\ntau " << sp.tau
                << "\nalpha " << sp.alpha << "\n";
      if (r.has_direct) std::cout << "E_direct " << fmt(r.E_direct, 12) << "\n";
      std::cout << "E_reduced " << fmt(r.E_reduced, 12) << "\n";
      if (r.has_L) std::cout << "L " << fmt(r.L_value, 12) << "\n";
      std::cout << "psi_sum " << fmt(r.psi_sum, 12) << "\npick_residual " << fmt(r.pick_residual, 12)
                << "\n";
      return 0;
    }

    if (verify->parsed()) {
      const auto& names = verify_suites();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw InputError("unknown suite '" + suite + "'");
      }
      const auto rep = run_verify(suite, cfg, seed);
      for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual " << fmt(c.residual, 4)
                  << "  bound " << fmt(c.bound, 4) << "\n";
      }
      std::cout << (rep.pass ? "suite " + suite + " passed" : "suite " + suite + " FAILED") << "\n";
      const std::string json = rep.to_json() + "\n";
      if (report_path == "-") {
        std::cout << json;
      } else {
        write_file(resolve_output_path(report_path.empty() ? "verify-" + suite + ".json" : report_path),
                   json);
      }
      return rep.pass ? 0 : kExitFail;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const WriteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrite;
  } catch (const TooFewBlocks& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBlocks;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}
