#include "circle/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "circle/asymptotics.hpp"
#include "circle/euler_maclaurin.hpp"
#include "circle/lattice.hpp"
#include "circle/nearfar.hpp"
#include "circle/numerics.hpp"
#include "circle/quadrature.hpp"
#include "json.hpp"

#ifndef CIRCLE_VERSION
#define CIRCLE_VERSION "0.0.0"
#endif

namespace circle {

using nlohmann::json;

const char* library_version() { return CIRCLE_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: bad integer for " + key);
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: bad number for " + key);
  return out;
}

// shortest text that reads back to the same double
std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " lacks '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "default_Q") {
      c.default_Q = parse_int(key, val);
    } else if (key == "default_eta") {
      c.default_eta = parse_real(key, val);
    } else if (key == "default_epsilon") {
      c.default_epsilon = parse_real(key, val);
    } else if (key == "quad_tol") {
      c.quad_tol = parse_real(key, val);
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(parse_int(key, val));
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  if (c.default_Q < 3 || c.default_Q % 2 == 0) {
    throw std::invalid_argument("config: default_Q must be odd and >= 3");
  }
  if (!(c.default_eta > 0.0 && c.default_eta <= 0.125)) {
    throw std::invalid_argument("config: default_eta must lie in (0, 1/8]");
  }
  if (!(c.default_epsilon > 0.0)) throw std::invalid_argument("config: default_epsilon must be > 0");
  if (!(c.quad_tol > 0.0)) throw std::invalid_argument("config: quad_tol must be > 0");
  if (c.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::map<std::string, std::string> Config::snapshot() const {
  return {{"default_Q", std::to_string(default_Q)},
          {"default_eta", format_double(default_eta)},
          {"default_epsilon", format_double(default_epsilon)},
          {"quad_tol", format_double(quad_tol)},
          {"jobs", std::to_string(jobs)}};
}

std::string resolve_output_path(const std::string& path) {
  const char* dir = std::getenv(kOutDirEnv);
  if (dir == nullptr || *dir == '\0') return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

ScanRecord scan_one(std::int64_t t, CountMethod method) {
  const auto start = std::chrono::steady_clock::now();
  const auto res = count_lattice(t, method);
  const auto stop = std::chrono::steady_clock::now();
  ScanRecord r;
  r.t = t;
  r.P = res.count;
  r.delta = delta_from_count(t, res.count);
  r.normalized = t > 0 ? r.delta / std::pow(static_cast<double>(t), 0.25) : 0.0;
  r.method = method;
  r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return r;
}

std::vector<ScanRecord> run_scan(std::int64_t t_min, std::int64_t t_max, std::int64_t stride,
                                 CountMethod method, int jobs) {
  if (t_min < 1 || t_min > t_max) throw std::domain_error("scan: requires 1 <= t_min <= t_max");
  if (stride < 1) throw std::domain_error("scan: stride must be >= 1");
  if (jobs < 1) throw std::domain_error("scan: jobs must be >= 1");
  const auto n = static_cast<std::size_t>((t_max - t_min) / stride + 1);
  std::vector<ScanRecord> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    // claim small chunks so fast workers take over the remaining range
    constexpr std::size_t chunk = 64;
    for (;;) {
      const std::size_t lo = next.fetch_add(chunk);
      if (lo >= n) return;
      const std::size_t hi = std::min(n, lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = scan_one(t_min + static_cast<std::int64_t>(i) * stride, method);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string render_scan_csv(const std::vector<ScanRecord>& records, bool include_wall) {
  std::string out;
  out.reserve(64 * (records.size() + 2));
  out += kScanSchemaLine;
  out += '\n';
  out += kScanHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.t);
    out += ',';
    out += std::to_string(r.P);
    out += ',';
    out += format_double(r.delta);
    out += ',';
    out += format_double(r.normalized);
    out += ',';
    out += to_string(r.method);
    out += ',';
    out += std::to_string(include_wall ? r.wall_ns : 0);
    out += '\n';
  }
  return out;
}

std::vector<ScanRecord> parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("scan csv: empty input");
  line = trim(line);
  if (line.rfind("# circle-scan schema=", 0) != 0) {
    throw std::invalid_argument("scan csv: missing schema line");
  }
  if (line != kScanSchemaLine) throw std::invalid_argument("scan csv: unknown schema " + line);
  if (!std::getline(in, line) || trim(line) != kScanHeader) {
    throw std::invalid_argument("scan csv: unexpected header");
  }
  std::vector<ScanRecord> out;
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) {
      throw std::invalid_argument("scan csv: row " + std::to_string(row) + " has wrong arity");
    }
    ScanRecord r;
    try {
      r.t = parse_int("t", f[0]);
      r.P = parse_int("P", f[1]);
      r.delta = parse_real("delta", f[2]);
      r.normalized = parse_real("normalized", f[3]);
      r.method = parse_count_method(f[4]);
      r.wall_ns = parse_int("wall_ns", f[5]);
    } catch (const std::exception& e) {
      throw std::invalid_argument("scan csv: row " + std::to_string(row) + ": " + e.what());
    }
    out.push_back(r);
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string scan_digest(const std::vector<ScanRecord>& records) {
  return sha256_hex(render_scan_csv(records, false));
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      ssr += r * r;
    }
    f.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return f;
}

int floor_log2(std::int64_t t) {
  int k = -1;
  while (t > 0) {
    t >>= 1;
    ++k;
  }
  return k;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<ScanRecord>& records, std::size_t min_blocks) {
  std::map<int, DyadicBlock> by_k;
  ExponentFit fit;
  int last_sign = 0;
  for (const auto& r : records) {
    if (r.t < 1) continue;
    const int s = (r.delta > 0) - (r.delta < 0);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++fit.sign_changes;
      last_sign = s;
    }
    const int k = floor_log2(r.t);
    auto& b = by_k[k];
    b.k = k;
    const double a = std::abs(r.delta);
    if (a > b.max_abs) {
      b.max_abs = a;
      b.t_at_max = r.t;
    }
  }
  std::vector<double> x, y;
  for (auto& [k, b] : by_k) {
    if (!(b.max_abs > 0.0)) continue;
    fit.blocks.push_back(b);
    x.push_back(std::log(static_cast<double>(b.t_at_max)));
    y.push_back(std::log(b.max_abs));
  }
  if (fit.blocks.size() < std::max<std::size_t>(min_blocks, 2)) {
    throw TooFewBlocks("fit-exponent: need at least " + std::to_string(min_blocks) +
                       " dyadic blocks, have " + std::to_string(fit.blocks.size()));
  }
  const auto lf = least_squares(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.slope_stderr = lf.stderr_slope;
  double half = 0.0;
  if (fit.blocks.size() > 2) {
    boost::math::students_t dist(static_cast<double>(fit.blocks.size() - 2));
    half = boost::math::quantile(dist, 0.975) * lf.stderr_slope;
  }
  fit.band_low = fit.slope - half;
  fit.band_high = fit.slope + half;
  for (std::size_t i = 0; i < fit.blocks.size(); ++i) {
    fit.blocks[i].residual = y[i] - lf.intercept - lf.slope * x[i];
  }
  return fit;
}

std::string VerifyReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"residual", c.residual}, {"bound", c.bound},
                           {"pass", c.pass}});
  }
  j["pass"] = pass;
  return j.dump(2);
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"em1d",          "em2d",   "kernel-identity", "bessel",
                                             "approximation", "nearfar", "all"};
  return s;
}

namespace {

void add(std::vector<CheckResult>& out, const std::string& name, double residual, double bound) {
  out.push_back({name, residual, bound, std::isfinite(residual) && residual <= bound});
}

std::vector<CheckResult> suite_em1d() {
  std::vector<CheckResult> c;
  auto id = [](double x) { return x; };
  auto one = [](double) { return 1.0; };
  auto sq = [](double x) { return x * x; };
  auto dsq = [](double x) { return 2 * x; };
  add(c, "sum p, 0 < p <= 10", std::abs(em1d(id, one, 0.0, 10.0) - 55.0), 1e-10);
  add(c, "sum p^2, 0 < p <= 3", std::abs(em1d(sq, dsq, 0.0, 3.0) - 14.0), 1e-10);
  add(c, "sum p^2, -2.3 < p <= 4", std::abs(em1d(sq, dsq, -2.3, 4.0) - 35.0), 1e-10);
  std::vector<RealFunction> cube = {[](double x) { return x * x * x; },
                                    [](double x) { return 3 * x * x; },
                                    [](double x) { return 6 * x; }, [](double) { return 6.0; },
                                    [](double) { return 0.0; }};
  add(c, "expansion depth 4, p^3 on [-0.5, 4.5]",
      std::abs(em1d_expansion(cube, -0.5, 4.5, 4) - 100.0), 1e-10);
  std::vector<RealFunction> inv = {[](double x) { return 1 / (x * x); },
                                   [](double x) { return -2 / (x * x * x); },
                                   [](double x) { return 6 / (x * x * x * x); },
                                   [](double x) { return -24 / std::pow(x, 5); }};
  double direct = 0;
  for (int p = 100; p >= 1; --p) direct += 1.0 / (static_cast<double>(p) * p);
  add(c, "sum p^-2, p <= 100", std::abs(em1d_expansion(inv, 0.5, 100.5, 3) - direct), 1e-8);
  return c;
}

}  // namespace

LatticePolygon random_lattice_polygon(std::mt19937_64& rng, int span, int max_boundary) {
  std::uniform_int_distribution<int> coord(-span, span);
  for (;;) {
    std::vector<LatticePoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({coord(rng), coord(rng)});
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    LatticePolygon p(hull);
    std::int64_t b = 0;
    for (const auto& e : p.edges()) b += e.lambda;
    if (b <= max_boundary) return p;
  }
}

std::vector<std::pair<std::string, SmoothFunction2D>> em2d_test_fields() {
  std::vector<std::pair<std::string, SmoothFunction2D>> out;
  SmoothFunction2D one;
  one.value = [](double, double) { return cplx(1.0); };
  one.dx = one.dy = one.dxy = [](double, double) { return cplx(0.0); };
  out.emplace_back("constant", one);
  SmoothFunction2D cubic;
  cubic.value = [](double x, double y) { return cplx(x * x * y + 0.3 * y * y - x + 2.0); };
  cubic.dx = [](double x, double y) { return cplx(2 * x * y - 1.0); };
  cubic.dy = [](double x, double y) { return cplx(x * x + 0.6 * y); };
  cubic.dxy = [](double x, double) { return cplx(2 * x); };
  out.emplace_back("cubic", cubic);
  SmoothFunction2D cosine;
  cosine.value = [](double x, double y) { return cplx(std::cos(0.7 * x + 0.4 * y)); };
  cosine.dx = [](double x, double y) { return cplx(-0.7 * std::sin(0.7 * x + 0.4 * y)); };
  cosine.dy = [](double x, double y) { return cplx(-0.4 * std::sin(0.7 * x + 0.4 * y)); };
  cosine.dxy = [](double x, double y) { return cplx(-0.28 * std::cos(0.7 * x + 0.4 * y)); };
  cosine.frequency_hint = 0.13;
  out.emplace_back("cosine", cosine);
  out.emplace_back("plane wave (1/5, 2/5)", plane_wave(0.2, 0.4));
  out.emplace_back("plane wave (-2/7, 1/7)", plane_wave(-2.0 / 7.0, 1.0 / 7.0));
  out.emplace_back("dirichlet Q=3", dirichlet_field(3));
  return out;
}

Em2dSweep em2d_sweep(std::size_t polygons, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  const auto fields = em2d_test_fields();
  Em2dSweep s;
  s.tol = tol;
  s.identity_residual = 0.0;
  s.inequality_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygons; ++i) {
    const auto p = random_lattice_polygon(rng, 6, 40);
    for (const auto& [name, f] : fields) {
      const auto r = T_polygon(p, f, tol);
      s.identity_residual = std::max(s.identity_residual, std::abs(r.weighted_sum - r.T_value));
      s.inequality_excess =
          std::max(s.inequality_excess, std::abs(r.lattice_sum - r.T_value) - r.boundary_abs_sum);
      ++s.pairs;
    }
  }
  s.polygons = polygons;
  s.fields = fields.size();
  return s;
}

namespace {

std::vector<CheckResult> suite_em2d(const Config& cfg, std::uint64_t seed) {
  std::vector<CheckResult> c;
  const double tol = std::max(cfg.quad_tol, 1e-10);
  const auto s = em2d_sweep(12, seed, tol);
  add(c, "weighted sum equals T (12 polygons x 6 fields)", s.identity_residual, 10 * tol);
  add(c, "|lattice sum - T| - boundary |f| sum", s.inequality_excess, 10 * tol);
  return c;
}

std::vector<CheckResult> suite_kernel_identity() {
  std::vector<CheckResult> c;
  for (std::int64_t Q : {1, 3, 5, 7, 9}) {
    double worst = 0.0;
    bool inside = true;
    for (std::int64_t t = 1; t <= 50; ++t) {
      const auto r = verify_identity_2(t, Q);
      worst = std::max(worst, r.residual);
      inside = inside && r.hull_inside_disk;
    }
    add(c, "kernel sum over hull equals P(t), t <= 50, Q = " + std::to_string(Q), worst, 1e-9);
    add(c, "hull inside the scaled disk, Q = " + std::to_string(Q), inside ? 0.0 : 1.0, 0.0);
  }
  return c;
}

std::vector<CheckResult> suite_bessel(std::uint64_t seed) {
  std::vector<CheckResult> c;
  double worst = 0.0;
  for (int order : {0, 1}) {
    for (int i = 0; i <= 4000; ++i) {
      const double x = 0.01 * i;
      worst = std::max(worst, std::abs(bessel_j(order, x) - std::cyl_bessel_j(order, x)));
    }
  }
  add(c, "J0, J1 against the standard library on [0, 40]", worst, 1e-10);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ab(-3, 3);
  std::uniform_real_distribution<double> tt(0.5, 30.0);
  double disk = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int a = ab(rng), b = ab(rng);
    const double t = tt(rng);
    const auto q = integrate_disk([=](double x, double y) { return e(a * x + b * y); }, t, 1e-9,
                                  std::hypot(a, b));
    disk = std::max(disk, std::abs(q.value - cplx(disk_fourier_integral(a, b, t))));
  }
  add(c, "disk quadrature against sqrt(t/s) J1(2 pi sqrt(t s)), 20 draws", disk, 1e-6);
  double cont = 0.0;
  for (double s : {1e-6, 1e-9, 1e-12}) {
    cont = std::max(cont, std::abs(disk_fourier_integral(std::sqrt(s), 0.0, 10.0) - 10 * kPi) / 10);
  }
  add(c, "continuity at the origin, relative", cont, 1e-3);
  return c;
}

}  // namespace

std::int64_t nearest_odd(double x) {
  auto q = 2 * static_cast<std::int64_t>(std::llround((x - 1.0) / 2.0)) + 1;
  return q < 3 ? 3 : q;
}

std::vector<BandPoint> bessel_error_band(const std::vector<std::int64_t>& ts) {
  std::vector<BandPoint> out;
  for (auto t : ts) {
    const auto Q = nearest_odd(std::pow(static_cast<double>(t), 0.25));
    const auto r = F_bessel(t, TruncationParams::make(Q));
    out.push_back({t, Q, r.approx_value, r.exact_P, r.normalized_error});
  }
  return out;
}

namespace {

std::vector<CheckResult> suite_approximation(const Config& cfg) {
  std::vector<CheckResult> c;
  const auto p3 = TruncationParams::make(3);
  const auto series = F_fourier_series(10, p3);
  const auto quad = F_quadrature_report(10, p3, PsiMode::fourier, 1e-10);
  add(c, "fourier-mode quadrature against the series, t = 10, Q = 3",
      std::abs(series.approx_value - quad.value), 1e-3);
  add(c, "imaginary residue of the quadrature", quad.imag_residue, 1e-9);
  const auto band = bessel_error_band({100, 400, 1600, 6400});
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& b : band) {
    lo = std::min(lo, b.normalized_error);
    hi = std::max(hi, b.normalized_error);
  }
  add(c, "F_bessel normalized error band ratio, Q ~ t^(1/4)", lo > 0 ? hi / lo : INFINITY, 10.0);
  double ratio = 0.0;
  for (std::int64_t Q : {3, 5}) {
    ratio = std::max(ratio, compare_T_vs_F(25, TruncationParams::make(Q), cfg.quad_tol).ratio);
  }
  add(c, "|T - F| / ((sqrt t / Q) ln^2 Q), t = 25", ratio, 10.0);
  return c;
}

}  // namespace

double pick_block_slope(std::int64_t t_max, int first_k, double* sup) {
  std::vector<double> x, y;
  double best = 0.0;
  for (int k = 1; (std::int64_t{1} << k) <= t_max; ++k) {
    double mx = 0.0;
    const std::int64_t lo = std::max<std::int64_t>(2, std::int64_t{1} << k);
    const std::int64_t hi = std::min<std::int64_t>((std::int64_t{1} << (k + 1)) - 1, t_max);
    for (std::int64_t t = lo; t <= hi; ++t) mx = std::max(mx, std::abs(pick_check(t)));
    best = std::max(best, mx);
    if (k >= first_k && mx > 0.0) {
      x.push_back(std::log(std::pow(2.0, k)));
      y.push_back(std::log(mx));
    }
  }
  if (sup != nullptr) *sup = best;
  if (x.size() < 2) throw TooFewBlocks("pick_block_slope: fewer than two blocks");
  return least_squares(x, y).slope;
}

namespace {

std::vector<CheckResult> suite_nearfar(const Config& cfg) {
  std::vector<CheckResult> c;
  const std::int64_t t = 25;
  const auto R = default_R(t, cfg.default_epsilon);
  const double d = E_sum(t, R, EMode::direct, cfg.quad_tol);
  const double r = E_sum(t, R, EMode::reduced, cfg.quad_tol);
  add(c, "|E direct - E reduced| / ln^2 t, t = 25", std::abs(d - r) / std::pow(std::log(25.0), 2),
      10.0);
  const double a = L_sum(100, 3, 9, 1e-9), b = L_sum(100, 3, 9, 1e-12);
  add(c, "L(100, 3) across quadrature tolerances", std::abs(a - b), 1e-6);
  double sup = 0.0;
  const double slope = pick_block_slope(10'000, 8, &sup);
  add(c, "pick identity residual, sup over t <= 1e4", sup, 1.0);
  add(c, "pick identity residual, dyadic block slope", slope, 0.05);
  return c;
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const Config& config, std::uint64_t seed) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("verify: unknown suite " + suite);
  }
  VerifyReport rep;
  rep.suite = suite;
  auto want = [&](const char* n) { return suite == "all" || suite == n; };
  auto append = [&](std::vector<CheckResult> v) {
    for (auto& x : v) rep.checks.push_back(std::move(x));
  };
  if (want("em1d")) append(suite_em1d());
  if (want("em2d")) append(suite_em2d(config, seed));
  if (want("kernel-identity")) append(suite_kernel_identity());
  if (want("bessel")) append(suite_bessel(seed));
  if (want("approximation")) append(suite_approximation(config));
  if (want("nearfar")) append(suite_nearfar(config));
  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
  return rep;
}

std::string RunManifest::to_json() const {
  json j;
  j["command_line"] = command_line;
  j["config"] = config;
  j["seed"] = seed;
  j["version"] = version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["output_digest"] = output_digest;
  return j.dump(2);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace circle
