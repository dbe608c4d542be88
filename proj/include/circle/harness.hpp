#pragma once

// Orchestration behind the command-line tool: config files, error-term
// scans with CSV persistence, dyadic exponent fits, verification suites
// with JSON reports, and run manifests.

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circle/counting.hpp"
#include "circle/euler_maclaurin.hpp"
#include "circle/lattice.hpp"

namespace circle {

inline constexpr const char* kScanSchemaLine = "# circle-scan schema=1";
inline constexpr const char* kScanHeader = "t,P,delta,normalized,method,wall_ns";
inline constexpr const char* kOutDirEnv = "CIRCLE_OUT_DIR";

const char* library_version();

struct Config {
  std::int64_t default_Q = 5;
  double default_eta = 0.125;
  double default_epsilon = 0.05;
  double quad_tol = 1e-9;
  int jobs = 1;

  /// Flat `key = value` text with `#` comments. Unknown keys and
  /// malformed values throw std::invalid_argument.
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::map<std::string, std::string> snapshot() const;
};

/// Path under $CIRCLE_OUT_DIR when the variable is set and path is relative.
std::string resolve_output_path(const std::string& path);

struct ScanRecord {
  std::int64_t t = 0;
  std::int64_t P = 0;
  double delta = 0.0;
  double normalized = 0.0;  // delta / t^(1/4)
  CountMethod method = CountMethod::rows;
  std::int64_t wall_ns = 0;
};

ScanRecord scan_one(std::int64_t t, CountMethod method);

/// One record per t in [t_min, t_max] with the given stride, in ascending t
/// whatever the completion order across `jobs` workers.
std::vector<ScanRecord> run_scan(std::int64_t t_min, std::int64_t t_max, std::int64_t stride,
                                 CountMethod method, int jobs);

/// CSV text: schema comment, header, one line per record. With
/// include_wall = false the wall_ns column is written as 0, which is the
/// canonical form used for digests.
std::string render_scan_csv(const std::vector<ScanRecord>& records, bool include_wall = true);

/// Throws std::invalid_argument on a missing or unknown schema line, a
/// wrong header or a malformed row.
std::vector<ScanRecord> parse_scan_csv(const std::string& text);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

/// Digest of the canonical (wall-free) CSV form.
std::string scan_digest(const std::vector<ScanRecord>& records);

struct DyadicBlock {
  int k = 0;                // block [2^k, 2^(k+1))
  std::int64_t t_at_max = 0;
  double max_abs = 0.0;
  double residual = 0.0;    // log(max_abs) minus the fitted line
};

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double band_low = 0.0;   // 95% Student t band on the slope
  double band_high = 0.0;
  std::vector<DyadicBlock> blocks;
  std::size_t sign_changes = 0;  // sign flips of delta along the records
};

class TooFewBlocks : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Max |delta| per dyadic block, then least squares of log max against
/// log of the t attaining it. Blocks with a zero max are skipped.
/// Throws TooFewBlocks below `min_blocks` usable blocks.
ExponentFit fit_exponent(const std::vector<ScanRecord>& records, std::size_t min_blocks = 4);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass = false;
  std::string to_json() const;
};

/// Random strictly convex lattice polygon with vertices in [-span, span]^2
/// and at most max_boundary boundary points.
LatticePolygon random_lattice_polygon(std::mt19937_64& rng, int span, int max_boundary);

/// Named smooth fields for the planar Euler-Maclaurin checks.
std::vector<std::pair<std::string, SmoothFunction2D>> em2d_test_fields();

struct Em2dSweep {
  std::size_t polygons = 0;
  std::size_t fields = 0;
  std::size_t pairs = 0;
  double tol = 0.0;
  double identity_residual = 0.0;  // max |weighted sum - T|
  double inequality_excess = 0.0;  // max |lattice sum - T| - boundary |f| sum
};

Em2dSweep em2d_sweep(std::size_t polygons, std::uint64_t seed, double tol);

/// Nearest odd integer to x, at least 3.
std::int64_t nearest_odd(double x);

struct BandPoint {
  std::int64_t t = 0;
  std::int64_t Q = 0;
  double approx = 0.0;
  std::int64_t exact_P = 0;
  double normalized_error = 0.0;
};

/// F_bessel with Q = nearest_odd(t^(1/4)) and cutoffs Q^2 at each t.
std::vector<BandPoint> bessel_error_band(const std::vector<std::int64_t>& ts);

/// Least-squares slope of log max |pick_check| per dyadic block against
/// log 2^k, for blocks k >= first_k up to t_max. *sup gets the overall max.
double pick_block_slope(std::int64_t t_max, int first_k, double* sup = nullptr);

const std::vector<std::string>& verify_suites();

/// Runs a named suite. Throws std::invalid_argument for an unknown name.
VerifyReport run_verify(const std::string& suite, const Config& config, std::uint64_t seed);

struct RunManifest {
  std::vector<std::string> command_line;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::string version;
  std::string started_at;  // UTC, ISO 8601
  std::string finished_at;
  std::string output_digest;
  std::string to_json() const;
};

std::string utc_timestamp();

}  // namespace circle
