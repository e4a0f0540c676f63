#ifndef HTLPP_EXPERIMENTS_HPP_
#define HTLPP_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace htlpp {

inline constexpr const char* kVersion = "htlpp 0.1.0";

// Everything a run depends on. Serialized verbatim into manifest.json; two
// runs with equal manifests write byte-identical data files.
struct RunConfig {
  std::string subcommand;

  // Shared model parameters.
  double alpha = 1.0;
  std::size_t n = 50;
  std::size_t k = 1000;
  std::size_t dims = 2;
  std::size_t replicates = 100;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  std::filesystem::path output_dir = "out";

  // discrete
  std::string distribution = "pareto";  // pareto | exponential | slowly_varying_log
  std::filesystem::path weights_file;
  bool emit_tree = false;
  bool emit_path = false;

  // continuum: T_k is reported for every k in the ladder (default {k}).
  std::vector<std::size_t> k_ladder;

  // airy
  double tau = 1.0;
  std::size_t u_points = 21;
  std::size_t theta_points = 3;
  double z_min = 0.0;  // 0: derive from point_budget
  double point_budget = 5e4;

  // greedy
  double eps = 1.0 / 4096.0;
  double scale = 1.0 / 256.0;  // r for coarse local exponents
  std::size_t g_points = 101;

  // stable
  std::size_t m = 50;
  double delta = 0.0;  // 0: derive from jump_budget
  double jump_budget = 1000.0;
  double c_plus = 1.0;
  double c_minus = 0.0;
  std::size_t top_jumps = 50;

  // converge
  std::vector<std::size_t> n_ladder;
  std::uint64_t reference_seed = 0;  // 0: derived from master_seed

  nlohmann::json to_json() const;
  void validate() const;
};

struct RunResult {
  std::vector<std::filesystem::path> files;  // manifest first
};

// Dispatches on config.subcommand. Throws std::invalid_argument for bad
// configurations and std::runtime_error for I/O failures.
RunResult run(const RunConfig& config);

RunResult run_discrete(const RunConfig& config);
RunResult run_continuum(const RunConfig& config);
RunResult run_airy(const RunConfig& config);
RunResult run_greedy(const RunConfig& config);
RunResult run_stable(const RunConfig& config);
RunResult run_converge(const RunConfig& config);

// %.17g.
std::string format_double(double v);

// Whitespace-separated floats, row-major; the count must be a square.
std::vector<double> read_weights_file(const std::filesystem::path& path, std::size_t& side);

}  // namespace htlpp

#endif  // HTLPP_EXPERIMENTS_HPP_
