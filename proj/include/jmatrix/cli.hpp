#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jmatrix/params.hpp"
#include "jmatrix/potmat.hpp"
#include "jmatrix/refsol.hpp"

namespace jmatrix::cli {

enum class Command { reference_convergence, scatter, quadrature_check, greens_check };

std::string to_string(Command c);
/// Throws ConfigError for an unknown name.
Command command_from_string(const std::string& s);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_failure = 1;
inline constexpr int config_error = 2;
inline constexpr int numerical_failure = 3;
inline constexpr int partial = 4;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::reference_convergence;
  bool command_in_file = false;

  int ell = 0;
  double strength = 9.25;  // A; nu = 3 at l = 0
  double lambda = 1.0;
  double mu = 2.0;

  BasisFamily basis_family = BasisFamily::laguerre;
  double beta = 4.0;

  PotentialKind potential_kind = PotentialKind::zero;
  double potential_v0 = 0.0;
  double potential_range = 1.0;
  std::string potential_table;  // resolved path
  PotentialModel potential = PotentialModel::zero();

  std::vector<std::size_t> n_list{100, 1000, 10000};
  double near_min = 1e-4;
  double near_max = 1e-2;
  std::size_t near_points = 60;
  double far_min = 20.0;
  double far_max = 40.0;
  std::size_t far_points = 401;

  double e_min = 0.1;
  double e_max = 5.0;
  std::size_t e_count = 50;
  std::size_t scatter_n = 200;
  std::size_t scatter_n_max = 0;  // 0: fixed size
  double delta_tol = 1e-3;
  std::size_t quad_order = 0;

  std::vector<std::size_t> check_sizes{2, 5, 10};
  double quadrature_tol = 1e-12;
  double green_tol = 1e-8;
  double residual_tol = 1e-8;
  std::size_t green_systems = 50;
  std::uint64_t seed = 20240611;

  Precision precision = Precision::standard;
  std::size_t jobs = 0;  // 0: hardware concurrency
  std::string out_dir = ".";

  BasisSpec basis() const { return {basis_family, beta}; }
  PhysicalParams params_at_k(double k) const { return {ell, strength, k, lambda}; }
  PhysicalParams reference_params() const { return params_at_k(mu * lambda); }
  double nu() const { return effective_nu(ell, strength); }

  /// Effective settings as `key = value` pairs, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses `key = value` lines with `#` comments. Relative table paths resolve
/// against `base_dir`. Every field is validated; throws ConfigError naming the key.
RunConfig parse_config(std::istream& in, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
/// Re-checks cross-field constraints after command-line overrides.
void validate(RunConfig& cfg);

struct RunReport {
  int exit_code = exit_code::ok;
  std::vector<std::string> files;
  std::vector<std::string> messages;
};

RunReport run_reference_convergence(const RunConfig& cfg);
RunReport run_scatter(const RunConfig& cfg);
RunReport run_self_checks(const RunConfig& cfg);
/// Dispatches on cfg.command; maps library errors to exit codes.
RunReport run(const RunConfig& cfg);

/// Shortest round-trip formatting; the output files depend on nothing else.
std::string format_number(double v);

/// Evaluates task(i) for i < count on `jobs` threads; results land at index i.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, std::size_t jobs, F task);

}  // namespace jmatrix::cli

#include "jmatrix/cli_pool.hpp"
