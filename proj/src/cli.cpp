#include "jmatrix/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "jmatrix/errors.hpp"
#include "jmatrix/greens.hpp"
#include "jmatrix/linalg.hpp"
#include "jmatrix/smatrix.hpp"
#include "jmatrix/specfun.hpp"

namespace jmatrix::cli {
namespace fs = std::filesystem;

std::string to_string(Command c) {
  switch (c) {
    case Command::reference_convergence: return "reference-convergence";
    case Command::scatter: return "scatter";
    case Command::quadrature_check: return "quadrature-check";
    case Command::greens_check: return "greens-check";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::reference_convergence, Command::scatter, Command::quadrature_check,
                    Command::greens_check})
    if (to_string(c) == s) return c;
  throw ConfigError("command", "unknown command '" + s + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

std::size_t to_size(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < 0) throw ConfigError(key, "must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> to_size_list(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_size(key, trim(item)));
  if (out.empty()) throw ConfigError(key, "list must not be empty");
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

struct Pending {
  std::optional<double> strength;
  std::optional<double> nu;
  std::optional<std::string> table;
  std::optional<Command> command;
};

using Setter = std::function<void(RunConfig&, Pending&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["command"] = [](RunConfig&, Pending& p, const std::string&, const std::string& v) {
      p.command = command_from_string(v);
    };
    m["physics.ell"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) {
      c.ell = static_cast<int>(to_integer(k, v));
    };
    m["physics.A"] = [](RunConfig&, Pending& p, const std::string& k, const std::string& v) { p.strength = to_double(k, v); };
    m["physics.nu"] = [](RunConfig&, Pending& p, const std::string& k, const std::string& v) { p.nu = to_double(k, v); };
    m["physics.lambda"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.lambda = to_double(k, v); };
    m["physics.mu"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.mu = to_double(k, v); };
    m["basis.family"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) {
      try {
        c.basis_family = basis_family_from_string(v);
      } catch (const Error& e) {
        throw ConfigError(k, e.what());
      }
    };
    m["basis.beta"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.beta = to_double(k, v); };
    m["potential.kind"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) {
      try {
        c.potential_kind = potential_kind_from_string(v);
      } catch (const Error& e) {
        throw ConfigError(k, e.what());
      }
    };
    m["potential.v0"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.potential_v0 = to_double(k, v); };
    m["potential.range"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.potential_range = to_double(k, v); };
    m["potential.table"] = [](RunConfig&, Pending& p, const std::string&, const std::string& v) { p.table = v; };
    m["reference.n_list"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.n_list = to_size_list(k, v); };
    m["reference.near_min"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.near_min = to_double(k, v); };
    m["reference.near_max"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.near_max = to_double(k, v); };
    m["reference.near_points"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.near_points = to_size(k, v); };
    m["reference.far_min"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.far_min = to_double(k, v); };
    m["reference.far_max"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.far_max = to_double(k, v); };
    m["reference.far_points"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.far_points = to_size(k, v); };
    m["scatter.e_min"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.e_min = to_double(k, v); };
    m["scatter.e_max"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.e_max = to_double(k, v); };
    m["scatter.e_count"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.e_count = to_size(k, v); };
    m["scatter.n"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.scatter_n = to_size(k, v); };
    m["scatter.n_max"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.scatter_n_max = to_size(k, v); };
    m["scatter.delta_tol"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.delta_tol = to_double(k, v); };
    m["scatter.quad_order"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.quad_order = to_size(k, v); };
    m["check.sizes"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.check_sizes = to_size_list(k, v); };
    m["check.quadrature_tol"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.quadrature_tol = to_double(k, v); };
    m["check.green_tol"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.green_tol = to_double(k, v); };
    m["check.residual_tol"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.residual_tol = to_double(k, v); };
    m["check.green_systems"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.green_systems = to_size(k, v); };
    m["check.seed"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.seed = to_size(k, v); };
    m["precision"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) {
      try {
        c.precision = precision_from_string(v);
      } catch (const Error& e) {
        throw ConfigError(k, e.what());
      }
    };
    m["jobs"] = [](RunConfig& c, Pending&, const std::string& k, const std::string& v) { c.jobs = to_size(k, v); };
    return m;
  }();
  return table;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", to_string(command));
  e.emplace_back("physics.ell", std::to_string(ell));
  e.emplace_back("physics.A", format_number(strength));
  e.emplace_back("physics.nu", format_number(nu()));
  e.emplace_back("physics.lambda", format_number(lambda));
  e.emplace_back("physics.mu", format_number(mu));
  e.emplace_back("basis.family", basis_family == BasisFamily::laguerre ? "laguerre" : "oscillator");
  e.emplace_back("basis.beta", format_number(beta));
  e.emplace_back("potential.kind", to_string(potential_kind));
  e.emplace_back("potential.v0", format_number(potential_v0));
  e.emplace_back("potential.range", format_number(potential_range));
  e.emplace_back("potential.table", potential_table);
  e.emplace_back("reference.n_list", join(n_list));
  e.emplace_back("reference.near_min", format_number(near_min));
  e.emplace_back("reference.near_max", format_number(near_max));
  e.emplace_back("reference.near_points", std::to_string(near_points));
  e.emplace_back("reference.far_min", format_number(far_min));
  e.emplace_back("reference.far_max", format_number(far_max));
  e.emplace_back("reference.far_points", std::to_string(far_points));
  e.emplace_back("scatter.e_min", format_number(e_min));
  e.emplace_back("scatter.e_max", format_number(e_max));
  e.emplace_back("scatter.e_count", std::to_string(e_count));
  e.emplace_back("scatter.n", std::to_string(scatter_n));
  e.emplace_back("scatter.n_max", std::to_string(scatter_n_max));
  e.emplace_back("scatter.delta_tol", format_number(delta_tol));
  e.emplace_back("scatter.quad_order", std::to_string(quad_order));
  e.emplace_back("check.sizes", join(check_sizes));
  e.emplace_back("check.quadrature_tol", format_number(quadrature_tol));
  e.emplace_back("check.green_tol", format_number(green_tol));
  e.emplace_back("check.residual_tol", format_number(residual_tol));
  e.emplace_back("check.green_systems", std::to_string(green_systems));
  e.emplace_back("check.seed", std::to_string(seed));
  e.emplace_back("precision", to_string(precision));
  return e;
}

void validate(RunConfig& c) {
  require(c.ell >= 0, "physics.ell", "must be >= 0");
  require(c.lambda > 0.0, "physics.lambda", "must be positive");
  require(c.mu > 0.0, "physics.mu", "must be positive");
  try {
    (void)effective_nu(c.ell, c.strength);
  } catch (const RegimeError& e) {
    throw ConfigError("physics.A", e.what());
  }
  require(c.beta > -1.0, "basis.beta", "must exceed -1");

  if (c.potential_kind == PotentialKind::tabulated) {
    require(!c.potential_table.empty(), "potential.table", "required for a tabulated potential");
    std::ifstream in(c.potential_table);
    require(static_cast<bool>(in), "potential.table", "cannot open '" + c.potential_table + "'");
    try {
      c.potential = PotentialModel::read_table(in);
    } catch (const Error& e) {
      throw ConfigError("potential.table", e.what());
    }
  } else if (c.potential_kind == PotentialKind::zero) {
    c.potential = PotentialModel::zero();
  } else {
    require(c.potential_range > 0.0, "potential.range", "must be positive");
    c.potential = PotentialModel::parametric(c.potential_kind, c.potential_v0, c.potential_range);
  }

  for (std::size_t n : c.n_list) require(n >= 4, "reference.n_list", "every N must be >= 4");
  require(c.near_min > 0.0 && c.near_min < c.near_max, "reference.near_min", "need 0 < near_min < near_max");
  require(c.near_points >= 2, "reference.near_points", "must be >= 2");
  require(c.far_min > 0.0 && c.far_min < c.far_max, "reference.far_min", "need 0 < far_min < far_max");
  require(c.far_points >= 2, "reference.far_points", "must be >= 2");

  require(c.e_min > 0.0, "scatter.e_min", "must be positive");
  require(c.e_max >= c.e_min, "scatter.e_max", "must be >= scatter.e_min");
  require(c.e_count >= 1, "scatter.e_count", "must be >= 1");
  require(c.scatter_n >= 5, "scatter.n", "must be >= 5");
  require(c.scatter_n_max == 0 || c.scatter_n_max >= c.scatter_n, "scatter.n_max", "must be 0 or >= scatter.n");
  require(c.delta_tol > 0.0, "scatter.delta_tol", "must be positive");

  for (std::size_t n : c.check_sizes) require(n >= 1, "check.sizes", "every size must be >= 1");
  require(c.quadrature_tol > 0.0, "check.quadrature_tol", "must be positive");
  require(c.green_tol > 0.0, "check.green_tol", "must be positive");
  require(c.residual_tol > 0.0, "check.residual_tol", "must be positive");
  require(c.green_systems >= 1, "check.green_systems", "must be >= 1");
}

RunConfig parse_config(std::istream& in, const std::string& base_dir) {
  RunConfig c;
  Pending p;
  std::map<std::string, int> seen;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
    if (seen[key]++) throw ConfigError(key, "given more than once");
    if (value.empty()) throw ConfigError(key, "empty value");
    it->second(c, p, key, value);
  }
  if (p.command) {
    c.command = *p.command;
    c.command_in_file = true;
  }
  if (p.strength && p.nu) throw ConfigError("physics.nu", "give either physics.A or physics.nu, not both");
  if (p.nu) {
    require(*p.nu > 0.0, "physics.nu", "must be positive");
    c.strength = *p.nu * *p.nu + (c.ell + 0.5) * (c.ell + 0.5);
  } else if (p.strength) {
    c.strength = *p.strength;
  } else {
    c.strength = 9.0 + (c.ell + 0.5) * (c.ell + 0.5);
  }
  if (p.table) {
    const fs::path t(*p.table);
    c.potential_table = (t.is_absolute() ? t : fs::path(base_dir) / t).lexically_normal().string();
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  return parse_config(in, fs::path(path).parent_path().string().empty() ? "." : fs::path(path).parent_path().string());
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const RunConfig& cfg, const std::string& name, const std::vector<std::string>& columns,
            const std::vector<std::string>& notes = {})
      : path_((fs::path(cfg.out_dir) / name).string()), out_(path_) {
    if (!out_) throw std::ios_base::failure("cannot write '" + path_ + "'");
    out_ << "# jmatrix " << to_string(cfg.command) << "\n";
    for (const auto& [k, v] : cfg.echo()) out_ << "# " << k << " = " << v << "\n";
    for (const auto& n : notes) out_ << "# note: " << n << "\n";
    out_ << "# columns = ";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  const std::string& path() const { return path_; }

  ~CsvWriter() { out_.flush(); }

 private:
  std::string path_;
  std::ofstream out_;
};

void prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw std::ios_base::failure("cannot create '" + cfg.out_dir + "': " + ec.message());
}

std::vector<double> reference_grid(const RunConfig& c, std::size_t& near_count) {
  std::vector<double> x;
  const double lr = std::log(c.near_max / c.near_min);
  for (std::size_t i = 0; i < c.near_points; ++i)
    x.push_back(c.near_min * std::exp(lr * static_cast<double>(i) / static_cast<double>(c.near_points - 1)));
  near_count = x.size();
  for (std::size_t i = 0; i < c.far_points; ++i)
    x.push_back(c.far_min + (c.far_max - c.far_min) * static_cast<double>(i) / static_cast<double>(c.far_points - 1));
  return x;
}

}  // namespace

RunReport run_reference_convergence(const RunConfig& cfg) {
  RunReport rep;
  prepare_output(cfg);
  const auto params = cfg.reference_params();
  const auto basis = cfg.basis();
  std::vector<std::size_t> sizes = cfg.n_list;
  const std::size_t n_max = *std::max_element(sizes.begin(), sizes.end());
  const auto coeffs = expand_coefficients(basis, params, std::max<std::size_t>(n_max, 4), ExpansionMethod::ratio,
                                          cfg.precision);
  for (const auto& w : coeffs.warnings) rep.messages.push_back("warning: " + w);

  std::size_t near_count = 0;
  const auto grid = reference_grid(cfg, near_count);
  struct Point {
    cplx exact;
    std::vector<cplx> series;
  };
  const auto points = parallel_map<Point>(grid.size(), cfg.jobs, [&](std::size_t i) {
    Point pt;
    pt.exact = chi_reference(Sign::plus, params, grid[i]);
    const auto phi = basis_values(basis, n_max, params.lambda() * grid[i]);
    // Partial sums at every requested N from one pass.
    std::vector<std::size_t> order(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
    pt.series.resize(sizes.size());
    cplx sum = 0.0;
    std::size_t done = 0;
    for (std::size_t k : order) {
      for (; done < sizes[k]; ++done) sum += coeffs.plus[done] * phi[done];
      pt.series[k] = sum;
    }
    return pt;
  });

  CsvWriter summary(cfg, "reference_summary.csv",
                    {"N", "far_max_abs_error", "near_max_abs_error", "far_max_abs_exact", "near_max_abs_exact",
                     "far_relative_error", "near_relative_error"});
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::string name = "reference_N" + std::to_string(sizes[k]) + ".csv";
    CsvWriter out(cfg, name, {"x", "re_exact", "im_exact", "re_series", "im_series", "abs_error", "window"});
    double err[2] = {0.0, 0.0}, amp[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx e = points[i].exact, s = points[i].series[k];
      const double d = std::abs(s - e);
      const int w = i < near_count ? 0 : 1;
      err[w] = std::max(err[w], d);
      amp[w] = std::max(amp[w], std::abs(e));
      out.row({format_number(grid[i]), format_number(e.real()), format_number(e.imag()), format_number(s.real()),
               format_number(s.imag()), format_number(d), w == 0 ? "near" : "far"});
    }
    summary.row({std::to_string(sizes[k]), format_number(err[1]), format_number(err[0]), format_number(amp[1]),
                 format_number(amp[0]), format_number(err[1] / amp[1]), format_number(err[0] / amp[0])});
    rep.files.push_back(out.path());
    rep.messages.push_back("N = " + std::to_string(sizes[k]) + ": far max error " + format_number(err[1]) +
                           ", near relative error " + format_number(err[0] / amp[0]));
  }
  rep.files.push_back(summary.path());
  return rep;
}

RunReport run_scatter(const RunConfig& cfg) {
  RunReport rep;
  prepare_output(cfg);
  const auto basis = cfg.basis();
  const double nu = cfg.nu();
  ScatterOptions opt;
  opt.quad_order = cfg.quad_order;
  opt.precision = cfg.precision;

  std::mutex cache_mutex;
  std::map<std::size_t, std::shared_ptr<const InnerProblem>> cache;
  auto inner_for = [&](std::size_t n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const InnerProblem>(basis, nu, cfg.lambda, cfg.potential, n, opt);
    return slot;
  };

  struct Row {
    double energy = 0.0, k = 0.0;
    cplx s{NAN, NAN};
    double delta = NAN, defect = NAN, bc_prev = NAN, bc_last = NAN;
    std::size_t n = 0;
    std::string flag = "ok";
  };
  const bool reference_only = cfg.potential.is_zero();
  const auto rows = parallel_map<Row>(cfg.e_count, cfg.jobs, [&](std::size_t i) {
    Row r;
    r.energy = cfg.e_count == 1 ? cfg.e_min
                                : cfg.e_min + (cfg.e_max - cfg.e_min) * static_cast<double>(i) /
                                                  static_cast<double>(cfg.e_count - 1);
    r.k = std::sqrt(2.0 * r.energy);
    const auto params = cfg.params_at_k(r.k);
    try {
      std::size_t n = cfg.scatter_n;
      std::optional<double> prev;
      for (;;) {
        const auto res = s_matrix(*inner_for(n), params);
        r.s = res.s;
        r.delta = res.delta;
        r.defect = res.unitarity_defect;
        r.bc_prev = res.boundary_defect[0];
        r.bc_last = res.boundary_defect[1];
        r.n = n;
        if (cfg.scatter_n_max == 0) break;
        if (prev) {
          const double diff = res.delta - *prev;
          if (std::abs(diff - std::numbers::pi * std::round(diff / std::numbers::pi)) < cfg.delta_tol) break;
        }
        if (n >= cfg.scatter_n_max) {
          r.flag = "unconverged";
          break;
        }
        prev = res.delta;
        n = std::min(2 * n, cfg.scatter_n_max);
      }
    } catch (const PoleError&) {
      r.flag = "pole";
    } catch (const UnitarityError&) {
      r.flag = "unitarity";
    } catch (const Error&) {
      r.flag = "error";
    }
    if (reference_only) r.flag = "reference-only";
    if (r.flag != "ok" && r.flag != "unconverged") r.delta = NAN;
    return r;
  });

  std::vector<double> deltas;
  for (const auto& r : rows) deltas.push_back(r.delta);
  const auto unwrapped = unwrap_phases(deltas);

  std::vector<std::string> notes;
  if (!reference_only) {
    const auto inner = inner_for(cfg.scatter_n);
    if (!inner->tail_ok())
      notes.push_back("potential tail ratio " + format_number(inner->tail_ratio()) + " at N = " +
                      std::to_string(cfg.scatter_n) + " exceeds " + format_number(opt.tail_tolerance));
  }
  CsvWriter out(cfg, "scatter.csv",
                {"E", "k", "re_S", "im_S", "delta", "unitarity_defect", "N", "flag", "boundary_defect_prev",
                 "boundary_defect_last"},
                notes);
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.flag != "ok") ++flagged;
    out.row({format_number(r.energy), format_number(r.k), format_number(r.s.real()), format_number(r.s.imag()),
             format_number(unwrapped[i]), format_number(r.defect), std::to_string(r.n), r.flag,
             format_number(r.bc_prev), format_number(r.bc_last)});
  }
  rep.files.push_back(out.path());
  for (const auto& n : notes) rep.messages.push_back("warning: " + n);
  if (flagged) {
    rep.messages.push_back(std::to_string(flagged) + " of " + std::to_string(rows.size()) + " rows flagged");
    rep.exit_code = exit_code::partial;
  }
  return rep;
}

namespace {

struct CheckRow {
  std::string name, parameter;
  double measured = 0.0, tolerance = 0.0;
  bool pass = false;
};

double pochhammer(double a, int d) {
  double p = 1.0;
  for (int i = 0; i < d; ++i) p *= a + i;
  return p;
}

void quadrature_checks(const RunConfig& cfg, std::vector<CheckRow>& rows) {
  std::vector<double> betas{0.0};
  if (cfg.beta != 0.0) betas.push_back(cfg.beta);
  for (double beta : betas) {
    for (std::size_t n : cfg.check_sizes) {
      const std::string par = "beta=" + format_number(beta) + " N=" + std::to_string(n);
      const auto j = jacobi_matrix(beta, n);
      const auto rule = nodes_and_weights(j, beta);
      auto moment = [&](int d) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], d);
        return s;
      };
      double worst = 0.0;
      for (int d = 0; d < static_cast<int>(2 * n); ++d) {
        const double exact = pochhammer(beta + 1.0, d);
        worst = std::max(worst, std::abs(moment(d) - exact) / exact);
      }
      rows.push_back({"quadrature_exact_below_2N", par, worst, cfg.quadrature_tol, worst < cfg.quadrature_tol});

      const int d2 = static_cast<int>(2 * n);
      const double exact2 = pochhammer(beta + 1.0, d2);
      const double defect = (exact2 - moment(d2)) / exact2;
      // Closed-form defect: N! (beta+1)_N over the 2N-th moment.
      double expected = pochhammer(beta + 1.0, static_cast<int>(n)) / exact2;
      for (std::size_t i = 1; i <= n; ++i) expected *= static_cast<double>(i);
      rows.push_back({"quadrature_defect_degree_2N", par, defect, cfg.quadrature_tol, defect > cfg.quadrature_tol});
      rows.push_back({"quadrature_defect_matches_closed_form", par, std::abs(defect - expected) / expected, 1e-6,
                      std::abs(defect - expected) / expected < 1e-6});

      const auto w = weights_from_eigenvalues(j);
      double wd = 0.0;
      for (std::size_t k = 0; k < n; ++k) wd = std::max(wd, std::abs(w[k] - rule.weights[k]));
      rows.push_back({"weights_from_eigenvalues", par, wd, cfg.quadrature_tol, wd < cfg.quadrature_tol});

      double gap = INFINITY;
      if (n >= 2) {
        const auto sub = eigenvalues_sym_tridiagonal(j.without_first().diag, j.without_first().off);
        for (std::size_t k = 0; k + 1 < n; ++k)
          gap = std::min({gap, sub[k] - rule.nodes[k], rule.nodes[k + 1] - sub[k]});
      }
      rows.push_back({"interlacing_min_gap", par, gap, 0.0, gap > 0.0});
    }
  }

  const auto params = cfg.reference_params();
  const std::size_t count = *std::max_element(cfg.n_list.begin(), cfg.n_list.end()) + 3;
  for (const BasisSpec b : {BasisSpec::laguerre(cfg.beta), BasisSpec::oscillator(cfg.beta)}) {
    const auto e = expand_coefficients(b, params, std::max<std::size_t>(count, 8), ExpansionMethod::ratio, cfg.precision);
    double worst = 0.0;
    for (std::size_t s = 0; s < 20; ++s) {
      const std::size_t n = 2 + s * (e.plus.size() - 5) / 19;
      worst = std::max(worst, recursion_residual(b, params, e.plus, n));
    }
    const std::string par = std::string(b.family() == BasisFamily::laguerre ? "laguerre" : "oscillator") +
                            " n<=" + std::to_string(e.plus.size() - 3);
    rows.push_back({"recursion_residual", par, worst, cfg.residual_tol, worst < cfg.residual_tol});
  }
}

void green_checks(const RunConfig& cfg, std::vector<CheckRow>& rows) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> order(2, 8);
  double equiv = 0.0, ident = 0.0, squares = 0.0, normal = 0.0;
  for (std::size_t t = 0; t < cfg.green_systems; ++t) {
    const std::size_t n = order(rng);
    SymMatrix h(n), omega = SymMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) h.set(i, j, u(rng));
    const bool orthogonal = t % 2 == 0;
    if (!orthogonal) {
      Matrix b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = u(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          double s = i == j ? 0.5 : 0.0;
          for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
          omega.set(i, j, s);
        }
    }
    const FiniteGreen fg = orthogonal ? FiniteGreen(h) : FiniteGreen(h, omega);
    for (int zi = 0; zi < 3; ++zi) {
      double z = 0.0;
      for (bool ok = false; !ok;) {
        z = 3.0 * u(rng);
        ok = true;
        for (double e : fg.eigen().values) ok = ok && std::abs(z - e) > 1e-2;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double a = green_element(fg, i, j, z), b = green_element_eigenvalue_only(fg, i, j, z);
          equiv = std::max(equiv, std::abs(a - b) / (1.0 + std::abs(a)));
          double s = 0.0;
          for (std::size_t k = 0; k < n; ++k) s += green_element(fg, i, k, z) * (h(k, j) - z * omega(k, j));
          ident = std::max(ident, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double sq = eigenvector_products(fg, i, i, k);
        const double v = fg.eigen().vector(i, k);
        squares = std::max(squares, std::abs(sq - v * v));
        total += sq;
      }
      if (orthogonal) normal = std::max(normal, std::abs(total - 1.0));
    }
  }
  const std::string par = std::to_string(cfg.green_systems) + " systems";
  rows.push_back({"green_spectral_vs_eigenvalue_only", par, equiv, cfg.green_tol, equiv < cfg.green_tol});
  rows.push_back({"green_defining_relation", par, ident, cfg.green_tol, ident < cfg.green_tol});
  rows.push_back({"eigenvector_squares", par, squares, cfg.green_tol, squares < cfg.green_tol});
  rows.push_back({"eigenvector_normalization", par, normal, cfg.green_tol, normal < cfg.green_tol});
}

}  // namespace

RunReport run_self_checks(const RunConfig& cfg) {
  RunReport rep;
  prepare_output(cfg);
  std::vector<CheckRow> rows;
  if (cfg.command == Command::greens_check)
    green_checks(cfg, rows);
  else
    quadrature_checks(cfg, rows);
  const std::string name = cfg.command == Command::greens_check ? "greens_check.csv" : "quadrature_check.csv";
  CsvWriter out(cfg, name, {"check", "parameter", "measured", "tolerance", "status"});
  bool all = true;
  for (const auto& r : rows) {
    out.row({r.name, r.parameter, format_number(r.measured), format_number(r.tolerance), r.pass ? "pass" : "fail"});
    rep.messages.push_back((r.pass ? "pass  " : "FAIL  ") + r.name + " [" + r.parameter +
                           "] measured " + format_number(r.measured));
    all = all && r.pass;
  }
  rep.files.push_back(out.path());
  if (!all) rep.exit_code = exit_code::numerical_failure;
  return rep;
}

RunReport run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::reference_convergence: return run_reference_convergence(cfg);
      case Command::scatter: return run_scatter(cfg);
      case Command::quadrature_check:
      case Command::greens_check: return run_self_checks(cfg);
    }
  } catch (const ConfigError& e) {
    return {exit_code::config_error, {}, {std::string("config error: ") + e.what()}};
  } catch (const Error& e) {
    return {exit_code::numerical_failure, {}, {std::string("numerical failure: ") + e.what()}};
  } catch (const std::ios_base::failure& e) {
    return {exit_code::io_failure, {}, {std::string("i/o failure: ") + e.what()}};
  }
  return {exit_code::config_error, {}, {"unknown command"}};
}

}  // namespace jmatrix::cli
