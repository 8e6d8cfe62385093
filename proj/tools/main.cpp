#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>
#include <padicheat/negdef.hpp>
#include <padicheat/parallel.hpp>
#include <padicheat/process.hpp>
#include <padicheat/semigroup.hpp>

#include "config.hpp"
#include "io.hpp"
#include "verify.hpp"

using namespace padicheat;
using namespace padicheat::cli;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kConfigError = 2;
constexpr int kSuiteFailure = 3;

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError({path + ": cannot open for writing"});
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json certificate_json(const EllipticityCertificate& c) {
  json j{{"status", to_string(c.status)}, {"depth_reached", c.depth_reached}};
  if (c.certified()) {
    j["C0"] = rational_to_string(c.c0);
    j["C1"] = rational_to_string(c.c1);
    j["depth"] = c.depth;
  }
  if (c.witness) {
    json root = json::array(), residue = json::array();
    for (const auto& r : c.witness->root) root.push_back(r.str());
    for (auto r : c.witness->residue_root) residue.push_back(r);
    j["witness"] = {{"root", root}, {"digits", c.witness->digits}, {"residue_root", residue},
                    {"found_depth", c.witness->found_depth}, {"lifted_coordinate", c.witness->lifted_coordinate}};
  }
  return j;
}

int cmd_certify(const RunConfig& cfg, const std::string& out) {
  const auto cert = certify_elliptic(cfg.make_polynomial());
  Sink sink(out);
  sink.out() << certificate_json(cert).dump(2) << "\n";
  return cert.certified() ? kPass : kSuiteFailure;
}

int cmd_kernel(const RunConfig& cfg, std::vector<double> times, const std::string& out, unsigned threads) {
  if (times.empty()) times = cfg.kernel.times;
  const auto e = make_engine(cfg.symbol());
  std::vector<Vector> xs;
  if (cfg.kernel.include_origin) xs.emplace_back(cfg.p, cfg.n);
  for (long k = cfg.kernel.k_min; k <= cfg.kernel.k_max; ++k) {
    const auto sp = sphere_probes(cfg.p, cfg.n, k, cfg.kernel.points_per_sphere);
    xs.insert(xs.end(), sp.begin(), sp.end());
  }
  Sink sink(out);
  auto& os = sink.out();
  os << "x,x_digits,norm_exponent,norm,t,value,err\n";
  for (double t : times) {
    const auto job = KernelJob::make(e, t, cfg.target_eps);
    const auto vals = parallel_map<KernelValue>(xs.size(), threads, [&](std::size_t i) { return kernel_value(job, xs[i]); });
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const bool zero = xs[i].is_zero();
      const long k = zero ? 0 : xs[i].norm_exponent();
      os << vector_text(xs[i]) << ',' << vector_digits(xs[i]) << ',' << (zero ? std::string("-inf") : std::to_string(k))
         << ',' << (zero ? std::string("0") : num(std::pow(static_cast<double>(cfg.p), k))) << ',' << num(t) << ','
         << num(vals[i].value) << ',' << num(vals[i].err) << '\n';
    }
  }
  return kPass;
}

int cmd_semigroup(const RunConfig& cfg, double t, const std::string& input, std::size_t grid, std::uint64_t grid_seed,
                  const std::string& out, unsigned threads) {
  const auto u = load_test_function(input, cfg.p, cfg.n);
  const SemigroupOperator S(make_engine(cfg.symbol()), 1e-10);
  const auto xs = probe_grid(cfg.p, cfg.n, grid, grid_seed);
  const auto vals = parallel_map<ComplexValue>(xs.size(), threads, [&](std::size_t i) { return S.apply_Tt(u, t, xs[i]); });
  Sink sink(out);
  auto& os = sink.out();
  os << "x,x_digits,t,re,im,err\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << vector_text(xs[i]) << ',' << vector_digits(xs[i]) << ',' << num(t) << ',' << num(vals[i].value.real()) << ','
       << num(vals[i].value.imag()) << ',' << num(vals[i].err) << '\n';
  return kPass;
}

int cmd_transition(const RunConfig& cfg, const std::string& xtext, const std::string& set, double t, const std::string& out) {
  const auto x = parse_vector(cfg.p, cfg.n, xtext);
  const auto E = load_cosets(set, cfg.p, cfg.n);
  const SemigroupOperator S(make_engine(cfg.symbol()), 1e-10);
  const auto v = S.transition_probability({x, E, t});
  json cosets = json::array();
  for (const auto& c : E) cosets.push_back(coset_to_json(c));
  Sink sink(out);
  sink.out() << json{{"x", vector_text(x)}, {"t", t}, {"set", cosets}, {"probability", v.value}, {"err", v.err}}.dump(2)
             << "\n";
  return kPass;
}

int cmd_paths(const RunConfig& cfg, std::optional<std::size_t> paths, const std::string& out, unsigned threads) {
  PathConfig pc;
  pc.engine = make_engine(cfg.symbol());
  pc.times = cfg.paths.times;
  pc.depth = cfg.paths.depth;
  pc.cap_radius = cfg.paths.cap_radius;
  pc.seed = cfg.paths.seed;
  const std::size_t count = paths.value_or(cfg.paths.paths);
  const auto samples = parallel_map<PathSample>(count, threads, [&](std::size_t i) { return sample_path(pc, i); });
  Sink sink(out);
  auto& os = sink.out();
  os << "path_id,time,leaf,leaf_digits,radius,conditioning_mass,cap_radius\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      // step 0 is the start B_{-depth}; later steps record the increment law's conditioning ball
      const double mass = k == 0 ? 1.0 : s.conditioning_masses[k - 1];
      const long cap = k == 0 ? 0 : s.cap_radii[k - 1];
      os << i << ',' << num(s.times[k]) << ',' << vector_text(s.positions[k].center()) << ','
         << vector_digits(s.positions[k].center()) << ',' << s.positions[k].radius_exp() << ',' << num(mass) << ',' << cap
         << '\n';
    }
  }
  return kPass;
}

int cmd_negdef(const RunConfig& cfg, std::optional<std::size_t> trials, std::optional<std::size_t> m_max,
               std::optional<std::uint64_t> seed, const std::string& out) {
  const auto params = cfg.symbol();
  const std::size_t T = trials.value_or(cfg.negdef.trials), M = m_max.value_or(cfg.negdef.m_max);
  const std::uint64_t sd = seed.value_or(cfg.negdef.seed);
  if (M < 1 || M > 64) throw ConfigError({"--m-max: must lie in [1, 64]"});
  const auto rep = cfg.negdef.negate_symbol
                       ? verify_negdef([&](const Vector& x) { return -symbol_value(params, x); }, cfg.p, cfg.n, T, M, sd)
                       : verify_negdef(params, T, M, sd);
  json tr = json::array();
  for (const auto& t : rep.trials) {
    json pts = json::array();
    for (const auto& x : t.points) pts.push_back(vector_text(x));
    tr.push_back({{"m", t.points.size()}, {"min_eigenvalue", t.min_eigenvalue}, {"tolerance", t.tolerance},
                  {"passed", t.passed}, {"points", pts}});
  }
  json j{{"passed", rep.passed}, {"trials", T}, {"m_max", M}, {"seed", sd}, {"negated_symbol", cfg.negdef.negate_symbol},
         {"worst_margin", rep.worst_margin}, {"results", tr}};
  if (!rep.passed) j["first_failure"] = rep.first_failure;
  Sink sink(out);
  sink.out() << j.dump(2) << "\n";
  return rep.passed ? kPass : kSuiteFailure;
}

int cmd_levy(const RunConfig& cfg, std::optional<long> r, std::optional<double> t_start, std::optional<std::size_t> steps,
             const std::string& out) {
  const double t0 = t_start.value_or(cfg.levy.t_start);
  const std::size_t K = steps.value_or(cfg.levy.t_steps);
  if (!(t0 > 0) || K < 3) throw ConfigError({"--t-start must be positive and --t-steps at least 3"});
  std::vector<double> ts;
  for (std::size_t i = 0; i < K; ++i) ts.push_back(t0 * std::pow(10.0, -static_cast<double>(i)));
  const auto pr = equivalence_probe(make_engine(cfg.symbol()), r.value_or(cfg.levy.r), ts);
  const bool ok = pr.cauchy_halving && pr.limit_estimate > 0.0;
  json j{{"r", pr.r},
         {"times", pr.times},
         {"values", pr.values},
         {"errs", pr.errs},
         {"cauchy_differences", pr.cauchy},
         {"cauchy_halving", pr.cauchy_halving},
         {"limit_estimate", pr.limit_estimate},
         {"direct_limit", pr.direct_limit},
         {"levy_mass_vanishes", pr.condition_i},
         {"condition_ii", pr.condition_ii},
         {"condition_iii", pr.condition_iii},
         {"representation_c_il_q", pr.representation},
         {"passed", ok}};
  Sink sink(out);
  sink.out() << j.dump(2) << "\n";
  return ok ? kPass : kSuiteFailure;
}

int cmd_verify(const RunConfig& cfg, const std::string& out, unsigned threads) {
  const auto res = run_verify(cfg, threads);
  Sink sink(out);
  sink.out() << res.report.dump(2) << "\n";
  if (!res.passed) {
    std::cerr << "verify failed:";
    for (const auto& s : res.report["failed_suites"]) std::cerr << ' ' << s.get<std::string>();
    std::cerr << "\n";
  }
  return res.passed ? kPass : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padicheat: heat kernels and Markov processes of p-adic elliptic operators"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: PADIC_THREADS or the core count)")
      ->check(CLI::PositiveNumber);

  std::string config, out;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output file (default: stdout)");
  };

  auto* certify = app.add_subcommand("certify", "decide ellipticity of the polynomial");
  common(certify);

  std::vector<double> kernel_times;
  auto* kernel = app.add_subcommand("kernel", "tabulate Z(x,t) with error bounds (CSV)");
  common(kernel);
  kernel->add_option("--t", kernel_times, "times (default: kernel.times from the config)");

  double sg_t = 1.0;
  std::string input;
  std::size_t grid = 100;
  std::uint64_t grid_seed = 1;
  auto* semigroup = app.add_subcommand("semigroup", "evaluate T_t u on a probe grid (CSV)");
  common(semigroup);
  semigroup->add_option("--t", sg_t, "time")->required()->check(CLI::NonNegativeNumber);
  semigroup->add_option("--input", input, "test-function file (JSON)")->required()->check(CLI::ExistingFile);
  semigroup->add_option("--grid", grid, "number of probe points")->check(CLI::PositiveNumber);
  semigroup->add_option("--grid-seed", grid_seed, "probe grid seed");

  std::string xtext, set;
  double tr_t = 1.0;
  auto* transition = app.add_subcommand("transition", "p_t(x, E) for a finite disjoint coset list (JSON)");
  common(transition);
  transition->add_option("--x", xtext, "start point, e.g. 1/3,2")->required();
  transition->add_option("--set", set, "coset-list file (JSON)")->required()->check(CLI::ExistingFile);
  transition->add_option("--t", tr_t, "time")->required()->check(CLI::NonNegativeNumber);

  std::optional<std::size_t> npaths;
  auto* paths = app.add_subcommand("sample-paths", "sample grid-time paths of the jump process (CSV)");
  common(paths);
  paths->add_option("--paths", npaths, "number of paths (default: paths.paths)");

  std::optional<std::size_t> trials, m_max;
  std::optional<std::uint64_t> seed;
  auto* negdef = app.add_subcommand("negdef", "negative-definiteness trials (JSON)");
  common(negdef);
  negdef->add_option("--trials", trials, "random trials (default: negdef.trials)");
  negdef->add_option("--m-max", m_max, "largest matrix size (default: negdef.m_max)");
  negdef->add_option("--seed", seed, "trial seed (default: negdef.seed)");

  std::optional<long> r;
  std::optional<double> t_start;
  std::optional<std::size_t> t_steps;
  auto* levy = app.add_subcommand("levy-probe", "(1/t) mass of Z_t outside B_r as t -> 0 (JSON)");
  common(levy);
  levy->add_option("--r", r, "ball radius exponent (default: levy.r)");
  levy->add_option("--t-start", t_start, "first time (default: levy.t_start)");
  levy->add_option("--t-steps", t_steps, "number of times, each a tenth of the previous (default: levy.t_steps)");

  auto* verify = app.add_subcommand("verify", "run every invariant suite and write a JSON report");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    const RunConfig cfg = parse_config(config);
    if (certify->parsed()) return cmd_certify(cfg, out);
    if (kernel->parsed()) return cmd_kernel(cfg, kernel_times, out, threads);
    if (semigroup->parsed()) return cmd_semigroup(cfg, sg_t, input, grid, grid_seed, out, threads);
    if (transition->parsed()) return cmd_transition(cfg, xtext, set, tr_t, out);
    if (paths->parsed()) return cmd_paths(cfg, npaths, out, threads);
    if (negdef->parsed()) return cmd_negdef(cfg, trials, m_max, seed, out);
    if (levy->parsed()) return cmd_levy(cfg, r, t_start, t_steps, out);
    if (verify->parsed()) return cmd_verify(cfg, out, threads);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kConfigError;
}
