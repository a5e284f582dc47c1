#include <CLI11.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rtm/checks.hpp"
#include "rtm/combinatorics.hpp"
#include "rtm/ensembles.hpp"
#include "rtm/errors.hpp"
#include "rtm/io.hpp"
#include "rtm/moment_engine.hpp"
#include "rtm/mp_law.hpp"
#include "rtm/sd_bounds.hpp"
#include "rtm/statistics.hpp"

namespace {

using namespace rtm;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all cores
  int cap = kDefaultPartitionCap;

  int effective_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

EnsembleKind parse_kind(const std::string& name) {
  if (name == "normalized") return EnsembleKind::Normalized;
  if (name == "gaussian") return EnsembleKind::Gaussian;
  if (name == "ptrace") return EnsembleKind::PartialTrace;
  if (name == "repeated") return EnsembleKind::Repeated;
  throw std::domain_error("unknown ensemble kind: " + name);
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value file mirroring the long flags. Values become option
// defaults, so anything given explicitly on the command line wins.
std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::domain_error("config line is not key=value: " + line);
    kv[trimmed(line.substr(0, eq))] = trimmed(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_defaults(CLI::App* app, const std::map<std::string, std::string>& kv) {
  for (CLI::Option* opt : app->get_options()) {
    for (const auto& name : opt->get_lnames()) {
      const auto it = kv.find(name);
      if (it == kv.end()) continue;
      try {
        opt->default_val(it->second);
      } catch (const CLI::Error&) {
        if (opt->get_expected_max() == 1) {
          throw std::domain_error("config value for '" + name + "' is not valid: " + it->second);
        }
        // list-valued options are command-line only
      }
    }
  }
  for (CLI::App* sub : app->get_subcommands(nullptr)) apply_config_defaults(sub, kv);
}

void print_check_table(const std::vector<checks::CheckResult>& results) {
  for (const auto& r : results) {
    std::printf("[%s] %2d  %-46s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.criterion, r.name.c_str(), r.seconds,
                r.detail.c_str());
  }
}

bool all_passed(const std::vector<checks::CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

// ---- moments -------------------------------------------------------------

int cmd_moments_exact(const GlobalOpts& g, const MomentQuery& q, bool breakdown) {
  const MomentResult r = ensemble_moment(q, g.cap);
  std::cout << "E = " << to_fraction_string(r.total) << "\n";
  std::cout << "e = " << to_fraction_string(r.normalized) << "\n";
  if (breakdown) {
    for (const auto& [l, v] : r.by_block_count) {
      std::cout << "blocks " << l << ": " << to_fraction_string(v) << "\n";
    }
    for (const auto& [c, v] : r.by_class) {
      std::cout << "class " << to_string(c) << ": " << to_fraction_string(v) << "\n";
    }
  }
  return kExitOk;
}

int cmd_moments_table(const MomentQuery& q, int cap) {
  const auto table = moment_coefficient_table(q.m, q.k, q.d, cap);
  std::cout << "coefficients c_l with E = sum_l c_l (p)_l at d = " << q.d << ", k = " << q.k << ", m = " << q.m
            << "\n";
  for (const auto& [l, c] : table) std::cout << l << " " << to_fraction_string(c) << "\n";
  return kExitOk;
}

int cmd_moments_paper_check(int max_m) {
  bool ok = true;
  long points = 0;
  for (int m = 1; m <= max_m; ++m) {
    for (long long p = 1; p <= 6; ++p) {
      for (int d = 2; d <= 4; ++d) {
        for (int k = 1; k <= 3; ++k) {
          MomentQuery q{p, d, k, m, EnsembleKind::Normalized, 0, 0};
          const Rational engine = ensemble_moment(q).total;
          const Rational table = moment_closed_form(m, p, d, k);
          ++points;
          if (engine != table) {
            ok = false;
            std::cout << "MISMATCH m=" << m << " p=" << p << " d=" << d << " k=" << k << ": engine "
                      << to_fraction_string(engine) << " vs table " << to_fraction_string(table) << "\n";
          }
        }
      }
    }
  }
  std::cout << (ok ? "ok: " : "FAILED: ") << points << " tabulated moment values compared, m <= " << max_m << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_moments_class(const GlobalOpts& g, const MomentQuery& q) {
  const MomentResult r = ensemble_moment(q, g.cap);
  auto get = [&](ReductionClass c) {
    auto it = r.by_class.find(c);
    return it == r.by_class.end() ? Rational{0} : it->second;
  };
  std::cout << "completely-reducible = " << to_fraction_string(get(ReductionClass::CompletelyReducible)) << "\n";
  std::cout << "irreducible = " << to_fraction_string(get(ReductionClass::Irreducible)) << "\n";
  std::cout << "mixed = " << to_fraction_string(get(ReductionClass::Mixed)) << "\n";
  std::cout << "total = " << to_fraction_string(r.total) << "\n";
  return kExitOk;
}

int cmd_moments_repeated(const MomentQuery& q) {
  MomentQuery rep = q;
  rep.kind = EnsembleKind::Repeated;
  MomentQuery ind = q;
  ind.kind = EnsembleKind::Normalized;
  const Rational tilde = repeated_moment(rep);
  const Rational full = ensemble_moment(ind).total;
  std::cout << "E_repeated = " << to_fraction_string(tilde) << "\n";
  std::cout << "E_independent = " << to_fraction_string(full) << "\n";
  std::cout << "independent <= repeated: " << (full <= tilde ? "yes" : "NO") << "\n";
  return kExitOk;
}

// ---- bounds / gf ----------------------------------------------------------

int cmd_bounds_sd(long long p, int d, int max_m) {
  const BoundSeries s = sd_bounds_k1(p, d, max_m);
  std::cout << "m lower upper\n";
  for (int m = 0; m <= max_m; ++m) {
    std::cout << m << " " << to_fraction_string(s.lower[static_cast<size_t>(m)]) << " "
              << to_fraction_string(s.upper[static_cast<size_t>(m)]) << "\n";
  }
  return kExitOk;
}

int cmd_bounds_tensor(long long p, int d, int k, int max_m) {
  const BoundSeries s = sd_upper_tensor(p, d, k, max_m);
  std::cout << "m upper\n";
  for (int m = 0; m <= max_m; ++m) {
    std::cout << m << " " << to_fraction_string(s.upper[static_cast<size_t>(m)]) << "\n";
  }
  return kExitOk;
}

int cmd_bounds_theorem(long long p, int d, int k, int m) {
  const auto [lower, upper] = trace_theorem_bounds(p, d, k, m);
  double dk = 1;
  for (int i = 0; i < k; ++i) dk *= d;
  std::cout << "x = " << format_real(static_cast<double>(p) / dk) << "\n";
  std::cout << "lower = " << format_real(lower) << "\n";
  std::cout << "upper = " << format_real(upper) << "\n";
  return kExitOk;
}

int cmd_gf_rainbow(double x, double z, long iters, const std::string& trace_out) {
  const double z0 = rainbow_z0(x);
  if (z <= 0) z = z0;
  std::vector<double> trace;
  const GfState st = rainbow_gf(x, z, iters, trace_out.empty() ? nullptr : &trace);
  const double closed = rainbow_closed_form(x, z);
  std::cout << "z0 = " << format_real(z0) << "\n";
  std::cout << "z = " << format_real(z) << "\n";
  std::cout << "iterations = " << st.iterations << "\n";
  std::cout << "G_s = " << format_real(st.g_s) << "\n";
  std::cout << "G_d = " << format_real(st.g_d) << "\n";
  std::cout << "closed_form = " << format_real(closed) << "\n";
  std::cout << "gap = " << format_real(std::abs(st.g_s - closed)) << "\n";
  if (!trace_out.empty()) {
    std::ostringstream csv;
    csv << "iteration,g_s\n";
    for (size_t i = 0; i < trace.size(); ++i) csv << (i + 1) << "," << format_real(trace[i]) << "\n";
    write_text_file(trace_out, csv.str());
    std::cout << "wrote " << trace_out << "\n";
  }
  return kExitOk;
}

// ---- spectrum / experiments ------------------------------------------------

int cmd_spectrum_sample(const EnsembleSpec& spec, long long trials, int threads, const std::string& out) {
  if (out.empty()) throw std::domain_error("spectrum sample: --out is required");
  const auto samples = run_trials(spec, trials, threads);
  write_eigenvalue_csv(out, samples);
  std::cout << "wrote " << out << " (" << trials << " trials, D = " << spec.dimension() << ")\n";
  return kExitOk;
}

int cmd_spectrum_stats(const EnsembleSpec& spec, long long trials, int threads, const std::string& out,
                       const std::vector<int>& moments) {
  const auto samples = run_trials(spec, trials, threads);
  const ExtremeStats ext = extreme_stats(samples);
  const MpLaw law(spec.x());
  const double ks = ks_distance(samples, law);
  std::vector<MomentEstimate> ests;
  ests.reserve(moments.size());
  for (int m : moments) ests.push_back(empirical_moment(samples, m));
  const std::string json = stats_json(spec, trials, ext, ks, ests);
  if (out.empty()) {
    std::cout << json;
  } else {
    write_text_file(out, json);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_spectrum_density(double x, int points, const std::string& out) {
  const MpLaw law(x);
  std::ostringstream csv;
  csv << "lambda,density\n";
  for (int i = 0; i <= points; ++i) {
    const double lam = law.lambda_minus() + (law.lambda_plus() - law.lambda_minus()) * i / points;
    csv << format_real(lam) << "," << format_real(law.density(lam)) << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(out, csv.str());
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_experiment_concentration(EnsembleKind kind, double x, const std::vector<int>& d_list, int k, long long trials,
                                 std::uint64_t seed, int threads, const std::string& out) {
  const auto rows = concentration_experiment(kind, x, d_list, k, trials, seed, threads);
  std::ostringstream csv;
  csv << "d,p,std_lambda_max\n";
  for (const auto& r : rows) csv << r.d << "," << r.p << "," << format_real(r.lambda_max_std) << "\n";
  std::cout << csv.str();
  if (!out.empty()) {
    write_text_file(out, csv.str());
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_experiment_extremes(const EnsembleSpec& spec, long long trials, int threads, const std::string& out) {
  const auto samples = run_trials(spec, trials, threads);
  const ExtremeStats ext = extreme_stats(samples);
  const double x = spec.x();
  const double sx = std::sqrt(x);
  std::ostringstream body;
  body << "x = " << format_real(x) << "\n";
  body << "edge_upper = " << format_real((1 + sx) * (1 + sx)) << "\n";
  body << "edge_lower = " << format_real((1 - sx) * (1 - sx)) << "\n";
  body << "bound_large_x = " << format_real(x - 2 * sx - 1) << "\n";
  body << "bound_small_x = " << format_real(1 - 2 * sx - x) << "\n";
  body << "lambda_max_mean = " << format_real(ext.lambda_max_mean) << "\n";
  body << "lambda_max_std = " << format_real(ext.lambda_max_std) << "\n";
  body << "lambda_min_mean = " << format_real(ext.lambda_min_mean) << "\n";
  body << "lambda_min_std = " << format_real(ext.lambda_min_std) << "\n";
  body << "lambda_min_least = " << format_real(ext.lambda_min_least) << "\n";
  std::cout << body.str();
  if (!out.empty()) {
    write_text_file(out, body.str());
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_check_all(int threads) {
  (void)threads;
  const auto results = checks::run_exact_checks();
  print_check_table(results);
  const bool ok = all_passed(results);
  std::cout << (ok ? "all checks passed\n" : "CHECKS FAILED\n");
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectral moments, recursive bounds and Monte Carlo validation for sums of random product states"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::string config_path;
  app.add_option("--seed", g.seed, "master seed for all randomness")->capture_default_str();
  app.add_option("--threads", g.threads, "parallelism cap, 0 = all cores")->capture_default_str();
  app.add_option("--cap", g.cap, "set-partition size guard for exact moments")->capture_default_str();
  app.add_option("--config", config_path, "flat key=value file mirroring the long flags; explicit flags win");

  // shared option storage
  MomentQuery q;
  std::string kind_name = "normalized";
  bool breakdown = false;
  int max_m = 6;
  long long trials = 1;
  double x = 1.0;
  double z = 0.0;
  long iters = 100;
  int points = 512;
  std::string out_path;
  std::string trace_out;
  std::vector<int> moment_orders{1, 2, 3};
  std::vector<int> d_list{50, 400};

  auto add_pdkm = [&](CLI::App* cmd, bool with_m = true) {
    cmd->add_option("--p", q.p, "number of random states")->capture_default_str();
    cmd->add_option("--d", q.d, "local dimension")->capture_default_str();
    cmd->add_option("--k", q.k, "number of tensor factors")->capture_default_str();
    if (with_m) cmd->add_option("--m", q.m, "trace power")->capture_default_str();
  };

  auto* moments = app.add_subcommand("moments", "exact ensemble moments");
  auto* m_exact = moments->add_subcommand("exact", "E^m and e^m for one query");
  add_pdkm(m_exact);
  m_exact->add_option("--kind", kind_name, "normalized|gaussian|ptrace")->capture_default_str();
  m_exact->add_option("--dA", q.d_a, "PartialTrace: kept dimension");
  m_exact->add_option("--dB", q.d_b, "PartialTrace: traced-out dimension");
  m_exact->add_flag("--breakdown", breakdown, "also print block-count and class breakdowns");

  auto* m_table = moments->add_subcommand("table", "coefficient table c_l at fixed d");
  add_pdkm(m_table);

  auto* m_paper = moments->add_subcommand("paper-check", "compare the engine against the tabulated closed forms");
  m_paper->add_option("--max-m", max_m, "largest trace power, <= 6")->capture_default_str();

  auto* m_class = moments->add_subcommand("class", "per-reduction-class sums");
  add_pdkm(m_class);

  auto* m_rep = moments->add_subcommand("repeated", "repeated-letter ensemble moment");
  add_pdkm(m_rep);

  auto* bounds = app.add_subcommand("bounds", "recursive and closed-form bounds on e^m");
  auto* b_sd = bounds->add_subcommand("sd", "k = 1 recursion, lower and upper");
  add_pdkm(b_sd, false);
  b_sd->add_option("--max-m", max_m, "series length")->capture_default_str();
  auto* b_tensor = bounds->add_subcommand("tensor", "tensor-case recursion, upper only");
  add_pdkm(b_tensor, false);
  b_tensor->add_option("--max-m", max_m, "series length")->capture_default_str();
  auto* b_thm = bounds->add_subcommand("theorem", "polynomial sandwich at one order");
  add_pdkm(b_thm);

  auto* gf = app.add_subcommand("gf", "rainbow generating function");
  auto* gf_r = gf->add_subcommand("rainbow", "iterate the coupled recursion and compare to the closed form");
  gf_r->add_option("--x", x, "density ratio p/d^k")->capture_default_str();
  gf_r->add_option("--z", z, "evaluation point, default z0 = (1+sqrt(x))^2");
  gf_r->add_option("--iters", iters, "iteration count")->capture_default_str();
  gf_r->add_option("--trace-out", trace_out, "CSV of iterates");

  EnsembleSpec spec;
  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("--ensemble", kind_name, "normalized|gaussian|ptrace|repeated")->capture_default_str();
    cmd->add_option("--p", spec.p, "number of random states")->capture_default_str();
    cmd->add_option("--d", spec.d, "local dimension")->capture_default_str();
    cmd->add_option("--k", spec.k, "number of tensor factors")->capture_default_str();
    cmd->add_option("--dA", spec.d_a, "PartialTrace: kept dimension");
    cmd->add_option("--dB", spec.d_b, "PartialTrace: traced-out dimension");
    cmd->add_option("--trials", trials, "number of Monte Carlo trials")->capture_default_str();
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Monte Carlo sampling and the limit law");
  auto* s_sample = spectrum_cmd->add_subcommand("sample", "sample spectra to CSV");
  add_spec(s_sample);
  s_sample->add_option("--out", out_path, "output CSV path");
  auto* s_stats = spectrum_cmd->add_subcommand("stats", "summary statistics to JSON");
  add_spec(s_stats);
  s_stats->add_option("--out", out_path, "output JSON path (stdout when omitted)");
  s_stats->add_option("--moments", moment_orders, "moment orders to estimate")->capture_default_str();
  auto* s_density = spectrum_cmd->add_subcommand("density", "limit-law density on a grid, plot-ready CSV");
  s_density->add_option("--x", x, "density ratio")->capture_default_str();
  s_density->add_option("--points", points, "grid points")->capture_default_str();
  s_density->add_option("--out", out_path, "output CSV path (stdout when omitted)");

  auto* experiment = app.add_subcommand("experiment", "multi-run studies");
  auto* e_conc = experiment->add_subcommand("concentration", "std of lambda_max across d at fixed x");
  e_conc->add_option("--x", x, "density ratio")->capture_default_str();
  e_conc->add_option("--k", spec.k, "tensor factors")->capture_default_str();
  e_conc->add_option("--d", d_list, "list of local dimensions")->capture_default_str();
  e_conc->add_option("--trials", trials, "trials per dimension")->capture_default_str();
  e_conc->add_option("--ensemble", kind_name, "normalized|gaussian")->capture_default_str();
  e_conc->add_option("--out", out_path, "optional CSV path");
  auto* e_ext = experiment->add_subcommand("extremes", "largest/smallest eigenvalue statistics");
  add_spec(e_ext);
  e_ext->add_option("--out", out_path, "optional output path");

  auto* check = app.add_subcommand("check", "verification suites");
  auto* check_all = check->add_subcommand("all", "run every exact and deterministic invariant");

  // global flags like --seed may appear after a subcommand name
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough(true);
    for (CLI::App* sub : a->get_subcommands(nullptr)) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    // --config values become defaults before parsing, so explicit flags win
    for (int i = 1; i < argc; ++i) {
      std::string arg = argv[i];
      std::string path;
      if (arg == "--config" && i + 1 < argc) {
        path = argv[i + 1];
      } else if (arg.rfind("--config=", 0) == 0) {
        path = arg.substr(std::strlen("--config="));
      }
      if (!path.empty()) apply_config_defaults(&app, load_config(path));
    }

    app.parse(argc, argv);

    spec.master_seed = g.seed;
    const int threads = g.effective_threads();

    if (m_exact->parsed()) {
      q.kind = parse_kind(kind_name);
      if (q.kind == EnsembleKind::Repeated) return cmd_moments_repeated(q);
      return cmd_moments_exact(g, q, breakdown);
    }
    if (m_table->parsed()) return cmd_moments_table(q, g.cap);
    if (m_paper->parsed()) {
      if (max_m < 1 || max_m > 6) throw std::domain_error("paper-check: --max-m must be in 1..6");
      return cmd_moments_paper_check(max_m);
    }
    if (m_class->parsed()) {
      q.kind = parse_kind(kind_name);
      return cmd_moments_class(g, q);
    }
    if (m_rep->parsed()) return cmd_moments_repeated(q);

    if (b_sd->parsed()) return cmd_bounds_sd(q.p, q.d, max_m);
    if (b_tensor->parsed()) return cmd_bounds_tensor(q.p, q.d, q.k, max_m);
    if (b_thm->parsed()) return cmd_bounds_theorem(q.p, q.d, q.k, q.m);
    if (gf_r->parsed()) return cmd_gf_rainbow(x, z, iters, trace_out);

    if (s_sample->parsed() || s_stats->parsed() || e_ext->parsed()) {
      spec.kind = parse_kind(kind_name);
      if (s_sample->parsed()) return cmd_spectrum_sample(spec, trials, threads, out_path);
      if (s_stats->parsed()) return cmd_spectrum_stats(spec, trials, threads, out_path, moment_orders);
      return cmd_experiment_extremes(spec, trials, threads, out_path);
    }
    if (s_density->parsed()) return cmd_spectrum_density(x, points, out_path);
    if (e_conc->parsed()) {
      return cmd_experiment_concentration(parse_kind(kind_name), x, d_list, spec.k, trials, g.seed, threads, out_path);
    }
    if (check_all->parsed()) return cmd_check_all(threads);

    std::cerr << app.help() << std::endl;
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::endl;
    return kExitUsage;
  } catch (const rtm::ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << std::endl;
    return kExitResource;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid request: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitCheckFailed;
  }
}
