// rssinfo command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rssinfo/errors.hpp"
#include "rssinfo/mc_oracle.hpp"
#include "rssinfo/measures.hpp"
#include "rssinfo/reports.hpp"

namespace {

using namespace rssinfo;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitViolation = 4;

struct Settings {
  QuadratureConfig quad;
  SimConfig sim;
  Space space = Space::kDefault;
  bool force_numeric = false;
  int jobs = 1;
  std::string format = "csv";
  std::string out;
};

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid number for " + key, v);
  }
  if (used != v.size()) throw ParseError("invalid number for " + key, v);
  return d;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long d = 0;
  try {
    d = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid integer for " + key, v);
  }
  if (used != v.size()) throw ParseError("invalid integer for " + key, v);
  return d;
}

Space parse_space(const std::string& v) {
  if (v == "default") return Space::kDefault;
  if (v == "u") return Space::kU;
  if (v == "x") return Space::kX;
  throw ParseError("space must be default, u or x", v);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("invalid boolean for " + key, v);
}

// Keys shared by config files and flags.
void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  if (key == "quad.abs_tol") s.quad.abs_tol = to_double(key, value);
  else if (key == "quad.rel_tol") s.quad.rel_tol = to_double(key, value);
  else if (key == "quad.max_subdiv") s.quad.max_subdivisions = int(to_integer(key, value));
  else if (key == "quad.endpoint_inset") s.quad.endpoint_inset = to_double(key, value);
  else if (key == "seed") s.sim.seed = static_cast<std::uint64_t>(to_integer(key, value));
  else if (key == "replications") s.sim.replications = to_integer(key, value);
  else if (key == "batches") s.sim.batches = int(to_integer(key, value));
  else if (key == "space") s.space = parse_space(value);
  else if (key == "force_numeric") s.force_numeric = parse_bool(key, value);
  else if (key == "jobs") s.jobs = int(to_integer(key, value));
  else if (key == "format") s.format = value;
  else if (key == "out") s.out = value;
  else throw ParseError("unknown setting", key);
}

// Raw flag values; only the ones actually given override the config file.
struct FlagValues {
  std::string config;
  std::map<std::string, std::string> given;
};

void add_common_flags(CLI::App& app, FlagValues& flags) {
  app.add_option("--config", flags.config, "key = value settings file");
  struct Keyed {
    const char* flag;
    const char* key;
    const char* help;
  };
  const std::vector<Keyed> keyed = {
      {"--quad.abs_tol", "quad.abs_tol", "quadrature absolute tolerance"},
      {"--quad.rel_tol", "quad.rel_tol", "quadrature relative tolerance"},
      {"--quad.max_subdiv", "quad.max_subdiv", "quadrature subdivision limit"},
      {"--seed", "seed", "Monte Carlo seed"},
      {"--replications", "replications", "Monte Carlo replications"},
      {"--space", "space", "integration space: default | u | x"},
      {"--jobs", "jobs", "worker threads for conjecture-scan"},
      {"--format", "format", "csv | json"},
      {"--out", "out", "write output to this file instead of stdout"}};
  for (const auto& k : keyed) {
    app.add_option_function<std::string>(
        k.flag, [&flags, key = std::string(k.key)](const std::string& v) { flags.given[key] = v; },
        k.help);
  }
  app.add_flag_function(
      "--force-numeric", [&flags](std::int64_t) { flags.given["force_numeric"] = "true"; },
      "skip closed forms and integrate numerically");
}

Settings resolve(const FlagValues& flags) {
  Settings s;
  if (!flags.config.empty()) {
    for (const auto& [k, v] : load_config_file(flags.config)) apply_setting(s, k, v);
  }
  for (const auto& [k, v] : flags.given) apply_setting(s, k, v);
  if (s.format != "csv" && s.format != "json") {
    throw ParseError("format must be csv or json", s.format);
  }
  try {
    s.quad.validate();
    s.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), "config");
  }
  if (s.jobs < 1) throw ParseError("jobs must be >= 1", std::to_string(s.jobs));
  return s;
}

MeasureOptions measure_options(const Settings& s) {
  MeasureOptions o;
  o.quad = s.quad;
  o.force_numeric = s.force_numeric;
  o.space = s.space;
  return o;
}

void emit(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw ParseError("cannot open output file", s.out);
  f << text;
}

void emit_table(const Settings& s, const Table& t) {
  emit(s, s.format == "json" ? t.to_json() : t.to_csv());
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

struct MeasureArgs {
  std::string kind;
  std::string design;
  std::string dist;
  std::string design2;
  std::string dist2;
  std::optional<double> alpha;
  std::optional<std::string> error_matrix;
  std::optional<int> cycles;
  bool oracle = false;
};

int run_measure(const MeasureArgs& a, const Settings& s) {
  Design design = parse_design(a.design, a.error_matrix);
  if (a.cycles) {
    if (*a.cycles < 1) throw ParseError("cycles must be >= 1", std::to_string(*a.cycles));
    design.cycles = *a.cycles;
  }
  const DistributionPtr dist = parse_distribution(a.dist);
  const MeasureOptions opts = measure_options(s);

  Design other = design;
  DistributionPtr dist2 = dist;
  if (!a.design2.empty()) {
    other = parse_design(a.design2, a.error_matrix);
    other.cycles = design.cycles;
  }
  if (!a.dist2.empty()) dist2 = parse_distribution(a.dist2);

  MeasureResult r;
  std::optional<EstimateResult> mc;
  const Design srs = Design::srs(design.n, design.cycles);
  if (a.kind == "shannon") {
    r = shannon(design, *dist, opts);
    if (a.oracle) mc = mc_entropy(design, *dist, s.sim);
  } else if (a.kind == "renyi") {
    if (!a.alpha) throw ParseError("renyi needs --alpha", a.kind);
    r = renyi(design, *dist, *a.alpha, opts);
    if (a.oracle) mc = mc_renyi(design, *dist, *a.alpha, s.sim);
  } else if (a.kind == "kl") {
    // K(SRS, design) by default; with --design2/--dist2, K(design over F,
    // design2 over G).
    if (a.design2.empty() && a.dist2.empty()) {
      r = kl_srs_vs_design(design, *dist, opts);
      if (a.oracle) mc = mc_kl(srs, *dist, design, *dist, s.sim);
    } else {
      r = kl_two_sample(design, *dist, other, *dist2, opts);
      if (a.oracle) mc = mc_kl(design, *dist, other, *dist2, s.sim);
    }
  } else if (a.kind == "kld") {
    const Design& y = a.design2.empty() ? srs : other;
    r = kld_symmetric(y, *dist, design, *dist2, opts);
    if (a.oracle) {
      const auto f = mc_kl(y, *dist, design, *dist2, s.sim);
      const auto b = mc_kl(design, *dist2, y, *dist, s.sim);
      mc = EstimateResult{f.estimate + b.estimate,
                          std::sqrt(f.std_error * f.std_error + b.std_error * b.std_error),
                          f.replications, f.divergent || b.divergent};
    }
  } else if (a.kind == "a_n") {
    if (a.dist2.empty()) throw ParseError("a_n needs --dist2", a.kind);
    r = a_n(*dist, *dist2, design.n, opts);
    r.value *= design.cycles;
    r.error_estimate *= design.cycles;
    if (a.oracle) {
      const Design rss = Design::perfect_rss(design.n, design.cycles);
      const auto x = mc_kl(rss, *dist, rss, *dist2, s.sim);
      const auto y = mc_kl(srs, *dist, srs, *dist2, s.sim);
      mc = EstimateResult{x.estimate - y.estimate,
                          std::sqrt(x.std_error * x.std_error + y.std_error * y.std_error),
                          x.replications, x.divergent || y.divergent};
    }
  } else {
    throw ParseError("unknown measure (shannon, renyi, kl, kld, a_n)", a.kind);
  }

  const std::string design_text = a.design + (a.cycles ? "x" + std::to_string(*a.cycles) : "");
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["measure"] = a.kind;
    j["design"] = design_text;
    j["dist"] = dist->spec();
    if (!a.design2.empty()) j["design2"] = a.design2;
    if (!a.dist2.empty()) j["dist2"] = dist2->spec();
    if (a.alpha) j["alpha"] = *a.alpha;
    j["value"] = r.value;
    j["error"] = r.error_estimate;
    j["method"] = to_string(r.method);
    j["converged"] = r.diagnostics.converged;
    if (mc) {
      j["oracle"] = mc->estimate;
      j["std_error"] = mc->std_error;
      j["replications"] = mc->replications;
      j["seed"] = s.sim.seed;
      if (mc->divergent) j["divergent"] = true;
    }
    emit(s, j.dump(2) + "\n");
  } else {
    std::string header = "measure,design,dist,alpha,value,error,method";
    std::string row = a.kind + ',' + csv_field(design_text) + ',' + csv_field(dist->spec()) +
                      ',' + (a.alpha ? format_number(*a.alpha) : "") + ',' +
                      format_number(r.value) + ',' + format_number(r.error_estimate) + ',' +
                      to_string(r.method);
    if (mc) {
      header += ",oracle,std_error,replications";
      row += ',' + format_number(mc->estimate) + ',' + format_number(mc->std_error) + ',' +
             std::to_string(mc->replications);
    }
    emit(s, header + "\n" + row + "\n");
  }
  if (mc && mc->divergent) std::cerr << "warning: oracle run looks divergent\n";
  return r.diagnostics.converged ? kExitOk : kExitNonConvergence;
}

std::vector<double> split_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(what, item));
  if (out.empty()) throw ParseError("empty list for " + what, text);
  return out;
}

std::vector<std::string> split_strings(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shannon, Renyi and Kullback-Leibler information of ranked set samples"};
  app.require_subcommand(1);
  FlagValues flags;

  auto* k_cmd = app.add_subcommand("table-k", "distribution-free Shannon gap k(n)");
  int k_max = 10;
  k_cmd->add_option("--n-max", k_max, "largest set size")->capture_default_str();
  add_common_flags(*k_cmd, flags);

  auto* dn_cmd = app.add_subcommand("dn", "distribution-free K(SRS, RSS) = d_n");
  int dn_max = 10;
  dn_cmd->add_option("--n-max", dn_max, "largest set size")->capture_default_str();
  add_common_flags(*dn_cmd, flags);

  auto* psi_cmd = app.add_subcommand("psi", "Renyi gap lower bound Psi(alpha, n), alpha > 1");
  int psi_max = 10;
  std::string psi_alphas = "1.5,2,5";
  psi_cmd->add_option("--n-max", psi_max, "largest set size")->capture_default_str();
  psi_cmd->add_option("--alpha", psi_alphas, "comma-separated orders")->capture_default_str();
  add_common_flags(*psi_cmd, flags);

  auto* m_cmd = app.add_subcommand("measure", "evaluate one information measure");
  MeasureArgs margs;
  m_cmd->add_option("kind", margs.kind, "shannon | renyi | kl | kld | a_n")->required();
  m_cmd->add_option("--design", margs.design, "srs:N | rss:N | irss:N:<matrix>")->required();
  m_cmd->add_option("--dist", margs.dist, "exp:RATE | unif[:A,B] | norm[:MU,SD] | weibull:K,S")
      ->required();
  m_cmd->add_option("--design2", margs.design2, "second design (kl, kld)");
  m_cmd->add_option("--dist2", margs.dist2, "second distribution (kl, kld, a_n)");
  m_cmd->add_option("--alpha", margs.alpha, "Renyi order");
  m_cmd->add_option("--error-matrix", margs.error_matrix, "CSV ranking error matrix");
  m_cmd->add_option("--cycles", margs.cycles, "number of cycles m");
  m_cmd->add_flag("--oracle", margs.oracle, "add a Monte Carlo estimate and its std error");
  add_common_flags(*m_cmd, flags);

  auto* f_cmd = app.add_subcommand("figure", "curve data for the Shannon/Renyi comparisons");
  std::string fig_id;
  std::string fig_p12;
  std::string fig_alpha;
  std::string fig_p11;
  double fig_rate = 1.0;
  f_cmd->add_option("id", fig_id, "1 | 2a | 2b")->required();
  f_cmd->add_option("--p12", fig_p12, "comma-separated p12 grid (figure id 1)");
  f_cmd->add_option("--alpha", fig_alpha, "comma-separated alpha grid (figure ids 2a, 2b)");
  f_cmd->add_option("--p11", fig_p11, "comma-separated p11 values (figure ids 2a, 2b)");
  f_cmd->add_option("--rate", fig_rate, "exponential rate")->capture_default_str();
  add_common_flags(*f_cmd, flags);

  auto* s_cmd = app.add_subcommand("conjecture-scan", "check the alpha > 1 Renyi ordering on a grid");
  std::string scan_families;
  std::string scan_ns;
  std::string scan_alphas;
  std::string scan_matrices;
  std::string scan_summary;
  double scan_slack = 1e-9;
  s_cmd->add_option("--families", scan_families, "';'-separated distribution specs");
  s_cmd->add_option("--n", scan_ns, "comma-separated set sizes");
  s_cmd->add_option("--alpha", scan_alphas, "comma-separated orders, all > 1");
  s_cmd->add_option("--matrices", scan_matrices, "';'-separated builtin matrix names");
  s_cmd->add_option("--slack", scan_slack, "absolute slack on each margin")->capture_default_str();
  s_cmd->add_option("--summary", scan_summary, "write the text summary here (default stderr)");
  add_common_flags(*s_cmd, flags);

  auto* e_cmd = app.add_subcommand("errata", "printed vs corrected forms vs oracles");
  add_common_flags(*e_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    const Settings s = resolve(flags);
    if (k_cmd->parsed()) {
      emit_table(s, table_k(k_max));
    } else if (dn_cmd->parsed()) {
      emit_table(s, table_dn(dn_max));
    } else if (psi_cmd->parsed()) {
      const auto alphas = split_doubles(psi_alphas, "--alpha");
      for (double a : alphas) {
        if (!(a > 1.0)) throw ParseError("psi needs alpha > 1", format_number(a));
      }
      emit_table(s, table_psi(alphas, psi_max));
    } else if (m_cmd->parsed()) {
      return run_measure(margs, s);
    } else if (f_cmd->parsed()) {
      FigureOptions opts;
      opts.measure = measure_options(s);
      opts.rate = fig_rate;
      if (!fig_p12.empty()) opts.p12_grid = split_doubles(fig_p12, "--p12");
      if (!fig_alpha.empty()) opts.alpha_grid = split_doubles(fig_alpha, "--alpha");
      if (!fig_p11.empty()) opts.p11_values = split_doubles(fig_p11, "--p11");
      emit_table(s, figure(parse_figure_id(fig_id), opts));
    } else if (s_cmd->parsed()) {
      ScanGrid grid;
      if (!scan_families.empty()) grid.families = split_strings(scan_families, ';');
      if (!scan_ns.empty()) {
        grid.ns.clear();
        for (double v : split_doubles(scan_ns, "--n")) grid.ns.push_back(int(v));
      }
      if (!scan_alphas.empty()) grid.alphas = split_doubles(scan_alphas, "--alpha");
      if (!scan_matrices.empty()) grid.matrices = split_strings(scan_matrices, ';');
      grid.measure = measure_options(s);
      grid.slack = scan_slack;
      grid.jobs = s.jobs;
      const ScanReport report = conjecture_scan(grid);
      if (s.format == "json") {
        nlohmann::ordered_json j;
        j["grid_points"] = report.records.size();
        j["violations"] = report.violations.size();
        j["all_converged"] = report.all_converged;
        j["summary"] = report.summary();
        emit(s, j.dump(2) + "\n");
      } else {
        emit(s, report.to_csv());
      }
      if (scan_summary.empty()) {
        std::cerr << report.summary();
      } else {
        std::ofstream(scan_summary) << report.summary();
      }
      if (!report.violations.empty()) return kExitViolation;
      if (!report.all_converged) return kExitNonConvergence;
    } else if (e_cmd->parsed()) {
      const auto checks = errata_checks(s.quad);
      if (s.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
          arr.push_back({{"id", c.id},
                         {"description", c.description},
                         {"printed", c.printed},
                         {"corrected", c.corrected},
                         {"oracle", c.oracle},
                         {"tolerance", c.tolerance},
                         {"printed_matches", c.printed_matches()},
                         {"corrected_matches", c.corrected_matches()}});
        }
        emit(s, arr.dump(2) + "\n");
      } else {
        emit(s, errata_csv(checks));
      }
      for (const auto& c : checks) {
        if (!c.corrected_matches()) return kExitViolation;
        if (c.core && c.printed_matches()) return kExitViolation;
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (offending token: '" << e.token() << "')\n";
    return kExitParse;
  } catch (const RankingMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DivergentIntegral& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
