#include "nodal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nodal/barrier.hpp"
#include "nodal/census.hpp"
#include "nodal/serialize.hpp"
#include "nodal/simulate.hpp"
#include "nodal/symmetrize.hpp"

namespace nodal::cli {
namespace {

using nlohmann::json;

// Values quoted in the published work, shown beside ours in `report`.
constexpr const char* kPublishedBarrierMu0 = "10^-1282 (statement) / 10^-1281 (derivation)";
constexpr const char* kPublishedBarrierMu1 = "10^-4535 (statement) / 10^-4532 (derivation)";
constexpr const char* kPublishedSymMu0 = "2.1186e-05 at T = 3.2086";
constexpr const char* kPublishedSymMu1 = "3.2724e-247 at T = 41.9286";
constexpr double kPublishedSymMu1T = 41.9286;
constexpr double kPublishedMu0 = 0.9117;
constexpr double kPublishedMu1 = 0.0514;
constexpr double kPublishedFourPiCns = 0.0589;
constexpr double kDefaultSingleRadius = 3.8317;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(r > 0.0))
      throw UsageError("--radii: '" + item + "' is not a positive number");
    radii.push_back(r);
  }
  if (radii.empty()) throw UsageError("--radii: empty list");
  return radii;
}

// Turns `key = value` lines into `--key=value` tokens, rejecting keys the
// subcommand does not define.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(fmt("%s:%d: expected key = value", path.c_str(), lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config" || key == "help" || sub.get_option_no_throw("--" + key) == nullptr)
      throw UsageError(fmt("%s:%d: unknown key '%s' for '%s'", path.c_str(), lineno, key.c_str(),
                           sub.get_name().c_str()));
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::string find_config_path(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

// Writes doc to --out (or stdout when unset). The summary goes to `out` only
// when the document went to a file.
void emit(json doc, const RunConfig& cfg, std::ostream& out, const std::string& summary) {
  if (!cfg.deterministic_output) doc["generated_at"] = utc_now();
  const std::string text = doc.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  write_text(cfg.out, text);
  out << summary << "\nwrote " << cfg.out << "\n";
}

json failure_document(const std::string& command, const HypothesisChecklist& list) {
  return json{{"schema", kSchemaVersion}, {"kind", "hypothesis_failure"}, {"command", command}, {"checklist", list}};
}

void report_failure(const HypothesisChecklist& list, std::ostream& err) {
  err << "hypothesis check failed:";
  for (const auto& name : list.failed_names()) err << ' ' << name;
  err << "\n";
}

std::string pow10(const LogMagnitude& v) {
  if (v.sign() <= 0) return "vacuous";
  return fmt("10^%.2f", v.log10_abs());
}

int run_barrier(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BarrierConfig bc;
  bc.target = parse_target(cfg.target);
  bc.delta = cfg.delta;
  bc.epsilon = cfg.epsilon;
  bc.truncation_order = cfg.truncation;
  bc.cns_convention = parse_cns_convention(cfg.cns_convention);
  BarrierCertificate cert;
  try {
    cert = mu_lower_bound(bc);
  } catch (const HypothesisFailure& f) {
    emit(failure_document("barrier", f.checklist), cfg, out, "barrier: hypotheses failed");
    report_failure(f.checklist, err);
    return kExitHypothesis;
  }
  for (const auto& w : cert.checklist.warnings()) err << "warning: " << w << "\n";
  const std::string summary =
      fmt("%s barrier: eps = %.9g, S = %.9g, log10 P = %.3f, bound %s (factor-ten form %s)", cfg.target.c_str(),
          cert.epsilon, cert.S.certified_S_upper, cert.probability.log10_abs(), pow10(cert.mu_bound).c_str(),
          pow10(cert.mu_bound_factor_ten).c_str());
  emit(to_document(cert), cfg, out, summary);
  return kExitOk;
}

int run_symmetrize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Target target = parse_target(cfg.target);
  RadiiSchedule radii = cfg.radii;
  if (radii.empty()) radii = target == Target::mu0 ? RadiiSchedule{kDefaultSingleRadius} : limiting_schedule();
  const TMode mode = parse_t_mode(cfg.t_mode);
  if (mode == TMode::explicit_value && !cfg.T) throw UsageError("--t-mode explicit needs --T");
  if (mode != TMode::explicit_value && cfg.T) throw UsageError("--T is only meaningful with --t-mode explicit");
  SymmetrizationCertificate cert;
  try {
    cert = mode == TMode::explicit_value ? symmetrization_bound(radii, *cfg.T, target, mode)
                                         : symmetrization_run(radii, target, mode);
  } catch (const HypothesisFailure& f) {
    emit(failure_document("symmetrize", f.checklist), cfg, out, "symmetrize: schedule rejected");
    report_failure(f.checklist, err);
    return kExitHypothesis;
  } catch (const NoSolution& e) {
    err << e.what() << "\n";
    return kExitHypothesis;
  }
  for (const auto& w : cert.validation.warnings()) err << "warning: " << w << "\n";
  const std::string summary = fmt("%s symmetrization (%s): T = %.6f, bound %s (factor-ten form %s)",
                                  cfg.target.c_str(), to_string(mode).c_str(), cert.T,
                                  cert.mu_bound.to_scientific().c_str(), cert.mu_bound_factor_ten.to_scientific().c_str());
  emit(to_document(cert), cfg, out, summary);
  return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  EnsembleOptions opt;
  opt.grid = GridSpec{cfg.half_width, cfg.grid, cfg.counting_radius};
  try {
    opt.grid.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  opt.n_terms = cfg.terms;
  opt.n_samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.workers = cfg.workers;
  opt.h_max = cfg.h_max;
  opt.xi0_override = cfg.xi0;

  if (!cfg.export_field.empty()) {
    const WaveSample w = sample_wave(cfg.terms, cfg.seed, 0, cfg.xi0);
    const FieldGrid f = evaluate_field(w, opt.grid);
    const auto& p = cfg.export_field;
    if (p.size() >= 4 && p.compare(p.size() - 4, 4, ".pgm") == 0)
      write_field_pgm(p, f, w);
    else
      write_field_csv(p, f, w);
  }
  const EnsembleStats st = estimate_mu(opt);
  std::string summary = fmt("simulate: %d samples, %ld interior domains, 4 pi cns = %.4f +- %.4f", st.n_samples,
                            st.total_interior_domains, 4.0 * M_PI * st.cns_hat, 4.0 * M_PI * st.cns_se);
  for (std::size_t h = 0; h < std::min<std::size_t>(3, st.mu_hat.size()); ++h)
    summary += fmt("\n  mu(%zu) = %.4f +- %.4f", h, st.mu_hat[h], st.mu_se[h]);
  emit(to_document(st), cfg, out, summary);
  return kExitOk;
}

struct ReportRow {
  std::string method, target, computed, published, note;
};

void report_rows(const json& doc, const std::string& file, std::vector<ReportRow>& rows) {
  const std::string kind = document_kind(doc);
  if (kind == "barrier") {
    const BarrierCertificate c = barrier_from_document(doc);
    const bool mu0 = c.config.target == Target::mu0;
    rows.push_back({"barrier", to_string(c.config.target),
                    pow10(c.mu_bound) + fmt(" (log10 P = %.2f)", c.probability.log10_abs()),
                    mu0 ? kPublishedBarrierMu0 : kPublishedBarrierMu1,
                    fmt("factor-ten form %s; Gamma(-1/2) form of P gives %.2f", pow10(c.mu_bound_factor_ten).c_str(),
                        c.probability_appendix_form.log10_abs())});
  } else if (kind == "symmetrization") {
    const SymmetrizationCertificate c = symmetrization_from_document(doc);
    ReportRow row{"symmetrization", to_string(c.target),
                  (c.vacuous ? std::string("vacuous") : c.mu_bound.to_scientific()) + fmt(" at T = %.4f", c.T), "",
                  "T mode " + to_string(c.t_mode)};
    if (c.target == Target::mu0) {
      row.published = kPublishedSymMu0;
    } else {
      row.published = kPublishedSymMu1;
      if (c.radii == limiting_schedule()) {
        const auto at = symmetrization_bound(c.radii, kPublishedSymMu1T, Target::mu1);
        row.note += "; the quoted T and bound disagree: the formula at T = 41.9286 gives " +
                    at.mu_bound.to_scientific();
      }
    }
    rows.push_back(row);
  } else if (kind == "ensemble") {
    const EnsembleStats s = ensemble_from_document(doc);
    const std::string note = fmt("%d samples, %d^2 grid, L = %g, R = %g", s.n_samples, s.grid.resolution,
                                 s.grid.half_width, s.grid.counting_radius);
    if (s.mu_hat.size() > 0)
      rows.push_back({"simulation", "mu0", fmt("%.4f +- %.4f", s.mu_hat[0], s.mu_se[0]), fmt("%.4f", kPublishedMu0), note});
    if (s.mu_hat.size() > 1)
      rows.push_back({"simulation", "mu1", fmt("%.4f +- %.4f", s.mu_hat[1], s.mu_se[1]), fmt("%.4f", kPublishedMu1), note});
    rows.push_back({"simulation", "4 pi cns", fmt("%.4f +- %.4f", 4.0 * M_PI * s.cns_hat, 4.0 * M_PI * s.cns_se),
                    fmt("%.4f", kPublishedFourPiCns), note});
  } else if (kind == "hypothesis_failure") {
    rows.push_back({doc.value("command", "?"), "", "hypotheses failed", "", file});
  } else {
    throw UsageError("'" + file + "': cannot report on a '" + kind + "' document");
  }
}

int run_report(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.inputs.empty()) throw UsageError("report: no input files");
  std::vector<ReportRow> rows;
  for (const auto& file : cfg.inputs) {
    std::ifstream in(file);
    if (!in) throw UsageError("report: cannot read '" + file + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("report: '" + file + "' is not JSON: " + e.what());
    }
    try {
      report_rows(doc, file, rows);
    } catch (const SchemaError& e) {
      throw UsageError("report: '" + file + "': " + e.what());
    }
  }
  std::size_t w[4] = {6, 6, 8, 9};
  for (const auto& r : rows) {
    w[0] = std::max(w[0], r.method.size());
    w[1] = std::max(w[1], r.target.size());
    w[2] = std::max(w[2], r.computed.size());
    w[3] = std::max(w[3], r.published.size());
  }
  std::ostringstream t;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                  const std::string& e) {
    t << a << std::string(w[0] - a.size() + 2, ' ') << b << std::string(w[1] - b.size() + 2, ' ') << c
      << std::string(w[2] - c.size() + 2, ' ') << d << std::string(w[3] - d.size() + 2, ' ') << e << "\n";
  };
  line("method", "target", "computed", "published", "note");
  for (const auto& r : rows) line(r.method, r.target, r.computed, r.published, r.note);
  if (cfg.out.empty())
    out << t.str();
  else
    write_text(cfg.out, t.str());
  return kExitOk;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Certified lower bounds and simulations for nodal-domain statistics of random plane waves",
               "nodalbound"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::string radii_text, config_path;
  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "flat key = value file; command-line flags take precedence");
    s->add_option("--out", cfg.out, "output path (default: stdout)");
    s->add_option("--seed", cfg.seed, "random seed");
    s->add_flag("--deterministic-output", cfg.deterministic_output, "omit the timestamp from JSON output");
  };

  auto* barrier = app.add_subcommand("barrier", "barrier-method lower bound for mu(0) or mu(1)");
  barrier->add_option("--target", cfg.target, "mu0 or mu1")->check(CLI::IsMember({"mu0", "mu1"}));
  barrier->add_option("--delta", cfg.delta, "half-width of the annulus around the Bessel zeros");
  barrier->add_option("--epsilon", cfg.epsilon, "level-band height (default: largest admissible)");
  barrier->add_option("--truncation", cfg.truncation, "order N where the S series switches to its tail bound");
  barrier->add_option("--cns-convention", cfg.cns_convention, "prefactor convention")
      ->check(CLI::IsMember({"kac_rice_exact", "paper_factor_ten"}));
  common(barrier);

  auto* sym = app.add_subcommand("symmetrize", "symmetrization lower bound for mu(0) or mu(1)");
  sym->add_option("--target", cfg.target, "mu0 or mu1")->check(CLI::IsMember({"mu0", "mu1"}));
  sym->add_option("--radii", radii_text, "comma-separated radii (default depends on the target)");
  sym->add_option("--t-mode", cfg.t_mode, "prop, appendix or explicit")
      ->check(CLI::IsMember({"prop", "appendix", "explicit", "prop_formula", "appendix_formula", "explicit_value"}));
  sym->add_option("--T", cfg.T, "threshold T for --t-mode explicit");
  common(sym);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo nodal-domain statistics");
  sim->add_option("--grid", cfg.grid, "grid points per axis");
  sim->add_option("--half-width", cfg.half_width, "box half-width L");
  sim->add_option("--counting-radius", cfg.counting_radius, "domains must lie inside this disk");
  sim->add_option("--terms", cfg.terms, "series truncation N");
  sim->add_option("--samples", cfg.samples, "number of samples");
  sim->add_option("--workers", cfg.workers, "worker threads");
  sim->add_option("--h-max", cfg.h_max, "largest hole count tabulated");
  sim->add_option("--xi0", cfg.xi0, "fix the J_0 coefficient");
  sim->add_option("--export-field", cfg.export_field, "write sample 0 as .pgm or CSV");
  common(sim);

  auto* rep = app.add_subcommand("report", "summarize certificate and statistics files");
  rep->add_option("inputs", cfg.inputs, "JSON files written by the other commands")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  common(rep);

  std::vector<std::string> tokens = args;
  if (!tokens.empty()) {
    if (auto* sub = app.get_subcommand_no_throw(tokens[0]); sub != nullptr) {
      if (const std::string path = find_config_path(tokens); !path.empty()) {
        const auto extra = config_tokens(path, *sub);
        tokens.insert(tokens.begin() + 1, extra.begin(), extra.end());
      }
    }
  }
  std::reverse(tokens.begin(), tokens.end());
  try {
    app.parse(std::move(tokens));
  } catch (const CLI::CallForHelp&) {
    cfg.command = Command::help;
    cfg.help_text = app.help();
    for (auto* s : app.get_subcommands())
      if (s->parsed()) cfg.help_text = s->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (barrier->parsed()) {
    cfg.command = Command::barrier;
    const double gap = critical_gap();
    if (!(cfg.delta > 0.0) || !(cfg.delta < gap))
      throw UsageError(fmt("--delta %g is outside (0, %.5f): delta must stay below the gap j11 - j01 = %.5f", cfg.delta,
                           gap, gap));
    if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
    if (cfg.truncation < 10 || cfg.truncation > 511) throw UsageError("--truncation must lie in 10..511");
  } else if (sym->parsed()) {
    cfg.command = Command::symmetrize;
    if (!radii_text.empty()) cfg.radii = parse_radii(radii_text);
    if (cfg.T && !(*cfg.T > 0.0)) throw UsageError("--T must be positive");
  } else if (sim->parsed()) {
    cfg.command = Command::simulate;
    if (cfg.terms < 1 || cfg.terms > 512) throw UsageError("--terms must lie in 1..512");
    if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
    if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
    if (cfg.h_max < 0) throw UsageError("--h-max must be >= 0");
    try {
      GridSpec{cfg.half_width, cfg.grid, cfg.counting_radius}.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  } else {
    cfg.command = Command::report;
  }
  return cfg;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::help:
        out << cfg.help_text;
        return kExitOk;
      case Command::barrier:
        return run_barrier(cfg, out, err);
      case Command::symmetrize:
        return run_symmetrize(cfg, out, err);
      case Command::simulate:
        return run_simulate(cfg, out, err);
      case Command::report:
        return run_report(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::range_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun 'nodalbound --help' for usage\n";
    return kExitUsage;
  }
  try {
    return dispatch(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace nodal::cli
