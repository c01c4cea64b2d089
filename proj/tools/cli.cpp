#include "cli.hpp"

#include <fnmatch.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "theta_idents/catalog.hpp"
#include "theta_idents/errors.hpp"
#include "theta_idents/special_fn.hpp"
#include "theta_idents/transforms.hpp"
#include "theta_idents/verifier.hpp"

namespace theta_idents::cli {
namespace {

// Raised for anything that should end the run with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string id = "*";
  std::vector<double> m_values{0.1, 0.3, 0.5, 0.7, 0.9};
  std::string p = "2..9";
  std::optional<int> r, s, t, l;
  int samples = 16;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  int quadrature_nodes = kDefaultQuadratureNodes;
  unsigned threads = 0;
  bool complex_z = false;
  bool exclude_errata = false;
  std::string format = "human";
  std::string output;
  std::string catalog;
  std::string map = "minus-inverse";
  bool check = false;
};

PRange parse_p(const std::string& text) {
  PRange range;
  try {
    std::size_t used = 0;
    if (auto dots = text.find(".."); dots != std::string::npos) {
      range.lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument(text);
      const std::string hi = text.substr(dots + 2);
      range.hi = std::stoi(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(text);
    } else {
      range.lo = range.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("--p: expected N or A..B, got \"" + text + "\"");
  }
  if (range.lo < 2) throw UsageError("--p: p must be ≥ 2");
  if (range.hi > 64) throw UsageError("--p: p must be ≤ 64");
  if (range.lo > range.hi) throw UsageError("--p: empty range " + text);
  return range;
}

void check_options(const Options& o) {
  if (!(o.tolerance >= 1e-14 && o.tolerance <= 1e-3)) throw UsageError("--tolerance: must lie in [1e-14, 1e-3]");
  if (o.m_values.empty()) throw UsageError("--m: needs at least one value");
  for (double m : o.m_values) {
    if (!(m >= 1e-6 && m <= 1 - 1e-6)) {
      std::ostringstream msg;
      msg << "--m: " << m << " outside [1e-6, 1-1e-6]";
      throw UsageError(msg.str());
    }
  }
  if (o.samples < 1) throw UsageError("--samples: must be at least 1");
  const int n = o.quadrature_nodes;
  if (n < 64 || (n & (n - 1)) != 0) throw UsageError("--nodes: must be a power of two, at least 64");
  if (o.format != "human" && o.format != "json" && o.format != "csv") {
    throw UsageError("--format: expected human, json or csv");
  }
}

Catalog load_active_catalog(const Options& o) {
  std::string path = o.catalog;
  if (path.empty()) {
    if (const char* env = std::getenv("THETA_IDENTS_CATALOG"); env && *env) path = env;
  }
  if (path.empty()) return builtin_catalog();
  try {
    return load_catalog(path);
  } catch (const theta_idents::Error& e) {
    throw UsageError("catalog " + path + ": " + e.what());
  }
}

std::vector<const IdentitySpec*> select(const Catalog& catalog, const Options& o) {
  std::vector<const IdentitySpec*> out;
  for (const auto& spec : catalog) {
    if (fnmatch(o.id.c_str(), spec.id.c_str(), 0) != 0) continue;
    if (o.exclude_errata && spec.status == Status::Erratum) continue;
    out.push_back(&spec);
  }
  return out;
}

SweepGrid grid_from(const Options& o) {
  SweepGrid grid;
  grid.m_values = o.m_values;
  grid.p_range = parse_p(o.p);
  grid.samples = o.samples;
  grid.seed = o.seed;
  grid.tolerance = o.tolerance;
  grid.quadrature_nodes = o.quadrature_nodes;
  grid.complex_z = o.complex_z;
  return grid;
}

void write_atomically(const std::string& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("--output: cannot write " + tmp.string());
    file << text;
    if (!file.flush()) throw UsageError("--output: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw UsageError("--output: cannot replace " + path + ": " + ec.message());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_atomically(o.output, text);
  }
}

std::string human_reports(const std::vector<SweepReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "id" << std::setw(11) << "status" << std::right << std::setw(7) << "pass"
      << std::setw(7) << "fail" << std::setw(7) << "skip" << std::setw(12) << "max_resid" << "  verdict\n";
  std::size_t fails = 0, errata = 0;
  for (const auto& r : reports) {
    const char* verdict = r.fail ? "FAIL" : (r.pass ? "ok" : "skipped");
    out << std::left << std::setw(14) << r.id << std::setw(11) << status_name(r.status) << std::right << std::setw(7)
        << r.pass << std::setw(7) << r.fail << std::setw(7) << r.skipped << std::setw(12) << std::setprecision(3)
        << r.max_rel_residual << "  " << verdict << (r.erratum() ? " [erratum as printed]" : "") << "\n";
    if (r.fail == 0 && r.pass == 0 && !r.instances.empty() && !r.instances.front().reason.empty()) {
      out << "    skipped: " << r.instances.front().reason << "\n";
    }
    fails += r.fail ? 1 : 0;
    errata += r.erratum() ? 1 : 0;
  }
  out << reports.size() << " identities, " << fails << " with failures, " << errata << " errata\n";
  return out.str();
}

std::string format_reports(const Options& o, const std::vector<SweepReport>& reports) {
  if (o.format == "json") return reports_to_json(reports);
  if (o.format == "csv") return reports_to_csv(reports);
  return human_reports(reports);
}

int exit_code(const std::vector<SweepReport>& reports) {
  for (const auto& r : reports) {
    if (r.fail) return kExitFail;
  }
  return kExitOk;
}

int cmd_list(const Options& o, std::ostream& out) {
  const Catalog catalog = load_active_catalog(o);
  const auto chosen = select(catalog, o);
  std::ostringstream text;
  if (o.format == "json") {
    Catalog subset;
    for (const auto* spec : chosen) subset.push_back(*spec);
    text << catalog_to_json(subset);
  } else if (o.format == "csv") {
    text << "id,eq,family,status,corrected_by\n";
    for (const auto* spec : chosen) {
      text << spec->id << "," << spec->paper_eq << "," << family_name(spec->family) << ","
           << status_name(spec->status) << "," << spec->corrected_by << "\n";
    }
  } else {
    for (const auto* spec : chosen) {
      text << std::left << std::setw(14) << spec->id << std::setw(6) << spec->paper_eq << std::setw(11)
           << family_name(spec->family) << std::setw(10) << status_name(spec->status);
      if (!spec->corrected_by.empty()) text << " corrected by " << spec->corrected_by;
      if (!spec->corrects.empty()) text << " corrects " << spec->corrects;
      text << "\n";
    }
    text << chosen.size() << " identities\n";
  }
  emit(o, text.str(), out);
  return kExitOk;
}

// Flags for symbols the identity does not use are ignored.
bool binding_matches(const IdentitySpec& spec, const ParamBinding& b, const Options& o) {
  auto agrees = [&](Symbol symbol, const std::optional<int>& flag, int value) {
    return !flag || !spec.constraints.symbols.count(symbol) || value == *flag;
  };
  return agrees(Symbol::r, o.r, b.r) && agrees(Symbol::s, o.s, b.s) && agrees(Symbol::t, o.t, b.t) &&
         agrees(Symbol::l, o.l, b.l);
}

// Restricts a report to instances whose binding matches the explicit flags.
SweepReport restrict(const IdentitySpec& spec, SweepReport report, const Options& o) {
  std::vector<InstanceRecord> kept;
  report.pass = report.fail = report.skipped = 0;
  report.max_rel_residual = 0.0;
  for (auto& rec : report.instances) {
    // a lone skip for an empty parameter space has no binding to match
    if (rec.binding.p != 0 && !binding_matches(spec, rec.binding, o)) continue;
    if (rec.verdict == Verdict::Pass) ++report.pass;
    if (rec.verdict == Verdict::Fail) ++report.fail;
    if (rec.verdict == Verdict::Skipped) ++report.skipped;
    if (rec.verdict != Verdict::Skipped) report.max_rel_residual = std::max(report.max_rel_residual, rec.max_rel_residual);
    kept.push_back(std::move(rec));
  }
  report.instances = std::move(kept);
  return report;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SweepGrid grid = grid_from(o);
  const Catalog catalog = load_active_catalog(o);
  const auto chosen = select(catalog, o);
  if (chosen.empty()) throw UsageError("--id: no identity matches \"" + o.id + "\"");

  std::vector<SweepReport> reports;
  for (const auto* spec : chosen) {
    if (spec->family != Family::Transform && grid.p_range.lo == grid.p_range.hi) {
      const auto& symbols = spec->constraints.symbols;
      const bool complete = (!symbols.count(Symbol::r) || o.r) && (!symbols.count(Symbol::s) || o.s) &&
                            (!symbols.count(Symbol::t) || o.t) && (!symbols.count(Symbol::l) || o.l);
      if (complete) {
        ParamBinding b{grid.p_range.lo, o.r.value_or(0), o.s.value_or(0), o.t.value_or(0), o.l.value_or(0)};
        if (!symbols.count(Symbol::r)) b.r = 0;
        if (!symbols.count(Symbol::s)) b.s = 0;
        if (!symbols.count(Symbol::t)) b.t = 0;
        if (!symbols.count(Symbol::l)) b.l = 0;
        if (auto why = check_binding(*spec, b); !why.empty()) {
          throw UsageError(spec->id + ": ConstraintViolation: " + why);
        }
      }
    }
    SweepReport report = restrict(*spec, sweep(*spec, grid, o.threads), o);
    if (report.instances.empty()) throw UsageError(spec->id + ": no admissible binding matches the given parameters");
    reports.push_back(std::move(report));
  }
  emit(o, format_reports(o, reports), out);
  return exit_code(reports);
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const SweepGrid grid = grid_from(o);
  const Catalog catalog = load_active_catalog(o);
  const auto chosen = select(catalog, o);
  if (chosen.empty()) throw UsageError("--id: no identity matches \"" + o.id + "\"");
  const auto reports = sweep_all(chosen, grid, o.threads);
  emit(o, format_reports(o, reports), out);
  return exit_code(reports);
}

int cmd_derive(const Options& o, std::ostream& out, std::ostream& err) {
  ModularMapKind map;
  if (o.map == "minus-inverse") {
    map = ModularMapKind::MinusInverse;
  } else if (o.map == "over-one-minus") {
    map = ModularMapKind::OverOneMinus;
  } else {
    throw UsageError("--map: expected minus-inverse or over-one-minus");
  }
  const SweepGrid grid = grid_from(o);
  const Catalog catalog = load_active_catalog(o);
  const auto chosen = select(catalog, o);
  if (chosen.empty()) throw UsageError("--id: no identity matches \"" + o.id + "\"");

  Catalog derived;
  for (const auto* spec : chosen) {
    try {
      derived.push_back(derive_tau_shift_identity(*spec, map));
    } catch (const UnsupportedFactor& e) {
      err << spec->id << ": not derived: " << e.what() << "\n";
    }
  }
  emit(o, catalog_to_json(derived), out);
  if (!o.check) return kExitOk;

  std::vector<const IdentitySpec*> specs;
  for (const auto& spec : derived) specs.push_back(&spec);
  if (specs.empty()) return kExitOk;
  const auto reports = sweep_all(specs, grid, o.threads);
  err << human_reports(reports);
  return exit_code(reports);
}

// Quick health check of the numerical core and the builtin catalog.
int cmd_selftest(const Options& o, std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double worst) {
    out << (ok ? "PASS " : "FAIL ") << name << " (worst " << std::setprecision(3) << worst << ")\n";
    failures += ok ? 0 : 1;
  };

  double worst = 0.0;
  for (double m : {0.1, 0.5, 0.9}) {
    const EllipticContext ctx(m);
    for (double u : {-2.0, 0.3, 1.7}) {
      const complex sn = jacobi_elliptic(JacobiKind::sn, u, ctx);
      const complex cn = jacobi_elliptic(JacobiKind::cn, u, ctx);
      const complex dn = jacobi_elliptic(JacobiKind::dn, u, ctx);
      worst = std::max({worst, std::abs(sn * sn + cn * cn - 1.0), std::abs(dn * dn + m * sn * sn - 1.0)});
    }
  }
  report("jacobi sn cn dn relations", worst < 1e-12, worst);

  worst = 0.0;
  for (double m : {0.1, 0.5, 0.9}) {
    const EllipticContext ctx(m);
    const complex t3 = theta(ThetaIndex::Three, ThetaArgument(0.0, ctx.nome()));
    worst = std::max(worst, std::abs(2 * ctx.K() / std::numbers::pi - t3 * t3));
    worst = std::max(worst, std::abs(ctx.E() * ctx.Kprime() + ctx.Eprime() * ctx.K() - ctx.K() * ctx.Kprime() -
                                     std::numbers::pi / 2));
  }
  report("theta constants and Legendre relation", worst < 1e-12, worst);

  const Catalog& catalog = builtin_catalog();
  bool round_trip = false;
  try {
    round_trip = catalog_from_json(catalog_to_json(catalog)) == catalog;
  } catch (const theta_idents::Error&) {
  }
  report("catalog JSON round trip", round_trip && validate_catalog(catalog).empty(), 0.0);

  SweepGrid grid;
  grid.m_values = {0.5};
  grid.p_range = {2, 7};
  grid.samples = 4;
  grid.seed = o.seed;
  std::vector<const IdentitySpec*> verified;
  for (const auto& spec : catalog) {
    if (spec.status == Status::Verified) verified.push_back(&spec);
  }
  const auto reports = sweep_all(verified, grid, o.threads);
  worst = 0.0;
  std::string failing;
  for (const auto& r : reports) {
    worst = std::max(worst, r.max_rel_residual);
    if (r.fail && failing.empty()) failing = r.id;
  }
  report("verified catalog entries at m=0.5, p=2..7" + (failing.empty() ? "" : ", first failure " + failing),
         failing.empty(), worst);
  return failures ? kExitFail : kExitOk;
}

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--m", o.m_values, "modulus values, comma separated")->delimiter(',');
  cmd->add_option("--p", o.p, "p or range A..B (default 2..9)");
  cmd->add_option("--samples", o.samples, "z samples per binding (default 16)");
  cmd->add_option("--seed", o.seed, "sampler seed (default 0)");
  cmd->add_option("--tolerance", o.tolerance, "relative residual bound (default 1e-9)");
  cmd->add_option("--nodes", o.quadrature_nodes, "mean-value quadrature nodes (default 256)");
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores");
  cmd->add_flag("--complex-z", o.complex_z, "sample complex z inside the safe strip");
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--id", o.id, "identity id or glob (default *)");
  cmd->add_option("--format", o.format, "human, json or csv (default human)");
  cmd->add_option("--output", o.output, "write the report to this file instead of stdout");
  cmd->add_option("--catalog", o.catalog, "catalog JSON file (overrides THETA_IDENTS_CATALOG)");
  cmd->add_flag("--exclude-errata", o.exclude_errata, "leave out entries recorded as misprinted");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical verification of cyclic theta-function identities", "theta-idents"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list catalog entries");
  add_common_flags(list, o);

  auto* verify = app.add_subcommand("verify", "verify identities at explicit parameters");
  add_common_flags(verify, o);
  add_grid_flags(verify, o);
  verify->add_option("--r", o.r, "shift multiplier r");
  verify->add_option("--s", o.s, "shift multiplier s");
  verify->add_option("--t", o.t, "shift multiplier t");
  verify->add_option("--l", o.l, "chain length l");

  auto* sweep_cmd = app.add_subcommand("sweep", "verify over every admissible binding on a grid");
  add_common_flags(sweep_cmd, o);
  add_grid_flags(sweep_cmd, o);

  auto* selftest = app.add_subcommand("selftest", "quick check of the numerical core and catalog");
  selftest->add_option("--seed", o.seed, "sampler seed (default 0)");
  selftest->add_option("--threads", o.threads, "worker threads, 0 = all cores");

  auto* derive = app.add_subcommand("derive", "derive tau-shift identities through a modular map");
  add_common_flags(derive, o);
  add_grid_flags(derive, o);
  derive->add_option("--map", o.map, "minus-inverse or over-one-minus");
  derive->add_flag("--check", o.check, "sweep the derived identities and report on stderr");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*list) return cmd_list(o, out);
    check_options(o);
    if (*verify) return cmd_verify(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*selftest) return cmd_selftest(o, out);
    if (*derive) return cmd_derive(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const theta_idents::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace theta_idents::cli
