#include "theta_idents/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "theta_idents/errors.hpp"
#include "theta_idents/transforms.hpp"

namespace theta_idents {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kPoleThreshold = 1e-12;

complex int_power(complex base, int exponent) {
  complex result{1.0, 0.0};
  int e = exponent < 0 ? -exponent : exponent;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return exponent < 0 ? 1.0 / result : result;
}

void check_denominator(complex den, complex num, const char* what) {
  if (std::abs(den) < kPoleThreshold * std::max(1.0, std::abs(num))) {
    throw PoleError(std::string("denominator ") + what + " vanishes near the sample point");
  }
}

complex phase(int eighths) {
  const int k = ((eighths % 8) + 8) % 8;
  switch (k) {  // exact values for the axis directions
    case 0: return {1.0, 0.0};
    case 2: return {0.0, 1.0};
    case 4: return {-1.0, 0.0};
    case 6: return {0.0, -1.0};
    default: return std::polar(1.0, std::numbers::pi * k / 4.0);
  }
}

long long floor_mod(long long a, long long p) { return ((a % p) + p) % p; }

// Under z -> z + pi tau every theta picks up the factor q^{-1} e^{-2iz} and
// theta_1, theta_4 also change sign.
int lattice_sign(ThetaIndex index) { return index == ThetaIndex::One || index == ThetaIndex::Four ? -1 : 1; }

}  // namespace

complex SumContext::step() const {
  const double base = period_value(period) / static_cast<double>(p);
  switch (shift) {
    case ShiftUnit::Real: return {base, 0.0};
    case ShiftUnit::Tau: return base * nome.tau();
    case ShiftUnit::OneMinusTau: return base * (1.0 - nome.tau());
  }
  return {base, 0.0};
}

complex evaluate_factor(const RatioFactor& factor, complex x, const Nome& nome) {
  // Ratios are evaluated at x - k pi tau so that far off the real axis the
  // individual theta values cannot overflow.
  const double lattice_im = std::numbers::pi * nome.tau().imag();
  const long long k = factor.kind == FactorKind::Theta ? 0 : std::llround(x.imag() / lattice_im);
  const ThetaArgument arg(x - static_cast<double>(k) * std::numbers::pi * nome.tau(), nome);
  switch (factor.kind) {
    case FactorKind::Ratio: {
      const complex num = theta(factor.numerator, arg);
      const complex den = theta(factor.denominator, arg);
      check_denominator(den, num, "theta");
      const bool flip = (k % 2 != 0) && lattice_sign(factor.numerator) != lattice_sign(factor.denominator);
      return int_power(flip ? -num / den : num / den, factor.power);
    }
    case FactorKind::LogDerivative: {
      const complex num = theta_dz(ThetaIndex::Four, arg, 1);
      const complex den = theta(ThetaIndex::Four, arg);
      check_denominator(den, num, "theta_4");
      return num / den - 2.0 * kI * static_cast<double>(k);
    }
    case FactorKind::Theta: {
      const complex value = theta(factor.numerator, arg);
      if (factor.power < 0) check_denominator(value, 1.0, "theta");
      return int_power(value, factor.power);
    }
  }
  throw DomainError("unknown factor kind");
}

namespace {

class SumEvaluator {
 public:
  SumEvaluator(const IntBinding& ints, const SumContext& ctx) : ints_(ints), ctx_(ctx), step_(ctx.step()) {}

  complex point(complex z, long long j, long long offset) const {
    long long index = j - 1 + offset;
    if (ctx_.mode == IndexMode::Cyclic) index = floor_mod(index, ctx_.p);
    return z + static_cast<double>(index) * step_;
  }

  // The j-th summand without the alternating sign.
  complex term(const CyclicSum& sum, complex z, long long j) const {
    complex value{1.0, 0.0};
    for (const auto& f : sum.factors) {
      value *= evaluate_factor(f, point(z, j, f.offset.eval(ints_)), ctx_.nome);
    }
    if (sum.chain) {
      const long long length = sum.chain->length.eval(ints_);
      IntBinding scope = ints_;
      for (long long n = 0; n < length; ++n) {
        scope.set(Symbol::n, n);
        value *= evaluate_factor(sum.chain->factor, point(z, j, sum.chain->factor.offset.eval(scope)), ctx_.nome);
      }
    }
    return value;
  }

 private:
  const IntBinding& ints_;
  const SumContext& ctx_;
  complex step_;
};

}  // namespace

SumValue evaluate_cyclic_sum_terms(const CyclicSum& sum, const IntBinding& ints, const SumContext& ctx, complex z) {
  if (ctx.p < 2) throw DomainError("p must be at least 2");
  const SumEvaluator eval(ints, ctx);
  SumValue out;
  out.value = sum.product_form ? complex{1.0, 0.0} : complex{0.0, 0.0};
  for (long long j = 1; j <= ctx.p; ++j) {
    complex t = eval.term(sum, z, j);
    if (sum.alternating && j % 2 == 0) t = -t;
    out.max_term = std::max(out.max_term, std::abs(t));
    if (sum.product_form) {
      out.value *= t;
    } else {
      out.value += t;
    }
  }
  out.value *= phase(sum.phase_eighths);
  if (sum.product_form) out.max_term = std::max(out.max_term, std::abs(out.value));
  return out;
}

complex evaluate_cyclic_sum(const CyclicSum& sum, const IntBinding& ints, const SumContext& ctx, complex z) {
  return evaluate_cyclic_sum_terms(sum, ints, ctx, z).value;
}

complex mean_value_rhs(const CyclicSum& integrand, const IntBinding& ints, const SumContext& ctx, int nodes) {
  if (nodes < 64 || !std::has_single_bit(static_cast<unsigned>(nodes))) {
    throw DomainError("quadrature node count must be a power of two, at least 64");
  }
  if (ctx.shift != ShiftUnit::Real) throw DomainError("mean-value integral needs real shifts");
  const SumEvaluator eval(ints, ctx);
  const double period = period_value(ctx.period);
  complex total{0.0, 0.0};
  for (int i = 0; i < nodes; ++i) {
    total += eval.term(integrand, complex{period * i / nodes, 0.0}, 1);
  }
  // (p/T) * (T/N) * sum
  return phase(integrand.phase_eighths) * total * (static_cast<double>(ctx.p) / nodes);
}

namespace {

Nome coefficient_nome(CoeffModulus modulus, complex tau) {
  switch (modulus) {
    case CoeffModulus::Same: return Nome(tau);
    case CoeffModulus::MinusInverse: return Nome(mapped_tau(ModularMapKind::MinusInverse, tau));
    case CoeffModulus::OverOneMinus: return Nome(mapped_tau(ModularMapKind::OverOneMinus, tau));
  }
  return Nome(tau);
}

PointResult finish(complex z, complex lhs, complex rhs, double max_term) {
  PointResult pr;
  pr.z = z;
  pr.lhs = lhs;
  pr.rhs = rhs;
  pr.abs_residual = std::abs(lhs - rhs);
  pr.scale = 1.0 + std::max({std::abs(lhs), std::abs(rhs), max_term});
  pr.rel_residual = pr.abs_residual / pr.scale;
  return pr;
}

void classify(VerificationResult& result, double tolerance) {
  result.pass = true;
  result.max_rel_residual = 0.0;
  result.worst = 0;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    double rel = result.points[i].rel_residual;
    if (std::isnan(rel)) rel = std::numeric_limits<double>::infinity();
    if (!(rel <= tolerance)) result.pass = false;
    if (i == 0 || rel > result.max_rel_residual) {
      result.max_rel_residual = rel;
      result.worst = i;
    }
  }
}

VerificationResult verify_transform(const VerificationInstance& inst) {
  const IdentitySpec& spec = *inst.spec;
  const EllipticContext ectx(inst.m);
  VerificationResult result;
  result.id = spec.id;
  result.binding = inst.binding;
  result.m = inst.m;
  for (const complex z : inst.points) {
    const RelationValue v = relation_sides(*spec.relation, z, ectx.nome());
    result.points.push_back(finish(z, v.lhs, v.rhs, 0.0));
  }
  classify(result, inst.tolerance);
  return result;
}

}  // namespace

VerificationResult verify(const VerificationInstance& inst) {
  if (inst.spec == nullptr) throw DomainError("verification instance without identity");
  const IdentitySpec& spec = *inst.spec;
  if (spec.family == Family::Transform) return verify_transform(inst);
  if (const std::string reason = check_binding(spec, inst.binding); !reason.empty()) {
    throw ConstraintViolation(spec.id + ": " + reason);
  }

  const EllipticContext ectx(inst.m);
  const IntBinding ints = inst.binding.to_ints();
  SumContext ctx;
  ctx.period = spec.period;
  ctx.p = inst.binding.p;
  ctx.nome = ectx.nome();
  ctx.shift = spec.shift;

  CoeffBinding cb{ints, spec.period, coefficient_nome(spec.coeff_modulus, ectx.tau())};
  ThetaGridCache cache;

  // z-independent pieces of the right side.
  std::vector<complex> coeffs(spec.rhs.size());
  for (std::size_t i = 0; i < spec.rhs.size(); ++i) {
    const RhsTerm& term = spec.rhs[i];
    switch (term.kind) {
      case RhsKind::WeightedSum: coeffs[i] = eval_expr(*term.coeff, cb, &cache); break;
      case RhsKind::PConstant: coeffs[i] = static_cast<double>(inst.binding.p) * eval_expr(*term.coeff, cb, &cache); break;
      case RhsKind::MeanValueIntegral: coeffs[i] = mean_value_rhs(*term.sum, ints, ctx, inst.quadrature_nodes); break;
      case RhsKind::Zero: coeffs[i] = 0.0; break;
    }
  }

  VerificationResult result;
  result.id = spec.id;
  result.binding = inst.binding;
  result.m = inst.m;
  for (const complex z : inst.points) {
    double max_term = 0.0;
    complex lhs{0.0, 0.0};
    for (const auto& sum : spec.lhs) {
      const SumValue v = evaluate_cyclic_sum_terms(sum, ints, ctx, z);
      lhs += v.value;
      max_term = std::max(max_term, v.max_term);
    }
    complex rhs{0.0, 0.0};
    for (std::size_t i = 0; i < spec.rhs.size(); ++i) {
      const RhsTerm& term = spec.rhs[i];
      complex value = coeffs[i];
      if (term.kind == RhsKind::WeightedSum) {
        const SumValue v = evaluate_cyclic_sum_terms(*term.sum, ints, ctx, z);
        value = coeffs[i] * v.value;
        max_term = std::max(max_term, std::abs(coeffs[i]) * v.max_term);
      }
      max_term = std::max(max_term, std::abs(value));
      rhs += value;
    }
    result.points.push_back(finish(z, lhs, rhs, max_term));
  }
  classify(result, inst.tolerance);
  return result;
}

namespace {

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t ordinal) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(ordinal), static_cast<std::uint32_t>(ordinal >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::vector<complex> sample_points(const IdentitySpec& spec, const Nome& nome, int count, std::uint64_t seed,
                                   bool complex_z) {
  std::mt19937_64 rng(seed);
  const double period = spec.family == Family::Transform ? std::numbers::pi : period_value(spec.period);
  complex unit{1.0, 0.0};
  if (spec.shift == ShiftUnit::Tau) unit = nome.tau();
  if (spec.shift == ShiftUnit::OneMinusTau) unit = 1.0 - nome.tau();
  const double strip = std::numbers::pi * nome.tau().imag() / 4.0;
  std::vector<complex> points;
  points.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double w = period * unit_double(rng);
    double y = 0.0;
    if (complex_z) y = strip * (2.0 * unit_double(rng) - 1.0);
    points.push_back(unit * complex{w, y});
  }
  return points;
}

std::string SweepGrid::describe() const {
  std::ostringstream out;
  out << "m={";
  for (std::size_t i = 0; i < m_values.size(); ++i) out << (i ? "," : "") << m_values[i];
  out << "} p=" << p_range.lo << ".." << p_range.hi << " samples=" << samples << " seed=" << seed
      << " tol=" << tolerance;
  if (complex_z) out << " complex-z";
  return out.str();
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

namespace {

struct Job {
  const IdentitySpec* spec;
  ParamBinding binding;
  double m;
  std::uint64_t seed;
};

InstanceRecord run_job(const Job& job, const SweepGrid& grid) {
  InstanceRecord rec;
  rec.binding = job.binding;
  rec.m = job.m;
  try {
    const EllipticContext ectx(job.m);
    VerificationInstance inst;
    inst.spec = job.spec;
    inst.binding = job.binding;
    inst.m = job.m;
    inst.points = sample_points(*job.spec, ectx.nome(), grid.samples, job.seed, grid.complex_z);
    inst.tolerance = grid.tolerance;
    inst.quadrature_nodes = grid.quadrature_nodes;
    VerificationResult res = verify(inst);
    rec.verdict = res.pass ? Verdict::Pass : Verdict::Fail;
    rec.max_rel_residual = res.max_rel_residual;
    if (!res.points.empty()) rec.worst_z = res.points[res.worst].z;
    rec.points = std::move(res.points);
  } catch (const PoleError& e) {
    rec.reason = std::string("PoleError: ") + e.what();
  } catch (const DivisionNearZeroError& e) {
    rec.reason = std::string("DivisionNearZeroError: ") + e.what();
  } catch (const ConvergenceError& e) {
    rec.reason = std::string("ConvergenceError: ") + e.what();
  } catch (const Error& e) {
    rec.reason = e.what();
  }
  return rec;
}

void run_jobs(const std::vector<Job>& jobs, const SweepGrid& grid, std::vector<InstanceRecord>& slots,
              unsigned threads) {
  slots.assign(jobs.size(), {});
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) slots[i] = run_job(jobs[i], grid);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
}

// Jobs for one identity; a single skipped record when nothing is admissible.
std::vector<Job> plan(const IdentitySpec& spec, const SweepGrid& grid, std::string& empty_reason) {
  std::vector<Job> jobs;
  std::vector<ParamBinding> bindings;
  if (spec.family == Family::Transform) {
    bindings.push_back({});
  } else {
    try {
      bindings = enumerate_params(spec, grid.p_range);
    } catch (const EmptyParameterSpace& e) {
      empty_reason = std::string("EmptyParameterSpace: ") + e.what();
      return jobs;
    }
  }
  for (double m : grid.m_values) {
    for (const auto& b : bindings) jobs.push_back({&spec, b, m, 0});
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].seed = instance_seed(grid.seed, i);
  return jobs;
}

SweepReport aggregate(const IdentitySpec& spec, const SweepGrid& grid, std::vector<InstanceRecord> records) {
  SweepReport report;
  report.id = spec.id;
  report.grid = grid.describe();
  report.status = spec.status;
  report.tolerance = grid.tolerance;
  for (auto& rec : records) {
    if (rec.verdict == Verdict::Pass) ++report.pass;
    if (rec.verdict == Verdict::Fail) ++report.fail;
    if (rec.verdict == Verdict::Skipped) ++report.skipped;
    if (rec.verdict != Verdict::Skipped) report.max_rel_residual = std::max(report.max_rel_residual, rec.max_rel_residual);
  }
  report.instances = std::move(records);
  return report;
}

}  // namespace

SweepReport sweep(const IdentitySpec& spec, const SweepGrid& grid, unsigned threads) {
  return std::move(sweep_all({&spec}, grid, threads).front());
}

std::vector<SweepReport> sweep_all(const std::vector<const IdentitySpec*>& specs, const SweepGrid& grid,
                                   unsigned threads) {
  if (grid.m_values.empty() || grid.samples < 1) throw DomainError("sweep grid is empty");
  std::vector<Job> jobs;
  std::vector<std::size_t> first(specs.size() + 1, 0);
  std::vector<std::string> empty(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    first[i] = jobs.size();
    auto part = plan(*specs[i], grid, empty[i]);
    jobs.insert(jobs.end(), part.begin(), part.end());
  }
  first[specs.size()] = jobs.size();

  const auto start = std::chrono::steady_clock::now();
  std::vector<InstanceRecord> slots;
  run_jobs(jobs, grid, slots, threads);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<SweepReport> reports;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::vector<InstanceRecord> records(std::make_move_iterator(slots.begin() + static_cast<std::ptrdiff_t>(first[i])),
                                        std::make_move_iterator(slots.begin() + static_cast<std::ptrdiff_t>(first[i + 1])));
    if (!empty[i].empty()) {
      InstanceRecord rec;
      rec.reason = empty[i];
      records.push_back(rec);
    }
    reports.push_back(aggregate(*specs[i], grid, std::move(records)));
    reports.back().duration_seconds = elapsed * static_cast<double>(first[i + 1] - first[i]) /
                                      static_cast<double>(std::max<std::size_t>(jobs.size(), 1));
  }
  return reports;
}

namespace {

nlohmann::json complex_json(complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json binding_json(const ParamBinding& b) {
  return {{"p", b.p}, {"r", b.r}, {"s", b.s}, {"t", b.t}, {"l", b.l}};
}

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

}  // namespace

std::string reports_to_json(const std::vector<SweepReport>& reports) {
  nlohmann::json doc;
  doc["version"] = 1;
  nlohmann::json list = nlohmann::json::array();
  std::size_t pass = 0, fail = 0, skipped = 0, errata = 0;
  for (const auto& r : reports) {
    nlohmann::json instances = nlohmann::json::array();
    for (const auto& rec : r.instances) {
      nlohmann::json item = binding_json(rec.binding);
      item["m"] = rec.m;
      item["verdict"] = verdict_name(rec.verdict);
      if (rec.verdict == Verdict::Skipped) {
        item["reason"] = rec.reason;
      } else {
        item["max_rel_residual"] = rec.max_rel_residual;
        item["worst_z"] = complex_json(rec.worst_z);
      }
      instances.push_back(std::move(item));
    }
    list.push_back({{"id", r.id},
                    {"grid", r.grid},
                    {"status", status_name(r.status)},
                    {"erratum", r.erratum()},
                    {"pass", r.pass},
                    {"fail", r.fail},
                    {"skipped", r.skipped},
                    {"total", r.total()},
                    {"max_rel_residual", r.max_rel_residual},
                    {"instances", std::move(instances)}});
    pass += r.pass;
    fail += r.fail;
    skipped += r.skipped;
    errata += r.erratum() ? 1 : 0;
  }
  doc["reports"] = std::move(list);
  doc["summary"] = {{"identities", reports.size()}, {"pass", pass}, {"fail", fail}, {"skipped", skipped},
                    {"errata", errata}};
  return doc.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<SweepReport>& reports) {
  std::ostringstream out;
  out << "id,p,r,s,t,l,m,z,residual,verdict\n";
  for (const auto& r : reports) {
    for (const auto& rec : r.instances) {
      const auto& b = rec.binding;
      const std::string prefix = r.id + "," + std::to_string(b.p) + "," + std::to_string(b.r) + "," +
                                 std::to_string(b.s) + "," + std::to_string(b.t) + "," + std::to_string(b.l) + "," +
                                 format_double(rec.m) + ",";
      if (rec.verdict == Verdict::Skipped) {
        out << prefix << ",,skipped\n";
        continue;
      }
      for (const auto& pt : rec.points) {
        std::string z = format_double(pt.z.real());
        if (pt.z.imag() != 0.0) z += (pt.z.imag() < 0 ? "" : "+") + format_double(pt.z.imag()) + "i";
        out << prefix << z << "," << format_double(pt.rel_residual) << ","
            << (pt.rel_residual <= r.tolerance ? "pass" : "fail") << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace theta_idents
