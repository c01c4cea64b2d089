#pragma once

// Numerical verification of catalog identities: evaluation of cyclic sums,
// residuals per sample point, and deterministic parameter sweeps.

#include <cstdint>
#include <string>
#include <vector>

#include "theta_idents/catalog.hpp"

namespace theta_idents {

// Unwrapped: z_{j+a} = z + (j - 1 + a) step, so z_{j+p} = z_j + T.
// Cyclic: the index j + a is reduced into 1..p first.
enum class IndexMode { Unwrapped, Cyclic };

struct SumContext {
  Period period = Period::Pi;
  int p = 2;
  Nome nome{complex{0.0, 1.0}};
  ShiftUnit shift = ShiftUnit::Real;
  IndexMode mode = IndexMode::Unwrapped;

  complex step() const;  // T/p times 1, tau or (1 - tau)
};

struct SumValue {
  complex value;
  double max_term = 0.0;  // largest |term| over j
};

// Throws PoleError when a denominator theta value is too close to zero.
SumValue evaluate_cyclic_sum_terms(const CyclicSum& sum, const IntBinding& ints, const SumContext& ctx, complex z);
complex evaluate_cyclic_sum(const CyclicSum& sum, const IntBinding& ints, const SumContext& ctx, complex z);

// One factor at the point x.
complex evaluate_factor(const RatioFactor& factor, complex x, const Nome& nome);

// (p/T) times the trapezoid rule with N nodes over one period of the j = 1
// term of `integrand`. N must be a power of two, at least 64.
complex mean_value_rhs(const CyclicSum& integrand, const IntBinding& ints, const SumContext& ctx, int nodes);

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultQuadratureNodes = 256;

struct VerificationInstance {
  const IdentitySpec* spec = nullptr;
  ParamBinding binding;
  double m = 0.5;
  std::vector<complex> points;  // base points z
  double tolerance = kDefaultTolerance;
  int quadrature_nodes = kDefaultQuadratureNodes;
};

struct PointResult {
  complex z;
  complex lhs;
  complex rhs;
  double abs_residual = 0.0;
  double scale = 1.0;
  double rel_residual = 0.0;
};

struct VerificationResult {
  std::string id;
  ParamBinding binding;
  double m = 0.0;
  std::vector<PointResult> points;
  bool pass = true;
  std::size_t worst = 0;  // index into points
  double max_rel_residual = 0.0;
};

// Throws ConstraintViolation when the binding breaks the identity's
// constraints; evaluation errors (PoleError, DivisionNearZeroError) propagate.
VerificationResult verify(const VerificationInstance& instance);

// Sample points: uniform real w in [0, T), multiplied by the shift unit
// (tau or 1 - tau) for derived identities. With complex_z the imaginary part
// is uniform in |Im z| <= pi Im(tau)/4.
std::vector<complex> sample_points(const IdentitySpec& spec, const Nome& nome, int count, std::uint64_t seed,
                                   bool complex_z = false);

struct SweepGrid {
  std::vector<double> m_values{0.1, 0.3, 0.5, 0.7, 0.9};
  PRange p_range;
  int samples = 16;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  int quadrature_nodes = kDefaultQuadratureNodes;
  bool complex_z = false;

  std::string describe() const;
};

enum class Verdict { Pass, Fail, Skipped };
std::string_view verdict_name(Verdict verdict);

struct InstanceRecord {
  ParamBinding binding;
  double m = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::string reason;  // skips only
  double max_rel_residual = 0.0;
  complex worst_z;
  std::vector<PointResult> points;
};

struct SweepReport {
  std::string id;
  std::string grid;
  Status status = Status::Unchecked;
  double tolerance = kDefaultTolerance;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  double max_rel_residual = 0.0;
  double duration_seconds = 0.0;  // not serialized; reports stay reproducible
  std::vector<InstanceRecord> instances;

  bool erratum() const { return status == Status::Erratum; }
  std::size_t total() const { return pass + fail + skipped; }
};

// threads = 0 picks the hardware concurrency. Results do not depend on it.
SweepReport sweep(const IdentitySpec& spec, const SweepGrid& grid, unsigned threads = 0);
std::vector<SweepReport> sweep_all(const std::vector<const IdentitySpec*>& specs, const SweepGrid& grid,
                                   unsigned threads = 0);

std::string reports_to_json(const std::vector<SweepReport>& reports);
// Header plus one line per sample point: id,p,r,s,t,l,m,z,residual,verdict.
std::string reports_to_csv(const std::vector<SweepReport>& reports);

}  // namespace theta_idents
