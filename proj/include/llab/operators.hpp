#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "llab/boyd.hpp"
#include "llab/rearrangement.hpp"
#include "llab/weight.hpp"
#include "llab/weight_classes.hpp"

namespace llab {

// Non-centered Hardy-Littlewood maximal function, exact for step f: the
// best interval has endpoints among the breakpoints of f and x itself.
[[nodiscard]] double maximal(const StepFunction& f, double x);

// Principal value (1/π) p.v. ∫ f(y)/(x − y) dy. Throws SingularInputError
// when x is an endpoint of f.
[[nodiscard]] double hilbert(const StepFunction& f, double x);

// (1/π) ∫_{|x−y|>eps} f(y)/(x − y) dy for eps > 0.
[[nodiscard]] double hilbert_truncated(const StepFunction& f, double x, double eps);

// sup over eps > 0 of |hilbert_truncated(f, x, eps)|. Between consecutive
// endpoint distances the truncated integral is monotone in eps, so the
// supremum is taken over eps → 0⁺ and eps = |x − e|.
[[nodiscard]] double hilbert_maximal(const StepFunction& f, double x);

// Qg(t) = ∫_t^∞ g(s) ds/s; +inf when t = 0 and g(0) > 0.
[[nodiscard]] double conjugate_hardy(const DecreasingStep& g, double t);

enum class Operator { M, H, Hstar, Q };
enum class NormTarget { strong, weak };

[[nodiscard]] const char* to_string(Operator op) noexcept;
[[nodiscard]] const char* to_string(NormTarget t) noexcept;

struct ProbeFunction {
    std::string id;
    StepFunction f;
};

struct ProbeRatio {
    std::string id;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
};

struct OperatorProbeReport {
    Operator op = Operator::M;
    NormTarget norm_kind = NormTarget::strong;
    std::vector<ProbeRatio> ratios;
    double max_ratio = 0.0;
    // Output norms come from a resampled image rather than a pointwise
    // lower bound (H and H*).
    bool approximate = false;
};

// Test functions: "indicators", "extremals" or "random:N".
[[nodiscard]] std::vector<ProbeFunction> probe_family(const std::string& name, std::uint64_t seed);

// Step image used for the output norm. For M and Q it lies below the true
// image; for H and H* it samples |Tf| at cell midpoints.
[[nodiscard]] StepFunction operator_image(Operator op, const StepFunction& f, const WeightModel& u);

// Lower step of Q(f*_u) on a geometric grid refined at the plateaus of f*_u.
[[nodiscard]] DecreasingStep conjugate_hardy_image(const DecreasingStep& g);

// ‖T f‖ / ‖f‖_{Λ^p_u(w)} for every test function. For Q the ratio is
// ‖Q f*_u‖_{L^p(w)} / ‖f*_u‖_{L^p(w)} (or the weak counterpart).
[[nodiscard]] OperatorProbeReport empirical_opnorm(Operator op, const WeightModel& u, const WeightModel& w, double p,
                                                   const std::vector<ProbeFunction>& family, NormTarget target,
                                                   unsigned threads = 1);

struct HilbertVerdict {
    Verdict verdict = Verdict::inconclusive;
    Verdict index_route = Verdict::inconclusive;
    Verdict condition_route = Verdict::inconclusive;
    double alpha = 0.0;
    double beta = 0.0;
    double beta_tolerance = 0.0;
    MaximalVerdict maximal;
    ClassVerdict ainf;
    ClassVerdict bstar;
    // p <= 1: only the necessary condition β > 0 is tested.
    bool one_sided = false;
    std::string note;
};

[[nodiscard]] HilbertVerdict hilbert_verdict(const WeightModel& u, const WeightModel& w, double p,
                                             const BoydIndices& estimates);

}  // namespace llab
