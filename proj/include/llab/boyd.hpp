#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "llab/interval_set.hpp"
#include "llab/weight.hpp"

namespace llab {

// How a sampled index function relates to the true supremum.
enum class Direction { exact, lower_bound };

[[nodiscard]] const char* to_string(Direction d) noexcept;

// Search effort. Level k runs stages 1..k; every stage only adds candidates,
// so results are monotone in the level.
struct SearchBudget {
    unsigned level = 1;
};

struct ConfigPair {
    Interval interval;
    IntervalUnion subset;
};

// Disjoint intervals I_j with subsets S_j, |I_j| = ratio * |S_j| for every j.
struct Configuration {
    std::vector<ConfigPair> pairs;
    double ratio = 1.0;
};

// Throws PreconditionError naming the violated invariant.
void validate_configuration(const Configuration& config);

// W(u(∪I_j)) / W(u(∪S_j)).
[[nodiscard]] double configuration_ratio(const WeightModel& u, const WeightModel& w, const Configuration& config);

// sup_s W(st)/W(s) over a dense geometric s-grid refined at the breakpoints
// of w. `wbar` requires t >= 1, `wbar_lower` 0 < t <= 1.
[[nodiscard]] double dilation_sup(const WeightModel& w, double t);
[[nodiscard]] double wbar(const WeightModel& w, double t);
[[nodiscard]] double wbar_lower(const WeightModel& w, double t);

struct SearchResult {
    double value = 1.0;
    Configuration witness;
    // Best single-pair value per search scale, in increasing scale order.
    std::vector<double> per_scale;
    // The per-scale maxima still grow at an end of the scale range, so the
    // supremum was probably not reached.
    bool unresolved = false;
};

// Lower bound for W̄_u(t), t >= 1: sup of W(u(∪I_j))/W(u(∪S_j)) with
// |I_j| = t|S_j|.
[[nodiscard]] SearchResult wbar_u(const WeightModel& u, const WeightModel& w, double t, SearchBudget budget,
                                  std::uint64_t seed);

// Lower bound for the lower function at t in (0, 1]: sup of
// W(u(∪S_j))/W(u(∪I_j)) with |S_j| = t|I_j|. The witness carries
// ratio = 1/t.
[[nodiscard]] SearchResult underline_wu(const WeightModel& u, const WeightModel& w, double t, SearchBudget budget,
                                        std::uint64_t seed);

struct SubmultiplicativeSamples {
    std::vector<double> arguments;
    std::vector<double> values;
    std::vector<bool> unresolved;
    Direction direction = Direction::exact;
    unsigned budget = 0;
    std::uint64_t seed = 0;
};

struct IndexEstimate {
    double exponent = 0.0;
    // Smallest C with value <= C * t^exponent on every sample.
    double constant = 1.0;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    // Largest |log value − fitted line| inside the window.
    double residual = 0.0;
    std::size_t samples_used = 0;
    Direction direction = Direction::exact;
};

// Least-squares log-log slope over the last four decades at the large-t end.
[[nodiscard]] IndexEstimate fit_upper_exponent(const SubmultiplicativeSamples& samples);
// Same at the small-t end.
[[nodiscard]] IndexEstimate fit_lower_exponent(const SubmultiplicativeSamples& samples);

// t = 2^k, k = 1..10 and t = 2^-k, k = 1..10.
[[nodiscard]] std::vector<double> default_upper_grid();
[[nodiscard]] std::vector<double> default_lower_grid();

struct BoydOptions {
    std::vector<double> upper_grid = default_upper_grid();
    std::vector<double> lower_grid = default_lower_grid();
    SearchBudget budget{};
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

[[nodiscard]] SubmultiplicativeSamples sample_wbar_u(const WeightModel& u, const WeightModel& w,
                                                     const BoydOptions& options);
[[nodiscard]] SubmultiplicativeSamples sample_underline_wu(const WeightModel& u, const WeightModel& w,
                                                           const BoydOptions& options);

struct BoydIndices {
    IndexEstimate alpha;
    IndexEstimate beta;
    SubmultiplicativeSamples upper;  // W̄_u samples (not raised to 1/p)
    SubmultiplicativeSamples lower;  // lower-function samples
    double p = 1.0;
};

[[nodiscard]] BoydIndices boyd_indices(const WeightModel& u, const WeightModel& w, double p,
                                       const BoydOptions& options = {});

// Indices from already computed samples (p scaling only).
[[nodiscard]] BoydIndices boyd_indices_from_samples(SubmultiplicativeSamples upper, SubmultiplicativeSamples lower,
                                                    double p);

enum class Verdict { bounded, not_bounded, inconclusive };

[[nodiscard]] const char* to_string(Verdict v) noexcept;

// Power bound φ(t) <= constant * t^q for t > 1 obtained from one sample t0
// with φ(t0) < t0^p through submultiplicativity, then checked on every sample.
struct PowerCertificate {
    double q = 0.0;
    double constant = 1.0;
    double anchor = 1.0;
};

[[nodiscard]] std::optional<PowerCertificate> certify_power_bound(const SubmultiplicativeSamples& samples, double p);

struct MaximalVerdict {
    Verdict verdict = Verdict::inconclusive;
    Verdict index_route = Verdict::inconclusive;
    Verdict condition_route = Verdict::inconclusive;
    double alpha = 0.0;
    double margin = 0.0;     // 1 − alpha
    double tolerance = 0.0;  // |margin| below this is inconclusive
    std::optional<PowerCertificate> certificate;
    std::string note;
};

[[nodiscard]] MaximalVerdict maximal_verdict(const WeightModel& u, const WeightModel& w, double p,
                                             const BoydIndices& estimates);

struct SubmultiplicativeReport {
    std::size_t pairs_checked = 0;
    // max of φ(ts) / (φ(t) φ(s)).
    double max_excess = 0.0;
    bool holds = true;
    // False for lower-bound samples: the report is informational only.
    bool asserted = true;
};

// Checks φ(ts) <= φ(t) φ(s) (1 + 1e-9) over all pairs of the grid.
[[nodiscard]] SubmultiplicativeReport check_submultiplicative(const std::function<double(double)>& phi,
                                                              const std::vector<double>& grid, Direction direction);

}  // namespace llab
