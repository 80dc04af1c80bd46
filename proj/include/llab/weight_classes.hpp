#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "llab/interval_set.hpp"
#include "llab/weight.hpp"

namespace llab {

enum class WeightClass { Delta2, Bp, BstarInf, A1, AInf };

[[nodiscard]] const char* to_string(WeightClass c) noexcept;

// Finite certification of a weight-class condition. `constant` is the
// largest ratio seen over the probe set; `holds` combines finiteness with
// the bounded-trend heuristic and is evidence, not proof.
struct ClassVerdict {
    WeightClass class_name = WeightClass::Delta2;
    bool holds = false;
    double constant = 0.0;
    std::string witness;
    // Coordinates of the probe achieving `constant` (r; or x, lo, hi; or
    // I.lo, I.hi, E.lo, E.hi), sufficient to re-evaluate it.
    std::vector<double> witness_args;
    std::vector<double> probe_scales;
    bool growth_flagged = false;
    // Bp only.
    std::optional<double> p;
    // AInf only: exponent of |E|/|I| <= C_u (u(E)/u(I))^alpha.
    std::optional<double> alpha;
};

// r = 2^k, k in [-20, 20].
[[nodiscard]] std::vector<double> default_class_grid();

[[nodiscard]] double delta2_ratio(const WeightModel& w, double r);
[[nodiscard]] double bp_ratio(const WeightModel& w, double p, double r);
[[nodiscard]] double bstar_integral(const WeightModel& w, double r);  // ∫_0^r W(t)/t dt
[[nodiscard]] double bstar_ratio(const WeightModel& w, double r);
[[nodiscard]] double a1_ratio(const WeightModel& u, double x, double lo, double hi);

[[nodiscard]] ClassVerdict check_delta2(const WeightModel& w, const std::vector<double>& grid);
[[nodiscard]] ClassVerdict check_Bp(const WeightModel& w, double p, const std::vector<double>& grid);
[[nodiscard]] ClassVerdict check_Bstar_inf(const WeightModel& w, const std::vector<double>& grid);
[[nodiscard]] ClassVerdict check_A1(const WeightModel& u, const std::vector<double>& grid);

struct AinfProbe {
    Interval interval;
    IntervalUnion subset;
    std::size_t scale_index = 0;
};

// Per scale r: I in {(0, r), (r, 2r), (-r/2, r/2)} (those inside the domain),
// E of relative size 2^-1, 2^-4, 2^-8 at the left edge, right edge and
// centre of I, plus 32 seeded random placements.
[[nodiscard]] std::vector<AinfProbe> default_ainf_probes(const WeightModel& u, const std::vector<double>& grid,
                                                         std::uint64_t seed = 0x5eed);

[[nodiscard]] ClassVerdict check_Ainf(const WeightModel& u, const std::vector<AinfProbe>& probes);

// Recomputes the constant of a verdict from its stored witness.
[[nodiscard]] double evaluate_witness(const ClassVerdict& verdict, const WeightModel& weight);

}  // namespace llab
