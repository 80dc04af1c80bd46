#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace llab {

// base^k for k = kmin..kmax.
[[nodiscard]] std::vector<double> geometric_grid(int kmin, int kmax, double base = 2.0);

// Number of steps of a geometric grid spanning one factor of 10.
[[nodiscard]] std::size_t steps_per_decade(std::span<const double> grid);

enum class TrendEnd { upper, lower, both };

// Bounded-trend heuristic on a sequence sampled along a geometric grid.
// Looks at three samples one decade apart at the requested end and reports
// growth when the last increment is positive and has not decayed below half
// of the previous one. Convergence to a finite limit decays geometrically;
// logarithmic or faster growth does not. Non-finite samples count as growth.
[[nodiscard]] bool growth_trend(std::span<const double> values, std::size_t stride, TrendEnd end);

// Seeded mt19937_64 with a uniform draw that does not depend on the
// standard library's distribution implementation.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() noexcept { return engine_(); }
    // Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) noexcept { return static_cast<std::size_t>(next() % n); }

private:
    std::mt19937_64 engine_;
};

// Mixes a seed with a stream index so independent stages get unrelated draws.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace llab
