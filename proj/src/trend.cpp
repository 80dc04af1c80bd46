#include "llab/trend.hpp"

#include <algorithm>
#include <cmath>

namespace llab {

std::vector<double> geometric_grid(int kmin, int kmax, double base) {
    std::vector<double> out;
    for (int k = kmin; k <= kmax; ++k) out.push_back(std::pow(base, k));
    return out;
}

std::size_t steps_per_decade(std::span<const double> grid) {
    if (grid.size() < 2 || !(grid[1] > grid[0])) return 1;
    const double steps = std::log(10.0) / std::log(grid[1] / grid[0]);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(steps)));
}

namespace {

bool growth_at_end(const std::vector<double>& v, std::size_t stride) {
    if (v.empty()) return false;
    const std::size_t n = v.size();
    if (!std::isfinite(v[n - 1])) return true;
    while (stride > 1 && 2 * stride >= n) --stride;
    if (2 * stride >= n) return false;
    const double v0 = v[n - 1 - 2 * stride];
    const double v1 = v[n - 1 - stride];
    const double v2 = v[n - 1];
    const double tol = 1e-9 * std::max({std::abs(v0), std::abs(v1), std::abs(v2), 1e-300});
    const double d1 = v1 - v0;
    const double d2 = v2 - v1;
    return d1 > tol && d2 > tol && d2 >= 0.5 * d1;
}

}  // namespace

bool growth_trend(std::span<const double> values, std::size_t stride, TrendEnd end) {
    std::vector<double> forward(values.begin(), values.end());
    std::vector<double> backward(values.rbegin(), values.rend());
    switch (end) {
        case TrendEnd::upper: return growth_at_end(forward, stride);
        case TrendEnd::lower: return growth_at_end(backward, stride);
        case TrendEnd::both: return growth_at_end(forward, stride) || growth_at_end(backward, stride);
    }
    return false;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 engine(seq);
    return engine();
}

}  // namespace llab
