#include <cmath>

#include "llab/operators.hpp"

namespace llab {

namespace {

bool unresolved_in_window(const SubmultiplicativeSamples& s, const IndexEstimate& e) {
    for (std::size_t i = 0; i < s.arguments.size() && i < s.unresolved.size(); ++i)
        if (s.unresolved[i] && s.arguments[i] >= e.fit_lo && s.arguments[i] <= e.fit_hi) return true;
    return false;
}

void append(std::string& note, const std::string& text) {
    if (!note.empty()) note += "; ";
    note += text;
}

}  // namespace

HilbertVerdict hilbert_verdict(const WeightModel& u, const WeightModel& w, double p, const BoydIndices& estimates) {
    HilbertVerdict v;
    v.alpha = estimates.alpha.exponent;
    v.beta = estimates.beta.exponent;
    const double span = std::log(estimates.beta.fit_hi / estimates.beta.fit_lo);
    v.beta_tolerance = 1e-6 + (span > 0.0 ? 2.0 * estimates.beta.residual / span : 0.0);
    const bool beta_unresolved = unresolved_in_window(estimates.lower, estimates.beta);

    // Sampled lower-function values sit below the supremum, which can only
    // lower β. A small β̂ is decisive; so is a search whose per-scale maxima
    // still creep up at the ends of the scale range (logarithmic approach to
    // the supremum, as for w with a t^-1 tail).
    Verdict beta_route = Verdict::bounded;
    if (v.beta <= v.beta_tolerance) {
        beta_route = Verdict::not_bounded;
    } else if (beta_unresolved) {
        beta_route = Verdict::not_bounded;
        append(v.note, "lower-function search did not settle at the ends of its scale range");
    }

    if (p <= 1.0) {
        v.one_sided = true;
        v.index_route = beta_route == Verdict::not_bounded ? Verdict::not_bounded : Verdict::inconclusive;
        v.verdict = v.index_route;
        append(v.note, "p <= 1: only the necessary condition beta > 0 is tested");
        return v;
    }

    v.maximal = maximal_verdict(u, w, p, estimates);
    if (v.maximal.index_route == Verdict::not_bounded || beta_route == Verdict::not_bounded) {
        v.index_route = Verdict::not_bounded;
    } else if (v.maximal.index_route == Verdict::bounded && beta_route == Verdict::bounded) {
        v.index_route = Verdict::bounded;
    }

    const auto grid = default_class_grid();
    v.ainf = check_Ainf(u, default_ainf_probes(u, grid));
    v.bstar = check_Bstar_inf(w, grid);
    if (!v.ainf.holds || !v.bstar.holds || v.maximal.condition_route == Verdict::not_bounded) {
        v.condition_route = Verdict::not_bounded;
    } else if (v.maximal.condition_route == Verdict::bounded) {
        v.condition_route = Verdict::bounded;
    }

    v.verdict = v.index_route;
    if (v.index_route != Verdict::inconclusive && v.condition_route != Verdict::inconclusive &&
        v.index_route != v.condition_route)
        append(v.note, "index route and three-condition route disagree");
    return v;
}

}  // namespace llab
