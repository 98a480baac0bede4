#include "cantorqc/analysis.hpp"

#include "cantorqc/dilatation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cantorqc {

namespace {

// Least-squares line fit; returns {slope, half-width of the slope band}.
std::pair<double, double> fit_slope(const std::vector<double>& xs,
                                    const std::vector<double>& ys) {
    std::size_t n = xs.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = ys[i] - my - slope * (xs[i] - mx);
        rss += resid * resid;
    }
    double band = 0.0;
    if (n > 2) band = std::sqrt(rss / double(n - 2) / sxx);
    return {slope, band};
}

} // namespace

CapacityReport capacity_classify(const GapSequence& seq, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
    CapacityReport rep;
    rep.partial_sums.reserve(n_terms);
    double s = 0.0;
    double pow2 = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        pow2 *= 0.5;
        s += pow2 * seq.log_one_minus(n);
        rep.partial_sums.push_back(s);
    }

    using K = GapSequence::Kind;
    switch (seq.kind()) {
    case K::DoubleExponential:
        // 2^-n log(1 - q_n) = -2^-n 2^n log 2 = -log 2 for every n.
        rep.verdict = CapacityVerdict::ZeroCapacity;
        rep.certificate = "each term of sum 2^-n log(1-q_n) equals -log 2";
        break;
    case K::Constant:
    case K::Geometric:
    case K::ShiftedGeometric:
    case K::PlusInverseSquare:
        // q_n bounded away from 1, so |log(1-q_n)| is bounded and the sum
        // converges absolutely against 2^-n.
        rep.verdict = CapacityVerdict::PositiveCapacity;
        rep.certificate = "gap fractions bounded away from 1, geometric tail";
        break;
    case K::ApproachOne:
        // log(1-q_n) = -n log b, so the terms are -n 2^-n log b: summable.
        rep.verdict = CapacityVerdict::PositiveCapacity;
        rep.certificate = "terms n 2^-n log b form a convergent series";
        break;
    case K::SeededUniform:
        if (auto ub = seq.upper_bound(); ub && *ub > 0.0) {
            rep.verdict = CapacityVerdict::PositiveCapacity;
            rep.certificate = "declared upper bound keeps q_n away from 1";
        } else {
            rep.verdict = CapacityVerdict::Undecided;
            rep.certificate = "no upper bound certificate";
        }
        break;
    case K::Explicit:
        rep.verdict = CapacityVerdict::Undecided;
        rep.certificate = "finite list carries no tail information";
        break;
    }
    return rep;
}

DimensionEstimate box_dimension(const CantorLevels& levels) {
    DimensionEstimate est;
    int depth = levels.depth();
    if (depth < 6) throw std::invalid_argument("box_dimension needs depth >= 6");
    int k_lo = depth / 2;
    for (int k = k_lo; k <= depth; ++k) {
        est.log_inv_scale.push_back(-levels.log_interval_length(k));
        est.log_count.push_back(double(k) * std::log(2.0));
    }
    auto [slope, band] = fit_slope(est.log_inv_scale, est.log_count);
    est.slope = slope;
    est.band = band;
    if (!(slope > 0.0) || !std::isfinite(slope)) est.degenerate = true;
    return est;
}

double astala_bound(double k_qc, double dim) {
    if (!(k_qc >= 1.0)) throw std::invalid_argument("K must be >= 1");
    if (!(dim >= 0.0 && dim <= 2.0))
        throw std::invalid_argument("dim must lie in [0,2]");
    return 2.0 * k_qc * dim / (2.0 + (k_qc - 1.0) * dim);
}

DimensionEqualityReport dimension_equality_check(const GapSequence& omega,
                                                 const GapSequence& omega_t,
                                                 int depth) {
    DimensionEqualityReport rep;
    rep.eps_tested = {0.2, 0.1, 0.05};

    if (!omega.lower_bound() || !omega_t.lower_bound()) return rep;

    auto da = box_dimension(CantorLevels::build(omega, depth));
    auto db = box_dimension(CantorLevels::build(omega_t, depth));
    if (da.degenerate || db.degenerate) return rep;
    rep.dim_a = da.slope;
    rep.dim_b = db.slope;
    // Finite-depth estimates converge at different rates, so the equality
    // tolerance keeps a floor above the pure fit bands.
    rep.tolerance = std::max(0.02, 2.0 * (da.band + db.band));

    int horizon = 4096;
    rep.astala_sandwich_ok = true;
    for (double eps : rep.eps_tested) {
        auto n0 = asymptotic_conformality(omega, omega_t, eps, horizon);
        if (!n0) {
            rep.astala_sandwich_ok = false;
            break;
        }
        double k_qc = 1.0 + eps;
        if (rep.dim_b > astala_bound(k_qc, rep.dim_a) + rep.tolerance ||
            rep.dim_a > astala_bound(k_qc, rep.dim_b) + rep.tolerance) {
            rep.astala_sandwich_ok = false;
            break;
        }
    }
    if (!rep.astala_sandwich_ok) {
        rep.verdict = std::fabs(rep.dim_a - rep.dim_b) > rep.tolerance
                          ? EqualityVerdict::Distinct
                          : EqualityVerdict::Inapplicable;
        return rep;
    }
    rep.verdict = std::fabs(rep.dim_a - rep.dim_b) <= rep.tolerance
                      ? EqualityVerdict::Equal
                      : EqualityVerdict::Distinct;
    return rep;
}

} // namespace cantorqc
