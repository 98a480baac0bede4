#include "cantorqc/pants.hpp"

#include "cantorqc/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cantorqc {

namespace {

// Radius multiplier m_k: circle radius is (1/2)(1 + m_k)|I_k^1|.
double radius_multiplier(const GapSequence& seq, double delta, RadiusMode mode,
                         int k) {
    if (mode == RadiusMode::FixedDelta) return delta;
    switch (seq.kind()) {
    case GapSequence::Kind::Geometric:
        return std::pow(seq.param_a(), k);
    case GapSequence::Kind::ShiftedGeometric:
        return std::pow(seq.param_a(), k + seq.param_shift());
    default:
        throw std::invalid_argument(
            "geometric radius mode needs a geometric generator");
    }
}

} // namespace

PantsDecomposition PantsDecomposition::build(const CantorLevels& levels,
                                             double delta, RadiusMode mode) {
    if (mode == RadiusMode::FixedDelta && !(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must lie in (0,1)");
    const GapSequence& seq = levels.sequence();

    PantsDecomposition out;
    out.depth_ = levels.depth();
    out.delta_ = delta;
    out.mode_ = mode;
    out.min_margin_ = std::numeric_limits<double>::infinity();
    out.circles_.resize(levels.depth() + 1);

    for (int k = 0; k <= levels.depth(); ++k) {
        double m_k = radius_multiplier(seq, delta, mode, k);
        double len = levels.interval_length(k);
        out.scales_.push_back(2.0 / len);
        double radius = 0.5 * (1.0 + m_k) * len;
        const auto& ivals = levels.intervals(k);
        auto& row = out.circles_[k];
        row.reserve(ivals.size());
        for (const Interval& iv : ivals)
            row.push_back({iv.left + 0.5 * iv.length, radius});

        // Same-level disjointness, in units of |I_k^1|: adjacent circles
        // are separated by len + |J| between centers, so the clearance is
        // |J|/len - m_k. Equal radii make adjacent pairs the tight ones.
        if (k >= 1) {
            double log_len = levels.log_interval_length(k);
            const auto& gs = levels.gaps(k);
            for (std::size_t j = 0; j < gs.size(); ++j) {
                double ratio = std::exp(gs[j].log_length - log_len);
                double margin = ratio - m_k;
                if (margin <= 0.0)
                    throw decomposition_error(
                        "circles C_" + std::to_string(k) + "^" +
                        std::to_string(j + 1) + " and C_" + std::to_string(k) +
                        "^" + std::to_string(j + 2) + " intersect");
                out.min_margin_ = std::min(out.min_margin_, margin);
            }

            // Child-within-parent clearance, in units of |I_k^1|:
            // (1/2)(m_{k-1} * 2/(1-q_k) - m_k).
            double m_parent = radius_multiplier(seq, delta, mode, k - 1);
            double q_k = seq.at(k);
            double margin =
                0.5 * (m_parent * 2.0 / (1.0 - q_k) - m_k);
            if (margin <= 0.0)
                throw decomposition_error(
                    "level-" + std::to_string(k) +
                    " circles are not strictly inside their parents");
            out.min_margin_ = std::min(out.min_margin_, margin);
        }
    }
    return out;
}

const Circle& PantsDecomposition::circle(int k, int i) const {
    const auto& row = level(k);
    if (i < 1 || i > static_cast<int>(row.size()))
        throw std::out_of_range("circle index out of range");
    return row[i - 1];
}

const std::vector<Circle>& PantsDecomposition::level(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("level out of range");
    return circles_[k];
}

double PantsDecomposition::scale(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("level out of range");
    return scales_[k];
}

NormalizedPants normalize_pants(const GapSequence& seq, double delta, int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    double q = seq.at(k + 1);
    NormalizedPants p;
    p.level = k;
    p.delta = delta;
    p.q = q;
    p.outer_radius = 1.0 + delta;
    p.r = 0.5 * (1.0 + delta) * (1.0 - q);
    p.x = q + p.r;
    p.degenerate = p.r < 1e-12;
    return p;
}

NormalizedPants normalize_pants_geometric(double a, int shift, int k) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("a must be in (0,1)");
    double q = std::pow(a, k + 1 + shift);
    NormalizedPants p;
    p.level = k;
    p.delta = std::pow(a, k + shift); // level-local gap parameter
    p.q = q;
    p.outer_radius = 1.0 + p.delta;
    p.r = 0.5 * (1.0 + q) * (1.0 - q);
    p.x = q + p.r;
    p.degenerate = p.r < 1e-12;
    return p;
}

AffineNormalization affine_normalization(const PantsDecomposition& d, int k,
                                         int i) {
    const Circle& c = d.circle(k, i);
    // Sends C_k^i to the circle of radius 1 + m_k about the origin:
    // alpha = 2/|I_k^1|, beta = -alpha * center.
    AffineNormalization a;
    a.alpha = d.scale(k);
    a.beta = -a.alpha * c.center;
    return a;
}

ScaledPants scale_pants(const GapSequence& omega, const GapSequence& omega_t,
                        double delta, int k) {
    NormalizedPants p = normalize_pants(omega, delta, k);
    NormalizedPants pt = normalize_pants(omega_t, delta, k);
    ScaledPants s;
    s.level = k;
    s.scale = p.x / pt.x;
    s.outer_radius = (1.0 + delta) * s.scale;
    s.x = p.x;
    s.r_hat = pt.r * s.scale;
    s.tangent_radius = s.outer_radius - p.x;
    if (!(s.tangent_radius > s.r_hat && s.tangent_radius > p.r))
        throw geometry_error(
            "tangent circle does not enclose the child circles at level " +
            std::to_string(k));
    return s;
}

} // namespace cantorqc
