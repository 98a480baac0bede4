#ifndef CANTORQC_PANTS_HPP
#define CANTORQC_PANTS_HPP

#include "cantorqc/cantor_levels.hpp"
#include "cantorqc/gap_sequence.hpp"

#include <vector>

namespace cantorqc {

struct Circle {
    double center = 0.0; // on the real line
    double radius = 0.0;
};

enum class RadiusMode { FixedDelta, Geometric };

/// The circle family C_k^i: one circle per interval I_k^i, centered at its
/// midpoint, radius (1+delta)/2 * |I_k^1| (or (1+a^k)/2 * |I_k^1| in
/// geometric mode). Level 0 holds the single outer circle around [0,1].
/// The tree is implicit: children of (k,i) are (k+1,2i-1) and (k+1,2i).
class PantsDecomposition {
public:
    PantsDecomposition() = default;
    static PantsDecomposition build(const CantorLevels& levels, double delta,
                                    RadiusMode mode = RadiusMode::FixedDelta);

    int depth() const { return depth_; }
    double delta() const { return delta_; }
    RadiusMode mode() const { return mode_; }
    const Circle& circle(int k, int i) const; // i is 1-based
    const std::vector<Circle>& level(int k) const;
    /// Normalization scale 2/|I_k^1| for level-k pants.
    double scale(int k) const;
    /// Smallest clearance found during the disjointness sweep, in units of
    /// the local interval length.
    double min_margin() const { return min_margin_; }

private:
    int depth_ = 0;
    double delta_ = 0.0;
    RadiusMode mode_ = RadiusMode::FixedDelta;
    double min_margin_ = 0.0;
    std::vector<std::vector<Circle>> circles_;
    std::vector<double> scales_; // 2/|I_k^1| per level
};

/// The level-k pair of pants after the affine normalization of Step 3:
/// outer circle C_{k,1} about the origin with radius 1+delta, children
/// C_{k,2/3} at -x_k/+x_k with radius r_k.
struct NormalizedPants {
    int level = 0;
    double delta = 0.0;
    double q = 0.0;            // q_{k+1}
    double outer_radius = 0.0; // 1 + delta
    double x = 0.0;            // (1/2)[(1+delta) + (1-delta) q]
    double r = 0.0;            // (1/2)(1+delta)(1-q)
    bool degenerate = false;   // q at the 1-limit: r ~ 0
};

/// The affine map z -> alpha z + beta taking the concrete pants P_k^i into
/// normalized position (alpha > 0, beta real).
struct AffineNormalization {
    double alpha = 1.0;
    double beta = 0.0;
};

NormalizedPants normalize_pants(const GapSequence& seq, double delta, int k);

/// Geometric-mode variant used by the a^n example: outer radius 1 + a^k,
/// children built from q_{k+1} = a^{k+1} with the (1 + a^{k+1}) factor.
NormalizedPants normalize_pants_geometric(double a, int shift, int k);

AffineNormalization affine_normalization(const PantsDecomposition& d, int k,
                                         int i);

/// Step 4: the target-side normalized pants rescaled by s_k = x_k/x~_k so
/// that its child centers land on +-x_k.
struct ScaledPants {
    int level = 0;
    double scale = 1.0;        // s_k
    double outer_radius = 0.0; // (1+delta) s_k
    double x = 0.0;            // shared child offset
    double r_hat = 0.0;        // r~_k s_k
    double tangent_radius = 0.0; // R~_k = (1+delta) s_k - x_k
};

/// Scales the omega~ pants toward the omega pants. Requires the shared
/// delta; throws geometry_error when the tangent circle fails to enclose
/// both child circles (valid only in the q >= q~ orientation).
ScaledPants scale_pants(const GapSequence& omega, const GapSequence& omega_t,
                        double delta, int k);

} // namespace cantorqc

#endif
