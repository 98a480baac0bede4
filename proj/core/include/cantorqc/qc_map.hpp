#ifndef CANTORQC_QC_MAP_HPP
#define CANTORQC_QC_MAP_HPP

#include "cantorqc/pants.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace cantorqc {

using Cpx = std::complex<double>;

/// Radial log-stretch between concentric round annuli: the r1-circle goes
/// to the r2-circle and the R1-circle to the R2-circle, preserving the
/// argument about the center. This is the extremal map of the modulus
/// lemma; its log-dilatation is |log rho| for the log-stretch ratio rho.
class AnnulusMap {
public:
    AnnulusMap(Cpx c1, double r1, double R1, Cpx c2, double r2, double R2);

    /// Throws std::domain_error when z leaves the closed source annulus by
    /// more than `tol` (relative); radial overshoot within tol is clamped.
    Cpx eval(Cpx z, double tol = 1e-9) const;
    bool contains(Cpx z, double tol = 1e-9) const;

    AnnulusMap inverse() const;
    double stretch_ratio() const { return rho_; }
    double log_dilatation() const; // d = |log rho|
    double dilatation() const;     // K = max(rho, 1/rho)

    Cpx source_center() const { return c1_; }
    double source_inner() const { return r1_; }
    double source_outer() const { return R1_; }

private:
    Cpx c1_, c2_;
    double r1_, R1_, r2_, R2_, rho_;
};

/// The level-k pants map in normalized coordinates, assembled from the two
/// child-circle annulus maps and the outer-circle annulus map, identity
/// elsewhere. Maps the omega-side normalized pants onto the omega~ side.
/// Built in the q >= q~ orientation; the opposite orientation stores the
/// same data with the roles exchanged and evaluates the inverse instead.
class LevelMap {
public:
    static LevelMap build(const NormalizedPants& source,
                          const NormalizedPants& target);

    Cpx eval(Cpx z) const;         // source pants -> target pants
    Cpx eval_inverse(Cpx w) const; // target pants -> source pants

    /// Branch signature of the piecewise definition at z (source side).
    /// Finite-difference probes must share the signature to straddle no
    /// seam.
    int piece(Cpx z) const;

    bool is_identity() const { return identity_; }
    bool swapped() const { return swapped_; }
    double scale() const { return scale_; }

    /// Exact log-dilatations of the sub-maps (modulus lemma).
    double d_phi() const;
    double d_psi() const;
    double d_total() const { return d_phi() + d_psi(); }

    // Canonical-frame geometry (big-q side), exposed for tests/reports.
    double x() const { return x_; }
    double r() const { return r_; }
    double r_hat() const { return r_hat_; }
    double tangent_radius() const { return tangent_radius_; }
    double outer() const { return outer_; }
    double outer_scaled() const { return outer_scaled_; }

    /// Sub-map boundary radii in the frame `eval` acts on, used by
    /// measurement code to place sample boxes away from the seams.
    std::vector<double> seam_radii_about_origin() const;
    std::vector<double> seam_radii_about_children() const;

private:
    LevelMap() = default;
    Cpx forward_canonical(Cpx z) const;  // big-q pants -> small-q pants
    Cpx backward_canonical(Cpx z) const; // small-q pants -> big-q pants
    int piece_canonical(Cpx z, bool forward) const;

    bool identity_ = true;
    bool swapped_ = false;
    // Canonical data, always for the q >= q~ ordering of the two inputs.
    double x_ = 0.0, r_ = 0.0, r_hat_ = 0.0;
    double outer_ = 0.0;        // big-side outer radius
    double outer_scaled_ = 0.0; // small-side outer radius times scale
    double tangent_radius_ = 0.0;
    double scale_ = 1.0; // x / x~
};

/// Builds the level-k normalized map for two sequences sharing delta.
LevelMap build_pants_map(const GapSequence& omega, const GapSequence& omega_t,
                         double delta, int k);

/// The glued global map Phi: identity outside the level-0 circle, the
/// per-pants maps conjugated by the affine normalizations on every pants,
/// and the circle-matching affine map inside the deepest circles.
class PiecewiseQCMap {
public:
    static PiecewiseQCMap build(const GapSequence& omega,
                                const GapSequence& omega_t, double delta,
                                int k_max);

    Cpx eval(Cpx z) const;
    /// Evaluates via the pants (k,i) route regardless of point location;
    /// boundary-circle points may be evaluated from either side.
    Cpx eval_via(int k, int i, Cpx z) const;
    /// Piece signature combining pants id and branch signature.
    long piece(Cpx z) const;

    int depth() const { return depth_; }
    const PantsDecomposition& source() const { return source_; }
    const PantsDecomposition& target() const { return target_; }
    /// Gluing circles: same radii as the pants circles but centered at
    /// parent_center +- x_k |I_k|/2, which is where the level maps restrict
    /// to circle-matching affines, so adjacent pants agree on them.
    const Circle& source_circle(int k, int i) const; // i is 1-based
    const Circle& target_circle(int k, int i) const;
    const LevelMap& level_map(int k) const { return level_maps_.at(k); }

    struct Location {
        int k = -1; // pants level, or depth() when inside a deepest circle
        int i = 0;  // 1-based index
        bool outside = false; // outside the level-0 circle
    };
    Location locate(Cpx z) const;

private:
    PiecewiseQCMap() = default;
    int depth_ = 0;
    PantsDecomposition source_, target_;
    std::vector<std::vector<Circle>> src_circles_, dst_circles_;
    std::vector<LevelMap> level_maps_;
};

struct DilatationStats {
    double max_k = 1.0;
    double mean_k = 1.0;
    std::size_t samples = 0;
};

/// Central-difference Beltrami estimation of f over a box, sampling an
/// n x n grid and skipping points whose probe stencil straddles a seam
/// (piece signature changes). Throws degenerate_map_error if |mu| >= 1.
DilatationStats measure_dilatation(const std::function<Cpx(Cpx)>& f,
                                   const std::function<long(Cpx)>& piece,
                                   Cpx box_lo, Cpx box_hi, int grid_n,
                                   double fd_step);

/// Measures the glued map over the pants (k,i) of the source side.
/// fd_step_rel is relative to the pants diameter (default 1e-5).
DilatationStats measure_pants_dilatation(const PiecewiseQCMap& map, int k,
                                         int i, int grid_n = 48,
                                         double fd_step_rel = 1e-5);

/// Measures a normalized-frame level map on its own pants.
DilatationStats measure_level_dilatation(const LevelMap& m, double outer,
                                         int grid_n = 64,
                                         double fd_step_rel = 1e-5);

} // namespace cantorqc

#endif
