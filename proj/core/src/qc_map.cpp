#include "cantorqc/qc_map.hpp"

#include "cantorqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace cantorqc {

namespace {

constexpr double kMembershipTol = 1e-12;

// Radial log-stretch about `center`: log-radius t in [t_lo, t_hi] goes to
// t_lo' + rho (t - t_lo).
Cpx radial_stretch(Cpx z, Cpx center, double t_lo, double t_lo_dst,
                   double rho) {
    Cpx u = z - center;
    double t = std::log(std::abs(u));
    double t_dst = t_lo_dst + rho * (t - t_lo);
    return center + std::exp(t_dst - t) * u;
}

bool in_ring(Cpx z, Cpx center, double lo, double hi) {
    double d = std::abs(z - center);
    return d >= lo * (1.0 - kMembershipTol) && d <= hi * (1.0 + kMembershipTol);
}

int worker_count() {
    if (const char* env = std::getenv("CANTOR_QC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace

// ---------------------------------------------------------------------------
// AnnulusMap

AnnulusMap::AnnulusMap(Cpx c1, double r1, double R1, Cpx c2, double r2,
                       double R2)
    : c1_(c1), c2_(c2), r1_(r1), R1_(R1), r2_(r2), R2_(R2) {
    if (!(r1 > 0.0 && r1 < R1) || !(r2 > 0.0 && r2 < R2))
        throw std::invalid_argument("annulus radii must satisfy 0 < r < R");
    rho_ = (std::log(R2) - std::log(r2)) / (std::log(R1) - std::log(r1));
}

bool AnnulusMap::contains(Cpx z, double tol) const {
    double d = std::abs(z - c1_);
    return d >= r1_ * (1.0 - tol) && d <= R1_ * (1.0 + tol);
}

Cpx AnnulusMap::eval(Cpx z, double tol) const {
    if (!contains(z, tol))
        throw std::domain_error("point outside the source annulus");
    Cpx u = z - c1_;
    double t = std::clamp(std::log(std::abs(u)), std::log(r1_), std::log(R1_));
    double t_dst = std::log(r2_) + rho_ * (t - std::log(r1_));
    double d = std::abs(u);
    if (d == 0.0) throw std::domain_error("point at the annulus center");
    return c2_ + std::exp(t_dst) * (u / d);
}

AnnulusMap AnnulusMap::inverse() const {
    return AnnulusMap(c2_, r2_, R2_, c1_, r1_, R1_);
}

double AnnulusMap::log_dilatation() const { return std::fabs(std::log(rho_)); }

double AnnulusMap::dilatation() const { return std::max(rho_, 1.0 / rho_); }

// ---------------------------------------------------------------------------
// LevelMap

LevelMap LevelMap::build(const NormalizedPants& source,
                         const NormalizedPants& target) {
    LevelMap m;
    if (source.q == target.q && source.outer_radius == target.outer_radius) {
        m.identity_ = true;
        m.outer_ = source.outer_radius;
        m.outer_scaled_ = source.outer_radius;
        m.x_ = source.x;
        m.r_ = source.r;
        m.r_hat_ = source.r;
        m.tangent_radius_ = source.outer_radius - source.x;
        return m;
    }
    const bool swapped = source.q < target.q;
    const NormalizedPants& big = swapped ? target : source;
    const NormalizedPants& small = swapped ? source : target;

    m.identity_ = false;
    m.swapped_ = swapped;
    m.x_ = big.x;
    m.r_ = big.r;
    m.outer_ = big.outer_radius;
    m.scale_ = big.x / small.x;
    m.r_hat_ = small.r * m.scale_;
    m.outer_scaled_ = small.outer_radius * m.scale_;
    // The tangent radius can exceed x in geometric mode (small a); capping
    // at x keeps the two child annuli disjoint and only raises the phi
    // stretch, which the budget absorbs.
    m.tangent_radius_ = std::min(m.outer_scaled_ - m.x_, m.x_);

    if (!(m.tangent_radius_ > std::max(m.r_hat_, m.r_)))
        throw geometry_error("tangent circle does not enclose the children");
    if (!(m.x_ + m.r_ < std::min(m.outer_, m.outer_scaled_)))
        throw geometry_error("inner gluing circle escapes the outer circles");
    return m;
}

Cpx LevelMap::forward_canonical(Cpx z) const {
    // psi^-1 then phi^-1 then 1/s: big-q pants -> small-q pants.
    const double l_xr = std::log(x_ + r_);
    if (in_ring(z, 0.0, x_ + r_, outer_)) {
        double rho = (std::log(outer_scaled_) - l_xr) / (std::log(outer_) - l_xr);
        z = radial_stretch(z, 0.0, l_xr, l_xr, rho);
    }
    const double lr = std::log(r_), lrh = std::log(r_hat_),
                 lRt = std::log(tangent_radius_);
    const double rho_phi_inv = (lRt - lrh) / (lRt - lr);
    if (in_ring(z, x_, r_, tangent_radius_))
        z = radial_stretch(z, x_, lr, lrh, rho_phi_inv);
    else if (in_ring(z, -x_, r_, tangent_radius_))
        z = radial_stretch(z, -x_, lr, lrh, rho_phi_inv);
    return z / scale_;
}

Cpx LevelMap::backward_canonical(Cpx z) const {
    // s then phi then psi: small-q pants -> big-q pants.
    z *= scale_;
    const double lr = std::log(r_), lrh = std::log(r_hat_),
                 lRt = std::log(tangent_radius_);
    const double rho_phi = (lRt - lr) / (lRt - lrh);
    if (in_ring(z, x_, r_hat_, tangent_radius_))
        z = radial_stretch(z, x_, lrh, lr, rho_phi);
    else if (in_ring(z, -x_, r_hat_, tangent_radius_))
        z = radial_stretch(z, -x_, lrh, lr, rho_phi);
    const double l_xr = std::log(x_ + r_);
    if (in_ring(z, 0.0, x_ + r_, outer_scaled_)) {
        double rho = (std::log(outer_) - l_xr) / (std::log(outer_scaled_) - l_xr);
        z = radial_stretch(z, 0.0, l_xr, l_xr, rho);
    }
    return z;
}

Cpx LevelMap::eval(Cpx z) const {
    if (identity_) return z;
    return swapped_ ? backward_canonical(z) : forward_canonical(z);
}

Cpx LevelMap::eval_inverse(Cpx w) const {
    if (identity_) return w;
    return swapped_ ? forward_canonical(w) : backward_canonical(w);
}

int LevelMap::piece_canonical(Cpx z, bool forward) const {
    int sig = forward ? 0 : 8;
    if (forward) {
        if (in_ring(z, 0.0, x_ + r_, outer_)) {
            sig |= 1;
            double l_xr = std::log(x_ + r_);
            double rho =
                (std::log(outer_scaled_) - l_xr) / (std::log(outer_) - l_xr);
            z = radial_stretch(z, 0.0, l_xr, l_xr, rho);
        }
        if (in_ring(z, x_, r_, tangent_radius_)) sig |= 2;
        else if (in_ring(z, -x_, r_, tangent_radius_)) sig |= 4;
    } else {
        z *= scale_;
        const double lr = std::log(r_), lrh = std::log(r_hat_),
                     lRt = std::log(tangent_radius_);
        const double rho_phi = (lRt - lr) / (lRt - lrh);
        if (in_ring(z, x_, r_hat_, tangent_radius_)) {
            sig |= 2;
            z = radial_stretch(z, x_, lrh, lr, rho_phi);
        } else if (in_ring(z, -x_, r_hat_, tangent_radius_)) {
            sig |= 4;
            z = radial_stretch(z, -x_, lrh, lr, rho_phi);
        }
        if (in_ring(z, 0.0, x_ + r_, outer_scaled_)) sig |= 1;
    }
    return sig;
}

int LevelMap::piece(Cpx z) const {
    if (identity_) return 0;
    return piece_canonical(z, !swapped_);
}

double LevelMap::d_phi() const {
    if (identity_) return 0.0;
    double lr = std::log(r_), lrh = std::log(r_hat_),
           lRt = std::log(tangent_radius_);
    return std::fabs(std::log((lRt - lr) / (lRt - lrh)));
}

double LevelMap::d_psi() const {
    if (identity_) return 0.0;
    double l_xr = std::log(x_ + r_);
    return std::fabs(std::log((std::log(outer_) - l_xr) /
                              (std::log(outer_scaled_) - l_xr)));
}

std::vector<double> LevelMap::seam_radii_about_origin() const {
    return {x_ + r_, outer_, outer_scaled_};
}

std::vector<double> LevelMap::seam_radii_about_children() const {
    return {r_, r_hat_, tangent_radius_};
}

LevelMap build_pants_map(const GapSequence& omega, const GapSequence& omega_t,
                         double delta, int k) {
    return LevelMap::build(normalize_pants(omega, delta, k),
                           normalize_pants(omega_t, delta, k));
}

// ---------------------------------------------------------------------------
// PiecewiseQCMap

namespace {

// Circles the level maps glue along: child centers sit at
// parent_center +- x_k |I_k|/2 rather than at interval midpoints, because
// the normalized maps carry the circle about x_k onto the one about x~_k.
std::vector<std::vector<Circle>> gluing_tree(const GapSequence& seq,
                                             const CantorLevels& levels,
                                             double delta) {
    int depth = levels.depth();
    std::vector<std::vector<Circle>> tree(depth + 1);
    tree[0].push_back({0.5, 0.5 * (1.0 + delta)});
    for (int k = 0; k < depth; ++k) {
        double q = seq.at(k + 1);
        double x = 0.5 * ((1.0 + delta) + (1.0 - delta) * q);
        double off = 0.5 * x * levels.interval_length(k);
        double rad = 0.5 * (1.0 + delta) * levels.interval_length(k + 1);
        tree[k + 1].reserve(tree[k].size() * 2);
        for (const Circle& c : tree[k]) {
            tree[k + 1].push_back({c.center - off, rad});
            tree[k + 1].push_back({c.center + off, rad});
        }
    }
    return tree;
}

} // namespace

PiecewiseQCMap PiecewiseQCMap::build(const GapSequence& omega,
                                     const GapSequence& omega_t, double delta,
                                     int k_max) {
    PiecewiseQCMap map;
    map.depth_ = k_max;
    CantorLevels src_levels = CantorLevels::build(omega, k_max);
    CantorLevels dst_levels = CantorLevels::build(omega_t, k_max);
    map.source_ = PantsDecomposition::build(src_levels, delta);
    map.target_ = PantsDecomposition::build(dst_levels, delta);
    map.src_circles_ = gluing_tree(omega, src_levels, delta);
    map.dst_circles_ = gluing_tree(omega_t, dst_levels, delta);
    map.level_maps_.reserve(k_max);
    for (int k = 0; k < k_max; ++k)
        map.level_maps_.push_back(build_pants_map(omega, omega_t, delta, k));
    return map;
}

const Circle& PiecewiseQCMap::source_circle(int k, int i) const {
    return src_circles_.at(k).at(i - 1);
}

const Circle& PiecewiseQCMap::target_circle(int k, int i) const {
    return dst_circles_.at(k).at(i - 1);
}

PiecewiseQCMap::Location PiecewiseQCMap::locate(Cpx z) const {
    const Circle& c0 = source_circle(0, 1);
    if (std::abs(z - Cpx(c0.center, 0.0)) >= c0.radius) return {0, 1, true};
    int k = 0, i = 1;
    while (k < depth_) {
        int left = 2 * i - 1, right = 2 * i;
        const Circle& cl = source_circle(k + 1, left);
        if (std::abs(z - Cpx(cl.center, 0.0)) < cl.radius) {
            ++k;
            i = left;
            continue;
        }
        const Circle& cr = source_circle(k + 1, right);
        if (std::abs(z - Cpx(cr.center, 0.0)) < cr.radius) {
            ++k;
            i = right;
            continue;
        }
        break;
    }
    return {k, i, false};
}

Cpx PiecewiseQCMap::eval_via(int k, int i, Cpx z) const {
    const Circle& sc = source_circle(k, i);
    const Circle& tc = target_circle(k, i);
    if (k == depth_) {
        // Circle-matching affine fill inside the deepest circles.
        double ratio = tc.radius / sc.radius;
        return Cpx(tc.center, 0.0) + ratio * (z - Cpx(sc.center, 0.0));
    }
    double alpha = source_.scale(k);
    double alpha_t = target_.scale(k);
    Cpx zeta = alpha * (z - Cpx(sc.center, 0.0));
    Cpx w = level_maps_[k].eval(zeta);
    return Cpx(tc.center, 0.0) + w / alpha_t;
}

Cpx PiecewiseQCMap::eval(Cpx z) const {
    Location loc = locate(z);
    if (loc.outside) return z;
    return eval_via(loc.k, loc.i, z);
}

long PiecewiseQCMap::piece(Cpx z) const {
    Location loc = locate(z);
    if (loc.outside) return 0;
    long id = (static_cast<long>(loc.k) << 26) | static_cast<long>(loc.i);
    if (loc.k == depth_) return (id << 4) | 15;
    const Circle& sc = source_circle(loc.k, loc.i);
    Cpx zeta = source_.scale(loc.k) * (z - Cpx(sc.center, 0.0));
    return (id << 4) | level_maps_[loc.k].piece(zeta);
}

// ---------------------------------------------------------------------------
// Dilatation measurement

namespace {

struct Partial {
    double max_k = 1.0;
    double sum_k = 0.0;
    std::size_t n = 0;
    std::string error;
};

// Central differences at step h; returns false if any probe leaves the
// piece of z.
bool derivatives(const std::function<Cpx(Cpx)>& f,
                 const std::function<long(Cpx)>& piece, Cpx z, long sig,
                 double h, Cpx& dz, Cpx& dzbar) {
    Cpx zr = z + h, zl = z - h, zu = z + Cpx(0, h), zd = z - Cpx(0, h);
    if (piece(zr) != sig || piece(zl) != sig || piece(zu) != sig ||
        piece(zd) != sig)
        return false;
    Cpx fx = (f(zr) - f(zl)) / (2.0 * h);
    Cpx fy = (f(zu) - f(zd)) / (2.0 * h);
    dz = 0.5 * (fx - Cpx(0, 1) * fy);
    dzbar = 0.5 * (fx + Cpx(0, 1) * fy);
    return true;
}

} // namespace

DilatationStats measure_dilatation(const std::function<Cpx(Cpx)>& f,
                                   const std::function<long(Cpx)>& piece,
                                   Cpx box_lo, Cpx box_hi, int grid_n,
                                   double fd_step) {
    if (grid_n < 1) throw std::invalid_argument("grid_n must be >= 1");
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");

    const double dx = (box_hi.real() - box_lo.real()) / grid_n;
    const double dy = (box_hi.imag() - box_lo.imag()) / grid_n;

    int workers = std::min(worker_count(), grid_n);
    std::vector<Partial> partials(workers);
    std::vector<std::thread> threads;

    auto run_rows = [&](int w, int row_begin, int row_end) {
        Partial& p = partials[w];
        for (int iy = row_begin; iy < row_end; ++iy) {
            double y = box_lo.imag() + (iy + 0.5) * dy;
            for (int ix = 0; ix < grid_n; ++ix) {
                Cpx z(box_lo.real() + (ix + 0.5) * dx, y);
                long sig = piece(z);
                if (sig < 0) continue;
                Cpx dz, dzbar;
                if (!derivatives(f, piece, z, sig, fd_step, dz, dzbar))
                    continue;
                if (std::abs(dz) == 0.0) continue;
                double mu = std::abs(dzbar) / std::abs(dz);
                if (mu > 0.5) {
                    // Richardson refinement, steps h and h/2.
                    Cpx dz2, dzbar2;
                    if (derivatives(f, piece, z, sig, fd_step / 2, dz2,
                                    dzbar2)) {
                        Cpx dz_r = (4.0 * dz2 - dz) / 3.0;
                        Cpx dzbar_r = (4.0 * dzbar2 - dzbar) / 3.0;
                        if (std::abs(dz_r) > 0.0)
                            mu = std::abs(dzbar_r) / std::abs(dz_r);
                    }
                }
                if (mu >= 1.0) {
                    p.error = "finite-difference Beltrami coefficient "
                              "reached |mu| >= 1";
                    return;
                }
                double kval = (1.0 + mu) / (1.0 - mu);
                p.max_k = std::max(p.max_k, kval);
                p.sum_k += kval;
                p.n += 1;
            }
        }
    };

    int rows_per = (grid_n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int lo = w * rows_per, hi = std::min(grid_n, lo + rows_per);
        if (lo >= hi) break;
        threads.emplace_back(run_rows, w, lo, hi);
    }
    for (auto& t : threads) t.join();

    DilatationStats out;
    double sum = 0.0;
    for (const Partial& p : partials) {
        if (!p.error.empty()) throw degenerate_map_error(p.error);
        out.max_k = std::max(out.max_k, p.max_k);
        sum += p.sum_k;
        out.samples += p.n;
    }
    out.mean_k = out.samples ? sum / out.samples : 1.0;
    return out;
}

DilatationStats measure_pants_dilatation(const PiecewiseQCMap& map, int k,
                                         int i, int grid_n,
                                         double fd_step_rel) {
    const Circle& c = map.source_circle(k, i);
    Cpx lo(c.center - c.radius, -c.radius);
    Cpx hi(c.center + c.radius, c.radius);
    double h = fd_step_rel * 2.0 * c.radius;
    long want = (static_cast<long>(k) << 26) | static_cast<long>(i);
    auto piece = [&map, want](Cpx z) -> long {
        long sig = map.piece(z);
        if ((sig >> 4) != want) return -1;
        return sig;
    };
    auto f = [&map](Cpx z) { return map.eval(z); };
    return measure_dilatation(f, piece, lo, hi, grid_n, h);
}

DilatationStats measure_level_dilatation(const LevelMap& m, double outer,
                                         int grid_n, double fd_step_rel) {
    Cpx lo(-outer, -outer), hi(outer, outer);
    double h = fd_step_rel * 2.0 * outer;
    auto piece = [&m](Cpx z) -> long { return m.piece(z); };
    auto f = [&m](Cpx z) { return m.eval(z); };
    return measure_dilatation(f, piece, lo, hi, grid_n, h);
}

} // namespace cantorqc
