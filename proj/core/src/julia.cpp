#include "cantorqc/julia.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cantorqc {

namespace {

int worker_count() {
    if (const char* env = std::getenv("CANTOR_QC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Smallest j in [0, budget] with |f^j(z)| > r0, else budget + 1. Escape is
// definitive: the r0-disk complement is forward invariant.
int escape_level(Cpx c, Cpx z, int budget, double r0) {
    double r0sq = r0 * r0;
    if (std::norm(z) > r0sq) return 0;
    for (int j = 1; j <= budget; ++j) {
        z = z * z + c;
        if (std::norm(z) > r0sq) return j;
    }
    return budget + 1;
}

struct Raster {
    double x0 = 0.0, y0 = 0.0, step = 0.0;
    int n = 0;
    std::vector<std::uint8_t> mask;  // bit0: in S_k, bit1: in S_{k+1}
    std::vector<std::int32_t> label; // 4-connected components of bit0

    Cpx center(int ix, int iy) const {
        return {x0 + (ix + 0.5) * step, y0 + (iy + 0.5) * step};
    }
    std::int32_t label_at_cell(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= n || iy >= n) return -1;
        return label[std::size_t(iy) * n + ix];
    }
    // Tolerant membership: the cell of z or any 8-neighbor carries `want`.
    // Keeps fine-grid boundary pixels that the coarse parent sampled as
    // outside from disconnecting a component.
    bool near_label(Cpx z, std::int32_t want) const {
        int ix = int(std::floor((z.real() - x0) / step));
        int iy = int(std::floor((z.imag() - y0) / step));
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
                if (label_at_cell(ix + dx, iy + dy) == want) return true;
        return false;
    }
};

void fill_mask(Raster& r, Cpx c, int k, double r0, const Raster* parent,
               std::int32_t parent_label) {
    r.mask.assign(std::size_t(r.n) * r.n, 0);
    int threads = std::min(worker_count(), r.n);
    std::vector<std::thread> pool;
    auto run_rows = [&](int lo, int hi) {
        for (int iy = lo; iy < hi; ++iy)
            for (int ix = 0; ix < r.n; ++ix) {
                Cpx z = r.center(ix, iy);
                if (parent && !parent->near_label(z, parent_label)) continue;
                int esc = escape_level(c, z, k + 1, r0);
                std::uint8_t bits = 0;
                if (esc > k) bits |= 1;
                if (esc > k + 1) bits |= 2;
                r.mask[std::size_t(iy) * r.n + ix] = bits;
            }
    };
    int chunk = (r.n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int lo = t * chunk, hi = std::min(r.n, lo + chunk);
        if (lo < hi) pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
}

// Labels the cells where pred holds; 4- or 8-connectivity. Returns count.
template <class Pred>
int label_components(int n, Pred pred, std::vector<std::int32_t>& label,
                     bool eight) {
    label.assign(std::size_t(n) * n, -1);
    int count = 0;
    std::vector<std::pair<int, int>> stack;
    for (int sy = 0; sy < n; ++sy)
        for (int sx = 0; sx < n; ++sx) {
            std::size_t si = std::size_t(sy) * n + sx;
            if (label[si] != -1 || !pred(sx, sy)) continue;
            std::int32_t id = count++;
            label[si] = id;
            stack.assign(1, {sx, sy});
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (!eight && dx != 0 && dy != 0) continue;
                        int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
                        std::size_t ni = std::size_t(ny) * n + nx;
                        if (label[ni] != -1 || !pred(nx, ny)) continue;
                        label[ni] = id;
                        stack.push_back({nx, ny});
                    }
            }
        }
    return count;
}

// Boundary curves of one shell component: 1 + holes, holes being the
// 8-connected complement components inside the padded bounding box that
// never reach its border.
int boundary_curves_of(const std::vector<std::int32_t>& shell_label, int n,
                       std::int32_t id, int bx0, int by0, int bx1, int by1) {
    int w = bx1 - bx0 + 3, h = by1 - by0 + 3; // one-pixel pad on each side
    auto inside = [&](int x, int y) {
        int gx = bx0 + x - 1, gy = by0 + y - 1;
        if (gx < 0 || gy < 0 || gx >= n || gy >= n) return false;
        return shell_label[std::size_t(gy) * n + gx] == id;
    };
    std::vector<std::int8_t> comp(std::size_t(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!inside(x, y)) comp[std::size_t(y) * w + x] = 1;
    // Flood the outer complement from the border.
    std::vector<std::pair<int, int>> stack;
    auto push_outer = [&](int x, int y) {
        std::size_t i = std::size_t(y) * w + x;
        if (comp[i] == 1) {
            comp[i] = 2;
            stack.push_back({x, y});
        }
    };
    for (int x = 0; x < w; ++x) {
        push_outer(x, 0);
        push_outer(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push_outer(0, y);
        push_outer(w - 1, y);
    }
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                push_outer(nx, ny);
            }
    }
    int holes = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = std::size_t(y) * w + x;
            if (comp[i] != 1) continue;
            ++holes;
            comp[i] = 2;
            stack.assign(1, {x, y});
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        std::size_t ni = std::size_t(ny) * w + nx;
                        if (comp[ni] == 1) {
                            comp[ni] = 2;
                            stack.push_back({nx, ny});
                        }
                    }
            }
        }
    return 1 + holes;
}

struct CensusAccum {
    std::vector<int> sublevel;
    std::vector<int> shells;
    std::vector<std::vector<int>> curves;
};

void census_component(Cpx c, double r0, int k, int k_max, int grid,
                      double x0, double y0, double side, const Raster* parent,
                      std::int32_t parent_label, CensusAccum& acc) {
    Raster r;
    r.n = grid;
    r.x0 = x0;
    r.y0 = y0;
    r.step = side / grid;
    fill_mask(r, c, k, r0, parent, parent_label);
    auto in_k = [&](int x, int y) {
        return (r.mask[std::size_t(y) * r.n + x] & 1) != 0;
    };
    int n_comp = label_components(r.n, in_k, r.label, false);
    if (n_comp == 0) return;
    acc.sublevel[k] += n_comp;

    // Shell S_k \ S_{k+1} within this raster; each component's curve count.
    std::vector<std::int32_t> shell_label;
    auto in_shell = [&](int x, int y) {
        return (r.mask[std::size_t(y) * r.n + x] & 3) == 1;
    };
    int n_shell = label_components(r.n, in_shell, shell_label, false);
    acc.shells[k] += n_shell;
    std::vector<int> sx0(n_shell, r.n), sy0(n_shell, r.n), sx1(n_shell, -1),
        sy1(n_shell, -1);
    for (int y = 0; y < r.n; ++y)
        for (int x = 0; x < r.n; ++x) {
            std::int32_t id = shell_label[std::size_t(y) * r.n + x];
            if (id < 0) continue;
            sx0[id] = std::min(sx0[id], x);
            sy0[id] = std::min(sy0[id], y);
            sx1[id] = std::max(sx1[id], x);
            sy1[id] = std::max(sy1[id], y);
        }
    for (int id = 0; id < n_shell; ++id)
        acc.curves[k].push_back(boundary_curves_of(
            shell_label, r.n, id, sx0[id], sy0[id], sx1[id], sy1[id]));

    if (k == k_max) return;

    // Recurse into each S_k component's padded square bounding box.
    std::vector<int> cx0(n_comp, r.n), cy0(n_comp, r.n), cx1(n_comp, -1),
        cy1(n_comp, -1);
    for (int y = 0; y < r.n; ++y)
        for (int x = 0; x < r.n; ++x) {
            std::int32_t id = r.label[std::size_t(y) * r.n + x];
            if (id < 0) continue;
            cx0[id] = std::min(cx0[id], x);
            cy0[id] = std::min(cy0[id], y);
            cx1[id] = std::max(cx1[id], x);
            cy1[id] = std::max(cy1[id], y);
        }
    for (int id = 0; id < n_comp; ++id) {
        double pad = 3.0 * r.step;
        double bx0 = r.x0 + cx0[id] * r.step - pad;
        double by0 = r.y0 + cy0[id] * r.step - pad;
        double bw = (cx1[id] - cx0[id] + 1) * r.step + 2 * pad;
        double bh = (cy1[id] - cy0[id] + 1) * r.step + 2 * pad;
        double bside = std::max(bw, bh);
        bx0 -= (bside - bw) / 2;
        by0 -= (bside - bh) / 2;
        census_component(c, r0, k + 1, k_max, grid, bx0, by0, bside, &r, id,
                         acc);
    }
}

CensusAccum census_once(Cpx c, double r0, int k_max, int grid) {
    CensusAccum acc;
    acc.sublevel.assign(k_max + 1, 0);
    acc.shells.assign(k_max + 1, 0);
    acc.curves.assign(k_max + 1, {});
    double side = 2.0 * (r0 + 0.5);
    census_component(c, r0, 0, k_max, grid, -side / 2, -side / 2, side,
                     nullptr, -1, acc);
    for (auto& v : acc.curves) std::sort(v.begin(), v.end());
    return acc;
}

} // namespace

double escape_radius(Cpx c) { return std::max(2.0, std::abs(c)) + 1.0; }

QuadraticVerdict classify_quadratic(Cpx c, int max_iter, double radius) {
    if (!(radius >= std::max(2.0, std::abs(c))))
        throw std::invalid_argument("escape radius below max(2,|c|)");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    QuadraticVerdict v;
    v.c = c;
    v.radius = radius;
    Cpx z = 0.0;
    for (int n = 1; n <= max_iter; ++n) {
        z = z * z + c;
        if (std::abs(z) > radius) {
            v.verdict = JuliaVerdict::CantorHyperbolic;
            v.escape_iteration = n;
            break;
        }
    }
    return v;
}

HyperbolicityCertificate hyperbolicity_certificate(Cpx c, int m, int samples,
                                                   std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    HyperbolicityCertificate cert;
    cert.m = m;
    auto verdict = classify_quadratic(c, 512, escape_radius(c));
    if (verdict.verdict != JuliaVerdict::CantorHyperbolic) return cert;
    cert.applicable = true;

    std::mt19937_64 rng(seed);
    Cpx beta = (1.0 + std::sqrt(Cpx(1.0, 0.0) - 4.0 * c)) / 2.0;
    Cpx z = beta;
    int burn_in = 30;
    double min_deriv = std::numeric_limits<double>::infinity();
    int collected = 0;
    int steps = 0;
    while (collected < samples) {
        Cpx w = z - c;
        if (std::abs(w) < 1e-300) {
            z = beta; // landed on the critical value stack; resample
            steps = 0;
            continue;
        }
        Cpx root = std::sqrt(w);
        z = (rng() & 1) ? root : -root;
        if (++steps <= burn_in) continue;
        Cpx orbit = z;
        double p = 1.0;
        for (int i = 0; i < m; ++i) {
            p *= 2.0 * std::abs(orbit);
            orbit = orbit * orbit + c;
        }
        min_deriv = std::min(min_deriv, p);
        ++collected;
    }
    cert.samples = samples;
    cert.min_derivative = min_deriv;
    cert.pass = min_deriv > 1.0;
    return cert;
}

ExhaustionCensus fatou_exhaustion_census(Cpx c, int k_max, int grid,
                                         double r0) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (grid < 16) throw std::invalid_argument("grid must be >= 16");
    // Forward invariance of {|z| > r0} is all the census needs; radii below
    // |c| are legitimate and resolve more component splitting.
    if (!(r0 >= 2.0 && r0 * r0 > r0 + std::abs(c)))
        throw std::invalid_argument("escape radius not forward invariant");

    CensusAccum base = census_once(c, r0, k_max, grid);
    CensusAccum fine = census_once(c, r0, k_max, grid * 2);

    ExhaustionCensus census;
    census.c = c;
    census.r0 = r0;
    census.base_grid = grid;
    for (int k = 0; k <= k_max; ++k) {
        CensusLevel lvl;
        lvl.k = k;
        lvl.sublevel_components = base.sublevel[k];
        lvl.shell_components = base.shells[k];
        lvl.boundary_curves = base.curves[k];
        lvl.stable = base.sublevel[k] == fine.sublevel[k] &&
                     base.shells[k] == fine.shells[k] &&
                     base.curves[k] == fine.curves[k];
        census.levels.push_back(std::move(lvl));
    }
    return census;
}

MatchingPlan plan_matching(int l, const std::vector<int>& big_l) {
    if (l < 3) throw std::invalid_argument("l must be >= 3");
    for (int v : big_l)
        if (v < 2) throw std::invalid_argument("every L(j) must be >= 2");
    MatchingPlan plan;
    while ((1 << (plan.n0 + 1)) + 1 <= l) ++plan.n0;
    plan.l0 = l - (1 << plan.n0) - 1;
    plan.l1.reserve(big_l.size());
    plan.partial_row.reserve(big_l.size());
    for (int v : big_l) {
        int e = 0;
        while ((1 << (e + 1)) <= v) ++e;
        plan.l1.push_back(e);
        plan.partial_row.push_back(v - (1 << e));
    }
    return plan;
}

} // namespace cantorqc
