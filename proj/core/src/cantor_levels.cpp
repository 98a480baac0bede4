#include "cantorqc/cantor_levels.hpp"

#include "cantorqc/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cantorqc {

double log_interval_length(const GapSequence& seq, int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    double acc = -k * std::log(2.0);
    double comp = 0.0; // Kahan compensation
    for (int j = 1; j <= k; ++j) {
        double term = seq.log_one_minus(j) - comp;
        double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return acc;
}

double interval_length(const GapSequence& seq, int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    long double len = 1.0L;
    for (int j = 1; j <= k; ++j) len *= 0.5L * (long double)seq.one_minus(j);
    double d = static_cast<double>(len);
    if (d == 0.0 || d < 1e-300) return std::exp(log_interval_length(seq, k));
    return d;
}

double gap_length(const GapSequence& seq, int k, int i) {
    if (k < 1) throw std::invalid_argument("gap level must be >= 1");
    if (i < 1 || i > (1 << k) - 1)
        throw std::out_of_range("gap index " + std::to_string(i) +
                                " out of range at level " + std::to_string(k));
    // strip trailing factors of two: J_k^{2^l m} = J_{k-l}^m
    while (i % 2 == 0) {
        i /= 2;
        k -= 1;
    }
    return seq.at(k) * interval_length(seq, k - 1);
}

CantorLevels CantorLevels::build(const GapSequence& seq, int k_max) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (k_max > kMaxDepth)
        throw std::invalid_argument("depth " + std::to_string(k_max) +
                                    " exceeds cap " +
                                    std::to_string(kMaxDepth));
    CantorLevels out(seq);
    out.depth_ = k_max;
    out.intervals_.resize(k_max + 1);
    out.gaps_.resize(k_max + 1);

    out.intervals_[0] = {Interval{0.0, 1.0, 0.0}};
    for (int k = 1; k <= k_max; ++k) {
        double q = seq.at(k);
        double child_len = cantorqc::interval_length(seq, k);
        double child_log = cantorqc::log_interval_length(seq, k);
        double parent_len = cantorqc::interval_length(seq, k - 1);
        double gap_len = q * parent_len;
        double gap_log = std::log(q) + cantorqc::log_interval_length(seq, k - 1);

        const auto& parents = out.intervals_[k - 1];
        const auto& parent_gaps = out.gaps_[k - 1];
        auto& kids = out.intervals_[k];
        auto& gs = out.gaps_[k];
        kids.reserve(parents.size() * 2);
        gs.reserve(parents.size() * 2 - 1);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            const Interval& p = parents[i];
            kids.push_back({p.left, child_len, child_log});
            gs.push_back({p.left + child_len, gap_len, gap_log});
            kids.push_back({p.left + child_len + gap_len, child_len, child_log});
            if (i + 1 < parents.size()) gs.push_back(parent_gaps[i]);
        }
    }
    return out;
}

const std::vector<Interval>& CantorLevels::intervals(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("level out of range");
    return intervals_[k];
}

const std::vector<Interval>& CantorLevels::gaps(int k) const {
    if (k < 1 || k > depth_) throw std::out_of_range("gap level out of range");
    return gaps_[k];
}

double CantorLevels::interval_length(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("level out of range");
    return intervals_[k].front().length;
}

double CantorLevels::log_interval_length(int k) const {
    if (k < 0 || k > depth_) throw std::out_of_range("level out of range");
    return intervals_[k].front().log_length;
}

GapBoundReport check_gap_bound(const CantorLevels& levels, double delta) {
    GapBoundReport rep;
    rep.threshold = 2.0 * delta;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= levels.depth(); ++k) {
        double log_i = levels.log_interval_length(k);
        const auto& gs = levels.gaps(k);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            double ratio = std::exp(gs[i].log_length - log_i);
            if (ratio < rep.min_ratio) {
                rep.min_ratio = ratio;
                rep.worst_level = k;
                rep.worst_index = static_cast<int>(i) + 1;
            }
        }
    }
    if (levels.depth() == 0) rep.min_ratio = 0.0;
    rep.pass = levels.depth() == 0 || rep.min_ratio >= rep.threshold;
    return rep;
}

} // namespace cantorqc
