#ifndef CANTORQC_CANTOR_LEVELS_HPP
#define CANTORQC_CANTOR_LEVELS_HPP

#include "cantorqc/gap_sequence.hpp"

#include <cstddef>
#include <vector>

namespace cantorqc {

/// One interval in unit-interval coordinates. `length` may underflow to a
/// subnormal or zero for approach-one sequences; `log_length` stays valid.
struct Interval {
    double left = 0.0;
    double length = 0.0;
    double log_length = 0.0;
};

/// The nested levels E_k = union of I_k^i with the removed gaps J_k^i.
/// Immutable after build; safe for shared reads.
class CantorLevels {
public:
    /// Builds levels 0..k_max. Depth is capped at kMaxDepth (2^k intervals
    /// are stored explicitly).
    static CantorLevels build(const GapSequence& seq, int k_max);

    static constexpr int kMaxDepth = 24;

    int depth() const { return depth_; }
    const GapSequence& sequence() const { return seq_; }

    /// Ordered intervals I_k^1 < ... < I_k^{2^k}.
    const std::vector<Interval>& intervals(int k) const;
    /// Ordered gaps J_k^1 ... J_k^{2^k - 1} of E_k (levels >= 1).
    const std::vector<Interval>& gaps(int k) const;

    /// Common interval length at level k (all I_k^i agree).
    double interval_length(int k) const;
    double log_interval_length(int k) const;

private:
    CantorLevels(const GapSequence& seq) : seq_(seq) {}
    GapSequence seq_;
    int depth_ = 0;
    std::vector<std::vector<Interval>> intervals_;
    std::vector<std::vector<Interval>> gaps_;
};

/// |I_k^1| = 2^-k * prod_{j<=k} (1 - q_j), by the closed formula (no level
/// storage required).
double interval_length(const GapSequence& seq, int k);
/// log |I_k^1|, accumulated in log space; usable far beyond double range.
double log_interval_length(const GapSequence& seq, int k);

/// |J_k^i| by the index rules: odd i is the gap freshly removed at level k
/// (length q_k |I_{k-1}^1|); even i = 2^l * m resolves to the ancestral gap
/// J_{k-l}^m.
double gap_length(const GapSequence& seq, int k, int i);

struct GapBoundReport {
    double min_ratio = 0.0; // min over gaps of |J_k^i| / |I_k^1|
    int worst_level = 0;
    int worst_index = 0;
    double threshold = 0.0; // 2 * delta
    bool pass = false;
};

/// Checks |J_k^i| >= 2 delta |I_k^1| for every gap at every built level.
GapBoundReport check_gap_bound(const CantorLevels& levels, double delta);

} // namespace cantorqc

#endif
