#ifndef CANTORQC_GAP_SEQUENCE_HPP
#define CANTORQC_GAP_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cantorqc {

/// A sequence omega = (q_n), 0 < q_n < 1, parametrizing a random Cantor
/// set: level n of the construction removes the middle open q_n-fraction
/// of each interval.
///
/// Values are immutable after construction; all member functions are pure.
class GapSequence {
public:
    enum class Kind {
        Constant,         // q_n = q
        Geometric,        // q_n = a^n
        ShiftedGeometric, // q_n = a^(n+L)
        ApproachOne,      // q_n = 1 - b^(-n)
        DoubleExponential,// q_n = 1 - 2^(-2^n)
        PlusInverseSquare,// q_n = base + 1/(n+1)^2
        Explicit,         // finite list
        SeededUniform     // q_n uniform in [lo,hi], counter-based RNG
    };

    static GapSequence constant(double q);
    static GapSequence geometric(double a);
    static GapSequence shifted_geometric(double a, int shift);
    static GapSequence approach_one(double base);
    static GapSequence double_exponential();
    static GapSequence plus_inverse_square(double base);
    static GapSequence explicit_list(std::vector<double> values);
    // Counter-based: q_n = lo + (hi-lo) * u_n with u_n = splitmix64 of the
    // 64-bit seed mixed with n, mapped to [0,1). Reproducible for a fixed
    // (seed, n) across platforms.
    static GapSequence seeded_uniform(double lo, double hi, std::uint64_t seed);

    /// q_n for n >= 1. Throws invalid_sequence_error if the value falls
    /// outside (0,1), violates a declared bound, or the list is exhausted.
    double at(int n) const;

    /// log(1 - q_n), computed in closed form where the generator permits
    /// (avoids cancellation for approach-one style sequences).
    double log_one_minus(int n) const;

    /// 1 - q_n in closed form. Stays meaningful where 1 - q_n underflows
    /// the spacing of doubles near 1 and at() would round q_n to 1.
    double one_minus(int n) const;

    Kind kind() const { return kind_; }
    double param_a() const { return a_; }
    int param_shift() const { return shift_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& values() const { return values_; }

    void set_declared_delta(double d);
    void set_declared_upper(double d);
    std::optional<double> declared_delta() const { return declared_delta_; }
    std::optional<double> declared_upper() const { return declared_upper_; }

    /// Best available delta with q_n >= delta for all n: the declared one,
    /// else a closed-form infimum when the generator has one.
    std::optional<double> lower_bound() const;
    /// Best available delta with q_n <= 1 - delta for all n.
    std::optional<double> upper_bound() const;

    bool same_generator(const GapSequence& other) const;

    /// Round-trips through parse_sequence_spec for the kinds the CLI
    /// grammar covers.
    std::string describe() const;

private:
    GapSequence() = default;
    Kind kind_ = Kind::Constant;
    double a_ = 0.0;     // q, a, b or base depending on kind
    double b_ = 0.0;     // hi for SeededUniform
    int shift_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> values_;
    std::optional<double> declared_delta_;
    std::optional<double> declared_upper_;
};

enum class DistanceFlag { Exact, Truncated };

struct SequenceDistance {
    double value = 0.0;
    DistanceFlag flag = DistanceFlag::Truncated;
    int attained_at = 0; // index n where the sup was attained (0 if value 0)
};

/// d(omega, omega~) = sup_n max{ |log((1-q~_n)/(1-q_n))|, |q~_n - q_n| },
/// evaluated over n <= horizon. Flag is Exact when a closed-form tail
/// argument applies (both constant, identical generators), else Truncated.
SequenceDistance sequence_distance(const GapSequence& a, const GapSequence& b,
                                   int horizon);

/// Shared delta for a pair of decompositions: the min of the two lower
/// bounds. Throws no_lower_bound_error when either side has none.
double effective_delta(const GapSequence& a, const GapSequence& b);

/// CLI grammar: const:1/3, geom:0.5, geomL:0.5:3, one-minus:4,
/// list:0.2,0.4,0.3, rand:0.2:0.8:12345, dblexp, invsq:1/3.
GapSequence parse_sequence_spec(const std::string& spec);

/// "1/3" -> 0.3333..., plain decimals pass through.
double parse_rational(const std::string& text);

} // namespace cantorqc

#endif
