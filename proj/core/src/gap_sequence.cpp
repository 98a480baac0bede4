#include "cantorqc/gap_sequence.hpp"

#include "cantorqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cantorqc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t u = splitmix64(seed ^ splitmix64(n));
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

void require_unit_open(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0))
        throw invalid_sequence_error(std::string(what) + " must lie in (0,1)");
}

} // namespace

GapSequence GapSequence::constant(double q) {
    require_unit_open(q, "constant q");
    GapSequence s;
    s.kind_ = Kind::Constant;
    s.a_ = q;
    return s;
}

GapSequence GapSequence::geometric(double a) {
    require_unit_open(a, "geometric ratio");
    GapSequence s;
    s.kind_ = Kind::Geometric;
    s.a_ = a;
    return s;
}

GapSequence GapSequence::shifted_geometric(double a, int shift) {
    require_unit_open(a, "geometric ratio");
    if (shift < 0) throw invalid_sequence_error("shift must be >= 0");
    GapSequence s;
    s.kind_ = Kind::ShiftedGeometric;
    s.a_ = a;
    s.shift_ = shift;
    return s;
}

GapSequence GapSequence::approach_one(double base) {
    if (!(base > 1.0)) throw invalid_sequence_error("approach-one base must exceed 1");
    GapSequence s;
    s.kind_ = Kind::ApproachOne;
    s.a_ = base;
    return s;
}

GapSequence GapSequence::double_exponential() {
    GapSequence s;
    s.kind_ = Kind::DoubleExponential;
    return s;
}

GapSequence GapSequence::plus_inverse_square(double base) {
    require_unit_open(base, "base");
    if (base + 0.25 >= 1.0)
        throw invalid_sequence_error("base + 1/4 must stay below 1");
    GapSequence s;
    s.kind_ = Kind::PlusInverseSquare;
    s.a_ = base;
    return s;
}

GapSequence GapSequence::explicit_list(std::vector<double> values) {
    for (double v : values) require_unit_open(v, "list entry");
    GapSequence s;
    s.kind_ = Kind::Explicit;
    s.values_ = std::move(values);
    return s;
}

GapSequence GapSequence::seeded_uniform(double lo, double hi, std::uint64_t seed) {
    require_unit_open(lo, "rand lo");
    require_unit_open(hi, "rand hi");
    if (lo > hi) throw invalid_sequence_error("rand lo must be <= hi");
    GapSequence s;
    s.kind_ = Kind::SeededUniform;
    s.a_ = lo;
    s.b_ = hi;
    s.seed_ = seed;
    s.declared_delta_ = lo;
    s.declared_upper_ = 1.0 - hi;
    return s;
}

double GapSequence::at(int n) const {
    if (n < 1) throw std::invalid_argument("sequence index must be >= 1");
    double q = 0.0;
    switch (kind_) {
    case Kind::Constant: q = a_; break;
    case Kind::Geometric: q = std::pow(a_, n); break;
    case Kind::ShiftedGeometric: q = std::pow(a_, n + shift_); break;
    case Kind::ApproachOne: q = 1.0 - std::pow(a_, -n); break;
    case Kind::DoubleExponential: q = 1.0 - std::exp2(-std::exp2(n)); break;
    case Kind::PlusInverseSquare:
        q = a_ + 1.0 / (double(n + 1) * double(n + 1));
        break;
    case Kind::Explicit:
        if (n > static_cast<int>(values_.size()))
            throw invalid_sequence_error("explicit sequence exhausted at n=" +
                                         std::to_string(n));
        q = values_[n - 1];
        break;
    case Kind::SeededUniform:
        q = a_ + (b_ - a_) * uniform01(seed_, static_cast<std::uint64_t>(n));
        break;
    }
    if (!(q > 0.0 && q < 1.0))
        throw invalid_sequence_error("q_" + std::to_string(n) +
                                     " outside (0,1): " + std::to_string(q));
    if (declared_delta_ && q < *declared_delta_)
        throw invalid_sequence_error("q_" + std::to_string(n) +
                                     " violates declared delta-lower bound");
    if (declared_upper_ && q > 1.0 - *declared_upper_)
        throw invalid_sequence_error("q_" + std::to_string(n) +
                                     " violates declared upper bound");
    return q;
}

double GapSequence::log_one_minus(int n) const {
    switch (kind_) {
    case Kind::Geometric: return std::log1p(-std::pow(a_, n));
    case Kind::ShiftedGeometric: return std::log1p(-std::pow(a_, n + shift_));
    case Kind::ApproachOne: return -n * std::log(a_);
    case Kind::DoubleExponential: return -std::exp2(n) * std::log(2.0);
    default: return std::log1p(-at(n));
    }
}

double GapSequence::one_minus(int n) const {
    switch (kind_) {
    case Kind::Geometric: return 1.0 - std::pow(a_, n);
    case Kind::ShiftedGeometric: return 1.0 - std::pow(a_, n + shift_);
    case Kind::ApproachOne: return std::pow(a_, -n);
    case Kind::DoubleExponential: return std::exp2(-std::exp2(n));
    default: return 1.0 - at(n);
    }
}

void GapSequence::set_declared_delta(double d) {
    require_unit_open(d, "declared delta");
    declared_delta_ = d;
}

void GapSequence::set_declared_upper(double d) {
    require_unit_open(d, "declared upper");
    declared_upper_ = d;
}

std::optional<double> GapSequence::lower_bound() const {
    if (declared_delta_) return declared_delta_;
    switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::ApproachOne: return 1.0 - 1.0 / a_; // q_n is increasing
    case Kind::DoubleExponential: return 0.75;     // q_1 = 1 - 2^-2
    case Kind::PlusInverseSquare: return a_;       // q_n decreases to base
    case Kind::Explicit:
        if (values_.empty()) return std::nullopt;
        return *std::min_element(values_.begin(), values_.end());
    case Kind::SeededUniform: return a_;
    default: return std::nullopt; // geometric tails go to 0
    }
}

std::optional<double> GapSequence::upper_bound() const {
    if (declared_upper_) return declared_upper_;
    switch (kind_) {
    case Kind::Constant: return 1.0 - a_;
    case Kind::Geometric: return 1.0 - a_; // q_1 = a is the max
    case Kind::ShiftedGeometric: return 1.0 - std::pow(a_, 1 + shift_);
    case Kind::PlusInverseSquare: return 1.0 - (a_ + 0.25);
    case Kind::Explicit:
        if (values_.empty()) return std::nullopt;
        return 1.0 - *std::max_element(values_.begin(), values_.end());
    case Kind::SeededUniform: return 1.0 - b_;
    default: return std::nullopt; // sup q_n = 1
    }
}

bool GapSequence::same_generator(const GapSequence& o) const {
    if (kind_ != o.kind_) return false;
    return a_ == o.a_ && b_ == o.b_ && shift_ == o.shift_ && seed_ == o.seed_ &&
           values_ == o.values_;
}

std::string GapSequence::describe() const {
    std::ostringstream os;
    os << std::setprecision(17);
    switch (kind_) {
    case Kind::Constant: os << "const:" << a_; break;
    case Kind::Geometric: os << "geom:" << a_; break;
    case Kind::ShiftedGeometric: os << "geomL:" << a_ << ":" << shift_; break;
    case Kind::ApproachOne: os << "one-minus:" << a_; break;
    case Kind::DoubleExponential: os << "dblexp"; break;
    case Kind::PlusInverseSquare: os << "invsq:" << a_; break;
    case Kind::Explicit: {
        os << "list:";
        for (std::size_t i = 0; i < values_.size(); ++i)
            os << (i ? "," : "") << values_[i];
        break;
    }
    case Kind::SeededUniform:
        os << "rand:" << a_ << ":" << b_ << ":" << seed_;
        break;
    }
    return os.str();
}

SequenceDistance sequence_distance(const GapSequence& a, const GapSequence& b,
                                   int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    SequenceDistance out;
    for (int n = 1; n <= horizon; ++n) {
        double qa = a.at(n);
        double qb = b.at(n);
        double term =
            std::max(std::fabs(b.log_one_minus(n) - a.log_one_minus(n)),
                     std::fabs(qb - qa));
        if (term > out.value) {
            out.value = term;
            out.attained_at = n;
        }
    }
    bool exact = a.same_generator(b) ||
                 (a.kind() == GapSequence::Kind::Constant &&
                  b.kind() == GapSequence::Kind::Constant);
    out.flag = exact ? DistanceFlag::Exact : DistanceFlag::Truncated;
    return out;
}

double effective_delta(const GapSequence& a, const GapSequence& b) {
    auto la = a.lower_bound();
    auto lb = b.lower_bound();
    if (!la || !lb)
        throw no_lower_bound_error(
            "no delta-lower bound derivable for the pair");
    return std::min(*la, *lb);
}

double parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(text.substr(0, slash));
        double den = std::stod(text.substr(slash + 1));
        if (den == 0.0) throw invalid_sequence_error("zero denominator");
        return num / den;
    }
    return std::stod(text);
}

GapSequence parse_sequence_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        return parts;
    };

    if (head == "const") return GapSequence::constant(parse_rational(rest));
    if (head == "geom") return GapSequence::geometric(parse_rational(rest));
    if (head == "geomL") {
        auto p = split(rest, ':');
        if (p.size() != 2) throw invalid_sequence_error("geomL:a:L expected");
        return GapSequence::shifted_geometric(parse_rational(p[0]),
                                              std::stoi(p[1]));
    }
    if (head == "one-minus")
        return GapSequence::approach_one(parse_rational(rest));
    if (head == "dblexp") return GapSequence::double_exponential();
    if (head == "invsq")
        return GapSequence::plus_inverse_square(parse_rational(rest));
    if (head == "list") {
        std::vector<double> vals;
        for (const auto& t : split(rest, ',')) vals.push_back(parse_rational(t));
        if (vals.empty()) throw invalid_sequence_error("empty list spec");
        return GapSequence::explicit_list(std::move(vals));
    }
    if (head == "rand") {
        auto p = split(rest, ':');
        if (p.size() != 3)
            throw invalid_sequence_error("rand:lo:hi:seed expected");
        return GapSequence::seeded_uniform(parse_rational(p[0]),
                                           parse_rational(p[1]),
                                           std::stoull(p[2]));
    }
    throw invalid_sequence_error("unknown sequence spec: " + spec);
}

} // namespace cantorqc
