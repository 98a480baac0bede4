#ifndef CANTORQC_ERRORS_HPP
#define CANTORQC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cantorqc {

// A generator emitted a value outside (0,1), or the requested term does
// not exist (finite explicit lists).
struct invalid_sequence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No delta-lower bound is declared or derivable for a sequence.
struct no_lower_bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Circle families failed a disjointness check; names the offending pair.
struct decomposition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scaled-pants geometry broke down (tangent circle does not enclose the
// child circles).
struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-difference dilatation estimation found |mu| >= 1.
struct degenerate_map_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cantorqc

#endif
