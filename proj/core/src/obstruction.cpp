#include "cantorqc/obstruction.hpp"

#include "cantorqc/cantor_levels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cantorqc {

double annulus_core_length_log(double log_r, double log_R) {
    if (!(log_r < log_R))
        throw std::invalid_argument("annulus needs r < R");
    return 2.0 * std::numbers::pi * std::numbers::pi / (log_R - log_r);
}

double annulus_core_length(double r, double R) {
    if (!(r > 0.0)) throw std::invalid_argument("annulus needs r > 0");
    return annulus_core_length_log(std::log(r), std::log(R));
}

double wolpert_threshold(double k_qc, double d) {
    if (!(k_qc >= 1.0)) throw std::invalid_argument("K must be >= 1");
    if (!(d > 0.0)) throw std::invalid_argument("d must be > 0");
    return d / k_qc;
}

double default_systole() {
    return annulus_core_length(1.0 / 6.0, 1.0 / 2.0);
}

std::optional<ObstructionWitness> find_obstruction(const GapSequence& omega,
                                                   double k_qc, double d,
                                                   int horizon) {
    double threshold = wolpert_threshold(k_qc, d);
    for (int n = 1; n <= horizon; ++n) {
        // one_minus stays exact where at() would round q_n to 1.
        double eps = omega.one_minus(n);
        double log_len = log_interval_length(omega, n - 1);
        ObstructionWitness w;
        w.level = n;
        w.eps = eps;
        w.log_r = omega.log_one_minus(n) - std::log(4.0) + log_len;
        w.log_R = std::log((2.0 - eps) / 4.0) + log_len;
        w.core_length = annulus_core_length_log(w.log_r, w.log_R);
        w.threshold = threshold;
        if (w.core_length < threshold) return w;
    }
    return std::nullopt;
}

} // namespace cantorqc
