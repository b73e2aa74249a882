#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "lopc/fock_state.hpp"
#include "lopc/mode.hpp"

namespace lopc::testing {

inline Complex random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng), g(rng)};
}

inline Eigen::MatrixXcd random_unitary(std::size_t n, std::mt19937_64& rng) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = random_complex(rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return qr.householderQ();
}

inline PolarizationKet random_ket(std::mt19937_64& rng) {
    PolarizationKet k{random_complex(rng), random_complex(rng)};
    const double n = std::sqrt(std::norm(k[0]) + std::norm(k[1]));
    return {k[0] / n, k[1] / n};
}

inline TwoQubitAmplitudes random_two_qubit(std::mt19937_64& rng) {
    TwoQubitAmplitudes a{};
    double n = 0.0;
    for (auto& x : a) {
        x = random_complex(rng);
        n += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(n);
    return a;
}

/// max |a - b| over the union of supports.
inline double max_difference(const FockState& a, const FockState& b) {
    double d = 0.0;
    for (const auto& [occ, amp] : a.amplitudes()) d = std::max(d, std::abs(amp - b.amplitude(occ)));
    for (const auto& [occ, amp] : b.amplitudes()) d = std::max(d, std::abs(amp - a.amplitude(occ)));
    return d;
}

} // namespace lopc::testing
