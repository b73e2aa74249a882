#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lopc/gates.hpp"
#include "lopc/oracle.hpp"

using namespace lopc;
using std::numbers::pi;

namespace {

const double kAmp = 1.0 / (4.0 * std::sqrt(3.0));
const Variant kVariants[] = {Variant::Basic, Variant::FeedForward, Variant::DualOutput, Variant::Full};

} // namespace

TEST_CASE("oracle: basic examples") {
    const double phi = 0.9;
    const auto r11 = oracle::path_amplitude(1, 1, phi, Variant::Basic);
    REQUIRE(r11.size() == 1);
    CHECK(r11[0].ket_index == 3);
    CHECK(std::abs(r11[0].amplitude - std::polar(kAmp, phi)) < 1e-15);

    for (double any : {0.0, 1.0, pi}) {
        const auto r00 = oracle::path_amplitude(0, 0, any, Variant::Basic);
        REQUIRE(r00.size() == 1);
        CHECK(r00[0].ket_index == 0);
        CHECK(std::abs(r00[0].amplitude - kAmp) < 1e-15);
    }
}

TEST_CASE("oracle: full variant on |10> gives four branches of magnitude 1/(4 sqrt3)") {
    const auto rs = oracle::path_amplitude(1, 0, 0.7, Variant::Full);
    REQUIRE(rs.size() == 4);
    for (const auto& r : rs) {
        CHECK(r.ket_index == 2);
        CHECK(std::abs(std::abs(r.amplitude) - kAmp) < 1e-15);
    }
}

TEST_CASE("oracle paths: amplitude is the product of step factors") {
    for (auto v : kVariants)
        for (int t = 0; t < 2; ++t)
            for (int c = 0; c < 2; ++c)
                for (const auto& r : oracle::path_amplitude(t, c, 1.2, v)) {
                    Complex sum{};
                    for (const auto& p : r.paths) {
                        Complex prod{1.0, 0.0};
                        for (const auto& s : p.steps) prod *= s.factor;
                        CHECK(std::abs(prod - p.amplitude) < 1e-15);
                        if (p.ket_index == r.ket_index) sum += p.amplitude;
                    }
                    CHECK(std::abs(sum - r.amplitude) < 1e-15);
                }
}

TEST_CASE("oracle_conditional_gate") {
    const double phi = 2.1;
    const auto basic = oracle::oracle_conditional_gate(phi, Variant::Basic);
    REQUIRE(basic.branches.size() == 1);
    CHECK((basic.branches[0].second - kAmp * ideal_cphase(phi)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(basic.total_probability - 1.0 / 48.0) < 1e-15);

    const auto full = oracle::oracle_conditional_gate(phi, Variant::Full);
    CHECK(full.branches.size() == 4);
    CHECK(std::abs(full.total_probability - 1.0 / 12.0) < 1e-15);

    const auto zero = oracle::oracle_conditional_gate(0.0, Variant::Basic);
    CHECK(zero.branches[0].second.isApprox(GateMatrix::Identity() * kAmp));
}

TEST_CASE("oracle equals the simulator branch by branch (128 comparisons)") {
    const double phis[] = {0.0, pi / 6, pi / 4, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6, pi};
    int comparisons = 0;
    for (auto v : kVariants) {
        const CircuitNetlist n = builtin(v);
        for (double phi : phis)
            for (int t = 0; t < 2; ++t)
                for (int c = 0; c < 2; ++c) {
                    const PolarizationKet tk = t ? PolarizationKet{0.0, 1.0} : PolarizationKet{1.0, 0.0};
                    const PolarizationKet ck = c ? PolarizationKet{0.0, 1.0} : PolarizationKet{1.0, 0.0};
                    const auto sim = run(n, prepare_inputs(n, tk, ck, phi));
                    const auto ora = oracle::path_amplitude(t, c, phi, v);
                    REQUIRE(sim.size() == ora.size());
                    double err = 0.0;
                    for (std::size_t b = 0; b < sim.size(); ++b) {
                        CHECK(sim[b].label() == ora[b].label());
                        for (int k = 0; k < 4; ++k)
                            err = std::max(err, std::abs(sim[b].amplitudes[k] - ora[b].amplitudes[k]));
                    }
                    CHECK(err < 1e-12);
                    ++comparisons;
                }
    }
    CHECK(comparisons == 128);
}
