#include "lopc/oracle.hpp"

#include <cmath>

#include "lopc/error.hpp"

namespace lopc::oracle {

namespace {

enum Pol { H = 0, V = 1 };

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// Half-wave plate at 22.5 deg: |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
double hadamard(int out, int in) { return (out == V && in == V) ? -kInvSqrt2 : kInvSqrt2; }

// Detector overlaps <outcome|pol> for D = (H+V)/sqrt2 and A = (H-V)/sqrt2.
double detector_overlap(const std::string& outcome, int pol) {
    if (outcome == "A" && pol == V) return -kInvSqrt2;
    return kInvSqrt2;
}

struct Walk {
    std::vector<Step> steps;
    Complex amplitude{1.0, 0.0};

    Walk then(std::string label, Complex factor) const {
        Walk w = *this;
        w.amplitude *= factor;
        w.steps.push_back({std::move(label), factor});
        return w;
    }
};

struct Config {
    bool feedforward;
    bool dual;
    std::string outcome;
    std::string port;
    double phi;
};

// Photon in the upper target arm (target |0>). The program photon must reach
// the detector through PBS3 transmission (H); its V part enters the lower arm
// and leaves the detector dark.
void upper_arm(const Config& cfg, int control_bit, std::vector<Path>& out) {
    Walk w;
    w = w.then("PBS1 transmits H to upper arm", 1.0);
    w = w.then("F1", cfg.dual ? kInvSqrt2 : 0.5);

    std::vector<std::pair<Walk, int>> arm;
    if (cfg.dual) {
        arm.emplace_back(w.then("HWP4 H->H", hadamard(H, H)), H);
        arm.emplace_back(w.then("HWP4 H->V", hadamard(V, H)), V);
    } else {
        arm.emplace_back(w, H);
    }

    for (auto [walk, pol] : arm) {
        // PBS2 from the upper arm: H transmitted to T_OUT, V reflected to T_OUT2.
        const std::string port = pol == H ? "T_OUT" : "T_OUT2";
        if (port != cfg.port) continue;
        walk = walk.then(pol == H ? "PBS2 transmits H to T_OUT" : "PBS2 reflects V to T_OUT2", 1.0);
        int bit = pol;
        if (port == "T_OUT2") {
            walk = walk.then("HWP5 swap", 1.0);
            bit = 1 - bit;
        }
        if (control_bit == 0)
            walk = walk.then("PPBS transmits control H", 1.0).then("F2 on H", kInvSqrt3);
        else
            walk = walk.then("PPBS transmits control V", kInvSqrt3).then("F2 on V", 1.0);
        walk = walk.then("program H amplitude", kInvSqrt2)
                   .then("PBS3 transmits program H to detector", 1.0)
                   .then("detector projection <" + cfg.outcome + "|H>", detector_overlap(cfg.outcome, H));
        out.push_back({0, control_bit, walk.steps, static_cast<std::size_t>(2 * bit + control_bit), walk.amplitude});
    }
}

// Photon in the lower target arm (target |1>).
void lower_arm(const Config& cfg, int control_bit, std::vector<Path>& out) {
    Walk start = Walk{}.then("PBS1 reflects V to lower arm", 1.0);

    // HWP1: |1> -> (1/2)|0> + (sqrt3/2)|1>.
    std::vector<std::pair<Walk, int>> after_hwp1 = {
        {start.then("HWP1 V->H", 0.5), H},
        {start.then("HWP1 V->V", std::sqrt(3.0) / 2.0), V},
    };

    // PPBS: keep histories with one photon in each arm afterwards.
    std::vector<std::pair<Walk, int>> after_ppbs;
    for (const auto& [w, pol] : after_hwp1) {
        if (control_bit == 0) {
            // Control H always transmits; the target must transmit as well.
            Walk t = w.then("PPBS transmits control H", 1.0);
            t = pol == H ? t.then("PPBS transmits target H", 1.0) : t.then("PPBS transmits target V", kInvSqrt3);
            after_ppbs.emplace_back(t.then("F2 on H", kInvSqrt3), pol);
        } else if (pol == H) {
            Walk t = w.then("PPBS transmits target H", 1.0).then("PPBS transmits control V", kInvSqrt3);
            after_ppbs.emplace_back(t.then("F2 on V", 1.0), H);
        } else {
            // Two V photons: both transmitted (t^2) or both reflected (-r^2).
            after_ppbs.emplace_back(w.then("PPBS both V transmitted", 1.0 / 3.0).then("F2 on V", 1.0), V);
            after_ppbs.emplace_back(w.then("PPBS both V reflected", -2.0 / 3.0).then("F2 on V", 1.0), V);
        }
    }

    for (const auto& [w, pol] : after_ppbs) {
        for (int y : {H, V}) {
            Walk a = w.then(std::string("HWP2 ") + (pol == H ? "H" : "V") + "->" + (y == H ? "H" : "V"),
                            hadamard(y, pol));
            int lower_pol = 0;
            int detector_pol = 0;
            if (y == H) {
                // Target stays in the lower arm; the program photon's H part goes to the detector.
                a = a.then("PBS3 transmits target H", 1.0)
                        .then("program H amplitude", kInvSqrt2)
                        .then("PBS3 transmits program H to detector", 1.0);
                lower_pol = H;
                detector_pol = H;
            } else {
                // Target is reflected to the detector; the program photon's V part takes its place.
                a = a.then("PBS3 reflects target V to detector", 1.0)
                        .then("program V amplitude", -std::polar(kInvSqrt2, cfg.phi))
                        .then("PBS3 reflects program V into lower arm", 1.0);
                lower_pol = V;
                detector_pol = V;
            }
            a = a.then("detector projection <" + cfg.outcome + "|" + (detector_pol == H ? "H" : "V") + ">",
                       detector_overlap(cfg.outcome, detector_pol));
            if (cfg.feedforward && cfg.outcome == "A" && lower_pol == V) a = a.then("feed-forward flips V", -1.0);

            for (int z : {H, V}) {
                // PBS2 from the lower arm: V reflected to T_OUT, H transmitted to T_OUT2.
                const std::string port = z == V ? "T_OUT" : "T_OUT2";
                if (port != cfg.port) continue;
                Walk b = a.then(std::string("HWP3 ") + (lower_pol == H ? "H" : "V") + "->" + (z == H ? "H" : "V"),
                                hadamard(z, lower_pol));
                b = b.then(z == V ? "PBS2 reflects V to T_OUT" : "PBS2 transmits H to T_OUT2", 1.0);
                int bit = z;
                if (port == "T_OUT2") {
                    b = b.then("HWP5 swap", 1.0);
                    bit = 1 - bit;
                }
                out.push_back({1, control_bit, b.steps, static_cast<std::size_t>(2 * bit + control_bit), b.amplitude});
            }
        }
    }
}

} // namespace

std::vector<BranchResult> path_amplitude(int target_bit, int control_bit, double phi, Variant variant) {
    if ((target_bit != 0 && target_bit != 1) || (control_bit != 0 && control_bit != 1))
        throw Error("oracle inputs must be bits");
    const bool feedforward = variant == Variant::FeedForward || variant == Variant::Full;
    const bool dual = variant == Variant::DualOutput || variant == Variant::Full;
    if (variant != Variant::Basic && !feedforward && !dual) throw Error("invalid variant");

    std::vector<std::string> outcomes = {"D"};
    if (feedforward) outcomes.push_back("A");
    std::vector<std::string> ports = {"T_OUT"};
    if (dual) ports.push_back("T_OUT2");

    std::vector<BranchResult> results;
    for (const auto& outcome : outcomes) {
        for (const auto& port : ports) {
            const Config cfg{feedforward, dual, outcome, port, phi};
            BranchResult r;
            r.outcome = outcome;
            r.port = port;
            if (target_bit == 0)
                upper_arm(cfg, control_bit, r.paths);
            else
                lower_arm(cfg, control_bit, r.paths);
            for (const auto& p : r.paths) r.amplitudes[p.ket_index] += p.amplitude;
            for (std::size_t k = 0; k < 4; ++k)
                if (std::abs(r.amplitudes[k]) > std::abs(r.amplitudes[r.ket_index])) r.ket_index = k;
            r.amplitude = r.amplitudes[r.ket_index];
            results.push_back(std::move(r));
        }
    }
    return results;
}

Gate oracle_conditional_gate(double phi, Variant variant) {
    Gate gate;
    for (std::size_t col = 0; col < 4; ++col) {
        const auto branches = path_amplitude(static_cast<int>(col >> 1), static_cast<int>(col & 1), phi, variant);
        if (col == 0)
            for (const auto& b : branches) gate.branches.emplace_back(b.label(), GateMatrix::Zero());
        for (std::size_t i = 0; i < branches.size(); ++i)
            for (std::size_t row = 0; row < 4; ++row)
                gate.branches[i].second(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                    branches[i].amplitudes[row];
    }
    for (const auto& [label, op] : gate.branches) gate.total_probability += op.col(0).squaredNorm();
    return gate;
}

} // namespace lopc::oracle
