// Acceptance checks: one PASS/FAIL line per criterion.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lopc/cli.hpp"
#include "lopc/error.hpp"
#include "lopc/gates.hpp"
#include "lopc/netlist.hpp"
#include "lopc/oracle.hpp"

using namespace lopc;
using std::numbers::pi;

namespace {

const double kAmp = 1.0 / (4.0 * std::sqrt(3.0));
const Variant kVariants[] = {Variant::Basic, Variant::FeedForward, Variant::DualOutput, Variant::Full};
const std::filesystem::path fixtures = LOPC_FIXTURE_DIR;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double wrap(double a) { return std::remainder(a, 2.0 * pi); }

Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

PolarizationKet random_ket(std::mt19937_64& rng) {
    PolarizationKet k{gaussian(rng), gaussian(rng)};
    const double n = std::sqrt(std::norm(k[0]) + std::norm(k[1]));
    return {k[0] / n, k[1] / n};
}

TwoQubitAmplitudes random_two_qubit(std::mt19937_64& rng) {
    TwoQubitAmplitudes a;
    double n = 0.0;
    for (auto& x : a) {
        x = gaussian(rng);
        n += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(n);
    return a;
}

const std::vector<double>& phi_grid() {
    static const std::vector<double> g = uniform_grid(0.0, pi, 21);
    return g;
}

Outcome gate_correctness() {
    double off = 0.0, mag = 0.0, phase = 0.0, fid = 0.0;
    for (double phi : phi_grid()) {
        const auto r = conditional_gate(builtin_basic(), phi);
        const GateMatrix& g = r.branches.at(0).op;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j)
                if (i != j) off = std::max(off, std::abs(g(i, j)));
            mag = std::max(mag, std::abs(std::abs(g(i, i)) - kAmp));
        }
        phase = std::max(phase, std::abs(wrap(std::arg(g(3, 3) / g(0, 0)) - phi)));
        fid = std::max(fid, std::abs(r.fidelity - 1.0));
    }
    return {off < 1e-12 && mag < 1e-12 && phase < 1e-10 && fid < 1e-12,
            "max offdiag " + fmt("%.2e", off) + ", |diag| err " + fmt("%.2e", mag) + ", phase err " +
                fmt("%.2e", phase) + ", fidelity err " + fmt("%.2e", fid)};
}

Outcome success_probabilities() {
    const double expected[] = {1.0 / 48.0, 1.0 / 24.0, 1.0 / 24.0, 1.0 / 12.0};
    double err = 0.0;
    for (int v = 0; v < 4; ++v)
        for (double phi : phi_grid())
            err = std::max(err, std::abs(conditional_gate(builtin(kVariants[v]), phi).p_success - expected[v]));
    return {err < 1e-12, "1/48, 1/24, 1/24, 1/12; max err " + fmt("%.2e", err)};
}

Outcome state_independence() {
    std::mt19937_64 rng(20110701);
    std::vector<PolarizationKet> targets, controls;
    std::vector<TwoQubitAmplitudes> entangled;
    for (int i = 0; i < 100; ++i) {
        targets.push_back(random_ket(rng));
        controls.push_back(random_ket(rng));
    }
    for (int i = 0; i < 20; ++i) entangled.push_back(random_two_qubit(rng));
    const double phi = std::uniform_real_distribution<double>(0.0, pi)(rng);
    double worst = 0.0;
    for (auto v : kVariants) {
        const CircuitNetlist n = builtin(v);
        double lo = 1.0, hi = 0.0;
        auto note = [&](double p) {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        };
        for (int i = 0; i < 100; ++i) note(success_probability(n, targets[i], controls[i], phi));
        for (const auto& e : entangled) note(success_probability(n, e, phi));
        worst = std::max(worst, hi - lo);
    }
    return {worst < 1e-12, "100 product + 20 entangled inputs; max spread " + fmt("%.2e", worst)};
}

Outcome oracle_equivalence() {
    const double phis[] = {0.0, pi / 6, pi / 4, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6, pi};
    int comparisons = 0;
    double err = 0.0;
    bool labels = true;
    for (auto v : kVariants) {
        const CircuitNetlist n = builtin(v);
        for (double phi : phis)
            for (int t = 0; t < 2; ++t)
                for (int c = 0; c < 2; ++c) {
                    const PolarizationKet tk = t ? PolarizationKet{0.0, 1.0} : PolarizationKet{1.0, 0.0};
                    const PolarizationKet ck = c ? PolarizationKet{0.0, 1.0} : PolarizationKet{1.0, 0.0};
                    const auto sim = run(n, prepare_inputs(n, tk, ck, phi));
                    const auto ora = oracle::path_amplitude(t, c, phi, v);
                    if (sim.size() != ora.size()) {
                        labels = false;
                        continue;
                    }
                    for (std::size_t b = 0; b < sim.size(); ++b) {
                        labels = labels && sim[b].label() == ora[b].label();
                        for (int k = 0; k < 4; ++k)
                            err = std::max(err, std::abs(sim[b].amplitudes[k] - ora[b].amplitudes[k]));
                    }
                    ++comparisons;
                }
    }
    return {labels && comparisons == 128 && err < 1e-12,
            std::to_string(comparisons) + " comparisons; max amplitude err " + fmt("%.2e", err)};
}

Outcome hom_physics() {
    const auto a = hom_scan(1.0 / std::sqrt(3.0), std::vector<double>{1.0, 0.0});
    const auto b = hom_scan(1.0 / std::sqrt(2.0), std::vector<double>{1.0});
    const double e1 = std::abs(a[0].coincidence - 1.0 / 9.0);
    const double e0 = std::abs(a[1].coincidence - 5.0 / 9.0);
    return {e1 < 1e-12 && e0 < 1e-12 && b[0].coincidence < 1e-12,
            "P(1)=" + fmt("%.15f", a[0].coincidence) + " P(0)=" + fmt("%.15f", a[1].coincidence) +
                " balanced P(1)=" + fmt("%.2e", b[0].coincidence)};
}

Outcome linearity() {
    std::mt19937_64 rng(314159);
    double err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Variant v = kVariants[i % 4];
        const CircuitNetlist n = builtin(v);
        const double phi = std::uniform_real_distribution<double>(0.0, pi)(rng);
        const auto x = random_two_qubit(rng);
        const auto y = random_two_qubit(rng);
        const Complex alpha = gaussian(rng), beta = gaussian(rng);
        TwoQubitAmplitudes mix;
        double norm = 0.0;
        for (int k = 0; k < 4; ++k) {
            mix[k] = alpha * x[k] + beta * y[k];
            norm += std::norm(mix[k]);
        }
        const double s = std::sqrt(norm);
        for (auto& m : mix) m /= s;
        const auto bx = run(n, prepare_inputs(n, x, phi));
        const auto by = run(n, prepare_inputs(n, y, phi));
        const auto bm = run(n, prepare_inputs(n, mix, phi));
        for (std::size_t b = 0; b < bm.size(); ++b)
            for (int k = 0; k < 4; ++k)
                err = std::max(err, std::abs(bm[b].amplitudes[k] -
                                             (alpha * bx[b].amplitudes[k] + beta * by[b].amplitudes[k]) / s));
    }
    return {err < 1e-12, "50 superposition inputs; max err " + fmt("%.2e", err)};
}

Outcome feedforward_equality() {
    bool equal = true;
    for (auto v : {Variant::FeedForward, Variant::Full})
        for (double phi : phi_grid()) {
            const auto r = conditional_gate(builtin(v), phi);
            for (const auto& a : r.branches)
                for (const auto& b : r.branches)
                    if (a.outcome == "D" && b.outcome == "A" && a.port == b.port)
                        equal = equal && equal_up_to_global_phase(a.op, b.op, kBranchTolerance);
        }
    RunOptions raw;
    raw.apply_feedforward = false;
    const auto r = conditional_gate(builtin(Variant::FeedForward), 0.0, raw);
    double uncorrected = -1.0;
    bool differs = false;
    for (const auto& b : r.branches)
        if (b.outcome == "A") {
            uncorrected = b.fidelity;
            differs = !equal_up_to_global_phase(b.op, r.branches.front().op, kBranchTolerance);
        }
    return {equal && differs && std::abs(uncorrected - 0.25) < 1e-12,
            std::string("D vs corrected A ") + (equal ? "equal" : "differ") + "; uncorrected A fidelity at phi=0 " +
                fmt("%.15f", uncorrected)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome parser_robustness() {
    bool round_trip = true;
    for (auto v : {Variant::Basic, Variant::Full}) {
        const CircuitNetlist n = builtin(v);
        round_trip = round_trip && parse(render(n)) == n;
    }
    int total = 0, located = 0;
    for (const auto& entry : std::filesystem::directory_iterator(fixtures / "mutations")) {
        if (entry.path().extension() != ".lopc") continue;
        ++total;
        bool ok = false;
        try {
            (void)parse(slurp(entry.path()));
        } catch (const ParseError& e) {
            ok = e.line() >= 1 && e.column() >= 1;
        }
        std::ostringstream out, err;
        const int code = cli::run({"verify", "--netlist", entry.path().string()}, out, err);
        const std::string prefix = entry.path().string() + ":";
        ok = ok && code == cli::kUsageError && err.str().rfind(prefix, 0) == 0;
        if (ok) ++located;
        else std::printf("    not located: %s\n", entry.path().filename().string().c_str());
    }
    return {round_trip && total >= 20 && located == total,
            std::string("round trip ") + (round_trip ? "ok" : "broken") + "; " + std::to_string(located) + "/" +
                std::to_string(total) + " corruptions located with exit 2"};
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "lopc_acceptance_sweep_a.csv";
    const auto b = dir / "lopc_acceptance_sweep_b.csv";
    std::ostringstream out, err;
    const std::vector<std::string> base = {"sweep", "--variant", "full", "--steps", "21", "--out"};
    auto with = [&](const std::filesystem::path& p) {
        auto args = base;
        args.push_back(p.string());
        return cli::run(args, out, err);
    };
    const int ca = with(a);
    const int cb = with(b);
    const std::string ta = slurp(a), tb = slurp(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    return {ca == 0 && cb == 0 && !ta.empty() && ta == tb, std::to_string(ta.size()) + " bytes, identical=" +
                                                                (ta == tb ? std::string("yes") : std::string("no"))};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"gate correctness (basic, 21 phases)", gate_correctness},
        {"success probabilities", success_probabilities},
        {"state independence", state_independence},
        {"oracle equivalence", oracle_equivalence},
        {"HOM dip", hom_physics},
        {"linearity", linearity},
        {"feed-forward branch equality", feedforward_equality},
        {"parser robustness", parser_robustness},
        {"sweep determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
