#include "lopc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "lopc/error.hpp"

namespace lopc {

namespace {

constexpr double kKetTolerance = 1e-12;

void require_normalized(const PolarizationKet& ket, const char* what) {
    const double n = std::norm(ket[0]) + std::norm(ket[1]);
    if (std::abs(n - 1.0) > kKetTolerance) throw Error(std::string(what) + " ket is not normalized");
}

PhotonAmplitudes photon_on(const std::string& path, const PolarizationKet& ket) {
    return {{{path, Polarization::H, 0}, ket[0]}, {{path, Polarization::V, 0}, ket[1]}};
}

double raw_fidelity(const GateMatrix& g, double phi) {
    const double gg = (g.adjoint() * g).trace().real();
    if (gg <= 0.0) return 0.0;
    const Complex overlap = (g.adjoint() * ideal_cphase(phi)).trace();
    return std::norm(overlap) / (4.0 * gg);
}

} // namespace

PolarizationKet program_ket(double phi) {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex{s, 0.0}, -std::polar(s, phi)};
}

FockState prepare_inputs(const CircuitNetlist& netlist, const PolarizationKet& target, const PolarizationKet& control,
                         double phi) {
    require_normalized(target, "target");
    require_normalized(control, "control");
    const std::vector<PhotonAmplitudes> photons = {photon_on(netlist.ports.target_in, target),
                                                   photon_on(netlist.ports.control_in, control),
                                                   photon_on(netlist.ports.program_in, program_ket(phi))};
    return make_photon_state(netlist.registry(), photons);
}

FockState prepare_inputs(const CircuitNetlist& netlist, const TwoQubitAmplitudes& target_control, double phi) {
    double n = 0.0;
    for (const auto& a : target_control) n += std::norm(a);
    if (std::abs(n - 1.0) > kKetTolerance) throw Error("two-qubit input is not normalized");

    const auto registry = netlist.registry();
    FockState total(registry, CircuitNetlist::kPhotonBudget);
    for (std::size_t k = 0; k < 4; ++k) {
        if (target_control[k] == Complex{}) continue;
        PolarizationKet t{}, c{};
        t[k >> 1] = 1.0;
        c[k & 1] = 1.0;
        const std::vector<PhotonAmplitudes> photons = {photon_on(netlist.ports.target_in, t),
                                                       photon_on(netlist.ports.control_in, c),
                                                       photon_on(netlist.ports.program_in, program_ket(phi))};
        total += target_control[k] * make_photon_state(registry, photons);
    }
    return total;
}

std::vector<Branch> run(const CircuitNetlist& netlist, const FockState& input, const RunOptions& options) {
    unsigned budget = 0;
    for (const auto& [path, count] : netlist.postselect) budget += count;
    if (input.photon_number() != budget)
        throw Error("input carries " + std::to_string(input.photon_number()) + " photons, post-selection expects " +
                    std::to_string(budget));

    std::vector<LinearElement> elements;
    elements.reserve(netlist.stages.size());
    for (const auto& s : netlist.stages) elements.push_back(build_element(s));

    std::set<std::string> corrections;
    for (const auto& o : netlist.measurement.outcomes)
        if (o.correction) corrections.insert(*o.correction);

    std::vector<Branch> branches;
    for (const auto& outcome : netlist.measurement.outcomes) {
        FockState state = input;
        for (const auto& element : elements) {
            if (corrections.contains(element.name()) &&
                (!options.apply_feedforward || outcome.correction != element.name()))
                continue;
            state = apply_element(state, element, options.evolution);
        }
        for (const auto& port : netlist.ports.target_out) {
            const Selection kept = post_select(state, netlist.pattern_for(port));
            const Selection detected = project_detector(kept.state, netlist.measurement.path, outcome.ket);
            Branch b;
            b.outcome = outcome.label;
            b.port = port;
            b.amplitudes = two_qubit_amplitudes(detected.state, port, netlist.ports.control_out);
            b.probability = detected.probability;
            branches.push_back(std::move(b));
        }
    }
    return branches;
}

GateMatrix ideal_cphase(double phi) {
    GateMatrix u = GateMatrix::Identity();
    u(3, 3) = std::polar(1.0, phi);
    return u;
}

double fidelity(const GateMatrix& g, double phi) {
    if ((g.adjoint() * g).trace().real() <= 0.0) throw Error("fidelity of the zero operator is undefined");
    return raw_fidelity(g, phi);
}

bool equal_up_to_global_phase(const GateMatrix& a, const GateMatrix& b, double tol) {
    const Complex inner = (b.adjoint() * a).trace();
    if (std::abs(inner) == 0.0) return a.cwiseAbs().maxCoeff() <= tol && b.cwiseAbs().maxCoeff() <= tol;
    const Complex phase = inner / std::abs(inner);
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

ConditionalGateReport conditional_gate(const CircuitNetlist& netlist, double phi, const RunOptions& options) {
    ConditionalGateReport report;
    report.phi = phi;
    for (std::size_t col = 0; col < 4; ++col) {
        PolarizationKet t{}, c{};
        t[col >> 1] = 1.0;
        c[col & 1] = 1.0;
        const auto branches = run(netlist, prepare_inputs(netlist, t, c, phi), options);
        if (col == 0) {
            for (const auto& b : branches) {
                report.branches.push_back({b.outcome, b.port, GateMatrix::Zero(), b.probability, 0.0});
                report.p_success += b.probability;
            }
        }
        for (std::size_t i = 0; i < branches.size(); ++i)
            for (std::size_t row = 0; row < 4; ++row)
                report.branches[i].op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                    branches[i].amplitudes[row];
    }

    report.fidelity = report.branches.empty() ? 0.0 : 1.0;
    for (auto& b : report.branches) {
        b.fidelity = raw_fidelity(b.op, phi);
        report.fidelity = std::min(report.fidelity, b.fidelity);
        for (Eigen::Index r = 0; r < 4; ++r)
            for (Eigen::Index c = 0; c < 4; ++c)
                if (r != c) report.max_off_diagonal = std::max(report.max_off_diagonal, std::abs(b.op(r, c)));
    }
    for (std::size_t i = 0; i < report.branches.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const auto& a = report.branches[i];
            const auto& b = report.branches[j];
            const bool same = equal_up_to_global_phase(a.op, b.op, kBranchTolerance);
            if (!same) report.branches_consistent = false;
            if (!same && a.port == b.port) report.ports_consistent = false;
        }
    }
    if (!report.branches.empty() && report.branches.front().probability > 0.0)
        report.combined =
            report.branches.front().op * std::sqrt(report.p_success / report.branches.front().probability);
    return report;
}

double success_probability(const CircuitNetlist& netlist, const PolarizationKet& target, const PolarizationKet& control,
                           double phi) {
    double p = 0.0;
    for (const auto& b : run(netlist, prepare_inputs(netlist, target, control, phi))) p += b.probability;
    return p;
}

double success_probability(const CircuitNetlist& netlist, const TwoQubitAmplitudes& target_control, double phi) {
    double p = 0.0;
    for (const auto& b : run(netlist, prepare_inputs(netlist, target_control, phi))) p += b.probability;
    return p;
}

std::vector<SweepRow> sweep_phi(const CircuitNetlist& netlist, std::span<const double> phi_grid) {
    if (phi_grid.empty()) throw Error("phi grid is empty");
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        jobs.push_back(std::async(std::launch::async, [&netlist, phi] {
            const auto report = conditional_gate(netlist, phi);
            SweepRow row{phi, report.p_success, report.fidelity, {}};
            for (const auto& b : report.branches) row.branches.emplace_back(b.label(), b.probability);
            std::sort(row.branches.begin(), row.branches.end());
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

std::vector<double> uniform_grid(double from, double to, std::size_t steps) {
    if (steps == 0) throw Error("grid needs at least one point");
    if (steps == 1) return {from};
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; ++i)
        grid[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    grid.back() = to;
    return grid;
}

} // namespace lopc
