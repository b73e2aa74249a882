#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lopc/fock_state.hpp"
#include "lopc/linear_element.hpp"
#include "lopc/netlist.hpp"

namespace lopc {

/// One heralded result: a detector outcome together with the target output port it left by.
struct Branch {
    std::string outcome;
    std::string port;
    TwoQubitAmplitudes amplitudes{};
    double probability = 0.0;

    /// "<outcome>:<port>", e.g. "A:T_OUT2".
    std::string label() const { return outcome + ":" + port; }
};

struct RunOptions {
    /// When false, correction stages are skipped in every branch (the uncorrected gate).
    bool apply_feedforward = true;
    EvolutionOptions evolution{};
};

/// Program photon (|H> - e^{i phi}|V>) / sqrt2.
PolarizationKet program_ket(double phi);

/// Product input: target and control polarization kets plus the program photon.
FockState prepare_inputs(const CircuitNetlist& netlist, const PolarizationKet& target, const PolarizationKet& control,
                         double phi);
/// Arbitrary (possibly entangled) target-control input, amplitudes indexed 2*t + c.
FockState prepare_inputs(const CircuitNetlist& netlist, const TwoQubitAmplitudes& target_control, double phi);

/// Evolves the input through every stage and splits it into one branch per
/// (detector outcome, accepted target port), in declared order.
std::vector<Branch> run(const CircuitNetlist& netlist, const FockState& input, const RunOptions& options = {});

struct BranchOperator {
    std::string outcome;
    std::string port;
    GateMatrix op = GateMatrix::Zero();
    double probability = 0.0; ///< for the |00> input
    double fidelity = 0.0;

    std::string label() const { return outcome + ":" + port; }
};

struct ConditionalGateReport {
    double phi = 0.0;
    std::vector<BranchOperator> branches;
    /// First branch's operator rescaled to carry the total success probability.
    GateMatrix combined = GateMatrix::Zero();
    double p_success = 0.0;
    /// Worst branch fidelity to CPhase(phi).
    double fidelity = 0.0;
    double max_off_diagonal = 0.0;
    /// Branches sharing a target port agree up to global phase.
    bool ports_consistent = true;
    /// All branches agree up to global phase.
    bool branches_consistent = true;
};

inline constexpr double kBranchTolerance = 1e-10;

ConditionalGateReport conditional_gate(const CircuitNetlist& netlist, double phi, const RunOptions& options = {});

GateMatrix ideal_cphase(double phi);

/// |Tr(G^dagger U)|^2 / (4 Tr(G^dagger G)) with U = diag(1, 1, 1, e^{i phi}).
double fidelity(const GateMatrix& g, double phi);

bool equal_up_to_global_phase(const GateMatrix& a, const GateMatrix& b, double tol);

double success_probability(const CircuitNetlist& netlist, const PolarizationKet& target, const PolarizationKet& control,
                           double phi);
double success_probability(const CircuitNetlist& netlist, const TwoQubitAmplitudes& target_control, double phi);

struct SweepRow {
    double phi = 0.0;
    double p_success = 0.0;
    double fidelity = 0.0;
    /// (branch label, probability), sorted by label.
    std::vector<std::pair<std::string, double>> branches;
};

/// One row per grid point; rows are computed in parallel and returned in grid order.
std::vector<SweepRow> sweep_phi(const CircuitNetlist& netlist, std::span<const double> phi_grid);

/// `steps` evenly spaced points from `from` to `to` inclusive.
std::vector<double> uniform_grid(double from, double to, std::size_t steps);

struct HomRow {
    double overlap = 0.0;
    double coincidence = 0.0;
};

/// Two V photons into the two PPBS ports, the second with overlap v on the
/// first's wavepacket; returns the probability of one photon per output.
std::vector<HomRow> hom_scan(double t_v, std::span<const double> overlaps);

} // namespace lopc
