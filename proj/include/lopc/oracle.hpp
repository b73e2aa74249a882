#pragma once

#include <string>
#include <vector>

#include "lopc/fock_state.hpp"
#include "lopc/linear_element.hpp"
#include "lopc/netlist.hpp"

namespace lopc::oracle {

struct Step {
    std::string label;
    Complex factor;
};

/// One photon history from a basis input to a heralded output ket.
struct Path {
    int target_bit = 0;
    int control_bit = 0;
    std::vector<Step> steps;
    std::size_t ket_index = 0;
    Complex amplitude; ///< product of the step factors
};

struct BranchResult {
    std::string outcome;
    std::string port;
    /// Index of the dominant output ket and its amplitude.
    std::size_t ket_index = 0;
    Complex amplitude;
    /// Summed path amplitudes per output ket |tc>.
    TwoQubitAmplitudes amplitudes{};
    std::vector<Path> paths;

    std::string label() const { return outcome + ":" + port; }
};

/// Hand-derived amplitudes for basis input |t c> with the program photon at
/// phase phi, one entry per accepted branch of the variant. Uses scalar
/// factors only: filter and splitter transmissions, the Hadamard signs, the
/// two-photon t^2 - r^2 interference, program amplitudes, detector overlaps,
/// the feed-forward sign and the output swap.
std::vector<BranchResult> path_amplitude(int target_bit, int control_bit, double phi, Variant variant);

struct Gate {
    /// (branch label, diagonal operator) per branch.
    std::vector<std::pair<std::string, GateMatrix>> branches;
    double total_probability = 0.0;
};

Gate oracle_conditional_gate(double phi, Variant variant);

} // namespace lopc::oracle
