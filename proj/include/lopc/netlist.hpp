#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lopc/elements.hpp"
#include "lopc/fock_state.hpp"
#include "lopc/mode.hpp"

namespace lopc {

struct MeasurementOutcome {
    std::string label;
    PolarizationKet ket{};
    /// Name of a stage that only runs in this outcome's branch.
    std::optional<std::string> correction;

    bool operator==(const MeasurementOutcome&) const = default;
};

struct MeasurementRule {
    std::string path;
    std::vector<MeasurementOutcome> outcomes;

    bool operator==(const MeasurementRule&) const = default;
};

struct PortAssignment {
    std::string target_in;
    std::string control_in;
    std::string program_in;
    /// First entry is the designated target output; further entries are
    /// alternate accepted outputs.
    std::vector<std::string> target_out;
    std::string control_out;

    bool operator==(const PortAssignment&) const = default;
};

/// A gate circuit: declared paths, ordered stages, one detector rule, the
/// coincidence pattern and the qubit port assignment.
struct CircuitNetlist {
    std::vector<std::string> paths;
    std::vector<ElementSpec> stages;
    MeasurementRule measurement;
    /// Declared order is kept so that render() is stable.
    std::vector<std::pair<std::string, unsigned>> postselect;
    PortAssignment ports;

    bool operator==(const CircuitNetlist&) const = default;

    /// H and V modes (internal index 0) for every declared path.
    std::shared_ptr<const ModeRegistry> registry() const;
    /// Coincidence pattern accepting the given target output port.
    PathPattern pattern_for(std::string_view target_port) const;
    const ElementSpec* find_stage(std::string_view name) const;
    /// Photons the circuit consumes: one per input port.
    static constexpr unsigned kPhotonBudget = 3;
};

struct Diagnostic {
    /// What the diagnostic is about: "element <name>", "measure", "postselect", "ports" or "path <name>".
    std::string subject;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::vector<Diagnostic> validate(const CircuitNetlist& netlist);

/// Parses and validates a netlist; throws ParseError with the offending line and column.
CircuitNetlist parse(std::string_view text);

/// Canonical text form; parse(render(n)) == n.
std::string render(const CircuitNetlist& netlist);

enum class Variant { Basic, FeedForward, DualOutput, Full };

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view s);

/// Basic setup: PBS1, F1, HWP1, PPBS, F2, HWP2, PBS3, HWP3, PBS2; detector projects onto D.
CircuitNetlist builtin_basic();

/// Basic setup plus the A-outcome feed-forward and/or the second target output.
CircuitNetlist builtin_optimized(bool feedforward, bool dual_output);

CircuitNetlist builtin(Variant v);

} // namespace lopc
