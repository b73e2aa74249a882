#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lopc/linear_element.hpp"
#include "lopc/mode.hpp"

namespace lopc {

/// Row-major 2x2 Jones matrix acting on (H, V).
using JonesMatrix = std::array<Complex, 4>;

struct PbsParams {
    bool operator==(const PbsParams&) const = default;
};
struct PpbsParams {
    double t_v = 1.0;
    bool operator==(const PpbsParams&) const = default;
};
struct HwpParams {
    double angle_deg = 0.0;
    bool operator==(const HwpParams&) const = default;
};
struct JonesParams {
    JonesMatrix m{};
    bool operator==(const JonesParams&) const = default;
};
struct FilterParams {
    double t_h = 1.0;
    double t_v = 1.0;
    bool operator==(const FilterParams&) const = default;
};
struct PhaseFlipParams {
    bool operator==(const PhaseFlipParams&) const = default;
};

using ElementParams = std::variant<PbsParams, PpbsParams, HwpParams, JonesParams, FilterParams, PhaseFlipParams>;

enum class ElementKind { Pbs, Ppbs, Hwp, Jones, Filter, PhaseFlip };

/// Declarative description of one optical component and its wiring.
///
/// Two-port elements (PBS, PPBS) have two input and two output paths;
/// single-path elements list the same path once in both.
struct ElementSpec {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    ElementParams params;

    ElementKind kind() const noexcept { return static_cast<ElementKind>(params.index()); }
    bool operator==(const ElementSpec&) const = default;
};

std::string_view keyword(ElementKind kind);

/// Polarizing beam splitter: H goes straight (in_a -> out_t, in_b -> out_r),
/// V is swapped (in_a -> out_r, in_b -> out_t), all amplitudes +1.
LinearElement pbs(std::string_view in_a, std::string_view in_b, std::string_view out_t, std::string_view out_r,
                  std::string name = "PBS");

/// Partially polarizing beam splitter with t_H = 1. V-block [[t, -r], [r, t]],
/// r = sqrt(1 - t^2), so the two-photon coincidence amplitude is t^2 - r^2.
LinearElement ppbs(std::string_view in_a, std::string_view in_b, std::string_view out_a, std::string_view out_b,
                   double t_v, std::string name = "PPBS");

/// Half-wave plate at theta degrees from horizontal:
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
LinearElement hwp(std::string_view path, double theta_deg, std::string name = "HWP");

LinearElement jones(std::string_view path, const JonesMatrix& m, std::string name = "JONES");

/// diag(t_h, t_v) amplitude filter.
LinearElement filter(std::string_view path, double t_h, double t_v, std::string name = "F");

/// diag(1, -1): the |1> -> -|1> feed-forward correction.
LinearElement phase_flip(std::string_view path, std::string name = "PLM");

/// Matrix for the half-wave plate, exposed for tests and the Jones builder.
JonesMatrix hwp_matrix(double theta_deg);

/// The HWP1 matrix mapping |1> to (1/2)|0> + (sqrt3/2)|1>.
JonesMatrix target_splitting_matrix();

LinearElement build_element(const ElementSpec& spec);

} // namespace lopc
