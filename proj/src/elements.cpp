#include "lopc/elements.hpp"

#include <cmath>
#include <numbers>

#include "lopc/error.hpp"

namespace lopc {

namespace {

using P = Polarization;

ModeLabel mode(std::string_view path, Polarization pol) { return {std::string(path), pol, 0}; }

Eigen::MatrixXcd to_matrix(const JonesMatrix& m) {
    Eigen::MatrixXcd out(2, 2);
    out << m[0], m[1], m[2], m[3];
    return out;
}

void require_distinct_pair(std::string_view a, std::string_view b, const std::string& name, const char* what) {
    if (a == b) throw Error(name + ": duplicate " + std::string(what) + " path '" + std::string(a) + "'");
}

LinearElement single_path(std::string_view path, const JonesMatrix& m, std::string name) {
    return LinearElement(std::move(name), {mode(path, P::H), mode(path, P::V)}, to_matrix(m));
}

} // namespace

std::string_view keyword(ElementKind kind) {
    switch (kind) {
    case ElementKind::Pbs: return "pbs";
    case ElementKind::Ppbs: return "ppbs";
    case ElementKind::Hwp: return "hwp";
    case ElementKind::Jones: return "jones";
    case ElementKind::Filter: return "filter";
    case ElementKind::PhaseFlip: return "phaseflip";
    }
    return "?";
}

LinearElement pbs(std::string_view in_a, std::string_view in_b, std::string_view out_t, std::string_view out_r,
                  std::string name) {
    require_distinct_pair(in_a, in_b, name, "input");
    require_distinct_pair(out_t, out_r, name, "output");
    // Order: a/H, b/H, a/V, b/V -> t/H, r/H, t/V, r/V.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(3, 2) = 1.0;
    m(2, 3) = 1.0;
    return LinearElement(std::move(name),
                         {mode(in_a, P::H), mode(in_b, P::H), mode(in_a, P::V), mode(in_b, P::V)},
                         {mode(out_t, P::H), mode(out_r, P::H), mode(out_t, P::V), mode(out_r, P::V)}, m);
}

LinearElement ppbs(std::string_view in_a, std::string_view in_b, std::string_view out_a, std::string_view out_b,
                   double t_v, std::string name) {
    if (!(t_v > 0.0 && t_v < 1.0) && t_v != 1.0)
        throw Error(name + ": PPBS transmissivity t_V=" + std::to_string(t_v) + " out of range (0, 1]");
    require_distinct_pair(in_a, in_b, name, "input");
    require_distinct_pair(out_a, out_b, name, "output");
    const double r_v = std::sqrt(1.0 - t_v * t_v);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = t_v;
    m(2, 3) = -r_v;
    m(3, 2) = r_v;
    m(3, 3) = t_v;
    return LinearElement(std::move(name),
                         {mode(in_a, P::H), mode(in_b, P::H), mode(in_a, P::V), mode(in_b, P::V)},
                         {mode(out_a, P::H), mode(out_b, P::H), mode(out_a, P::V), mode(out_b, P::V)}, m);
}

JonesMatrix hwp_matrix(double theta_deg) {
    const double two_theta = 2.0 * theta_deg * std::numbers::pi / 180.0;
    const double c = std::cos(two_theta);
    const double s = std::sin(two_theta);
    return {c, s, s, -c};
}

JonesMatrix target_splitting_matrix() {
    const double half_sqrt3 = std::sqrt(3.0) / 2.0;
    return {-half_sqrt3, 0.5, 0.5, half_sqrt3};
}

LinearElement hwp(std::string_view path, double theta_deg, std::string name) {
    return single_path(path, hwp_matrix(theta_deg), std::move(name));
}

LinearElement jones(std::string_view path, const JonesMatrix& m, std::string name) {
    return single_path(path, m, std::move(name));
}

LinearElement filter(std::string_view path, double t_h, double t_v, std::string name) {
    for (double t : {t_h, t_v}) {
        if (!(t >= 0.0 && t <= 1.0))
            throw Error(name + ": subunitarity violated (filter transmissivity " + std::to_string(t) +
                        " outside [0, 1])");
    }
    return single_path(path, {t_h, 0.0, 0.0, t_v}, std::move(name));
}

LinearElement phase_flip(std::string_view path, std::string name) {
    return single_path(path, {1.0, 0.0, 0.0, -1.0}, std::move(name));
}

LinearElement build_element(const ElementSpec& spec) {
    auto arity = [&](std::size_t n) {
        if (spec.inputs.size() != n || spec.outputs.size() != n)
            throw Error(spec.name + ": expected " + std::to_string(n) + " input and output path(s)");
    };
    switch (spec.kind()) {
    case ElementKind::Pbs:
        arity(2);
        return pbs(spec.inputs[0], spec.inputs[1], spec.outputs[0], spec.outputs[1], spec.name);
    case ElementKind::Ppbs:
        arity(2);
        return ppbs(spec.inputs[0], spec.inputs[1], spec.outputs[0], spec.outputs[1],
                    std::get<PpbsParams>(spec.params).t_v, spec.name);
    case ElementKind::Hwp:
        arity(1);
        return hwp(spec.inputs[0], std::get<HwpParams>(spec.params).angle_deg, spec.name);
    case ElementKind::Jones:
        arity(1);
        return jones(spec.inputs[0], std::get<JonesParams>(spec.params).m, spec.name);
    case ElementKind::Filter: {
        arity(1);
        const auto& f = std::get<FilterParams>(spec.params);
        return filter(spec.inputs[0], f.t_h, f.t_v, spec.name);
    }
    case ElementKind::PhaseFlip:
        arity(1);
        return phase_flip(spec.inputs[0], spec.name);
    }
    throw Error(spec.name + ": unknown element kind");
}

} // namespace lopc
