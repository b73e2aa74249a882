#include <cmath>

#include "lopc/netlist.hpp"

namespace lopc {

namespace {

ElementSpec one_path(std::string name, const std::string& path, ElementParams params) {
    return {std::move(name), {path}, {path}, std::move(params)};
}

ElementSpec two_port(std::string name, std::vector<std::string> in, std::vector<std::string> out, ElementParams params) {
    return {std::move(name), std::move(in), std::move(out), std::move(params)};
}

} // namespace

CircuitNetlist builtin_optimized(bool feedforward, bool dual_output) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    CircuitNetlist n;
    n.paths = {"t_in", "t_vac", "t_up", "t_low", "c_in", "C_OUT", "p", "d", "T_OUT", "T_OUT2"};

    auto& s = n.stages;
    s.push_back(two_port("PBS1", {"t_in", "t_vac"}, {"t_up", "t_low"}, PbsParams{}));
    const double t_f1 = dual_output ? inv_sqrt2 : 0.5;
    s.push_back(one_path("F1", "t_up", FilterParams{t_f1, t_f1}));
    if (dual_output) s.push_back(one_path("HWP4", "t_up", HwpParams{22.5}));
    s.push_back(one_path("HWP1", "t_low", JonesParams{target_splitting_matrix()}));
    s.push_back(two_port("PPBS", {"t_low", "c_in"}, {"t_low", "C_OUT"}, PpbsParams{inv_sqrt3}));
    s.push_back(one_path("F2", "C_OUT", FilterParams{inv_sqrt3, 1.0}));
    s.push_back(one_path("HWP2", "t_low", HwpParams{22.5}));
    s.push_back(two_port("PBS3", {"t_low", "p"}, {"t_low", "d"}, PbsParams{}));
    if (feedforward) s.push_back(one_path("PLM", "t_low", PhaseFlipParams{}));
    s.push_back(one_path("HWP3", "t_low", HwpParams{22.5}));
    s.push_back(two_port("PBS2", {"t_up", "t_low"}, {"T_OUT", "T_OUT2"}, PbsParams{}));
    if (dual_output) s.push_back(one_path("HWP5", "T_OUT2", HwpParams{45.0}));

    n.measurement.path = "d";
    n.measurement.outcomes.push_back({"D", {inv_sqrt2, inv_sqrt2}, std::nullopt});
    if (feedforward) n.measurement.outcomes.push_back({"A", {inv_sqrt2, -inv_sqrt2}, std::string("PLM")});

    n.postselect = {{"T_OUT", 1}, {"C_OUT", 1}, {"d", 1}};
    n.ports.target_in = "t_in";
    n.ports.control_in = "c_in";
    n.ports.program_in = "p";
    n.ports.target_out = {"T_OUT"};
    if (dual_output) n.ports.target_out.push_back("T_OUT2");
    n.ports.control_out = "C_OUT";
    return n;
}

CircuitNetlist builtin_basic() { return builtin_optimized(false, false); }

CircuitNetlist builtin(Variant v) {
    switch (v) {
    case Variant::Basic: return builtin_basic();
    case Variant::FeedForward: return builtin_optimized(true, false);
    case Variant::DualOutput: return builtin_optimized(false, true);
    case Variant::Full: return builtin_optimized(true, true);
    }
    return builtin_basic();
}

} // namespace lopc
