#include <cmath>

#include "lopc/elements.hpp"
#include "lopc/error.hpp"
#include "lopc/gates.hpp"

namespace lopc {

std::vector<HomRow> hom_scan(double t_v, std::span<const double> overlaps) {
    if (!(t_v > 0.0 && t_v < 1.0)) throw Error("HOM scan needs 0 < t_V < 1, got " + std::to_string(t_v));
    if (overlaps.empty()) throw Error("overlap grid is empty");

    const std::vector<std::string> paths = {"a", "b"};
    const auto registry = std::make_shared<const ModeRegistry>(ModeRegistry::for_paths(paths, 2));
    const LinearElement splitter = ppbs("a", "b", "a", "b", t_v);
    const PathPattern coincidence = {{"a", 1}, {"b", 1}};

    std::vector<HomRow> rows;
    rows.reserve(overlaps.size());
    for (double v : overlaps) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error("overlap " + std::to_string(v) + " outside [0, 1]");
        const std::vector<PhotonAmplitudes> photons = {
            {{{"a", Polarization::V, 0}, 1.0}},
            {{{"b", Polarization::V, 0}, std::sqrt(v)}, {{"b", Polarization::V, 1}, std::sqrt(1.0 - v)}},
        };
        const FockState out = apply_element(make_photon_state(registry, photons), splitter);
        rows.push_back({v, post_select(out, coincidence).probability});
    }
    return rows;
}

} // namespace lopc
