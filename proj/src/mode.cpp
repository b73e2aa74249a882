#include "lopc/mode.hpp"

#include <algorithm>

#include "lopc/error.hpp"

namespace lopc {

std::string to_string(Polarization pol) { return pol == Polarization::H ? "H" : "V"; }

std::string to_string(const ModeLabel& label) {
    std::string s = label.path + "/" + to_string(label.pol);
    if (label.internal != 0) s += "#" + std::to_string(label.internal);
    return s;
}

ModeRegistry::ModeRegistry(std::vector<ModeLabel> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second)
            throw Error("duplicate mode label " + to_string(labels_[i]));
    }
}

ModeRegistry ModeRegistry::for_paths(std::span<const std::string> paths, unsigned internal_count) {
    std::vector<ModeLabel> labels;
    labels.reserve(paths.size() * 2 * internal_count);
    for (unsigned k = 0; k < internal_count; ++k)
        for (const auto& p : paths)
            for (auto pol : {Polarization::H, Polarization::V}) labels.push_back({p, pol, k});
    return ModeRegistry(std::move(labels));
}

std::optional<std::size_t> ModeRegistry::find(const ModeLabel& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ModeRegistry::index(const ModeLabel& label) const {
    if (auto i = find(label)) return *i;
    throw Error("unknown mode " + to_string(label));
}

bool ModeRegistry::has_path(std::string_view path) const {
    return std::any_of(labels_.begin(), labels_.end(), [&](const ModeLabel& l) { return l.path == path; });
}

std::vector<std::string> ModeRegistry::paths() const {
    std::vector<std::string> out;
    for (const auto& l : labels_)
        if (std::find(out.begin(), out.end(), l.path) == out.end()) out.push_back(l.path);
    return out;
}

} // namespace lopc
