#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lopc {

using Complex = std::complex<double>;

/// Polarization basis. H encodes logical 0, V encodes logical 1.
enum class Polarization : std::uint8_t { H = 0, V = 1 };

/// Amplitudes on (H, V).
using PolarizationKet = std::array<Complex, 2>;

struct ModeLabel {
    std::string path;
    Polarization pol = Polarization::H;
    unsigned internal = 0; ///< wavepacket index; only distinguishability modelling uses it

    auto operator<=>(const ModeLabel&) const = default;
};

std::string to_string(Polarization pol);
/// "path/H", with "#k" appended when the internal index is non-zero.
std::string to_string(const ModeLabel& label);

/// Ordered set of mode labels with stable dense indices.
class ModeRegistry {
public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeLabel> labels);

    /// H and V modes for every path, for internal indices 0..internal_count-1.
    static ModeRegistry for_paths(std::span<const std::string> paths, unsigned internal_count = 1);

    std::size_t size() const noexcept { return labels_.size(); }
    const ModeLabel& label(std::size_t index) const { return labels_.at(index); }
    const std::vector<ModeLabel>& labels() const noexcept { return labels_; }

    std::optional<std::size_t> find(const ModeLabel& label) const;
    /// Throws lopc::Error for an unknown label.
    std::size_t index(const ModeLabel& label) const;

    bool has_path(std::string_view path) const;
    /// Distinct paths in first-appearance order.
    std::vector<std::string> paths() const;

private:
    std::vector<ModeLabel> labels_;
    std::map<ModeLabel, std::size_t> index_;
};

} // namespace lopc
