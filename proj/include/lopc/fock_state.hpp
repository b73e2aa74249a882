#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lopc/linear_element.hpp"
#include "lopc/mode.hpp"

namespace lopc {

using ModeIndex = std::size_t;

/// Sparse occupation vector: sorted (mode index, count) pairs with count > 0.
class Occupation {
public:
    using Entry = std::pair<ModeIndex, unsigned>;

    Occupation() = default;
    explicit Occupation(std::vector<Entry> entries);

    unsigned count(ModeIndex mode) const noexcept;
    unsigned total() const noexcept;
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    void add(ModeIndex mode, unsigned n = 1);
    void remove(ModeIndex mode, unsigned n = 1);

    auto operator<=>(const Occupation&) const = default;

private:
    std::vector<Entry> entries_;
};

/// Few-photon bosonic state over the modes of a registry.
///
/// Basis ket occupation n in a mode stands for (a^dagger)^n / sqrt(n!) on
/// vacuum. States may be subnormalized; the squared norm is the probability
/// mass that survived losses and post-selection.
class FockState {
public:
    using Amplitudes = std::map<Occupation, Complex>;

    FockState(std::shared_ptr<const ModeRegistry> registry, unsigned photon_number);

    static FockState vacuum(std::shared_ptr<const ModeRegistry> registry);

    const ModeRegistry& registry() const noexcept { return *registry_; }
    const std::shared_ptr<const ModeRegistry>& registry_ptr() const noexcept { return registry_; }
    unsigned photon_number() const noexcept { return photons_; }
    const Amplitudes& amplitudes() const noexcept { return amps_; }

    Complex amplitude(const Occupation& occ) const;
    double norm_squared() const;

    /// Accumulates into the amplitude of occ; throws if its photon count differs.
    void add_term(const Occupation& occ, Complex amplitude);
    /// Drops terms with |amplitude| below threshold.
    void prune(double threshold);

    FockState& operator+=(const FockState& other);
    FockState& operator*=(Complex factor);
    friend FockState operator+(FockState a, const FockState& b) { return a += b; }
    friend FockState operator*(Complex factor, FockState s) { return s *= factor; }

private:
    std::shared_ptr<const ModeRegistry> registry_;
    unsigned photons_;
    Amplitudes amps_;
};

/// One photon's superposition over modes.
using PhotonAmplitudes = std::vector<std::pair<ModeLabel, Complex>>;

/// Path -> required photon count (summed over polarization and internal index).
using PathPattern = std::map<std::string, unsigned, std::less<>>;

struct EvolutionOptions {
    /// Terms with smaller magnitude are discarded after each element.
    double prune_threshold = 1e-15;
};

/// Applies each photon's creation operator to vacuum and renormalizes, so
/// two photons sharing a mode give (a^dagger)^2 / sqrt(2!).
FockState make_photon_state(std::shared_ptr<const ModeRegistry> registry,
                            std::span<const PhotonAmplitudes> photons);

FockState apply_element(const FockState& state, const LinearElement& element,
                        const EvolutionOptions& options = {});

struct Selection {
    FockState state;
    double probability;
};

Selection post_select(const FockState& state, const PathPattern& pattern);

/// Removes the single photon on `path`, contracting its polarization against
/// conj(ket). `probability` is the squared norm of the remaining state.
Selection project_detector(const FockState& state, std::string_view path, const PolarizationKet& ket);

/// Amplitudes of |tc> indexed 2*t + c, with H = 0 and V = 1.
using TwoQubitAmplitudes = std::array<Complex, 4>;

TwoQubitAmplitudes two_qubit_amplitudes(const FockState& state, std::string_view target_path,
                                        std::string_view control_path);

} // namespace lopc
