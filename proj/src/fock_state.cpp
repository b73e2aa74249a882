#include "lopc/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lopc/error.hpp"

namespace lopc {

namespace {

double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

constexpr double kNormTolerance = 1e-12;

} // namespace

// ---------------------------------------------------------------------------
// Occupation

Occupation::Occupation(std::vector<Entry> entries) {
    for (const auto& [mode, n] : entries) add(mode, n);
}

unsigned Occupation::count(ModeIndex mode) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const Entry& e, ModeIndex m) { return e.first < m; });
    return (it != entries_.end() && it->first == mode) ? it->second : 0;
}

unsigned Occupation::total() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0u,
                           [](unsigned acc, const Entry& e) { return acc + e.second; });
}

void Occupation::add(ModeIndex mode, unsigned n) {
    if (n == 0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const Entry& e, ModeIndex m) { return e.first < m; });
    if (it != entries_.end() && it->first == mode)
        it->second += n;
    else
        entries_.insert(it, {mode, n});
}

void Occupation::remove(ModeIndex mode, unsigned n) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const Entry& e, ModeIndex m) { return e.first < m; });
    if (it == entries_.end() || it->first != mode || it->second < n)
        throw Error("cannot remove " + std::to_string(n) + " photon(s) from mode " + std::to_string(mode));
    it->second -= n;
    if (it->second == 0) entries_.erase(it);
}

// ---------------------------------------------------------------------------
// FockState

FockState::FockState(std::shared_ptr<const ModeRegistry> registry, unsigned photon_number)
    : registry_(std::move(registry)), photons_(photon_number) {
    if (!registry_) throw Error("FockState requires a mode registry");
}

FockState FockState::vacuum(std::shared_ptr<const ModeRegistry> registry) {
    FockState s(std::move(registry), 0);
    s.amps_.emplace(Occupation{}, Complex{1.0, 0.0});
    return s;
}

Complex FockState::amplitude(const Occupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex{} : it->second;
}

double FockState::norm_squared() const {
    double sum = 0.0;
    for (const auto& [occ, a] : amps_) sum += std::norm(a);
    return sum;
}

void FockState::add_term(const Occupation& occ, Complex amplitude) {
    if (occ.total() != photons_)
        throw Error("occupation with " + std::to_string(occ.total()) + " photons added to a " +
                    std::to_string(photons_) + "-photon state");
    for (const auto& [mode, n] : occ.entries()) {
        if (mode >= registry_->size()) throw Error("occupation refers to mode index out of range");
    }
    amps_[occ] += amplitude;
}

void FockState::prune(double threshold) {
    std::erase_if(amps_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

FockState& FockState::operator+=(const FockState& other) {
    if (other.registry_ != registry_ && other.registry_->labels() != registry_->labels())
        throw Error("cannot add states over different mode registries");
    if (other.photons_ != photons_) throw Error("cannot add states with different photon numbers");
    for (const auto& [occ, a] : other.amps_) amps_[occ] += a;
    return *this;
}

FockState& FockState::operator*=(Complex factor) {
    for (auto& [occ, a] : amps_) a *= factor;
    return *this;
}

// ---------------------------------------------------------------------------
// Operations

FockState make_photon_state(std::shared_ptr<const ModeRegistry> registry, std::span<const PhotonAmplitudes> photons) {
    FockState state = FockState::vacuum(registry);
    for (const auto& photon : photons) {
        double weight = 0.0;
        for (const auto& [label, a] : photon) weight += std::norm(a);
        if (std::abs(weight - 1.0) > kNormTolerance)
            throw Error("single-photon amplitudes are not normalized (sum |a|^2 = " + std::to_string(weight) + ")");

        FockState next(registry, state.photon_number() + 1);
        for (const auto& [label, a] : photon) {
            const ModeIndex m = registry->index(label);
            for (const auto& [occ, amp] : state.amplitudes()) {
                Occupation raised = occ;
                raised.add(m);
                next.add_term(raised, amp * a * std::sqrt(static_cast<double>(occ.count(m) + 1)));
            }
        }
        state = std::move(next);
    }
    const double norm2 = state.norm_squared();
    if (norm2 <= 0.0) throw Error("photon amplitudes cancel to the zero state");
    state *= 1.0 / std::sqrt(norm2);
    state.prune(1e-15);
    return state;
}

FockState apply_element(const FockState& state, const LinearElement& element, const EvolutionOptions& options) {
    const ModeRegistry& reg = state.registry();
    const auto k = element.size();
    const Eigen::MatrixXcd& mat = element.matrix();

    // Registry mode -> element input position (or -1).
    std::vector<int> input_pos(reg.size(), -1);
    for (std::size_t i = 0; i < k; ++i) {
        const ModeLabel& in = element.inputs()[i];
        if (!reg.find(in)) throw Error(element.name() + ": input mode " + to_string(in) + " not in registry");
        for (ModeIndex m = 0; m < reg.size(); ++m) {
            const ModeLabel& l = reg.label(m);
            if (l.path == in.path && l.pol == in.pol) input_pos[m] = static_cast<int>(i);
        }
    }
    for (const auto& out : element.outputs())
        if (!reg.find(out)) throw Error(element.name() + ": output mode " + to_string(out) + " not in registry");

    auto output_mode = [&](std::size_t j, unsigned internal) {
        const ModeLabel& out = element.outputs()[j];
        return reg.index({out.path, out.pol, internal});
    };

    FockState result(state.registry_ptr(), state.photon_number());
    for (const auto& [occ, amp] : state.amplitudes()) {
        Occupation base;
        std::vector<std::pair<std::size_t, unsigned>> moved; // (input position, internal index) per photon
        double norm = 1.0;
        for (const auto& [mode, n] : occ.entries()) {
            if (input_pos[mode] < 0) {
                base.add(mode, n);
                continue;
            }
            norm *= factorial(n);
            for (unsigned p = 0; p < n; ++p)
                moved.emplace_back(static_cast<std::size_t>(input_pos[mode]), reg.label(mode).internal);
        }

        // Expand the product of substituted creation operators.
        std::map<Occupation, Complex> expansion{{Occupation{}, amp / std::sqrt(norm)}};
        for (const auto& [i, internal] : moved) {
            std::map<Occupation, Complex> next;
            for (const auto& [added, coeff] : expansion) {
                for (std::size_t j = 0; j < k; ++j) {
                    const Complex c = mat(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
                    if (c == Complex{}) continue;
                    Occupation grown = added;
                    grown.add(output_mode(j, internal));
                    next[grown] += coeff * c;
                }
            }
            expansion = std::move(next);
        }

        for (const auto& [added, coeff] : expansion) {
            Occupation final_occ = base;
            double factor = 1.0;
            for (const auto& [mode, m] : added.entries()) {
                const unsigned b = base.count(mode);
                factor *= std::sqrt(factorial(b + m) / factorial(b));
                final_occ.add(mode, m);
            }
            result.add_term(final_occ, coeff * factor);
        }
    }
    result.prune(options.prune_threshold);
    return result;
}

Selection post_select(const FockState& state, const PathPattern& pattern) {
    const ModeRegistry& reg = state.registry();
    unsigned total = 0;
    for (const auto& [path, n] : pattern) {
        if (!reg.has_path(path)) throw Error("post-selection pattern references unknown path '" + path + "'");
        total += n;
    }
    if (total != state.photon_number())
        throw Error("post-selection pattern counts " + std::to_string(total) + " photons, state has " +
                    std::to_string(state.photon_number()));

    FockState kept(state.registry_ptr(), state.photon_number());
    for (const auto& [occ, amp] : state.amplitudes()) {
        std::map<std::string_view, unsigned> per_path;
        for (const auto& [mode, n] : occ.entries()) per_path[reg.label(mode).path] += n;
        bool match = true;
        for (const auto& [path, n] : per_path) {
            auto it = pattern.find(path);
            if (it == pattern.end() || it->second != n) {
                match = false;
                break;
            }
        }
        // Every pattern path with a non-zero count must be present too; the totals agree, so
        // matching every occupied path is sufficient.
        if (match) kept.add_term(occ, amp);
    }
    const double p = kept.norm_squared();
    return {std::move(kept), p};
}

Selection project_detector(const FockState& state, std::string_view path, const PolarizationKet& ket) {
    const double kn = std::norm(ket[0]) + std::norm(ket[1]);
    if (std::abs(kn - 1.0) > kNormTolerance) throw Error("detector ket is not normalized");
    if (state.photon_number() == 0) throw Error("cannot detect a photon in the vacuum");
    const ModeRegistry& reg = state.registry();
    if (!reg.has_path(path)) throw Error("detector path '" + std::string(path) + "' is not registered");

    FockState out(state.registry_ptr(), state.photon_number() - 1);
    for (const auto& [occ, amp] : state.amplitudes()) {
        unsigned in_path = 0;
        ModeIndex hit = 0;
        for (const auto& [mode, n] : occ.entries()) {
            if (reg.label(mode).path == path) {
                in_path += n;
                hit = mode;
            }
        }
        if (in_path != 1)
            throw Error("detector path '" + std::string(path) + "' holds " + std::to_string(in_path) +
                        " photons in a surviving term; post-select first");
        const ModeLabel& label = reg.label(hit);
        if (label.internal != 0) throw Error("detector projection supports internal index 0 only");
        Occupation rest = occ;
        rest.remove(hit);
        out.add_term(rest, amp * std::conj(ket[static_cast<std::size_t>(label.pol)]));
    }
    const double p = out.norm_squared();
    return {std::move(out), p};
}

TwoQubitAmplitudes two_qubit_amplitudes(const FockState& state, std::string_view target_path,
                                        std::string_view control_path) {
    constexpr double kResidual = 1e-12;
    const ModeRegistry& reg = state.registry();
    TwoQubitAmplitudes out{};
    for (const auto& [occ, amp] : state.amplitudes()) {
        int t = -1;
        int c = -1;
        bool stray = occ.total() != 2;
        for (const auto& [mode, n] : occ.entries()) {
            const ModeLabel& l = reg.label(mode);
            if (n != 1 || l.internal != 0) {
                stray = true;
            } else if (l.path == target_path && t < 0) {
                t = static_cast<int>(l.pol);
            } else if (l.path == control_path && c < 0) {
                c = static_cast<int>(l.pol);
            } else {
                stray = true;
            }
        }
        if (stray || t < 0 || c < 0) {
            if (std::abs(amp) > kResidual)
                throw Error("residual amplitude " + std::to_string(std::abs(amp)) + " outside paths '" +
                            std::string(target_path) + "' and '" + std::string(control_path) + "'");
            continue;
        }
        out[static_cast<std::size_t>(2 * t + c)] += amp;
    }
    return out;
}

} // namespace lopc
