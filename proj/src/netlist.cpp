#include "lopc/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lopc/error.hpp"
#include "number_text.hpp"

namespace lopc {

namespace {

constexpr double kKetTolerance = 1e-12;

std::string join(const std::vector<std::string>& items, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

std::shared_ptr<const ModeRegistry> CircuitNetlist::registry() const {
    return std::make_shared<const ModeRegistry>(ModeRegistry::for_paths(paths));
}

PathPattern CircuitNetlist::pattern_for(std::string_view target_port) const {
    PathPattern pattern;
    const std::string& primary = ports.target_out.empty() ? std::string{} : ports.target_out.front();
    for (const auto& [path, n] : postselect) {
        if (path == primary)
            pattern[std::string(target_port)] += n;
        else
            pattern[path] += n;
    }
    return pattern;
}

const ElementSpec* CircuitNetlist::find_stage(std::string_view name) const {
    for (const auto& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<Diagnostic> validate(const CircuitNetlist& n) {
    std::vector<Diagnostic> diags;
    auto report = [&](std::string subject, std::string message) {
        diags.push_back({std::move(subject), std::move(message)});
    };

    std::set<std::string, std::less<>> declared;
    for (const auto& p : n.paths) {
        if (!declared.insert(p).second) report("path " + p, "duplicate path '" + p + "'");
    }
    auto known = [&](std::string_view p) { return declared.contains(p); };

    // Stages.
    std::set<std::string, std::less<>> names;
    for (const auto& s : n.stages) {
        const std::string subject = "element " + s.name;
        if (!names.insert(s.name).second) report(subject, "duplicate element name '" + s.name + "'");
        bool wired = true;
        for (const auto* list : {&s.inputs, &s.outputs}) {
            for (const auto& p : *list) {
                if (!known(p)) {
                    report(subject, "undeclared path '" + p + "'");
                    wired = false;
                }
            }
        }
        if (!wired) continue;
        try {
            (void)build_element(s);
        } catch (const Error& e) {
            report(subject, e.what());
        }
    }

    // Measurement.
    const auto& m = n.measurement;
    if (m.path.empty()) {
        report("measure", "no measurement declared");
    } else if (!known(m.path)) {
        report("measure", "measurement on undeclared path '" + m.path + "'");
    }
    if (!m.path.empty() && m.outcomes.empty()) report("measure", "measurement has no outcomes");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < m.outcomes.size(); ++i) {
        const auto& o = m.outcomes[i];
        if (!labels.insert(o.label).second) report("measure " + o.label, "duplicate outcome label '" + o.label + "'");
        const double norm = std::norm(o.ket[0]) + std::norm(o.ket[1]);
        if (std::abs(norm - 1.0) > kKetTolerance)
            report("measure " + o.label, "outcome ket '" + o.label + "' is not normalized");
        for (std::size_t j = 0; j < i; ++j) {
            const auto& other = m.outcomes[j].ket;
            const Complex overlap = std::conj(other[0]) * o.ket[0] + std::conj(other[1]) * o.ket[1];
            if (std::abs(overlap) > kKetTolerance)
                report("measure " + o.label, "outcome kets '" + m.outcomes[j].label + "' and '" + o.label +
                                                 "' are not orthogonal");
        }
        if (o.correction && !n.find_stage(*o.correction))
            report("measure " + o.label, "correction refers to unknown element '" + *o.correction + "'");
    }

    // Post-selection and photon budget.
    if (n.postselect.empty()) {
        report("postselect", "no postselect declared");
    } else {
        unsigned total = 0;
        std::set<std::string> seen;
        for (const auto& [p, count] : n.postselect) {
            if (!known(p)) report("postselect", "postselect on undeclared path '" + p + "'");
            if (!seen.insert(p).second) report("postselect", "path '" + p + "' listed twice in postselect");
            total += count;
        }
        if (total != CircuitNetlist::kPhotonBudget)
            report("postselect", "postselect total " + std::to_string(total) + " does not match the photon budget of " +
                                     std::to_string(CircuitNetlist::kPhotonBudget));
        auto count_of = [&](std::string_view p) -> std::optional<unsigned> {
            for (const auto& [q, c] : n.postselect)
                if (q == p) return c;
            return std::nullopt;
        };
        auto expect_one = [&](const std::string& p, const char* role) {
            if (p.empty()) return;
            if (count_of(p) != 1u) report("postselect", std::string(role) + " path '" + p + "' must be post-selected on 1 photon");
        };
        expect_one(m.path, "detector");
        if (!n.ports.target_out.empty()) expect_one(n.ports.target_out.front(), "target output");
        expect_one(n.ports.control_out, "control output");
        for (std::size_t i = 1; i < n.ports.target_out.size(); ++i) {
            if (count_of(n.ports.target_out[i]))
                report("postselect", "alternate target output '" + n.ports.target_out[i] +
                                         "' must not appear in postselect");
        }
    }

    // Ports.
    const auto& ports = n.ports;
    std::vector<std::string> inputs = {ports.target_in, ports.control_in, ports.program_in};
    if (ports.target_out.empty() || ports.control_out.empty() || std::any_of(inputs.begin(), inputs.end(), [](const auto& s) { return s.empty(); })) {
        report("ports", "ports must assign target_in, control_in, program_in, target_out and control_out");
        return diags;
    }
    for (const auto& p : inputs)
        if (!known(p)) report("ports", "undeclared port path '" + p + "'");
    for (const auto& p : ports.target_out)
        if (!known(p)) report("ports", "undeclared port path '" + p + "'");
    if (!known(ports.control_out)) report("ports", "undeclared port path '" + ports.control_out + "'");
    if (std::set<std::string>(inputs.begin(), inputs.end()).size() != inputs.size())
        report("ports", "input ports must be distinct");
    {
        std::vector<std::string> outputs = ports.target_out;
        outputs.push_back(ports.control_out);
        if (!m.path.empty()) outputs.push_back(m.path);
        if (std::set<std::string>(outputs.begin(), outputs.end()).size() != outputs.size())
            report("ports", "output ports and the detector path must be distinct");
    }

    // Connectivity: follow each input port through the stage order.
    std::vector<std::string> sinks = ports.target_out;
    sinks.push_back(ports.control_out);
    if (!m.path.empty()) sinks.push_back(m.path);
    std::set<std::string> live(inputs.begin(), inputs.end());
    for (const auto& s : n.stages) {
        bool touches = false;
        for (const auto& p : s.inputs) touches = touches || live.contains(p);
        if (!touches) continue;
        for (const auto& p : s.outputs) {
            if (!contains(s.inputs, p) && live.contains(p))
                report("element " + s.name, "output path '" + p + "' already carries light (path collision)");
        }
        for (const auto& p : s.inputs) live.erase(p);
        live.insert(s.outputs.begin(), s.outputs.end());
    }
    for (const auto& port : inputs) {
        std::set<std::string> reach{port};
        for (const auto& s : n.stages) {
            bool touches = false;
            for (const auto& p : s.inputs) touches = touches || reach.contains(p);
            if (!touches) continue;
            for (const auto& p : s.inputs) reach.erase(p);
            reach.insert(s.outputs.begin(), s.outputs.end());
        }
        if (std::none_of(sinks.begin(), sinks.end(), [&](const auto& sink) { return reach.contains(sink); }))
            report("ports", "input port '" + port + "' never reaches an output or the detector");
    }
    return diags;
}

std::string render(const CircuitNetlist& n) {
    using detail::format_complex;
    using detail::format_real;
    std::ostringstream out;
    out << "# linear-optical gate netlist\n";
    for (const auto& p : n.paths) out << "path " << p << "\n";
    for (const auto& s : n.stages) {
        out << keyword(s.kind()) << ' ' << s.name;
        switch (s.kind()) {
        case ElementKind::Pbs:
            out << " in=" << join(s.inputs) << " out=" << join(s.outputs);
            break;
        case ElementKind::Ppbs:
            out << " in=" << join(s.inputs) << " out=" << join(s.outputs)
                << " tv=" << format_real(std::get<PpbsParams>(s.params).t_v);
            break;
        case ElementKind::Hwp:
            out << " path=" << s.inputs.at(0) << " angle=" << format_real(std::get<HwpParams>(s.params).angle_deg);
            break;
        case ElementKind::Jones: {
            const auto& m = std::get<JonesParams>(s.params).m;
            out << " path=" << s.inputs.at(0) << " m=" << format_complex(m[0]) << ',' << format_complex(m[1]) << ','
                << format_complex(m[2]) << ',' << format_complex(m[3]);
            break;
        }
        case ElementKind::Filter: {
            const auto& f = std::get<FilterParams>(s.params);
            out << " path=" << s.inputs.at(0) << " th=" << format_real(f.t_h) << " tv=" << format_real(f.t_v);
            break;
        }
        case ElementKind::PhaseFlip:
            out << " path=" << s.inputs.at(0);
            break;
        }
        out << "\n";
    }
    for (const auto& o : n.measurement.outcomes) {
        out << "measure path=" << n.measurement.path << " outcome " << o.label << " ket=" << format_complex(o.ket[0])
            << ',' << format_complex(o.ket[1]);
        if (o.correction) out << " correct=" << *o.correction;
        out << "\n";
    }
    out << "postselect";
    for (const auto& [p, c] : n.postselect) out << ' ' << p << '=' << c;
    out << "\n";
    out << "ports target_in=" << n.ports.target_in << " control_in=" << n.ports.control_in
        << " program_in=" << n.ports.program_in << " target_out=" << join(n.ports.target_out)
        << " control_out=" << n.ports.control_out << "\n";
    return out.str();
}

std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::Basic: return "basic";
    case Variant::FeedForward: return "ff";
    case Variant::DualOutput: return "dual";
    case Variant::Full: return "full";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view s) {
    for (auto v : {Variant::Basic, Variant::FeedForward, Variant::DualOutput, Variant::Full})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

} // namespace lopc
