#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "lopc/error.hpp"
#include "lopc/netlist.hpp"
#include "number_text.hpp"

namespace lopc {

namespace {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

struct Location {
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

class Parser {
public:
    CircuitNetlist run(std::string_view text);

private:
    struct Arg {
        std::string_view value;
        std::size_t key_column;
        std::size_t value_column;
    };
    using Args = std::map<std::string, Arg, std::less<>>;

    [[noreturn]] void fail(std::size_t column, const std::string& message) const {
        throw ParseError(line_, column, message);
    }

    void statement(const std::vector<Token>& tokens);
    void declare_path(const std::vector<Token>& tokens);
    void element(const std::vector<Token>& tokens, ElementKind kind);
    void measure(const std::vector<Token>& tokens);
    void postselect(const std::vector<Token>& tokens);
    void ports(const std::vector<Token>& tokens);

    Args key_values(const std::vector<Token>& tokens, std::size_t first, const std::set<std::string>& allowed,
                    const std::set<std::string>& required, std::size_t statement_column);
    std::string path_ref(std::string_view name, std::size_t column) const;
    std::vector<std::string> path_list(const Arg& arg, std::size_t expected) const;
    double real(const Arg& arg) const;

    CircuitNetlist net_;
    std::size_t line_ = 0;
    std::map<std::string, Location> locations_;
    std::set<std::string, std::less<>> declared_;
    bool have_postselect_ = false;
    bool have_ports_ = false;
};

const std::map<std::string_view, ElementKind>& element_keywords() {
    static const std::map<std::string_view, ElementKind> table = {
        {"pbs", ElementKind::Pbs},     {"ppbs", ElementKind::Ppbs},     {"hwp", ElementKind::Hwp},
        {"jones", ElementKind::Jones}, {"filter", ElementKind::Filter}, {"phaseflip", ElementKind::PhaseFlip},
    };
    return table;
}

CircuitNetlist Parser::run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_;
        const auto tokens = tokenize(line);
        if (!tokens.empty()) statement(tokens);
        if (end == text.size()) break;
        pos = end + 1;
    }

    const Location eof{std::max<std::size_t>(line_, 1), 1};
    if (!have_postselect_) throw ParseError(eof.line, eof.column, "no postselect declared");
    for (const auto& d : validate(net_)) {
        Location at = eof;
        if (auto it = locations_.find(d.subject); it != locations_.end()) {
            at = it->second;
        } else if (auto sp = d.subject.find(' '); sp != std::string::npos) {
            if (auto it2 = locations_.find(d.subject.substr(0, sp)); it2 != locations_.end()) at = it2->second;
        }
        throw ParseError(at.line, at.column, d.message);
    }
    return std::move(net_);
}

void Parser::statement(const std::vector<Token>& tokens) {
    const std::string_view kw = tokens[0].text;
    if (kw == "path") return declare_path(tokens);
    if (kw == "measure") return measure(tokens);
    if (kw == "postselect") return postselect(tokens);
    if (kw == "ports") return ports(tokens);
    if (auto it = element_keywords().find(kw); it != element_keywords().end()) return element(tokens, it->second);
    fail(tokens[0].column, "unknown keyword '" + std::string(kw) + "'");
}

void Parser::declare_path(const std::vector<Token>& tokens) {
    if (tokens.size() != 2) fail(tokens[0].column, "'path' takes exactly one name");
    const Token& name = tokens[1];
    if (!is_identifier(name.text)) fail(name.column, "invalid path name '" + std::string(name.text) + "'");
    if (!declared_.insert(std::string(name.text)).second)
        fail(name.column, "duplicate path '" + std::string(name.text) + "'");
    net_.paths.emplace_back(name.text);
    locations_["path " + std::string(name.text)] = {line_, name.column};
}

Parser::Args Parser::key_values(const std::vector<Token>& tokens, std::size_t first, const std::set<std::string>& allowed,
                                const std::set<std::string>& required, std::size_t statement_column) {
    Args args;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        const auto eq = t.text.find('=');
        if (eq == std::string_view::npos || eq == 0)
            fail(t.column, "expected key=value, got '" + std::string(t.text) + "'");
        const std::string key(t.text.substr(0, eq));
        if (!allowed.contains(key)) fail(t.column, "unknown argument '" + key + "'");
        const std::string_view value = t.text.substr(eq + 1);
        if (value.empty()) fail(t.column + eq + 1, "empty value for '" + key + "'");
        if (!args.emplace(key, Arg{value, t.column, t.column + eq + 1}).second)
            fail(t.column, "argument '" + key + "' given twice");
    }
    for (const auto& key : required)
        if (!args.contains(key)) fail(statement_column, "missing argument '" + key + "'");
    return args;
}

std::string Parser::path_ref(std::string_view name, std::size_t column) const {
    if (!declared_.contains(name)) fail(column, "undeclared path '" + std::string(name) + "'");
    return std::string(name);
}

std::vector<std::string> Parser::path_list(const Arg& arg, std::size_t expected) const {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = arg.value.find(',', start);
        const std::string_view item = arg.value.substr(start, comma == std::string_view::npos ? comma : comma - start);
        out.push_back(path_ref(item, arg.value_column + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (expected != 0 && out.size() != expected)
        fail(arg.value_column, "expected " + std::to_string(expected) + " path(s), got " + std::to_string(out.size()));
    return out;
}

double Parser::real(const Arg& arg) const {
    if (auto x = detail::parse_real(arg.value)) return *x;
    fail(arg.value_column, "expected a number, got '" + std::string(arg.value) + "'");
}

void Parser::element(const std::vector<Token>& tokens, ElementKind kind) {
    if (tokens.size() < 2 || tokens[1].text.find('=') != std::string_view::npos)
        fail(tokens[0].column, "'" + std::string(tokens[0].text) + "' requires an element name");
    const Token& name = tokens[1];
    if (!is_identifier(name.text)) fail(name.column, "invalid element name '" + std::string(name.text) + "'");
    if (net_.find_stage(name.text)) fail(name.column, "duplicate element name '" + std::string(name.text) + "'");

    ElementSpec spec;
    spec.name = std::string(name.text);
    const std::size_t col = tokens[0].column;
    switch (kind) {
    case ElementKind::Pbs:
    case ElementKind::Ppbs: {
        std::set<std::string> keys = {"in", "out"};
        if (kind == ElementKind::Ppbs) keys.insert("tv");
        const auto args = key_values(tokens, 2, keys, keys, col);
        spec.inputs = path_list(args.at("in"), 2);
        spec.outputs = path_list(args.at("out"), 2);
        if (kind == ElementKind::Pbs)
            spec.params = PbsParams{};
        else
            spec.params = PpbsParams{real(args.at("tv"))};
        break;
    }
    case ElementKind::Hwp: {
        const auto args = key_values(tokens, 2, {"path", "angle"}, {"path", "angle"}, col);
        spec.inputs = path_list(args.at("path"), 1);
        spec.params = HwpParams{real(args.at("angle"))};
        break;
    }
    case ElementKind::Jones: {
        const auto args = key_values(tokens, 2, {"path", "m"}, {"path", "m"}, col);
        spec.inputs = path_list(args.at("path"), 1);
        const Arg& m = args.at("m");
        JonesMatrix jm{};
        std::size_t start = 0;
        std::size_t count = 0;
        while (true) {
            const std::size_t comma = m.value.find(',', start);
            const auto item = m.value.substr(start, comma == std::string_view::npos ? comma : comma - start);
            if (count == 4) fail(m.value_column + start, "jones matrix takes 4 entries");
            auto z = detail::parse_complex(item);
            if (!z) fail(m.value_column + start, "expected a complex number, got '" + std::string(item) + "'");
            jm[count++] = *z;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (count != 4) fail(m.value_column, "jones matrix takes 4 entries, got " + std::to_string(count));
        spec.params = JonesParams{jm};
        break;
    }
    case ElementKind::Filter: {
        const auto args = key_values(tokens, 2, {"path", "th", "tv"}, {"path", "th", "tv"}, col);
        spec.inputs = path_list(args.at("path"), 1);
        spec.params = FilterParams{real(args.at("th")), real(args.at("tv"))};
        break;
    }
    case ElementKind::PhaseFlip: {
        const auto args = key_values(tokens, 2, {"path"}, {"path"}, col);
        spec.inputs = path_list(args.at("path"), 1);
        spec.params = PhaseFlipParams{};
        break;
    }
    }
    if (spec.outputs.empty()) spec.outputs = spec.inputs;
    locations_["element " + spec.name] = {line_, name.column};
    net_.stages.push_back(std::move(spec));
}

void Parser::measure(const std::vector<Token>& tokens) {
    // measure path=<p> outcome <label> ket=<a>,<b> [correct=<name>]
    if (tokens.size() < 5 || tokens[2].text != "outcome")
        fail(tokens.size() > 2 ? tokens[2].column : tokens[0].column,
             "expected 'measure path=<p> outcome <label> ket=<a>,<b> [correct=<element>]'");
    Args head = key_values({tokens[0], tokens[1]}, 1, {"path"}, {"path"}, tokens[0].column);
    const Arg& p = head.at("path");
    const std::string path = path_ref(p.value, p.value_column);
    if (!net_.measurement.path.empty() && net_.measurement.path != path)
        fail(p.value_column, "only one measurement rule is allowed (already measuring '" + net_.measurement.path + "')");

    const Token& label = tokens[3];
    if (!is_identifier(label.text)) fail(label.column, "invalid outcome label '" + std::string(label.text) + "'");

    const auto args = key_values(tokens, 4, {"ket", "correct"}, {"ket"}, tokens[0].column);
    const Arg& ket = args.at("ket");
    const auto comma = ket.value.find(',');
    if (comma == std::string_view::npos || ket.value.find(',', comma + 1) != std::string_view::npos)
        fail(ket.value_column, "ket takes 2 entries");
    const auto a = detail::parse_complex(ket.value.substr(0, comma));
    if (!a) fail(ket.value_column, "expected a complex number in ket");
    const auto b = detail::parse_complex(ket.value.substr(comma + 1));
    if (!b) fail(ket.value_column + comma + 1, "expected a complex number in ket");

    MeasurementOutcome outcome{std::string(label.text), {*a, *b}, std::nullopt};
    if (auto it = args.find("correct"); it != args.end()) {
        if (!net_.find_stage(it->second.value))
            fail(it->second.value_column, "unknown correction element '" + std::string(it->second.value) + "'");
        outcome.correction = std::string(it->second.value);
    }
    if (net_.measurement.path.empty()) locations_["measure"] = {line_, tokens[0].column};
    locations_["measure " + outcome.label] = {line_, label.column};
    net_.measurement.path = path;
    net_.measurement.outcomes.push_back(std::move(outcome));
}

void Parser::postselect(const std::vector<Token>& tokens) {
    if (have_postselect_) fail(tokens[0].column, "postselect declared twice");
    if (tokens.size() < 2) fail(tokens[0].column, "postselect needs at least one <path>=<count>");
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        const auto eq = t.text.find('=');
        if (eq == std::string_view::npos || eq == 0) fail(t.column, "expected <path>=<count>, got '" + std::string(t.text) + "'");
        const std::string path = path_ref(t.text.substr(0, eq), t.column);
        const auto digits = t.text.substr(eq + 1);
        unsigned count = 0;
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), count);
        if (digits.empty() || res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
            fail(t.column + eq + 1, "expected a photon count, got '" + std::string(digits) + "'");
        for (const auto& [q, c] : net_.postselect)
            if (q == path) fail(t.column, "path '" + path + "' listed twice in postselect");
        net_.postselect.emplace_back(path, count);
    }
    have_postselect_ = true;
    locations_["postselect"] = {line_, tokens[0].column};
}

void Parser::ports(const std::vector<Token>& tokens) {
    if (have_ports_) fail(tokens[0].column, "ports declared twice");
    const std::set<std::string> keys = {"target_in", "control_in", "program_in", "target_out", "control_out"};
    const auto args = key_values(tokens, 1, keys, keys, tokens[0].column);
    net_.ports.target_in = path_list(args.at("target_in"), 1)[0];
    net_.ports.control_in = path_list(args.at("control_in"), 1)[0];
    net_.ports.program_in = path_list(args.at("program_in"), 1)[0];
    net_.ports.target_out = path_list(args.at("target_out"), 0);
    net_.ports.control_out = path_list(args.at("control_out"), 1)[0];
    have_ports_ = true;
    locations_["ports"] = {line_, tokens[0].column};
}

} // namespace

CircuitNetlist parse(std::string_view text) { return Parser{}.run(text); }

} // namespace lopc
