#include "lopc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lopc/error.hpp"
#include "lopc/gates.hpp"
#include "lopc/netlist.hpp"
#include "lopc/oracle.hpp"
#include "lopc/report.hpp"

namespace lopc::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string variant = "basic";
    std::string netlist_path;
    std::optional<double> phi;
    std::optional<double> from;
    std::optional<double> to;
    std::size_t steps = 21;
    bool degrees = false;
    double t_v = 1.0 / std::sqrt(3.0);
    std::string format = "csv";
    std::string out_path;
    double tol = 1e-10;
    bool meta = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<double> angle_grid(const RunConfig& cfg) {
    const double scale = cfg.degrees ? std::numbers::pi / 180.0 : 1.0;
    if (cfg.phi) return {*cfg.phi * scale};
    const double from = cfg.from.value_or(0.0);
    const double to = cfg.to.value_or(cfg.degrees ? 180.0 : std::numbers::pi);
    auto grid = uniform_grid(from, to, cfg.steps);
    for (auto& x : grid) x *= scale;
    return grid;
}

CircuitNetlist load_netlist(const RunConfig& cfg) {
    if (cfg.netlist_path.empty()) {
        auto v = variant_from_string(cfg.variant);
        if (!v) throw UsageError("unknown variant '" + cfg.variant + "'");
        return builtin(*v);
    }
    std::ifstream in(cfg.netlist_path, std::ios::binary);
    if (!in) throw UsageError("cannot open netlist '" + cfg.netlist_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const ParseError& e) {
        throw UsageError(cfg.netlist_path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                         ": error: " + e.detail());
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& data, std::ostream& err) {
    const CircuitNetlist netlist = load_netlist(cfg);
    const std::optional<Variant> variant =
        cfg.netlist_path.empty() ? variant_from_string(cfg.variant) : std::optional<Variant>{};

    std::vector<VerifyRow> rows;
    for (double phi : angle_grid(cfg)) {
        const auto report = conditional_gate(netlist, phi);
        VerifyRow row;
        row.phi = phi;
        row.p_success = report.p_success;
        row.fidelity = report.fidelity;
        row.max_off_diagonal = report.max_off_diagonal;
        double worst = 2.0;
        for (const auto& b : report.branches) {
            if (b.fidelity < worst) {
                worst = b.fidelity;
                row.worst_branch = b.label();
            }
        }
        bool pass = !report.branches.empty() && report.fidelity >= 1.0 - cfg.tol &&
                    report.max_off_diagonal <= cfg.tol && report.ports_consistent;
        if (variant) {
            const auto gate = oracle::oracle_conditional_gate(phi, *variant);
            row.expected_p = gate.total_probability;
            double error = gate.branches.size() == report.branches.size() ? 0.0 : INFINITY;
            for (std::size_t i = 0; i < gate.branches.size() && i < report.branches.size(); ++i) {
                if (gate.branches[i].first != report.branches[i].label()) error = INFINITY;
                error = std::max(error, (gate.branches[i].second - report.branches[i].op).cwiseAbs().maxCoeff());
            }
            row.max_oracle_error = error;
            pass = pass && error <= cfg.tol && std::abs(row.p_success - gate.total_probability) <= cfg.tol;
        }
        row.pass = pass;
        rows.push_back(std::move(row));
    }

    if (cfg.format == "json")
        write_verify_json(data, rows);
    else
        write_verify_csv(data, rows);

    const auto passed = std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
    err << "verify: " << passed << "/" << rows.size() << " phase points within tolerance " << cfg.tol << "\n";
    return passed == static_cast<long>(rows.size()) ? kSuccess : kVerificationFailed;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& data, std::ostream&) {
    const CircuitNetlist netlist = load_netlist(cfg);
    const auto grid = angle_grid(cfg);
    const auto rows = sweep_phi(netlist, grid);
    if (cfg.format == "json")
        write_sweep_json(data, rows);
    else
        write_sweep_csv(data, rows);
    return kSuccess;
}

int cmd_hom(const RunConfig& cfg, std::ostream& data, std::ostream&) {
    std::vector<double> grid;
    if (cfg.phi) {
        throw UsageError("hom takes an overlap grid (--from/--to/--steps), not --phi");
    }
    grid = uniform_grid(cfg.from.value_or(0.0), cfg.to.value_or(1.0), cfg.steps);
    for (double v : grid)
        if (v < 0.0 || v > 1.0) throw UsageError("overlap grid must lie in [0, 1]");
    if (!(cfg.t_v > 0.0 && cfg.t_v < 1.0)) throw UsageError("--tv must lie in (0, 1)");
    const auto rows = hom_scan(cfg.t_v, grid);
    if (cfg.format == "json")
        write_hom_json(data, rows);
    else
        write_hom_csv(data, rows);
    return kSuccess;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string with_meta(const RunConfig& cfg, const std::string& body) {
    nlohmann::ordered_json meta = {{"tool", "lopc"},
                                   {"command", cfg.command},
                                   {"variant", cfg.netlist_path.empty() ? cfg.variant : ""},
                                   {"netlist", cfg.netlist_path},
                                   {"generated_at", utc_timestamp()}};
    if (cfg.format == "json") {
        nlohmann::ordered_json wrapped = {{"meta", meta}, {"rows", nlohmann::ordered_json::parse(body)}};
        return wrapped.dump(2) + "\n";
    }
    std::string header;
    for (const auto& [k, v] : meta.items()) header += "# " + k + "=" + v.get<std::string>() + "\n";
    return header + body;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Simulator and verifier for the programmable linear-optical controlled-phase gate", "lopc"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--variant", cfg.variant, "Builtin circuit")
            ->check(CLI::IsMember({"basic", "ff", "dual", "full"}));
        sub->add_option("--netlist", cfg.netlist_path, "Netlist file (overrides --variant)");
        sub->add_option("--phi", cfg.phi, "Single phase value");
        sub->add_option("--from", cfg.from, "Grid start");
        sub->add_option("--to", cfg.to, "Grid end");
        sub->add_option("--steps", cfg.steps, "Grid points")->check(CLI::PositiveNumber);
        sub->add_flag("--degrees", cfg.degrees, "Phase values are in degrees");
        sub->add_option("--tv", cfg.t_v, "PPBS vertical transmissivity for hom");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
        sub->add_option("--tol", cfg.tol, "Verification tolerance")->check(CLI::NonNegativeNumber);
        sub->add_flag("--meta", cfg.meta, "Include run metadata (timestamp) in the output");
    };
    std::map<std::string, std::function<int(const RunConfig&, std::ostream&, std::ostream&)>> commands = {
        {"verify", cmd_verify}, {"sweep", cmd_sweep}, {"hom", cmd_hom}};
    add_common(app.add_subcommand("verify", "Check the conditional gate against CPhase(phi) and the path oracle"));
    add_common(app.add_subcommand("sweep", "Tabulate success probability and fidelity over a phase grid"));
    add_common(app.add_subcommand("hom", "Two-photon coincidence on the PPBS versus wavepacket overlap"));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "lopc: " << e.what() << "\n";
        return kUsageError;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        std::ostringstream data;
        const int code = commands.at(cfg.command)(cfg, data, err);
        const std::string body = cfg.meta ? with_meta(cfg, data.str()) : data.str();
        if (cfg.out_path.empty()) {
            out << body;
        } else {
            std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
            if (!file) throw UsageError("cannot write '" + cfg.out_path + "'");
            file << body;
        }
        return code;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "lopc: " << e.what() << "\n";
        return kUsageError;
    }
}

} // namespace lopc::cli
