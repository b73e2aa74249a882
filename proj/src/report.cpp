#include "lopc/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace lopc {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void dump(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

} // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_verify_csv(std::ostream& os, const std::vector<VerifyRow>& rows) {
    os << "phi_rad,p_success,expected_p,fidelity,worst_branch,max_off_diagonal,max_oracle_error,pass\n";
    for (const auto& r : rows) {
        os << format_g17(r.phi) << ',' << format_g17(r.p_success) << ','
           << (r.expected_p ? format_g17(*r.expected_p) : "") << ',' << format_g17(r.fidelity) << ','
           << r.worst_branch << ',' << format_g17(r.max_off_diagonal) << ','
           << (r.max_oracle_error ? format_g17(*r.max_oracle_error) : "") << ',' << (r.pass ? "true" : "false")
           << '\n';
    }
}

void write_verify_json(std::ostream& os, const std::vector<VerifyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"phi_rad", r.phi},
                       {"p_success", r.p_success},
                       {"expected_p", optional_number(r.expected_p)},
                       {"fidelity", r.fidelity},
                       {"worst_branch", r.worst_branch},
                       {"max_off_diagonal", r.max_off_diagonal},
                       {"max_oracle_error", optional_number(r.max_oracle_error)},
                       {"pass", r.pass}});
    }
    dump(os, arr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "phi_rad,p_success,fidelity,branch,branch_prob\n";
    for (const auto& r : rows)
        for (const auto& [label, p] : r.branches)
            os << format_g17(r.phi) << ',' << format_g17(r.p_success) << ',' << format_g17(r.fidelity) << ','
               << label << ',' << format_g17(p) << '\n';
}

void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        for (const auto& [label, p] : r.branches)
            arr.push_back({{"phi_rad", r.phi},
                           {"p_success", r.p_success},
                           {"fidelity", r.fidelity},
                           {"branch", label},
                           {"branch_prob", p}});
    dump(os, arr);
}

void write_hom_csv(std::ostream& os, const std::vector<HomRow>& rows) {
    os << "v,coincidence\n";
    for (const auto& r : rows) os << format_g17(r.overlap) << ',' << format_g17(r.coincidence) << '\n';
}

void write_hom_json(std::ostream& os, const std::vector<HomRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"v", r.overlap}, {"coincidence", r.coincidence}});
    dump(os, arr);
}

} // namespace lopc
