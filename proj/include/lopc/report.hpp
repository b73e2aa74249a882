#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lopc/gates.hpp"

namespace lopc {

/// printf("%.17g"), the CSV number format.
std::string format_g17(double x);

struct VerifyRow {
    double phi = 0.0;
    double p_success = 0.0;
    std::optional<double> expected_p;
    double fidelity = 0.0;
    std::string worst_branch;
    double max_off_diagonal = 0.0;
    std::optional<double> max_oracle_error;
    bool pass = false;
};

void write_verify_csv(std::ostream& os, const std::vector<VerifyRow>& rows);
void write_verify_json(std::ostream& os, const std::vector<VerifyRow>& rows);

/// Columns phi_rad, p_success, fidelity, branch, branch_prob; one line per branch.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows);

void write_hom_csv(std::ostream& os, const std::vector<HomRow>& rows);
void write_hom_json(std::ostream& os, const std::vector<HomRow>& rows);

} // namespace lopc
