#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lopc/mode.hpp"

namespace lopc {

/// Tolerance used for subunitarity and unitarity checks.
inline constexpr double kUnitarityTolerance = 1e-12;

/// Conditional operator on target (x) control, basis |tc> at index 2*t + c.
using GateMatrix = Eigen::Matrix4cd;

/// A k x k subunitary transfer matrix from k input modes to k output modes.
///
/// Convention: the creation operator of input mode i maps to
/// sum_j matrix(j, i) * (creation operator of output mode j), i.e. column
/// index = input. Input and output lists coincide for in-place elements
/// (wave plates, filters); they differ when the element renames paths
/// (a beam splitter with separate exit ports).
///
/// Labels are given with internal index 0; the element acts identically on
/// every internal index of the same (path, polarization).
class LinearElement {
public:
    LinearElement(std::string name, std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix);
    LinearElement(std::string name, std::vector<ModeLabel> inputs, std::vector<ModeLabel> outputs,
                  Eigen::MatrixXcd matrix);

    const std::string& name() const noexcept { return name_; }
    const std::vector<ModeLabel>& inputs() const noexcept { return inputs_; }
    const std::vector<ModeLabel>& outputs() const noexcept { return outputs_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
    bool is_unitary() const noexcept { return unitary_; }
    std::size_t size() const noexcept { return inputs_.size(); }

private:
    std::string name_;
    std::vector<ModeLabel> inputs_;
    std::vector<ModeLabel> outputs_;
    Eigen::MatrixXcd matrix_;
    bool unitary_ = false;
};

/// Largest singular value of m.
double spectral_norm(const Eigen::MatrixXcd& m);
bool is_unitary(const Eigen::MatrixXcd& m, double tol = kUnitarityTolerance);

} // namespace lopc
