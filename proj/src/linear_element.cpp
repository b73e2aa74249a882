#include "lopc/linear_element.hpp"

#include <set>

#include "lopc/error.hpp"

namespace lopc {

double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Eigen::MatrixXcd gram = m.adjoint() * m;
    return (gram - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace {

void require_distinct(const std::vector<ModeLabel>& modes, const std::string& name, const char* what) {
    std::set<ModeLabel> seen;
    for (const auto& m : modes) {
        if (m.internal != 0)
            throw Error(name + ": element modes must use internal index 0, got " + to_string(m));
        if (!seen.insert(m).second) throw Error(name + ": duplicate " + what + " mode " + to_string(m));
    }
}

} // namespace

LinearElement::LinearElement(std::string name, std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix)
    : LinearElement(std::move(name), modes, modes, std::move(matrix)) {}

LinearElement::LinearElement(std::string name, std::vector<ModeLabel> inputs, std::vector<ModeLabel> outputs,
                             Eigen::MatrixXcd matrix)
    : name_(std::move(name)), inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)) {
    const auto k = static_cast<Eigen::Index>(inputs_.size());
    if (outputs_.size() != inputs_.size() || matrix_.rows() != k || matrix_.cols() != k) {
        throw Error(name_ + ": dimension mismatch: " + std::to_string(inputs_.size()) + " inputs, " +
                    std::to_string(outputs_.size()) + " outputs, matrix " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()));
    }
    require_distinct(inputs_, name_, "input");
    require_distinct(outputs_, name_, "output");
    if (spectral_norm(matrix_) > 1.0 + kUnitarityTolerance)
        throw Error(name_ + ": subunitarity violated (largest singular value " +
                    std::to_string(spectral_norm(matrix_)) + ")");
    unitary_ = lopc::is_unitary(matrix_);
}

} // namespace lopc
