#include "cogspike/plasticity/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace cogspike {

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
    const Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp();
    return e / e.sum();
}

}  // namespace

double temporal_consistency_loss(const Eigen::MatrixXd& logits) {
    if (logits.rows() < 1 || logits.cols() < 1)
        throw std::invalid_argument("temporal_consistency_loss: empty logits");
    if (!logits.allFinite())
        throw std::invalid_argument("temporal_consistency_loss: logits must be finite");

    const Eigen::VectorXd anchor = softmax(logits.colwise().mean().transpose());
    double total = 0.0;
    for (Eigen::Index t = 0; t < logits.rows(); ++t) {
        const Eigen::VectorXd p = softmax(logits.row(t).transpose());
        for (Eigen::Index c = 0; c < p.size(); ++c)
            if (p(c) > 0.0) total += p(c) * std::log(p(c) / anchor(c));
    }
    return total / static_cast<double>(logits.rows());
}

}  // namespace cogspike
