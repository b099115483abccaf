#include "grpnet/types.hpp"

#include <cmath>
#include <sstream>

namespace grpnet {

const char* family_name(Family family) noexcept
{
    return family == Family::Gaussian ? "gaussian" : "multinomial";
}

Family parse_family(const std::string& name)
{
    if (name == "gaussian") return Family::Gaussian;
    if (name == "multinomial") return Family::Multinomial;
    throw std::invalid_argument("unknown family '" + name + "' (expected gaussian or multinomial)");
}

DesignMatrix::DesignMatrix(Matrix values)
    : values_(std::move(values))
{
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw std::invalid_argument("design matrix must have at least one row and one column");
    }
    if (!values_.allFinite()) {
        throw std::invalid_argument("design matrix contains non-finite entries");
    }
    col_sq_norms_ = values_.colwise().squaredNorm().transpose();
    col_means_ = values_.colwise().mean().transpose();
}

ResponseMatrix::ResponseMatrix(Matrix values, Family family)
    : values_(std::move(values)), family_(family)
{
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw std::invalid_argument("response matrix must have at least one row and one column");
    }
    if (!values_.allFinite()) {
        throw std::invalid_argument("response matrix contains non-finite entries");
    }
    if (family_ == Family::Multinomial) {
        if (values_.cols() < 2) {
            throw std::invalid_argument("multinomial response needs at least two classes");
        }
        for (Index i = 0; i < values_.rows(); ++i) {
            int ones = 0;
            for (Index m = 0; m < values_.cols(); ++m) {
                const double v = values_(i, m);
                if (v == 1.0) {
                    ++ones;
                } else if (v != 0.0) {
                    std::ostringstream os;
                    os << "multinomial response row " << i + 1 << " column " << m + 1
                       << " is " << v << "; expected 0 or 1";
                    throw std::invalid_argument(os.str());
                }
            }
            if (ones != 1) {
                std::ostringstream os;
                os << "multinomial response row " << i + 1 << " is not one-hot";
                throw std::invalid_argument(os.str());
            }
        }
    }
}

ResponseMatrix ResponseMatrix::from_labels(const std::vector<int>& labels, int n_classes)
{
    if (n_classes < 2) {
        throw std::invalid_argument("multinomial response needs at least two classes");
    }
    Matrix y = Matrix::Zero(static_cast<Index>(labels.size()), n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 1 || labels[i] > n_classes) {
            std::ostringstream os;
            os << "class label " << labels[i] << " on row " << i + 1 << " outside 1.." << n_classes;
            throw std::invalid_argument(os.str());
        }
        y(static_cast<Index>(i), labels[i] - 1) = 1.0;
    }
    return ResponseMatrix(std::move(y), Family::Multinomial);
}

CoefficientMatrix::CoefficientMatrix(Matrix beta_, Vector intercept_)
    : beta(std::move(beta_)), intercept(std::move(intercept_))
{
    if (beta.cols() != intercept.size()) {
        throw DimensionError("intercept length does not match coefficient columns");
    }
}

CoefficientMatrix CoefficientMatrix::zeros(Index p, Index m)
{
    return CoefficientMatrix(Matrix::Zero(p, m), Vector::Zero(m));
}

bool CoefficientMatrix::all_finite() const
{
    return beta.allFinite() && intercept.allFinite();
}

PenaltySpec::PenaltySpec(double lambda_, double alpha_)
    : lambda(lambda_), alpha(alpha_)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be finite and nonnegative");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
}

}  // namespace grpnet
