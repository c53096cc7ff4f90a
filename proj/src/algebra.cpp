#include "csframe/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

namespace csframe {

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
    if (sizes_.empty()) throw DimensionMismatch("descriptor needs at least one block");
    for (int n : sizes_) {
        if (n < 1) throw DimensionMismatch("block sizes must be positive");
        dim_ += n * n;
        msize_ += n;
    }
}

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, std::vector<Matrix> blocks)
    : desc_(std::move(desc)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != desc_.num_blocks())
        throw DimensionMismatch("block count does not match descriptor");
    for (int k = 0; k < desc_.num_blocks(); ++k) {
        const int n = desc_.block_size(k);
        if (blocks_[static_cast<std::size_t>(k)].rows() != n ||
            blocks_[static_cast<std::size_t>(k)].cols() != n)
            throw DimensionMismatch("block shape does not match descriptor");
    }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& desc) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(desc.num_blocks()));
    for (int k = 0; k < desc.num_blocks(); ++k)
        blocks.push_back(Matrix::Zero(desc.block_size(k), desc.block_size(k)));
    return {desc, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor& desc) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(desc.num_blocks()));
    for (int k = 0; k < desc.num_blocks(); ++k)
        blocks.push_back(Matrix::Identity(desc.block_size(k), desc.block_size(k)));
    return {desc, std::move(blocks)};
}

AlgebraElement AlgebraElement::scalar(const AlgebraDescriptor& desc, Complex c) {
    AlgebraElement a = identity(desc);
    for (int k = 0; k < a.num_blocks(); ++k) a.block(k) *= c;
    return a;
}

AlgebraElement AlgebraElement::central(const AlgebraDescriptor& desc, const std::vector<Complex>& lambdas) {
    if (static_cast<int>(lambdas.size()) != desc.num_blocks())
        throw DimensionMismatch("one scalar per block required");
    AlgebraElement a = identity(desc);
    for (int k = 0; k < a.num_blocks(); ++k) a.block(k) *= lambdas[static_cast<std::size_t>(k)];
    return a;
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraDescriptor& desc, int k, int row, int col) {
    AlgebraElement a = zero(desc);
    a.block(k)(row, col) = Complex(1.0, 0.0);
    return a;
}

AlgebraElement AlgebraElement::adjoint() const {
    AlgebraElement out = *this;
    for (auto& b : out.blocks_) b = b.adjoint().eval();
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    if (!same_shape(rhs)) throw DescriptorMismatch("algebra element shapes differ");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    if (!same_shape(rhs)) throw DescriptorMismatch("algebra element shapes differ");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
    return *this;
}

AlgebraElement operator-(const AlgebraElement& a) {
    AlgebraElement out = a;
    for (int k = 0; k < out.num_blocks(); ++k) out.block(k) = -out.block(k);
    return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    if (!a.same_shape(b)) throw DescriptorMismatch("algebra element shapes differ");
    AlgebraElement out = a;
    for (int k = 0; k < out.num_blocks(); ++k) out.block(k) = a.block(k) * b.block(k);
    return out;
}

AlgebraElement operator*(Complex c, const AlgebraElement& a) {
    AlgebraElement out = a;
    for (int k = 0; k < out.num_blocks(); ++k) out.block(k) *= c;
    return out;
}

AlgebraElement operator*(double c, const AlgebraElement& a) { return Complex(c, 0.0) * a; }

double alg_norm(const AlgebraElement& a) {
    double best = 0.0;
    for (int k = 0; k < a.num_blocks(); ++k) {
        if (a.block(k).rows() == 1) {
            best = std::max(best, std::abs(a.block(k)(0, 0)));
            continue;
        }
        Eigen::JacobiSVD<Matrix> svd(a.block(k));
        best = std::max(best, svd.singularValues()(0));
    }
    return best;
}

double alg_min_singular(const AlgebraElement& a) {
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < a.num_blocks(); ++k) {
        if (a.block(k).rows() == 1) {
            worst = std::min(worst, std::abs(a.block(k)(0, 0)));
            continue;
        }
        Eigen::JacobiSVD<Matrix> svd(a.block(k));
        worst = std::min(worst, svd.singularValues().minCoeff());
    }
    return worst;
}

bool is_hermitian(const AlgebraElement& a, double tol) {
    const double scale = tol * (1.0 + alg_norm(a));
    for (int k = 0; k < a.num_blocks(); ++k) {
        const Matrix diff = a.block(k) - a.block(k).adjoint();
        if (diff.cwiseAbs().maxCoeff() > scale) return false;
    }
    return true;
}

bool is_positive(const AlgebraElement& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    const double floor = -tol * (1.0 + alg_norm(a));
    for (int k = 0; k < a.num_blocks(); ++k) {
        const Matrix herm = 0.5 * (a.block(k) + a.block(k).adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < floor) return false;
    }
    return true;
}

bool order_leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
    return is_positive(b - a, tol);
}

std::vector<double> hermitian_spectrum(const AlgebraElement& a) {
    std::vector<double> eigs;
    for (int k = 0; k < a.num_blocks(); ++k) {
        const Matrix herm = 0.5 * (a.block(k) + a.block(k).adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
        for (int i = 0; i < es.eigenvalues().size(); ++i) eigs.push_back(es.eigenvalues()(i));
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

AlgebraElement invert(const AlgebraElement& a, double tol) {
    if (alg_min_singular(a) <= tol * alg_norm(a))
        throw SingularElement("algebra element is numerically singular");
    AlgebraElement out = a;
    for (int k = 0; k < out.num_blocks(); ++k) out.block(k) = a.block(k).inverse().eval();
    return out;
}

bool is_central(const AlgebraElement& a, double tol) {
    const double scale = tol * (1.0 + alg_norm(a));
    for (int k = 0; k < a.num_blocks(); ++k) {
        const int n = static_cast<int>(a.block(k).rows());
        const Complex lambda = a.block(k).trace() / static_cast<double>(n);
        const Matrix diff = a.block(k) - lambda * Matrix::Identity(n, n);
        if (diff.cwiseAbs().maxCoeff() > scale) return false;
    }
    return true;
}

std::vector<Complex> central_scalars(const AlgebraElement& a) {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(a.num_blocks()));
    for (int k = 0; k < a.num_blocks(); ++k)
        out.push_back(a.block(k).trace() / static_cast<double>(a.block(k).rows()));
    return out;
}

bool is_unitary(const AlgebraElement& a, double tol) {
    for (int k = 0; k < a.num_blocks(); ++k) {
        const int n = static_cast<int>(a.block(k).rows());
        const Matrix id = Matrix::Identity(n, n);
        if ((a.block(k).adjoint() * a.block(k) - id).cwiseAbs().maxCoeff() > tol) return false;
        if ((a.block(k) * a.block(k).adjoint() - id).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

AlgebraElement abs_squared(const AlgebraElement& a) { return a.adjoint() * a; }

}  // namespace csframe
