#include "csframe/module.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>

namespace csframe {

ModuleElement::ModuleElement(AlgebraDescriptor desc, int d, std::vector<AlgebraElement> coords)
    : desc_(std::move(desc)), d_(d), coords_(std::move(coords)) {
    if (d_ < 1) throw DimensionMismatch("module rank must be positive");
    if (static_cast<int>(coords_.size()) != d_) throw DimensionMismatch("coordinate count != d");
    for (const auto& c : coords_)
        if (c.descriptor() != desc_) throw DescriptorMismatch("coordinate descriptor mismatch");
}

ModuleElement ModuleElement::zero(const AlgebraDescriptor& desc, int d) {
    std::vector<AlgebraElement> coords(static_cast<std::size_t>(d), AlgebraElement::zero(desc));
    return {desc, d, std::move(coords)};
}

ModuleElement ModuleElement::basis(const AlgebraDescriptor& desc, int d, int j) {
    ModuleElement f = zero(desc, d);
    f.coord(j) = AlgebraElement::identity(desc);
    return f;
}

Matrix ModuleElement::slices(int k) const {
    const int n = desc_.block_size(k);
    Matrix s(d_ * n, n);
    for (int i = 0; i < d_; ++i) s.middleRows(i * n, n) = coords_[static_cast<std::size_t>(i)].block(k).transpose();
    return s;
}

ModuleElement ModuleElement::from_slices(const AlgebraDescriptor& desc, int d, const std::vector<Matrix>& s) {
    std::vector<AlgebraElement> coords;
    coords.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<Matrix> blocks;
        blocks.reserve(static_cast<std::size_t>(desc.num_blocks()));
        for (int k = 0; k < desc.num_blocks(); ++k) {
            const int n = desc.block_size(k);
            blocks.push_back(s[static_cast<std::size_t>(k)].middleRows(i * n, n).transpose());
        }
        coords.emplace_back(desc, std::move(blocks));
    }
    return {desc, d, std::move(coords)};
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& rhs) {
    if (desc_ != rhs.desc_ || d_ != rhs.d_) throw DimensionMismatch("module element shapes differ");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& rhs) {
    if (desc_ != rhs.desc_ || d_ != rhs.d_) throw DimensionMismatch("module element shapes differ");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

ModuleElement operator*(Complex c, const ModuleElement& f) {
    ModuleElement out = f;
    for (int i = 0; i < out.d(); ++i) out.coord(i) = c * out.coord(i);
    return out;
}

ModuleElement operator*(double c, const ModuleElement& f) { return Complex(c, 0.0) * f; }

ModuleElement operator*(const AlgebraElement& a, const ModuleElement& f) {
    if (a.descriptor() != f.descriptor()) throw DescriptorMismatch("module action descriptor mismatch");
    ModuleElement out = f;
    for (int i = 0; i < out.d(); ++i) out.coord(i) = a * out.coord(i);
    return out;
}

AlgebraElement inner(const ModuleElement& f, const ModuleElement& g) {
    if (f.descriptor() != g.descriptor() || f.d() != g.d())
        throw DimensionMismatch("inner product shapes differ");
    AlgebraElement acc = AlgebraElement::zero(f.descriptor());
    for (int i = 0; i < f.d(); ++i)
        for (int k = 0; k < acc.num_blocks(); ++k)
            acc.block(k) += f.coord(i).block(k) * g.coord(i).block(k).adjoint();
    return acc;
}

double module_norm(const ModuleElement& f) { return std::sqrt(alg_norm(inner(f, f))); }

AdjointableOperator::AdjointableOperator(AlgebraDescriptor desc, int d_in, int d_out, std::vector<Matrix> blocks)
    : desc_(std::move(desc)), d_in_(d_in), d_out_(d_out), blocks_(std::move(blocks)) {
    if (d_in_ < 1 || d_out_ < 1) throw DimensionMismatch("operator dimensions must be positive");
    if (static_cast<int>(blocks_.size()) != desc_.num_blocks())
        throw DimensionMismatch("operator block count != descriptor blocks");
    for (int k = 0; k < desc_.num_blocks(); ++k) {
        const int n = desc_.block_size(k);
        if (blocks_[static_cast<std::size_t>(k)].rows() != d_out_ * n ||
            blocks_[static_cast<std::size_t>(k)].cols() != d_in_ * n)
            throw DimensionMismatch("operator block shape mismatch");
    }
}

AdjointableOperator AdjointableOperator::identity(const AlgebraDescriptor& desc, int d) {
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        blocks.push_back(Matrix::Identity(d * n, d * n));
    }
    return {desc, d, d, std::move(blocks)};
}

AdjointableOperator AdjointableOperator::zero(const AlgebraDescriptor& desc, int d_in, int d_out) {
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        blocks.push_back(Matrix::Zero(d_out * n, d_in * n));
    }
    return {desc, d_in, d_out, std::move(blocks)};
}

AdjointableOperator AdjointableOperator::from_entries(const AlgebraDescriptor& desc,
                                                      const std::vector<std::vector<AlgebraElement>>& entries) {
    const int d_in = static_cast<int>(entries.size());
    if (d_in < 1) throw DimensionMismatch("empty entry matrix");
    const int d_out = static_cast<int>(entries.front().size());
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        Matrix b = Matrix::Zero(d_out * n, d_in * n);
        for (int i = 0; i < d_in; ++i) {
            if (static_cast<int>(entries[static_cast<std::size_t>(i)].size()) != d_out)
                throw DimensionMismatch("ragged entry matrix");
            for (int j = 0; j < d_out; ++j) {
                const AlgebraElement& e = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (e.descriptor() != desc) throw DescriptorMismatch("entry descriptor mismatch");
                b.block(j * n, i * n, n, n) = e.block(k).transpose();
            }
        }
        blocks.push_back(std::move(b));
    }
    return {desc, d_in, d_out, std::move(blocks)};
}

AdjointableOperator AdjointableOperator::central_multiplier(const AlgebraElement& a, int d, double tol) {
    if (!is_central(a, tol)) throw DescriptorMismatch("central_multiplier requires a central element");
    const auto lambdas = central_scalars(a);
    std::vector<Matrix> blocks;
    for (int k = 0; k < a.descriptor().num_blocks(); ++k) {
        const int n = a.descriptor().block_size(k);
        blocks.push_back(lambdas[static_cast<std::size_t>(k)] * Matrix::Identity(d * n, d * n));
    }
    return {a.descriptor(), d, d, std::move(blocks)};
}

std::vector<std::vector<AlgebraElement>> AdjointableOperator::entries() const {
    std::vector<std::vector<AlgebraElement>> out(static_cast<std::size_t>(d_in_));
    for (int i = 0; i < d_in_; ++i)
        for (int j = 0; j < d_out_; ++j) out[static_cast<std::size_t>(i)].push_back(entry(i, j));
    return out;
}

AlgebraElement AdjointableOperator::entry(int i, int j) const {
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc_.num_blocks(); ++k) {
        const int n = desc_.block_size(k);
        blocks.push_back(block(k).block(j * n, i * n, n, n).transpose());
    }
    return {desc_, std::move(blocks)};
}

AdjointableOperator& AdjointableOperator::operator+=(const AdjointableOperator& rhs) {
    if (desc_ != rhs.desc_ || d_in_ != rhs.d_in_ || d_out_ != rhs.d_out_)
        throw DimensionMismatch("operator shapes differ");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
    return *this;
}

AdjointableOperator& AdjointableOperator::operator-=(const AdjointableOperator& rhs) {
    if (desc_ != rhs.desc_ || d_in_ != rhs.d_in_ || d_out_ != rhs.d_out_)
        throw DimensionMismatch("operator shapes differ");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
    return *this;
}

AdjointableOperator operator*(Complex c, const AdjointableOperator& T) {
    AdjointableOperator out = T;
    for (int k = 0; k < out.descriptor().num_blocks(); ++k) out.block(k) *= c;
    return out;
}

AdjointableOperator operator*(double c, const AdjointableOperator& T) { return Complex(c, 0.0) * T; }

ModuleElement apply(const AdjointableOperator& T, const ModuleElement& f) {
    if (T.descriptor() != f.descriptor()) throw DescriptorMismatch("operator/element descriptor mismatch");
    if (T.d_in() != f.d()) throw DimensionMismatch("operator domain != element rank");
    std::vector<Matrix> out;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) out.push_back(T.block(k) * f.slices(k));
    return ModuleElement::from_slices(T.descriptor(), T.d_out(), out);
}

AdjointableOperator compose(const AdjointableOperator& outer, const AdjointableOperator& inner) {
    if (outer.descriptor() != inner.descriptor()) throw DescriptorMismatch("operator descriptor mismatch");
    if (outer.d_in() != inner.d_out()) throw DimensionMismatch("composition dimension mismatch");
    std::vector<Matrix> blocks;
    for (int k = 0; k < outer.descriptor().num_blocks(); ++k) blocks.push_back(outer.block(k) * inner.block(k));
    return {outer.descriptor(), inner.d_in(), outer.d_out(), std::move(blocks)};
}

AdjointableOperator adjoint_op(const AdjointableOperator& T) {
    std::vector<Matrix> blocks;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) blocks.push_back(T.block(k).adjoint());
    return {T.descriptor(), T.d_out(), T.d_in(), std::move(blocks)};
}

double op_norm(const AdjointableOperator& T) {
    double best = 0.0;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) {
        Eigen::JacobiSVD<Matrix> svd(T.block(k));
        best = std::max(best, svd.singularValues()(0));
    }
    return best;
}

double min_singular(const AdjointableOperator& T) {
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) {
        const auto& b = T.block(k);
        if (b.cols() > b.rows()) return 0.0;  // kernel forced by shape
        Eigen::JacobiSVD<Matrix> svd(b);
        worst = std::min(worst, svd.singularValues().minCoeff());
    }
    return worst;
}

bool is_surjective(const AdjointableOperator& T, double tol) {
    const double scale = std::max(op_norm(T), std::numeric_limits<double>::min());
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) {
        const auto& b = T.block(k);
        if (b.rows() > b.cols()) return false;  // cannot reach full row rank
        Eigen::JacobiSVD<Matrix> svd(b);
        if (svd.singularValues().minCoeff() <= tol * scale) return false;
    }
    return true;
}

std::pair<bool, double> is_bounded_below(const AdjointableOperator& T, double tol) {
    const double m = min_singular(T);
    return {m > tol * std::max(op_norm(T), std::numeric_limits<double>::min()), m};
}

bool is_injective(const AdjointableOperator& T, double tol) { return is_bounded_below(T, tol).first; }

std::vector<double> self_adjoint_spectrum(const AdjointableOperator& T) {
    if (T.d_in() != T.d_out()) throw DimensionMismatch("spectrum requires a square operator");
    std::vector<double> eigs;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) {
        const Matrix herm = 0.5 * (T.block(k) + T.block(k).adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
        for (int i = 0; i < es.eigenvalues().size(); ++i) eigs.push_back(es.eigenvalues()(i));
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

AdjointableOperator invert_op(const AdjointableOperator& T, double tol) {
    if (T.d_in() != T.d_out()) throw DimensionMismatch("inverse requires a square operator");
    if (min_singular(T) <= tol * op_norm(T)) throw SingularOperator("operator is numerically singular");
    std::vector<Matrix> blocks;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) blocks.push_back(T.block(k).inverse().eval());
    return {T.descriptor(), T.d_out(), T.d_in(), std::move(blocks)};
}

Vector flatten_vec(const ModuleElement& f) {
    const auto& desc = f.descriptor();
    Vector v(f.d() * desc.dim());
    Eigen::Index off = 0;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const Matrix s = f.slices(k);
        for (int r = 0; r < desc.block_size(k); ++r) {
            v.segment(off, s.rows()) = s.col(r);
            off += s.rows();
        }
    }
    return v;
}

ModuleElement unflatten_vec(const AlgebraDescriptor& desc, int d, const Vector& v) {
    if (v.size() != d * desc.dim()) throw DimensionMismatch("flattened vector length mismatch");
    std::vector<Matrix> s;
    Eigen::Index off = 0;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        Matrix sk(d * n, n);
        for (int r = 0; r < n; ++r) {
            sk.col(r) = v.segment(off, d * n);
            off += d * n;
        }
        s.push_back(std::move(sk));
    }
    return ModuleElement::from_slices(desc, d, s);
}

Eigen::MatrixXcd flatten_op(const AdjointableOperator& T) {
    const auto& desc = T.descriptor();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(T.d_out() * desc.dim(), T.d_in() * desc.dim());
    Eigen::Index row = 0, col = 0;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        const auto& b = T.block(k);
        for (int r = 0; r < n; ++r) {
            M.block(row, col, b.rows(), b.cols()) = b;
            row += b.rows();
            col += b.cols();
        }
    }
    return M;
}

}  // namespace csframe
