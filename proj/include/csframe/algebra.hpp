#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "csframe/errors.hpp"
#include "csframe/tolerances.hpp"

namespace csframe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Block sizes (n_1, ..., n_K) of the scalar algebra ⊕_k M_{n_k}(C).
class AlgebraDescriptor {
public:
    AlgebraDescriptor() = default;
    explicit AlgebraDescriptor(std::vector<int> block_sizes);

    const std::vector<int>& block_sizes() const { return sizes_; }
    int num_blocks() const { return static_cast<int>(sizes_.size()); }
    int block_size(int k) const { return sizes_[static_cast<std::size_t>(k)]; }
    int dim() const { return dim_; }                  // Σ n_k², the C-dimension
    int total_matrix_size() const { return msize_; }  // Σ n_k

    bool operator==(const AlgebraDescriptor& other) const { return sizes_ == other.sizes_; }
    bool operator!=(const AlgebraDescriptor& other) const { return !(*this == other); }

private:
    std::vector<int> sizes_;
    int dim_ = 0;
    int msize_ = 0;
};

// One element of ⊕_k M_{n_k}(C). Immutable in practice: operations return
// new values.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraDescriptor desc, std::vector<Matrix> blocks);

    static AlgebraElement zero(const AlgebraDescriptor& desc);
    static AlgebraElement identity(const AlgebraDescriptor& desc);
    // c * 1_A (central for any c).
    static AlgebraElement scalar(const AlgebraDescriptor& desc, Complex c);
    // Blockwise scalars: ⊕_k λ_k I_{n_k}; the general central element.
    static AlgebraElement central(const AlgebraDescriptor& desc, const std::vector<Complex>& lambdas);
    // e_{row,col} in block `k`, zero elsewhere.
    static AlgebraElement matrix_unit(const AlgebraDescriptor& desc, int k, int row, int col);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const Matrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }
    Matrix& block(int k) { return blocks_[static_cast<std::size_t>(k)]; }

    AlgebraElement adjoint() const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
    friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
    friend AlgebraElement operator-(const AlgebraElement& a);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(Complex c, const AlgebraElement& a);
    friend AlgebraElement operator*(double c, const AlgebraElement& a);

    bool same_shape(const AlgebraElement& other) const { return desc_ == other.desc_; }

private:
    AlgebraDescriptor desc_;
    std::vector<Matrix> blocks_;
};

// C*-norm: max over blocks of the largest singular value. Zero iff a = 0.
double alg_norm(const AlgebraElement& a);

// Smallest singular value across all blocks (invertibility margin).
double alg_min_singular(const AlgebraElement& a);

bool is_hermitian(const AlgebraElement& a, double tol);

// C*-positivity: Hermitian within tol*(1+alg_norm(a)) entrywise and every
// block eigenvalue ≥ -tol*(1+alg_norm(a)).
bool is_positive(const AlgebraElement& a, double tol);

// a ≤ b in the C*-order, i.e. b - a positive.
bool order_leq(const AlgebraElement& a, const AlgebraElement& b, double tol);

// Eigenvalues of the Hermitian part, as one sorted list over all blocks.
std::vector<double> hermitian_spectrum(const AlgebraElement& a);

// Blockwise inverse. Throws SingularElement when any block's smallest
// singular value is ≤ tol * alg_norm(a).
AlgebraElement invert(const AlgebraElement& a, double tol = Tol{}.rank);

// True iff every block is λ_k I within tol*(1+alg_norm(a)); equivalent to
// commuting with all of A.
bool is_central(const AlgebraElement& a, double tol);

// Extracts the blockwise scalars of a central element.
std::vector<Complex> central_scalars(const AlgebraElement& a);

// a*a = aa* = 1_A within tol.
bool is_unitary(const AlgebraElement& a, double tol);

// |a|² = a*a.
AlgebraElement abs_squared(const AlgebraElement& a);

}  // namespace csframe
