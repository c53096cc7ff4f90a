#pragma once

#include <utility>
#include <vector>

#include "csframe/algebra.hpp"

namespace csframe {

// An element of the free left module U = A^d with the A-valued inner
// product ⟨f,g⟩ = Σ_i f_i g_i*.
class ModuleElement {
public:
    ModuleElement() = default;
    ModuleElement(AlgebraDescriptor desc, int d, std::vector<AlgebraElement> coords);

    static ModuleElement zero(const AlgebraDescriptor& desc, int d);
    // j-th standard basis vector: coord j = 1_A, others 0.
    static ModuleElement basis(const AlgebraDescriptor& desc, int d, int j);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    int d() const { return d_; }
    const AlgebraElement& coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    AlgebraElement& coord(int i) { return coords_[static_cast<std::size_t>(i)]; }

    // Coordinate slices for algebra block k, the working representation of
    // all operator actions. Column r of the returned (d·n_k) × n_k matrix
    // stacks the r-th rows of the k-blocks of all d coordinates; an
    // A-linear operator acts on slices independently, by one fixed complex
    // matrix per algebra block (see AdjointableOperator).
    Matrix slices(int k) const;
    static ModuleElement from_slices(const AlgebraDescriptor& desc, int d, const std::vector<Matrix>& s);

    ModuleElement& operator+=(const ModuleElement& rhs);
    ModuleElement& operator-=(const ModuleElement& rhs);
    friend ModuleElement operator+(ModuleElement lhs, const ModuleElement& rhs) { return lhs += rhs; }
    friend ModuleElement operator-(ModuleElement lhs, const ModuleElement& rhs) { return lhs -= rhs; }
    friend ModuleElement operator*(Complex c, const ModuleElement& f);
    friend ModuleElement operator*(double c, const ModuleElement& f);
    // Module action a·f (left multiplication on every coordinate).
    friend ModuleElement operator*(const AlgebraElement& a, const ModuleElement& f);

private:
    AlgebraDescriptor desc_;
    int d_ = 0;
    std::vector<AlgebraElement> coords_;
};

AlgebraElement inner(const ModuleElement& f, const ModuleElement& g);
double module_norm(const ModuleElement& f);

// An adjointable A-linear map A^{d_in} → A^{d_out}, stored per algebra block
// as the complex matrix acting on coordinate slices: block k has shape
// (d_out·n_k) × (d_in·n_k). This per-block form is a faithful
// *-representation: composition is matrix product, the adjoint is the
// blockwise conjugate transpose, and operator norms / spectra / singular
// values of the blocks are exactly the module-level quantities.
class AdjointableOperator {
public:
    AdjointableOperator() = default;
    AdjointableOperator(AlgebraDescriptor desc, int d_in, int d_out, std::vector<Matrix> blocks);

    static AdjointableOperator identity(const AlgebraDescriptor& desc, int d);
    static AdjointableOperator zero(const AlgebraDescriptor& desc, int d_in, int d_out);
    // From the d_in × d_out matrix of algebra entries M_{ij}; the action is
    // (Tf)_j = Σ_i f_i · M_{ij}.
    static AdjointableOperator from_entries(const AlgebraDescriptor& desc,
                                            const std::vector<std::vector<AlgebraElement>>& entries);
    // Multiplication operator f ↦ a·f for central a (A-linear only then).
    static AdjointableOperator central_multiplier(const AlgebraElement& a, int d, double tol = Tol{}.algebraic);

    std::vector<std::vector<AlgebraElement>> entries() const;
    AlgebraElement entry(int i, int j) const;

    const AlgebraDescriptor& descriptor() const { return desc_; }
    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }
    const Matrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }
    Matrix& block(int k) { return blocks_[static_cast<std::size_t>(k)]; }

    AdjointableOperator& operator+=(const AdjointableOperator& rhs);
    AdjointableOperator& operator-=(const AdjointableOperator& rhs);
    friend AdjointableOperator operator+(AdjointableOperator lhs, const AdjointableOperator& rhs) { return lhs += rhs; }
    friend AdjointableOperator operator-(AdjointableOperator lhs, const AdjointableOperator& rhs) { return lhs -= rhs; }
    friend AdjointableOperator operator*(Complex c, const AdjointableOperator& T);
    friend AdjointableOperator operator*(double c, const AdjointableOperator& T);

private:
    AlgebraDescriptor desc_;
    int d_in_ = 0;
    int d_out_ = 0;
    std::vector<Matrix> blocks_;
};

ModuleElement apply(const AdjointableOperator& T, const ModuleElement& f);

// outer ∘ inner (apply inner first).
AdjointableOperator compose(const AdjointableOperator& outer, const AdjointableOperator& inner);

// The unique adjoint: ⟨Tf,g⟩ = ⟨f, adjoint_op(T) g⟩.
AdjointableOperator adjoint_op(const AdjointableOperator& T);

// Operator norm (largest singular value over blocks); equals the module
// operator norm sup ‖Tf‖/‖f‖.
double op_norm(const AdjointableOperator& T);

// Largest m with ‖Tf‖ ≥ m‖f‖ (0 when T has a kernel); for square T this is
// the smallest singular value.
double min_singular(const AdjointableOperator& T);

bool is_surjective(const AdjointableOperator& T, double tol);
std::pair<bool, double> is_bounded_below(const AdjointableOperator& T, double tol);
bool is_injective(const AdjointableOperator& T, double tol);

// Sorted eigenvalues over all blocks of a self-adjoint operator.
std::vector<double> self_adjoint_spectrum(const AdjointableOperator& T);

AdjointableOperator invert_op(const AdjointableOperator& T, double tol = Tol{}.rank);

// Flattening isomorphism to plain complex linear algebra; kept for
// cross-checks and rank decisions against an independent route. flatten_op
// satisfies flatten_vec(apply(T,f)) = flatten_op(T) · flatten_vec(f).
Vector flatten_vec(const ModuleElement& f);
ModuleElement unflatten_vec(const AlgebraDescriptor& desc, int d, const Vector& v);
Eigen::MatrixXcd flatten_op(const AdjointableOperator& T);

}  // namespace csframe
