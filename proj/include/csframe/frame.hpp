#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csframe/module.hpp"
#include "csframe/parallel.hpp"
#include "csframe/rng.hpp"

namespace csframe {

// Finite measure space: m weighted atoms, all weights positive.
struct MeasureSpace {
    std::vector<double> weights;

    MeasureSpace() = default;
    explicit MeasureSpace(std::vector<double> w);
    static MeasureSpace uniform(int m);

    int size() const { return static_cast<int>(weights.size()); }
    double weight(int i) const { return weights[static_cast<std::size_t>(i)]; }

    bool operator==(const MeasureSpace& other) const { return weights == other.weights; }
    bool operator!=(const MeasureSpace& other) const { return !(*this == other); }
};

// A map φ: Ω → A, i.e. an element of L²(Ω,A) with the weighted inner
// product ⟨φ,ψ⟩ = Σ_i μ_i φ(ω_i) ψ(ω_i)*.
class L2Element {
public:
    L2Element() = default;
    L2Element(MeasureSpace space, AlgebraDescriptor desc, std::vector<AlgebraElement> values);

    static L2Element zero(const MeasureSpace& space, const AlgebraDescriptor& desc);
    // Indicator at atom i with the given algebra value.
    static L2Element indicator(const MeasureSpace& space, int i, const AlgebraElement& value);

    const MeasureSpace& space() const { return space_; }
    const AlgebraDescriptor& descriptor() const { return desc_; }
    int size() const { return static_cast<int>(values_.size()); }
    const AlgebraElement& value(int i) const { return values_[static_cast<std::size_t>(i)]; }
    AlgebraElement& value(int i) { return values_[static_cast<std::size_t>(i)]; }

    L2Element& operator+=(const L2Element& rhs);
    L2Element& operator-=(const L2Element& rhs);
    friend L2Element operator+(L2Element lhs, const L2Element& rhs) { return lhs += rhs; }
    friend L2Element operator-(L2Element lhs, const L2Element& rhs) { return lhs -= rhs; }
    friend L2Element operator*(Complex c, const L2Element& phi);
    friend L2Element operator*(double c, const L2Element& phi);

private:
    MeasureSpace space_;
    AlgebraDescriptor desc_;
    std::vector<AlgebraElement> values_;
};

AlgebraElement l2_inner(const L2Element& phi, const L2Element& psi);
double l2_norm(const L2Element& phi);

// Weighted coordinate slices of an L² element for algebra block k: atom i
// contributes √μ_i · (value rows), making the slice metric match the
// weighted inner product; synthesis/analysis operators below act on these.
Matrix l2_slices(const L2Element& phi, int k);
L2Element l2_from_slices(const MeasureSpace& space, const AlgebraDescriptor& desc,
                         const std::vector<Matrix>& s);
Vector flatten_l2(const L2Element& phi);

// A family F: Ω → U (m module vectors over weighted atoms). No frame
// property is assumed; the predicates below decide.
class FrameMap {
public:
    FrameMap() = default;
    FrameMap(MeasureSpace space, AlgebraDescriptor desc, int d, std::vector<ModuleElement> vectors);

    // m = d atoms with unit weights, F(ω_j) = e_j; a Parseval frame.
    static FrameMap standard_basis(const AlgebraDescriptor& desc, int d);

    const MeasureSpace& space() const { return space_; }
    const AlgebraDescriptor& descriptor() const { return desc_; }
    int d() const { return d_; }
    int size() const { return static_cast<int>(vectors_.size()); }
    const ModuleElement& vector(int i) const { return vectors_[static_cast<std::size_t>(i)]; }
    ModuleElement& vector(int i) { return vectors_[static_cast<std::size_t>(i)]; }

private:
    MeasureSpace space_;
    AlgebraDescriptor desc_;
    int d_ = 0;
    std::vector<ModuleElement> vectors_;
};

struct FrameBounds {
    enum class Semantics { order, norm };
    double lower = 0.0;
    double upper = 0.0;
    Semantics semantics = Semantics::order;
};

// Synthesis operator T_F: L²(Ω,A) → U (domain rank = number of atoms, acting
// on weighted slices), its adjoint, and S_F = T_F ∘ T_F*.
AdjointableOperator synthesis_op(const FrameMap& F, Exec policy = Exec::parallel);
AdjointableOperator analysis_op(const FrameMap& F, Exec policy = Exec::parallel);
AdjointableOperator frame_operator(const FrameMap& F, Exec policy = Exec::parallel);

// Pointwise definitions, kept as an independent route from the operator
// representation: Σ_i μ_i φ(ω_i)·F(ω_i) and ω ↦ ⟨f, F(ω)⟩.
ModuleElement synthesis_apply(const FrameMap& F, const L2Element& phi);
L2Element analysis_apply(const FrameMap& F, const ModuleElement& f);

// ⟨S_F f, f⟩ = ∫ ⟨f,F(ω)⟩⟨F(ω),f⟩ dμ, computed by the pointwise route.
AlgebraElement frame_quadratic_form(const FrameMap& F, const ModuleElement& f);

// Optimal order-semantics constants: extreme eigenvalues of S_F.
FrameBounds order_bounds(const FrameMap& F);
bool is_frame(const FrameMap& F, double tol = Tol{}.rank);

// Sampled norm-semantics scan of A‖⟨f,f⟩‖ ≤ ‖⟨S_F f,f⟩‖ ≤ B‖⟨f,f⟩‖.
struct NormBoundsReport {
    double lower_tested = 0.0;
    double upper_tested = 0.0;
    int samples = 0;
    int violations = 0;
    double min_ratio = 0.0;  // empirically tightest constants
    double max_ratio = 0.0;
    double worst_gap = 0.0;  // largest excursion past a tested bound
    std::string witness;     // description of the worst violating sample
    std::uint64_t seed = 0;
};
NormBoundsReport norm_bounds_check(const FrameMap& F, double lower, double upper, int trials,
                                   std::uint64_t seed, double tol = Tol{}.sampled,
                                   Exec policy = Exec::parallel);
// Empirical norm-semantics bounds (min/max sampled ratio).
FrameBounds norm_bounds_estimate(const FrameMap& F, int trials, std::uint64_t seed,
                                 Exec policy = Exec::parallel);

FrameMap canonical_dual(const FrameMap& F, double tol = Tol{}.rank);
bool is_dual_pair(const FrameMap& F, const FrameMap& G, double tol = Tol{}.rank);

// Riesz-type frame: analysis operator onto (unique dual). Throws NotAFrame.
bool is_riesz_type(const FrameMap& F, double tol = Tol{}.rank);
// Total version: false instead of throwing when F is not a frame.
bool riesz_type_or_false(const FrameMap& F, double tol = Tol{}.rank);

// μ-completeness: ⟨f,F(ω)⟩ = 0 for all ω forces f = 0 (analysis injective).
bool is_mu_complete(const FrameMap& F, double tol = Tol{}.rank);

// Two-sided synthesis sandwich over measurable subsets plus μ-completeness.
// Enumerates all nonempty subsets when m ≤ 20, otherwise requires a sampled
// subset list (bitmasks). The per-subset singular values are exact extremal
// constants, so no φ sampling is needed per subset; sampled φ run on the
// full set as witnesses.
struct RieszBasisReport {
    bool mu_complete = false;
    bool sandwich_at_given = false;  // mu-complete and all subsets pass at (A,B)
    bool is_riesz_basis = false;     // some valid constants exist
    bool riesz_type = false;         // cross-check predicate
    bool consistent = false;         // is_riesz_basis == riesz_type
    double best_lower = 0.0;         // tightest valid constants over subsets
    double best_upper = 0.0;
    std::size_t subsets_checked = 0;
    std::string failure;
};
RieszBasisReport riesz_basis_check(const FrameMap& F, double lower, double upper,
                                   double tol = Tol{}.sampled,
                                   const std::vector<std::uint64_t>* subset_sample = nullptr,
                                   Exec policy = Exec::parallel);

// ω ↦ a·F(ω).
FrameMap scale_frame(const AlgebraElement& a, const FrameMap& F);

// ω ↦ a1·F(ω) + a2·G(ω).
FrameMap frame_linear_combination(const AlgebraElement& a1, const FrameMap& F,
                                  const AlgebraElement& a2, const FrameMap& G);

// Pointwise difference of the underlying maps.
FrameMap frame_difference(const FrameMap& F, const FrameMap& G);

// Largest m with ‖T_F φ‖ ≥ m ‖φ‖ (the synthesis lower constant of a
// Riesz-type frame).
double synthesis_lower_bound(const FrameMap& F);

// Unit-norm module elements along the eigenvectors of S_F, one per block
// eigenpair; the structured witnesses used by the samplers.
std::vector<ModuleElement> frame_eigen_directions(const FrameMap& F);

// Seeded random elements used by the samplers and generators.
ModuleElement random_module_element(const AlgebraDescriptor& desc, int d, Rng& rng);
L2Element random_l2_element(const MeasureSpace& space, const AlgebraDescriptor& desc, Rng& rng);

}  // namespace csframe
