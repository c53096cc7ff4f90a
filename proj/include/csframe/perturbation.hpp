#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csframe/frame.hpp"

namespace csframe {

// Constants appearing in the perturbation hypotheses. The algebra scalars
// a1, a2 travel separately (see Scenario in toolkit.hpp).
struct PerturbationConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;    // operator-distance budget
    double bessel_n = 0.0;  // Bessel bound of a difference family
};

enum class Verdict { verified, hypothesis_violated, falsified };
std::string verdict_name(Verdict v);

// Outcome of one theorem checker run. A conclusion may only be reported
// "verified" when the hypothesis verdict is satisfied; "falsified" means the
// hypotheses held but a conclusion failed, which for proven statements
// signals a tolerance problem or a bug and is always accompanied by detail.
struct TheoremReport {
    std::string theorem;
    bool hypothesis_satisfied = false;
    std::vector<std::string> hypothesis_failures;
    std::map<std::string, double> predicted;
    std::map<std::string, double> measured;
    Verdict verdict = Verdict::hypothesis_violated;
    std::string detail;
    std::uint64_t seed = 0;
    int trials = 0;
};

// Norm-sandwich roots for the frame a1·F + a2·G when G is Bessel with bound
// N: ((‖a1⁻¹‖⁻¹√A − ‖a2‖√N)², (‖a1‖√B + ‖a2‖√N)²). Requires central
// invertible a1, a2 and N‖a2‖² < A‖a1⁻¹‖⁻²; throws HypothesisViolated naming
// the failing condition.
FrameBounds predict_sum_bounds(double A, double B, double N, const AlgebraElement& a1,
                               const AlgebraElement& a2, const Tol& tol = Tol::defaults());

// Checks that a1·F + a2·G is a frame inside the predicted sandwich.
TheoremReport verify_sum_theorem(const FrameMap& F, const FrameMap& G, const AlgebraElement& a1,
                                 const AlgebraElement& a2, int trials, std::uint64_t seed,
                                 const Tol& tol = Tol::defaults());

// Given a2⁻¹G − a2⁻¹a1F Bessel with small bound, concludes G is a frame.
TheoremReport verify_bessel_difference(const FrameMap& F, const FrameMap& G,
                                       const AlgebraElement& a1, const AlgebraElement& a2,
                                       int trials, std::uint64_t seed,
                                       const Tol& tol = Tol::defaults());

// Randomized falsification scan of the three-term coefficient hypothesis
//   ‖∫ψ⟨a1F−a2G, f⟩‖ ≤ α‖∫ψ⟨a1F,f⟩‖ + β‖∫ψ⟨a2G,f⟩‖ + γ‖ψ‖
// over sampled (ψ, f): unit-sphere, small-norm, and eigen-direction f drive
// the verdict; the γ term does not scale with ‖f‖, so the hypothesis is
// checked under the ‖f‖ ≤ 1 normalization and the large-‖f‖ regime is
// scanned and reported separately. The sound operator-norm certificate
// (α = β = 0 with γ ≥ ‖T_{a1F} − T_{a2G}‖ guarantees the restricted
// hypothesis for every ψ) is reported alongside. Throws SmallnessViolated
// when the smallness precondition fails.
struct HypothesisScanReport {
    bool counterexample_found = false;  // within the ‖f‖ ≤ 1 normalization
    std::string witness;
    int samples = 0;
    double max_excess = 0.0;              // worst LHS − RHS, ‖f‖ ≤ 1 samples
    double max_excess_unrestricted = 0.0; // worst LHS − RHS, large-‖f‖ samples
    double smallness = 0.0;               // value of the max{...} expression
    double gamma_operator = 0.0;          // ‖T_{a1F} − T_{a2G}‖
    bool operator_certificate = false;    // α=β=0 and γ covers gamma_operator
    std::uint64_t seed = 0;
};
HypothesisScanReport pw_hypothesis_check(const FrameMap& F, const FrameMap& G,
                                         const AlgebraElement& a1, const AlgebraElement& a2,
                                         double alpha, double beta, double gamma, int trials,
                                         std::uint64_t seed, const Tol& tol = Tol::defaults());

// Frame bounds guaranteed for G by the coefficient-perturbation argument.
FrameBounds pw_conclusion_bounds(double A, double B, double alpha, double beta, double gamma,
                                 const AlgebraElement& a1, const AlgebraElement& a2);

// The bridging operator K = T_{a1⁻¹a2·G} ∘ T_F* ∘ S_F⁻¹ together with its
// measured and guaranteed norms. Throws NotInvertible when K fails the
// numerical invertibility test (a conclusion failure, never silent).
struct BridgeReport {
    AdjointableOperator op;
    double norm = 0.0;
    double inverse_norm = 0.0;
    double predicted_norm = 0.0;
    double predicted_inverse_norm = 0.0;
};
BridgeReport build_cross_reconstruction(const FrameMap& F, const FrameMap& G,
                                        const AlgebraElement& a1, const AlgebraElement& a2,
                                        double alpha, double beta, double gamma,
                                        const Tol& tol = Tol::defaults());

// Coefficients of f against the canonical dual: ψ_f(ω) = ⟨f, S_F⁻¹F(ω)⟩;
// satisfies ‖ψ_f‖ ≤ ‖f‖/√A.
L2Element canonical_coefficients(const FrameMap& F, const ModuleElement& f,
                                 double tol = Tol{}.rank);

// End-to-end coefficient-perturbation check: hypothesis scan, bridge
// operator, conclusion bounds.
TheoremReport verify_pw_theorem(const FrameMap& F, const FrameMap& G, const AlgebraElement& a1,
                                const AlgebraElement& a2, const PerturbationConstants& constants,
                                int trials, std::uint64_t seed, const Tol& tol = Tol::defaults());

// Riesz-type preservation under the synthesis-norm hypothesis
//   ‖∫ψ(a1F−a2G)‖ ≤ α‖∫ψ a1F‖ + β‖∫ψ a2G‖ + γ‖ψ‖,
// with conclusion sandwich on the singular values of T_G.
TheoremReport verify_riesz_preservation(const FrameMap& F, const FrameMap& G,
                                        const AlgebraElement& a1, const AlgebraElement& a2,
                                        const PerturbationConstants& constants, int trials,
                                        std::uint64_t seed, const Tol& tol = Tol::defaults());

// γ = 0 synthesis-norm hypothesis with α, β < 1: kernels of T_F and T_G
// agree and Riesz-typeness transfers both ways.
TheoremReport verify_kernel_corollary(const FrameMap& F, const FrameMap& G, double alpha,
                                      double beta, int trials, std::uint64_t seed,
                                      const Tol& tol = Tol::defaults());

// Dual-assisted perturbation: G a dual of F with upper bound D,
// α = ∫‖F−K‖² dμ, β = ∫‖F−K‖‖G‖ dμ < 1 give a frame K with the mixing
// operator L = R_{G,K} controlled by ‖L‖ ≤ 1+β, ‖L⁻¹‖ ≤ 1/(1−β).
TheoremReport verify_dual_perturbation(const FrameMap& F, const FrameMap& G, const FrameMap& K,
                                       int trials, std::uint64_t seed,
                                       const Tol& tol = Tol::defaults());

// The mixed frame operator R_{F,G} = T_G ∘ T_F*, f ↦ ∫⟨f,F(ω)⟩G(ω) dμ.
AdjointableOperator mixed_frame_operator(const FrameMap& F, const FrameMap& G);

// Surjective R_{F,G} forces G to be a frame; conversely, for Riesz-type F
// and frame G the operator is surjective.
TheoremReport check_R_surjective(const FrameMap& F, const FrameMap& G,
                                 const Tol& tol = Tol::defaults());

// For Riesz-type F: R_{F,G} invertible ⟺ G Riesz-type.
TheoremReport check_R_invertible(const FrameMap& F, const FrameMap& G,
                                 const Tol& tol = Tol::defaults());

// ‖R_{F,G} − S_F‖ ≤ λ < A forces G to be a frame, with
// min_singular(R*) ≥ A − λ; Riesz-typeness transfers both ways. When λ is
// not supplied it is measured as ‖R_{F,G} − S_F‖.
TheoremReport verify_RS_theorem(const FrameMap& F, const FrameMap& G,
                                std::optional<double> lambda = std::nullopt,
                                const Tol& tol = Tol::defaults());

}  // namespace csframe
