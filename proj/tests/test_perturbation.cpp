#include "doctest.h"

#include "csframe/perturbation.hpp"
#include "csframe/toolkit.hpp"
#include "helpers.hpp"

using namespace csframe;
using namespace csframe::testing;

namespace {

// G differing from F only at atom `at`, shifted by `eps` in coordinate 0.
FrameMap shifted_frame(const FrameMap& F, int at, double eps) {
    FrameMap G = F;
    ModuleElement v = G.vector(at);
    v.coord(0) += AlgebraElement::scalar(F.descriptor(), eps);
    G.vector(at) = v;
    return G;
}

}  // namespace

TEST_CASE("predicted sum bounds") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);

    const FrameBounds b = predict_sum_bounds(1.0, 1.0, 0.01, one, one);
    CHECK(b.lower == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.21).epsilon(1e-12));
    CHECK(b.semantics == FrameBounds::Semantics::norm);

    // N = 0 collapses to (A‖a1⁻¹‖⁻², B‖a1‖²), a2 irrelevant.
    const FrameBounds z = predict_sum_bounds(3.0, 5.0, 0.0, 2.0 * one, one);
    CHECK(z.lower == doctest::Approx(3.0 / 0.25).epsilon(1e-12));
    CHECK(z.upper == doctest::Approx(5.0 * 4.0).epsilon(1e-12));

    const FrameBounds c = predict_sum_bounds(4.0, 4.0, 1.0, 2.0 * one, one);
    CHECK(c.lower == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(c.upper == doctest::Approx(25.0).epsilon(1e-12));

    CHECK_THROWS_AS(predict_sum_bounds(1.0, 1.0, 2.0, one, one), HypothesisViolated);
    AlgebraDescriptor m2({2});
    AlgebraElement diag = AlgebraElement::zero(m2);
    diag.block(0)(0, 0) = 1.0;
    diag.block(0)(1, 1) = 2.0;
    CHECK_THROWS_AS(predict_sum_bounds(1.0, 1.0, 0.0, diag, AlgebraElement::identity(m2)),
                    HypothesisViolated);
}

TEST_CASE("sum theorem checker") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    // G = 0: the combination is a frame with N = 0.
    const FrameMap zero = scale_frame(AlgebraElement::zero(c1), F);
    const TheoremReport r0 = verify_sum_theorem(F, zero, one, one, 100, 1);
    CHECK(r0.verdict == Verdict::verified);

    // G = 0.1 F with a1 = 1, a2 = −1 gives H = 0.9 F.
    const FrameMap G = scale_frame(AlgebraElement::scalar(c1, 0.1), F);
    const TheoremReport r1 = verify_sum_theorem(F, G, one, -one, 200, 2);
    CHECK(r1.verdict == Verdict::verified);
    CHECK(r1.predicted.at("lower") == doctest::Approx(0.81).epsilon(1e-9));
    CHECK(r1.predicted.at("upper") == doctest::Approx(1.21).epsilon(1e-9));
    CHECK(r1.measured.at("order_lower") == doctest::Approx(0.81).epsilon(1e-9));
    CHECK(r1.measured.at("order_upper") == doctest::Approx(0.81).epsilon(1e-9));

    // Oversized Bessel bound: hypothesis refused, no claim made.
    const FrameMap big = scale_frame(AlgebraElement::scalar(c1, 3.0), F);
    const TheoremReport r2 = verify_sum_theorem(F, big, one, one, 50, 3);
    CHECK(r2.verdict == Verdict::hypothesis_violated);
    CHECK_FALSE(r2.hypothesis_satisfied);
}

TEST_CASE("Bessel-difference corollary") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    // G = F: the difference vanishes.
    const TheoremReport r0 = verify_bessel_difference(F, F, one, -one, 50, 1);
    CHECK(r0.verdict == Verdict::verified);
    CHECK(r0.predicted.at("N") == doctest::Approx(0.0).epsilon(1e-12));

    // The fixture G = 0.9 F: N = 0.01 < A = 1, bounds (0.81, 0.81).
    const FrameMap G = scale_frame(AlgebraElement::scalar(c1, 0.9), F);
    const TheoremReport r1 = verify_bessel_difference(F, G, one, -one, 200, 2);
    CHECK(r1.verdict == Verdict::verified);
    CHECK(r1.predicted.at("N") == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(r1.measured.at("order_lower") == doctest::Approx(0.81).epsilon(1e-9));
    CHECK(r1.measured.at("order_upper") == doctest::Approx(0.81).epsilon(1e-9));

    // N ≥ A: the checker refuses.
    const FrameMap far = scale_frame(AlgebraElement::scalar(c1, 4.0), F);
    const TheoremReport r2 = verify_bessel_difference(F, far, one, -one, 50, 3);
    CHECK(r2.verdict == Verdict::hypothesis_violated);
}

TEST_CASE("coefficient hypothesis scan") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    // Exact match: hypothesis holds identically with zero constants.
    const HypothesisScanReport exact = pw_hypothesis_check(F, F, one, one, 0, 0, 0, 200, 5);
    CHECK_FALSE(exact.counterexample_found);
    CHECK(exact.gamma_operator <= 1e-12);
    CHECK(exact.operator_certificate);

    // Small shift with a sufficient γ.
    const FrameMap G = shifted_frame(F, 0, 0.05);
    const HypothesisScanReport ok = pw_hypothesis_check(F, G, one, one, 0, 0, 0.2, 500, 6);
    CHECK_FALSE(ok.counterexample_found);
    CHECK(ok.operator_certificate);
    CHECK(ok.gamma_operator == doctest::Approx(0.05).epsilon(1e-9));

    // γ below the measured best constant: a witness must appear.
    const HypothesisScanReport bad = pw_hypothesis_check(F, G, one, one, 0, 0, 0.01, 500, 7);
    CHECK(bad.counterexample_found);
    CHECK(!bad.witness.empty());

    CHECK_THROWS_AS(pw_hypothesis_check(F, G, one, one, 1.2, 0.9, 0.0, 10, 8), SmallnessViolated);
}

TEST_CASE("conclusion bounds of the coefficient perturbation") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);

    // Zero constants return exactly (A, B).
    const FrameBounds exact = pw_conclusion_bounds(0.7, 2.3, 0, 0, 0, one, one);
    CHECK(exact.lower == 0.7);
    CHECK(exact.upper == 2.3);

    const FrameBounds g = pw_conclusion_bounds(1.0, 1.0, 0, 0, 0.2, one, one);
    CHECK(g.lower == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(g.upper == doctest::Approx(1.44).epsilon(1e-12));

    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        const double A = rng.uniform(0.5, 2.0);
        const double B = A + rng.uniform(0.0, 2.0);
        const double alpha = rng.uniform(0.0, 0.3);
        const double beta = rng.uniform(0.0, 0.3);
        const double gamma = rng.uniform(0.0, 0.2) * std::sqrt(A);
        if (std::max({beta, alpha + gamma / std::sqrt(A)}) >= 1.0) continue;
        const FrameBounds b = pw_conclusion_bounds(A, B, alpha, beta, gamma, one, one);
        CHECK(b.lower <= b.upper);
    }
}

TEST_CASE("bridge operator") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = three_vector_frame();

    // G = a2⁻¹a1 F collapses the bridge to the identity.
    const BridgeReport triv = build_cross_reconstruction(F, F, one, one, 0, 0, 0);
    CHECK(op_norm(triv.op - AdjointableOperator::identity(c1, 2)) <= 1e-9);
    CHECK(triv.norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(triv.inverse_norm == doctest::Approx(1.0).epsilon(1e-9));

    const FrameMap std2 = FrameMap::standard_basis(c1, 2);
    const FrameMap G = shifted_frame(std2, 0, 0.05);
    const double gamma = op_norm(synthesis_op(std2) - synthesis_op(G)) * (1.0 + 1e-12);
    const BridgeReport b = build_cross_reconstruction(std2, G, one, one, 0, 0, gamma);
    CHECK(op_norm(b.op - AdjointableOperator::identity(c1, 2)) <=
          0.05 * op_norm(compose(analysis_op(std2), invert_op(frame_operator(std2)))) + 1e-12);
    CHECK(b.norm <= b.predicted_norm + 1e-7);
    CHECK(b.inverse_norm <= b.predicted_inverse_norm + 1e-7);

    // Canonical coefficients obey ‖ψ_f‖ ≤ ‖f‖/√A.
    Rng rng(19);
    const double A = order_bounds(F).lower;
    for (int t = 0; t < 100; ++t) {
        const ModuleElement f = random_module_element(c1, 2, rng);
        CHECK(l2_norm(canonical_coefficients(F, f)) <=
              module_norm(f) / std::sqrt(A) + 1e-9);
    }
}

TEST_CASE("coefficient perturbation end to end") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = three_vector_frame();

    PerturbationConstants zero;
    const TheoremReport same = verify_pw_theorem(F, F, one, one, zero, 100, 3);
    CHECK(same.verdict == Verdict::verified);
    CHECK(same.predicted.at("lower") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(same.predicted.at("upper") == doctest::Approx(2.0).epsilon(1e-9));

    // A non-frame G fails the hypothesis scan before any conclusion.
    const FrameMap broken = scale_frame(AlgebraElement::zero(c1), F);
    const TheoremReport bad = verify_pw_theorem(F, broken, one, one, zero, 200, 4);
    CHECK(bad.verdict == Verdict::hypothesis_violated);

    // Generated γ-only certificates across all three descriptors.
    for (int s = 0; s < 30; ++s) {
        const Scenario sc = gen_scenario("pert1", 600 + static_cast<std::uint64_t>(s));
        const TheoremReport r = run_theorem("pert1", sc, 60, 900 + static_cast<std::uint64_t>(s));
        CHECK(r.verdict == Verdict::verified);
    }
}

TEST_CASE("Riesz-type preservation") {
    AlgebraDescriptor c1({1});
    const AlgebraElement one = AlgebraElement::identity(c1);
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    PerturbationConstants zero;
    const TheoremReport same = verify_riesz_preservation(F, F, one, one, zero, 100, 3);
    CHECK(same.verdict == Verdict::verified);
    // Sandwich collapses to (M, √B).
    CHECK(same.predicted.at("lower") == doctest::Approx(synthesis_lower_bound(F)).epsilon(1e-12));
    CHECK(same.predicted.at("upper") == doctest::Approx(std::sqrt(order_bounds(F).upper)).epsilon(1e-12));

    for (int s = 0; s < 30; ++s) {
        const Scenario sc = gen_scenario("pert2", 700 + static_cast<std::uint64_t>(s));
        const TheoremReport r = run_theorem("pert2", sc, 60, 1000 + static_cast<std::uint64_t>(s));
        CHECK(r.verdict == Verdict::verified);
    }

    // Redundant F is rejected up front.
    const TheoremReport rej = verify_riesz_preservation(three_vector_frame(), three_vector_frame(),
                                                        one, one, zero, 10, 4);
    CHECK(rej.verdict == Verdict::hypothesis_violated);
}

TEST_CASE("kernel corollary") {
    AlgebraDescriptor c1({1});

    // Riesz-type F: kernels are trivial on both sides.
    const FrameMap F = FrameMap::standard_basis(c1, 2);
    const FrameMap G = scale_frame(AlgebraElement::scalar(c1, 0.9), F);
    const TheoremReport r = verify_kernel_corollary(F, G, 0.11, 0.0, 200, 5);
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.measured.at("riesz_F") == 1.0);
    CHECK(r.measured.at("riesz_G") == 1.0);

    // Redundant F: both sides fail Riesz-typeness, kernels still agree.
    const FrameMap F2 = three_vector_frame();
    const FrameMap G2 = scale_frame(AlgebraElement::scalar(c1, 0.95), F2);
    const TheoremReport r2 = verify_kernel_corollary(F2, G2, 0.06, 0.0, 200, 6);
    CHECK(r2.verdict == Verdict::verified);
    CHECK(r2.measured.at("riesz_F") == 0.0);
    CHECK(r2.measured.at("riesz_G") == 0.0);
    CHECK(r2.measured.at("kernel_projector_gap") <= 1e-9);

    // Operator-composed pairs from the generator.
    for (int s = 0; s < 30; ++s) {
        const Scenario sc = gen_scenario("kernel", 800 + static_cast<std::uint64_t>(s));
        const TheoremReport rr = run_theorem("kernel", sc, 60, 1100 + static_cast<std::uint64_t>(s));
        CHECK(rr.verdict == Verdict::verified);
    }

    CHECK(verify_kernel_corollary(F, G, 1.2, 0.0, 10, 7).verdict == Verdict::hypothesis_violated);
}

TEST_CASE("dual-assisted perturbation fixture") {
    AlgebraDescriptor c1({1});
    const FrameMap F = FrameMap::standard_basis(c1, 2);
    const FrameMap G = F;  // its own canonical dual, D = 1

    FrameMap K = F;
    for (int i = 0; i < 2; ++i) {
        ModuleElement v = K.vector(i);
        v.coord(0) += AlgebraElement::scalar(c1, 0.1);
        K.vector(i) = v;
    }

    const TheoremReport r = verify_dual_perturbation(F, G, K, 300, 11);
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.predicted.at("alpha") == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(r.predicted.at("beta") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.measured.at("mixing_norm") <= 1.2 + 1e-9);
    CHECK(r.measured.at("mixing_inverse_norm") <= 1.25 + 1e-7);
    CHECK(r.measured.at("mixing_identity_gap") <= 0.2 + 1e-9);
    CHECK(r.measured.at("synthesis_norm") <= std::sqrt(0.02) + 1.0 + 1e-9);
    CHECK(r.measured.at("order_lower") >= 0.64 - 1e-7);
    CHECK(r.measured.at("order_upper") <= 1.3029);

    // K = F: everything collapses.
    const TheoremReport triv = verify_dual_perturbation(F, G, F, 100, 12);
    CHECK(triv.verdict == Verdict::verified);
    CHECK(triv.predicted.at("alpha") == 0.0);
    CHECK(triv.predicted.at("beta") == 0.0);

    // β ≥ 1 is refused without claims.
    FrameMap far = F;
    for (int i = 0; i < 2; ++i) far.vector(i) = 12.0 * far.vector(i);
    const TheoremReport rej = verify_dual_perturbation(F, G, far, 10, 13);
    CHECK(rej.verdict == Verdict::hypothesis_violated);
}

TEST_CASE("mixed frame operator") {
    AlgebraDescriptor c1({1});
    const FrameMap F = three_vector_frame();

    // R_{F,F} is the frame operator.
    CHECK(op_norm(mixed_frame_operator(F, F) - frame_operator(F)) <= 1e-10);

    // R_{G,F} with G the canonical dual is the identity (the dual-pair
    // condition T_F T_G* = I).
    const FrameMap G = canonical_dual(F);
    CHECK(op_norm(mixed_frame_operator(G, F) - AdjointableOperator::identity(c1, 2)) <= 1e-9);

    // R_{F,0} = 0.
    const FrameMap zero = scale_frame(AlgebraElement::zero(c1), F);
    CHECK(op_norm(mixed_frame_operator(F, zero)) == 0.0);

    for (int s = 0; s < 100; ++s) {
        const auto& descs = standard_descriptors();
        const AlgebraDescriptor desc = descs[static_cast<std::size_t>(s) % 3];
        const FrameMap H = gen_frame(desc, 2, 2 + s % 3, 5000 + s, 16.0);
        CHECK(op_norm(mixed_frame_operator(H, H) - frame_operator(H)) <=
              1e-10 * std::max(1.0, op_norm(frame_operator(H))));
    }
}

TEST_CASE("mixed-operator surjectivity and invertibility checkers") {
    AlgebraDescriptor c1({1});
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    const TheoremReport r0 = check_R_surjective(F, F);
    CHECK(r0.verdict == Verdict::verified);
    CHECK(r0.measured.at("surjective") == 1.0);

    const FrameMap zero = scale_frame(AlgebraElement::zero(c1), F);
    const TheoremReport r1 = check_R_surjective(F, zero);
    CHECK(r1.verdict == Verdict::verified);  // no claim fires
    CHECK(r1.measured.at("surjective") == 0.0);

    const TheoremReport r2 = check_R_invertible(F, F);
    CHECK(r2.verdict == Verdict::verified);
    CHECK(r2.measured.at("invertible") == 1.0);
    CHECK(r2.measured.at("G_riesz_type") == 1.0);

    // Rank-broken G: both sides of the equivalence are false.
    FrameMap Gdef = gen_frame_on_space(c1, 2, F.space(), 31, 8.0);
    Gdef.vector(1) = ModuleElement::zero(c1, 2);
    const TheoremReport r3 = check_R_invertible(F, Gdef);
    CHECK(r3.verdict == Verdict::verified);
    CHECK(r3.measured.at("invertible") == 0.0);
    CHECK(r3.measured.at("G_riesz_type") == 0.0);

    // Redundant F is rejected.
    CHECK(check_R_invertible(three_vector_frame(), three_vector_frame()).verdict ==
          Verdict::hypothesis_violated);
}

TEST_CASE("near frame-operator perturbation") {
    AlgebraDescriptor c1({1});
    const FrameMap F = three_vector_frame();

    // G = F: λ = 0 and min_singular(R) = A.
    const TheoremReport r0 = verify_RS_theorem(F, F);
    CHECK(r0.verdict == Verdict::verified);
    CHECK(r0.measured.at("min_singular") >= order_bounds(F).lower - 1e-9);

    // Small perturbation with measured λ < A.
    for (int s = 0; s < 30; ++s) {
        const Scenario sc = gen_scenario("R-S", 900 + static_cast<std::uint64_t>(s));
        const TheoremReport r = run_theorem("R-S", sc, 40, 1200 + static_cast<std::uint64_t>(s));
        CHECK(r.verdict == Verdict::verified);
    }

    // λ ≥ A is refused.
    const FrameMap far = scale_frame(AlgebraElement::scalar(c1, 5.0), F);
    CHECK(verify_RS_theorem(F, far).verdict == Verdict::hypothesis_violated);
}
