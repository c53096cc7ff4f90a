#include "doctest.h"

#include <cstdio>

#include "csframe/serialize.hpp"
#include "csframe/toolkit.hpp"
#include "helpers.hpp"

using namespace csframe;
using namespace csframe::testing;

TEST_CASE("frame generator") {
    AlgebraDescriptor desc({2, 3});

    // Determinism.
    const FrameMap a = gen_frame(desc, 2, 4, 42, 8.0);
    const FrameMap b = gen_frame(desc, 2, 4, 42, 8.0);
    CHECK(dump_json(encode(a)) == dump_json(encode(b)));
    const FrameMap c = gen_frame(desc, 2, 4, 43, 8.0);
    CHECK(dump_json(encode(a)) != dump_json(encode(c)));

    // Conditioning.
    for (int s = 0; s < 20; ++s) {
        const double target = 1.0 + (s % 4) * 5.0;
        const FrameMap F = gen_frame(desc, 2, 4, 100 + s, target);
        const FrameBounds bd = order_bounds(F);
        CHECK(bd.upper / bd.lower <= target * (1.0 + 1e-6));
    }

    // condition_target = 1 produces a tight frame.
    const FrameBounds tight = order_bounds(gen_frame(desc, 2, 5, 7, 1.0));
    CHECK(tight.upper / tight.lower <= 1.0 + 1e-6);

    CHECK_THROWS_AS(gen_frame(desc, 3, 2, 1, 4.0), UnsatisfiableRequest);
    CHECK_THROWS_AS(gen_frame(desc, 2, 4, 1, 0.5), UnsatisfiableRequest);
}

TEST_CASE("perturbation generator") {
    AlgebraDescriptor c1({1});
    const FrameMap F = FrameMap::standard_basis(c1, 2);

    // epsilon = 0 returns F itself.
    const FrameMap same = gen_perturbation(F, 0.0, PerturbMode::bessel_difference, 3);
    for (int i = 0; i < F.size(); ++i) CHECK(module_norm(same.vector(i) - F.vector(i)) == 0.0);

    // Bessel-difference mode: the difference has bound exactly ε².
    const double eps = 0.3;
    const FrameMap G = gen_perturbation(F, eps, PerturbMode::bessel_difference, 4);
    const double n = order_bounds(frame_difference(F, G)).upper;
    CHECK(n == doctest::Approx(eps * eps).epsilon(1e-9));
    const AlgebraElement one = AlgebraElement::identity(c1);
    CHECK(run_theorem("pert-FG-B",
                      Scenario{c1, F.space(), F, G, std::nullopt, one, -one, {}, 0}, 50, 5)
              .verdict == Verdict::verified);
    CHECK_THROWS_AS(gen_perturbation(F, 1.5, PerturbMode::bessel_difference, 4),
                    HypothesisUnreachable);

    // Synthesis-norm mode: γ certificate equals ε.
    const FrameMap Gs = gen_perturbation(F, 0.25, PerturbMode::synthesis_norm, 5);
    CHECK(op_norm(synthesis_op(F) - synthesis_op(Gs)) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK_THROWS_AS(gen_perturbation(F, 5.0, PerturbMode::synthesis_norm, 5), HypothesisUnreachable);

    // Dual-based mode: β = ∫‖F−K‖‖G‖ equals ε.
    const FrameMap K = gen_perturbation(F, 0.4, PerturbMode::dual_based, 6);
    const FrameMap dual = canonical_dual(F);
    double beta = 0.0;
    for (int i = 0; i < F.size(); ++i)
        beta += F.space().weight(i) * module_norm(F.vector(i) - K.vector(i)) *
                module_norm(dual.vector(i));
    CHECK(beta == doctest::Approx(0.4).epsilon(1e-9));
    CHECK_THROWS_AS(gen_perturbation(F, 1.0, PerturbMode::dual_based, 6), HypothesisUnreachable);
}

TEST_CASE("central and unitary generators") {
    AlgebraDescriptor single({2});
    const AlgebraElement c = gen_central(single, 1);
    CHECK(is_central(c, 1e-12));
    // Center of a single matrix block is scalar.
    const auto lam = central_scalars(c);
    CHECK(alg_norm(c - AlgebraElement::scalar(single, lam[0])) < 1e-12);

    AlgebraDescriptor desc({2, 3});
    const AlgebraElement c2 = gen_central(desc, 2);
    CHECK(is_central(c2, 1e-12));
    const auto lams = central_scalars(c2);
    CHECK(std::abs(lams[0] - lams[1]) > 1e-6);  // genuinely non-scalar
    CHECK(alg_min_singular(c2) > 0.1);

    for (int s = 0; s < 20; ++s) {
        const AlgebraElement u = gen_unitary(desc, 100 + s);
        CHECK(is_unitary(u, 1e-10));
    }
    CHECK(dump_json(encode(gen_unitary(desc, 9))) == dump_json(encode(gen_unitary(desc, 9))));
}

TEST_CASE("serialization round trips") {
    // A full scenario with frames, scalars, and constants.
    const Scenario sc = gen_scenario("pert-d", 77);
    const Json j = encode(sc);
    const Scenario back = decode_scenario(j);
    CHECK(dump_json(encode(back)) == dump_json(j));  // byte-stable save → load → save

    // Bit-exact doubles through text.
    const Json reparsed = Json::parse(dump_json(j));
    const Scenario twice = decode_scenario(reparsed);
    REQUIRE(twice.K.has_value());
    for (int i = 0; i < twice.K->size(); ++i)
        CHECK(module_norm(twice.K->vector(i) - sc.K->vector(i)) == 0.0);

    // Operator entries round trip.
    Rng rng(5);
    const AdjointableOperator T = random_adjointable(sc.descriptor, 2, 3, rng);
    const AdjointableOperator back_t = decode_operator(encode(T), sc.descriptor);
    for (int k = 0; k < sc.descriptor.num_blocks(); ++k)
        CHECK((back_t.block(k) - T.block(k)).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(decode_scenario(Json{{"descriptor", 3}}), ParseError);
    CHECK_THROWS_AS(decode_measure_space(Json{{"weights", Json::array({1.0, -2.0})}}), ParseError);
}

TEST_CASE("tolerance defaults and the environment override") {
    setenv("CSFRAME_TOL", "1e-6", 1);
    const Tol t = Tol::defaults();
    CHECK(t.algebraic == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(t.rank == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(t.sampled == doctest::Approx(1e-4).epsilon(1e-12));
    unsetenv("CSFRAME_TOL");
    CHECK(Tol::defaults().algebraic == 1e-9);
}

TEST_CASE("predicted sum bounds are positive exactly on the feasible region") {
    AlgebraDescriptor desc({2});
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const AlgebraElement a1 = gen_central(desc, rng.next_u64());
        const AlgebraElement a2 = gen_central(desc, rng.next_u64());
        const double A = rng.uniform(0.2, 2.0);
        const double B = A + rng.uniform(0.0, 2.0);
        const double cap = A / std::pow(alg_norm(invert(a1)) * alg_norm(a2), 2.0);
        const double n = rng.uniform(0.0, 2.0) * cap;
        if (n < cap) {
            CHECK(predict_sum_bounds(A, B, n, a1, a2).lower > 0.0);
        } else {
            CHECK_THROWS_AS(predict_sum_bounds(A, B, n, a1, a2), HypothesisViolated);
        }
    }
}

TEST_CASE("theorem registry and dispatch") {
    CHECK(theorem_registry().size() == 10);
    CHECK_THROWS_AS(gen_scenario("nope", 1), UnknownTheorem);
    CHECK_THROWS_AS(falsify("nope", 1, 1), UnknownTheorem);

    // Every registered theorem verifies on its own generated scenarios, and
    // a verified conclusion always sits on a satisfied hypothesis.
    for (const auto& id : theorem_registry()) {
        for (std::uint64_t s = 0; s < 3; ++s) {
            const Scenario sc = gen_scenario(id, 50 + s);
            const TheoremReport r = run_theorem(id, sc, 40, 60 + s);
            CAPTURE(id);
            CAPTURE(s);
            CAPTURE(r.detail);
            CHECK(r.verdict == Verdict::verified);
            if (r.verdict == Verdict::verified) CHECK(r.hypothesis_satisfied);
        }
    }

    // Reports are deterministic given (scenario, trials, seed).
    const Scenario sc = gen_scenario("sum3", 5);
    const TheoremReport r1 = run_theorem("sum3", sc, 50, 6);
    const TheoremReport r2 = run_theorem("sum3", sc, 50, 6);
    CHECK(dump_json(encode(r1)) == dump_json(encode(r2)));
}

TEST_CASE("falsification campaigns") {
    const CampaignReport empty = falsify("sum3", 0, 1);
    CHECK(empty.trials == 0);
    CHECK(empty.verified == 0);

    const CampaignReport c = falsify("sum3", 40, 2024, 30);
    CHECK(c.falsified == 0);
    CHECK(c.hypothesis_violated == 0);
    CHECK(c.verified == 40);
    CHECK(c.has_tightness);
    CHECK(c.max_upper_tightness <= 1.0 + 1e-7);
    CHECK(c.min_lower_tightness >= 1.0 - 1e-7);

    // Campaign reports are deterministic.
    CHECK(dump_json(encode(falsify("pert-d", 10, 9, 20))) ==
          dump_json(encode(falsify("pert-d", 10, 9, 20))));
}
