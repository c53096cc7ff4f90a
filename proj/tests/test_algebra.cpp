#include "doctest.h"

#include "csframe/algebra.hpp"
#include "csframe/rng.hpp"
#include "helpers.hpp"

using namespace csframe;
using namespace csframe::testing;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("descriptor shape bookkeeping") {
    AlgebraDescriptor desc({2, 3});
    CHECK(desc.num_blocks() == 2);
    CHECK(desc.dim() == 13);
    CHECK(desc.total_matrix_size() == 5);
    CHECK_THROWS_AS(AlgebraDescriptor(std::vector<int>{}), DimensionMismatch);
    CHECK_THROWS_AS(AlgebraDescriptor({2, 0}), DimensionMismatch);
}

TEST_CASE("alg_norm on fixed elements") {
    for (const auto& desc : standard_descriptors())
        CHECK(alg_norm(AlgebraElement::identity(desc)) == doctest::Approx(1.0).epsilon(1e-14));

    AlgebraDescriptor m2({2});
    AlgebraElement diag = AlgebraElement::zero(m2);
    diag.block(0)(0, 0) = 3.0;
    diag.block(0)(1, 1) = -4.0;
    CHECK(alg_norm(diag) == doctest::Approx(4.0).epsilon(1e-14));

    AlgebraElement nil = AlgebraElement::zero(m2);
    nil.block(0)(0, 1) = 2.0;
    CHECK(alg_norm(nil) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("positivity and order") {
    const double tol = 1e-9;
    for (const auto& desc : standard_descriptors()) {
        const AlgebraElement one = AlgebraElement::identity(desc);
        CHECK(is_positive(one, tol));
        CHECK_FALSE(is_positive(-one, tol));
        CHECK(order_leq(AlgebraElement::zero(desc), one, tol));
        CHECK(order_leq(one, 2.0 * one, tol));

        Rng rng(7);
        for (int t = 0; t < 50; ++t) {
            const AlgebraElement b = random_algebra_element(desc, rng);
            CHECK(is_positive(b.adjoint() * b, tol));
        }
    }

    AlgebraDescriptor m2({2});
    AlgebraElement a = AlgebraElement::zero(m2), b = AlgebraElement::zero(m2);
    a.block(0)(0, 0) = 1.0;
    a.block(0)(1, 1) = 3.0;
    b.block(0)(0, 0) = 2.0;
    b.block(0)(1, 1) = 2.0;
    CHECK_FALSE(order_leq(a, b, 1e-9));  // difference has eigenvalue −1
    CHECK(order_leq(a, a, 1e-9));
}

TEST_CASE("order is antisymmetric within tolerance") {
    AlgebraDescriptor desc({2, 3});
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        const AlgebraElement a0 = random_algebra_element(desc, rng);
        const AlgebraElement a = a0 + a0.adjoint();
        const AlgebraElement p = random_algebra_element(desc, rng);
        const AlgebraElement b = a + (1e-12 / (1.0 + alg_norm(p))) * (p.adjoint() * p);
        if (order_leq(a, b, 1e-9) && order_leq(b, a, 1e-9))
            CHECK(alg_norm(a - b) <= 1e-9 * (1.0 + alg_norm(a)));
    }
}

TEST_CASE("order is transitive on sampled triples") {
    AlgebraDescriptor desc({2, 3});
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const AlgebraElement a = random_algebra_element(desc, rng);
        const AlgebraElement h = a + a.adjoint();
        const AlgebraElement p1 = random_algebra_element(desc, rng);
        const AlgebraElement p2 = random_algebra_element(desc, rng);
        const AlgebraElement b = h + p1.adjoint() * p1;
        const AlgebraElement c = b + p2.adjoint() * p2;
        CHECK(order_leq(h, b, 1e-9));
        CHECK(order_leq(b, c, 1e-9));
        CHECK(order_leq(h, c, 1e-9));
    }
}

TEST_CASE("inversion") {
    AlgebraDescriptor desc({2});
    const AlgebraElement one = AlgebraElement::identity(desc);
    CHECK(alg_norm(invert(one) - one) < 1e-14);
    CHECK(alg_norm(invert(2.0 * one) - 0.5 * one) < 1e-14);

    AlgebraElement nil = AlgebraElement::zero(desc);
    nil.block(0)(0, 1) = 1.0;
    CHECK_THROWS_AS(invert(nil), SingularElement);

    // invert ∘ invert = identity on well-conditioned elements.
    for (const auto& d : standard_descriptors()) {
        Rng rng(23);
        for (int t = 0; t < 100; ++t) {
            const AlgebraElement b = random_algebra_element(d, rng);
            const AlgebraElement a = b.adjoint() * b + AlgebraElement::identity(d);
            const double scale = alg_norm(a);
            CHECK(alg_norm(invert(invert(a)) - a) <= 1e-9 * scale);
            CHECK(alg_norm(a * invert(a) - AlgebraElement::identity(d)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("centrality") {
    AlgebraDescriptor m2({2});
    CHECK(is_central(AlgebraElement::identity(m2), 1e-9));
    AlgebraElement diag = AlgebraElement::zero(m2);
    diag.block(0)(0, 0) = 1.0;
    diag.block(0)(1, 1) = 2.0;
    CHECK_FALSE(is_central(diag, 1e-9));

    AlgebraDescriptor desc({2, 3});
    const AlgebraElement a = AlgebraElement::central(desc, {Complex(3.0, 0.0), -2.0 * I});
    CHECK(is_central(a, 1e-9));
    // Centrality against the generating matrix units.
    for (int k = 0; k < desc.num_blocks(); ++k)
        for (int r = 0; r < desc.block_size(k); ++r)
            for (int c = 0; c < desc.block_size(k); ++c) {
                const AlgebraElement e = AlgebraElement::matrix_unit(desc, k, r, c);
                CHECK(alg_norm(a * e - e * a) < 1e-12);
            }

    // Products of centrals are central and commute exactly.
    const AlgebraElement b = AlgebraElement::central(desc, {Complex(0.5, 1.0), Complex(-1.0, 0.25)});
    CHECK(is_central(a * b, 1e-12));
    CHECK(alg_norm(a * b - b * a) == 0.0);
}

TEST_CASE("unitarity") {
    AlgebraDescriptor desc({2, 3});
    CHECK(is_unitary(AlgebraElement::identity(desc), 1e-12));
    CHECK_FALSE(is_unitary(2.0 * AlgebraElement::identity(desc), 1e-9));

    // Block rotations.
    AlgebraElement rot = AlgebraElement::identity(desc);
    const double t1 = 0.37, t2 = 1.21;
    rot.block(0) << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
    rot.block(1) = Matrix::Identity(3, 3);
    rot.block(1)(0, 0) = std::cos(t2);
    rot.block(1)(0, 1) = -std::sin(t2);
    rot.block(1)(1, 0) = std::sin(t2);
    rot.block(1)(1, 1) = std::cos(t2);
    CHECK(is_unitary(rot, 1e-12));
}

TEST_CASE("ring laws and C*-identity on random elements") {
    for (const auto& desc : standard_descriptors()) {
        Rng rng(101);
        for (int t = 0; t < 1000; ++t) {
            const AlgebraElement a = random_algebra_element(desc, rng);
            const AlgebraElement b = random_algebra_element(desc, rng);
            const AlgebraElement c = random_algebra_element(desc, rng);
            const double scale =
                1.0 + alg_norm(a) * alg_norm(b) * alg_norm(c) + alg_norm(a) + alg_norm(b);
            CHECK(alg_norm((a * b) * c - a * (b * c)) <= 1e-12 * scale);
            CHECK(alg_norm((a + b).adjoint() - (a.adjoint() + b.adjoint())) <= 1e-12 * scale);
            CHECK(alg_norm((a * b).adjoint() - b.adjoint() * a.adjoint()) <= 1e-12 * scale);
            CHECK(alg_norm(AlgebraElement::identity(desc) * a - a) == 0.0);

            const double na = alg_norm(a);
            CHECK(alg_norm(abs_squared(a)) == doctest::Approx(na * na).epsilon(1e-9));
            CHECK(alg_norm(a * b) <= alg_norm(a) * alg_norm(b) + 1e-9 * scale);
        }
    }
}
