#include "csframe/toolkit.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace csframe {

namespace {

constexpr int kRetryBudget = 100;

std::vector<ModuleElement> random_family(const AlgebraDescriptor& desc, int d, int m, Rng& rng) {
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) vectors.push_back(random_module_element(desc, d, rng));
    return vectors;
}

FrameMap random_frame_map(const AlgebraDescriptor& desc, int d, const MeasureSpace& space, Rng& rng) {
    return {space, desc, d, random_family(desc, d, space.size(), rng)};
}

// Rebuilds frame vectors from a synthesis block set (undoing the √μ scaling).
FrameMap frame_from_synthesis(const AlgebraDescriptor& desc, int d, const MeasureSpace& space,
                              const std::vector<Matrix>& syn_blocks) {
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) {
        const double w = 1.0 / std::sqrt(space.weight(i));
        std::vector<Matrix> s;
        for (int k = 0; k < desc.num_blocks(); ++k) {
            const int n = desc.block_size(k);
            s.push_back(w * syn_blocks[static_cast<std::size_t>(k)].middleCols(i * n, n));
        }
        vectors.push_back(ModuleElement::from_slices(desc, d, s));
    }
    return {space, desc, d, std::move(vectors)};
}

}  // namespace

FrameMap gen_frame_on_space(const AlgebraDescriptor& desc, int d, const MeasureSpace& space,
                            std::uint64_t seed, double condition_target) {
    if (space.size() < d)
        throw UnsatisfiableRequest("a frame on A^" + std::to_string(d) + " needs at least " +
                                   std::to_string(d) + " atoms");
    if (condition_target < 1.0) throw UnsatisfiableRequest("condition target must be ≥ 1");

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        FrameMap raw = random_frame_map(desc, d, space, rng);
        const AdjointableOperator syn = synthesis_op(raw);

        // Per-block SVDs; singular values are blended toward the global
        // maximum, which pulls the bounds ratio down to the target while
        // keeping the singular directions random.
        std::vector<Eigen::JacobiSVD<Matrix>> svds;
        double sig_max = 0.0, sig_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < desc.num_blocks(); ++k) {
            svds.emplace_back(syn.block(k), Eigen::ComputeThinU | Eigen::ComputeThinV);
            sig_max = std::max(sig_max, svds.back().singularValues().maxCoeff());
            sig_min = std::min(sig_min, svds.back().singularValues().minCoeff());
        }
        if (!(sig_max > 0.0)) continue;

        const double target_ratio = std::sqrt(condition_target);  // on singular values
        double t = 1.0;
        if (sig_min <= 0.0 || sig_max / sig_min > target_ratio)
            t = sig_max * (1.0 - 1.0 / target_ratio) / (sig_max - sig_min);
        const double scale = rng.uniform(0.5, 1.5) / sig_max;

        std::vector<Matrix> blended;
        for (int k = 0; k < desc.num_blocks(); ++k) {
            Eigen::VectorXd sv = svds[static_cast<std::size_t>(k)].singularValues();
            for (int i = 0; i < sv.size(); ++i) sv(i) = scale * ((1.0 - t) * sig_max + t * sv(i));
            blended.push_back(svds[static_cast<std::size_t>(k)].matrixU() * sv.asDiagonal() *
                              svds[static_cast<std::size_t>(k)].matrixV().adjoint());
        }
        FrameMap out = frame_from_synthesis(desc, d, space, blended);
        const FrameBounds b = order_bounds(out);
        if (b.lower > 0.0 && b.upper / b.lower <= condition_target * (1.0 + 1e-9)) return out;
    }
    throw UnsatisfiableRequest("frame generation failed within the retry budget");
}

FrameMap gen_frame(const AlgebraDescriptor& desc, int d, int m, std::uint64_t seed,
                   double condition_target) {
    Rng rng(derive_seed(seed, 0x57454947ULL));
    std::vector<double> weights(static_cast<std::size_t>(m));
    for (double& w : weights) w = rng.uniform(0.5, 2.0);
    return gen_frame_on_space(desc, d, MeasureSpace(std::move(weights)), seed, condition_target);
}

FrameMap gen_perturbation(const FrameMap& F, double epsilon, PerturbMode mode, std::uint64_t seed) {
    if (epsilon < 0.0) throw UnsatisfiableRequest("epsilon must be ≥ 0");
    Rng rng(seed);
    FrameMap direction = random_frame_map(F.descriptor(), F.d(), F.space(), rng);
    const FrameBounds fb = order_bounds(F);

    switch (mode) {
        case PerturbMode::bessel_difference: {
            const double raw = order_bounds(direction).upper;
            if (epsilon > 0.0 && !(epsilon * epsilon < fb.lower))
                throw HypothesisUnreachable("requested Bessel bound " +
                                            std::to_string(epsilon * epsilon) +
                                            " is not below the lower frame bound");
            const double s = raw > 0.0 ? epsilon / std::sqrt(raw) : 0.0;
            const AlgebraElement one = AlgebraElement::identity(F.descriptor());
            return frame_linear_combination(one, F, s * one, direction);
        }
        case PerturbMode::synthesis_norm: {
            const double raw = op_norm(synthesis_op(direction));
            const double m_f = synthesis_lower_bound(F);
            const double cap = std::min(std::sqrt(fb.lower), m_f > 0.0 ? m_f : std::sqrt(fb.lower));
            if (epsilon > 0.0 && !(epsilon < cap))
                throw HypothesisUnreachable("synthesis-norm budget " + std::to_string(epsilon) +
                                            " is not below min(√A, M) = " + std::to_string(cap));
            const double s = raw > 0.0 ? epsilon / raw : 0.0;
            const AlgebraElement one = AlgebraElement::identity(F.descriptor());
            return frame_linear_combination(one, F, s * one, direction);
        }
        case PerturbMode::dual_based: {
            if (!(epsilon < 1.0))
                throw HypothesisUnreachable("dual-based budget must satisfy β < 1");
            const FrameMap dual = canonical_dual(F);
            double raw = 0.0;
            for (int i = 0; i < F.size(); ++i)
                raw += F.space().weight(i) * module_norm(direction.vector(i)) *
                       module_norm(dual.vector(i));
            const double s = raw > 0.0 ? epsilon / raw : 0.0;
            const AlgebraElement one = AlgebraElement::identity(F.descriptor());
            return frame_linear_combination(one, F, s * one, direction);
        }
    }
    throw UnsatisfiableRequest("unknown perturbation mode");
}

AlgebraElement gen_central(const AlgebraDescriptor& desc, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> lambdas;
    lambdas.reserve(static_cast<std::size_t>(desc.num_blocks()));
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const double r = rng.uniform(0.6, 1.8);
        const double t = rng.uniform(0.0, 6.283185307179586);
        lambdas.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return AlgebraElement::central(desc, lambdas);
}

AlgebraElement gen_unitary(const AlgebraDescriptor& desc, std::uint64_t seed) {
    Rng rng(seed);
    AlgebraElement a = AlgebraElement::zero(desc);
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        Matrix g(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        const Matrix r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < n; ++j) {
            const Complex rjj = r_mat(j, j);
            if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
        }
        a.block(k) = q;
    }
    return a;
}

const std::vector<std::string>& theorem_registry() {
    static const std::vector<std::string> registry = {
        "sum3",   "sum4",   "pert-FG-B",    "pert1",        "pert2",
        "kernel", "pert-d", "R-surjective", "R-invertible", "R-S"};
    return registry;
}

namespace {

AlgebraDescriptor pick_descriptor(Rng& rng) {
    switch (rng.uniform_int(0, 2)) {
        case 0: return AlgebraDescriptor({1});
        case 1: return AlgebraDescriptor({2});
        default: return AlgebraDescriptor({2, 3});
    }
}

// A random operator direction with unit operator norm.
AdjointableOperator random_operator(const AlgebraDescriptor& desc, int d, Rng& rng) {
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        Matrix b(d * n, d * n);
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) b(r, c) = rng.complex_normal();
        blocks.push_back(std::move(b));
    }
    AdjointableOperator op(desc, d, d, std::move(blocks));
    const double norm = op_norm(op);
    return norm > 0.0 ? (1.0 / norm) * op : op;
}

// Scales a raw family so that its Bessel bound (order upper bound) is n.
FrameMap with_bessel_bound(const FrameMap& raw, double n) {
    const double upper = order_bounds(raw).upper;
    const double s = upper > 0.0 ? std::sqrt(n / upper) : 0.0;
    return scale_frame(AlgebraElement::scalar(raw.descriptor(), s), raw);
}

}  // namespace

Scenario gen_scenario(const std::string& theorem, std::uint64_t seed) {
    const auto& registry = theorem_registry();
    if (std::find(registry.begin(), registry.end(), theorem) == registry.end())
        throw UnknownTheorem("unknown theorem id: " + theorem);

    Rng rng(derive_seed(seed, 0x5343454eULL));
    Scenario sc;
    sc.seed = seed;
    sc.descriptor = pick_descriptor(rng);
    const int d = rng.uniform_int(1, 3);
    const AlgebraElement one = AlgebraElement::identity(sc.descriptor);

    if (theorem == "sum3") {
        const int m = d + rng.uniform_int(0, 2);
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        sc.a1 = gen_central(sc.descriptor, derive_seed(seed, 2));
        sc.a2 = gen_central(sc.descriptor, derive_seed(seed, 3));
        const double a = order_bounds(*sc.F).lower;
        const double na1inv = alg_norm(invert(*sc.a1));
        const double na2 = alg_norm(*sc.a2);
        const double cap = a / (na1inv * na1inv * na2 * na2);
        Rng grng(derive_seed(seed, 4));
        FrameMap raw = random_frame_map(sc.descriptor, d, sc.space, grng);
        const double n = rng.uniform(0.05, 0.6) * cap;
        sc.G = with_bessel_bound(raw, n);
        sc.constants.bessel_n = n;
        return sc;
    }
    if (theorem == "sum4" || theorem == "pert-FG-B") {
        const int m = d + rng.uniform_int(0, 2);
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        if (theorem == "sum4") {
            sc.a1 = gen_central(sc.descriptor, derive_seed(seed, 2));
            sc.a2 = gen_central(sc.descriptor, derive_seed(seed, 3));
        } else {
            sc.a1 = one;
            sc.a2 = -one;
        }
        const double a = order_bounds(*sc.F).lower;
        const double na1inv = alg_norm(invert(*sc.a1));
        const double na2 = alg_norm(*sc.a2);
        const double cap = a / (na1inv * na1inv * na2 * na2);
        Rng grng(derive_seed(seed, 4));
        const double n = rng.uniform(0.05, 0.6) * cap;
        const FrameMap delta = with_bessel_bound(random_frame_map(sc.descriptor, d, sc.space, grng), n);
        // G = a1 F + a2 Δ, so that a2⁻¹G − a2⁻¹a1F = Δ.
        sc.G = frame_linear_combination(*sc.a1, *sc.F, *sc.a2, delta);
        sc.constants.bessel_n = n;
        return sc;
    }
    if (theorem == "pert1" || theorem == "pert2") {
        const int m = theorem == "pert2" ? d : d + rng.uniform_int(0, 2);
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        sc.a1 = gen_central(sc.descriptor, derive_seed(seed, 2));
        sc.a2 = gen_central(sc.descriptor, derive_seed(seed, 3));
        const double a = order_bounds(*sc.F).lower;
        const double na1inv = alg_norm(invert(*sc.a1));
        double cap = std::sqrt(a) / na1inv;
        if (theorem == "pert2") cap = std::min(cap, synthesis_lower_bound(*sc.F));
        const double gamma_target = rng.uniform(0.1, 0.6) * cap;

        Rng grng(derive_seed(seed, 4));
        FrameMap direction = random_frame_map(sc.descriptor, d, sc.space, grng);
        const double dir_norm = op_norm(synthesis_op(direction));
        const double eps = dir_norm > 0.0 ? gamma_target / dir_norm : 0.0;
        // a1 F − a2 G = −ε·direction.
        const AlgebraElement a2inv = invert(*sc.a2);
        sc.G = frame_linear_combination(a2inv * *sc.a1, *sc.F, eps * a2inv, direction);
        const double gamma_measured =
            op_norm(synthesis_op(scale_frame(*sc.a1, *sc.F)) - synthesis_op(scale_frame(*sc.a2, *sc.G)));
        sc.constants.gamma = gamma_measured * (1.0 + 1e-12) + 1e-15;
        return sc;
    }
    if (theorem == "kernel") {
        const int m = d + rng.uniform_int(0, 1);  // Riesz-type and redundant cases
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        const double margin = rng.uniform(0.05, 0.5);
        Rng orng(derive_seed(seed, 2));
        const AdjointableOperator v =
            AdjointableOperator::identity(sc.descriptor, d) + margin * random_operator(sc.descriptor, d, orng);
        std::vector<ModuleElement> vectors;
        for (int i = 0; i < sc.F->size(); ++i) vectors.push_back(apply(v, sc.F->vector(i)));
        sc.G = FrameMap(sc.space, sc.descriptor, d, std::move(vectors));
        sc.constants.alpha =
            op_norm(AdjointableOperator::identity(sc.descriptor, d) - v) * (1.0 + 1e-9) + 1e-12;
        sc.constants.beta = 0.0;
        return sc;
    }
    if (theorem == "pert-d") {
        const int m = d + rng.uniform_int(0, 2);
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        sc.G = canonical_dual(*sc.F);
        const double beta = rng.uniform(0.1, 0.8);
        sc.K = gen_perturbation(*sc.F, beta, PerturbMode::dual_based, derive_seed(seed, 2));
        sc.constants.beta = beta;
        return sc;
    }
    if (theorem == "R-surjective" || theorem == "R-invertible") {
        const bool degenerate = rng.uniform() < 0.5;
        const int m = theorem == "R-invertible" ? d : d + (degenerate ? 0 : rng.uniform_int(0, 2));
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        FrameMap g = gen_frame_on_space(sc.descriptor, d, sc.space, derive_seed(seed, 2), 8.0);
        if (theorem == "R-invertible" && degenerate) {
            // Break the rank: G loses its last vector.
            g.vector(g.size() - 1) = ModuleElement::zero(sc.descriptor, d);
        }
        sc.G = g;
        return sc;
    }
    if (theorem == "R-S") {
        const int m = d + rng.uniform_int(0, 2);
        sc.F = gen_frame(sc.descriptor, d, m, derive_seed(seed, 1), 8.0);
        sc.space = sc.F->space();
        const double a = order_bounds(*sc.F).lower;
        Rng grng(derive_seed(seed, 2));
        FrameMap direction = random_frame_map(sc.descriptor, d, sc.space, grng);
        const double raw =
            op_norm(synthesis_op(direction)) * op_norm(synthesis_op(*sc.F));
        const double margin = rng.uniform(0.1, 0.7);
        const double eps = raw > 0.0 ? margin * a / raw : 0.0;
        sc.G = frame_linear_combination(one, *sc.F, eps * one, direction);
        if (rng.uniform() < 0.5) {
            const double lam = op_norm(mixed_frame_operator(*sc.F, *sc.G) - frame_operator(*sc.F));
            sc.constants.lambda = lam * (1.0 + 1e-12) + 1e-15;
        }
        return sc;
    }
    throw UnknownTheorem("unknown theorem id: " + theorem);
}

TheoremReport run_theorem(const std::string& theorem, const Scenario& scenario, int trials,
                          std::uint64_t seed, const Tol& tol) {
    const auto& registry = theorem_registry();
    if (std::find(registry.begin(), registry.end(), theorem) == registry.end())
        throw UnknownTheorem("unknown theorem id: " + theorem);
    if (!scenario.F) throw ParseError("scenario is missing the frame F");
    const AlgebraElement one = AlgebraElement::identity(scenario.descriptor);
    const AlgebraElement a1 = scenario.a1.value_or(one);
    const AlgebraElement a2 = scenario.a2.value_or(theorem == "pert-FG-B" ? -one : one);

    auto need_g = [&]() -> const FrameMap& {
        if (!scenario.G) throw ParseError("scenario is missing the frame G");
        return *scenario.G;
    };

    if (theorem == "sum3") return verify_sum_theorem(*scenario.F, need_g(), a1, a2, trials, seed, tol);
    if (theorem == "sum4")
        return verify_bessel_difference(*scenario.F, need_g(), a1, a2, trials, seed, tol);
    if (theorem == "pert-FG-B") {
        TheoremReport report = verify_bessel_difference(*scenario.F, need_g(), a1, a2, trials, seed, tol);
        report.theorem = "pert-FG-B";
        return report;
    }
    if (theorem == "pert1")
        return verify_pw_theorem(*scenario.F, need_g(), a1, a2, scenario.constants, trials, seed, tol);
    if (theorem == "pert2")
        return verify_riesz_preservation(*scenario.F, need_g(), a1, a2, scenario.constants, trials,
                                         seed, tol);
    if (theorem == "kernel")
        return verify_kernel_corollary(*scenario.F, need_g(), scenario.constants.alpha,
                                       scenario.constants.beta, trials, seed, tol);
    if (theorem == "pert-d") {
        if (!scenario.K) throw ParseError("scenario is missing the frame K");
        return verify_dual_perturbation(*scenario.F, need_g(), *scenario.K, trials, seed, tol);
    }
    if (theorem == "R-surjective") return check_R_surjective(*scenario.F, need_g(), tol);
    if (theorem == "R-invertible") return check_R_invertible(*scenario.F, need_g(), tol);
    if (theorem == "R-S") {
        std::optional<double> lambda;
        if (scenario.constants.lambda > 0.0) lambda = scenario.constants.lambda;
        return verify_RS_theorem(*scenario.F, need_g(), lambda, tol);
    }
    throw UnknownTheorem("unknown theorem id: " + theorem);
}

namespace {

// measured/predicted bound ratios, where the checker reports both sides.
struct Tightness {
    bool valid = false;
    double lower = 0.0;
    double upper = 0.0;
};

Tightness extract_tightness(const TheoremReport& r) {
    Tightness t;
    const auto pl = r.predicted.find("lower");
    const auto pu = r.predicted.find("upper");
    if (pl != r.predicted.end() && pu != r.predicted.end()) {
        const auto ml = r.measured.find("order_lower");
        const auto mu = r.measured.find("order_upper");
        const auto sl = r.measured.find("synthesis_min_singular");
        const auto su = r.measured.find("synthesis_norm");
        double mlow = 0.0, mup = 0.0;
        if (ml != r.measured.end() && mu != r.measured.end()) {
            mlow = ml->second;
            mup = mu->second;
        } else if (sl != r.measured.end() && su != r.measured.end()) {
            mlow = sl->second;
            mup = su->second;
        } else {
            return t;
        }
        if (pl->second > 0.0 && pu->second > 0.0) {
            t.valid = true;
            t.lower = mlow / pl->second;
            t.upper = mup / pu->second;
        }
    }
    return t;
}

}  // namespace

CampaignReport falsify(const std::string& theorem, int trials, std::uint64_t seed,
                       int samples_per_trial, Exec policy, const Tol& tol) {
    const auto& registry = theorem_registry();
    if (std::find(registry.begin(), registry.end(), theorem) == registry.end())
        throw UnknownTheorem("unknown theorem id: " + theorem);

    CampaignReport campaign;
    campaign.theorem = theorem;
    campaign.trials = trials;
    campaign.seed = seed;
    if (trials <= 0) return campaign;

    struct TrialResult {
        Verdict verdict = Verdict::hypothesis_violated;
        Tightness tightness;
        std::string detail;
        bool generated = false;
    };
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::vector<std::optional<Scenario>> scenarios(static_cast<std::size_t>(trials));

    for_indexed(policy, trials, [&](std::ptrdiff_t t) {
        TrialResult& res = results[static_cast<std::size_t>(t)];
        try {
            Scenario sc = gen_scenario(theorem, derive_seed(seed, static_cast<std::uint64_t>(t)));
            res.generated = true;
            const TheoremReport report = run_theorem(
                theorem, sc, samples_per_trial, derive_seed(seed, static_cast<std::uint64_t>(t) | (1ULL << 62)),
                tol);
            res.verdict = report.verdict;
            res.tightness = extract_tightness(report);
            res.detail = report.detail;
            if (report.verdict == Verdict::falsified)
                scenarios[static_cast<std::size_t>(t)] = std::move(sc);
        } catch (const std::exception& e) {
            res.verdict = Verdict::hypothesis_violated;
            res.detail = e.what();
        }
    });

    campaign.min_lower_tightness = std::numeric_limits<double>::infinity();
    campaign.max_upper_tightness = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const TrialResult& res = results[static_cast<std::size_t>(t)];
        switch (res.verdict) {
            case Verdict::verified: ++campaign.verified; break;
            case Verdict::hypothesis_violated: ++campaign.hypothesis_violated; break;
            case Verdict::falsified: ++campaign.falsified; break;
        }
        if (res.tightness.valid) {
            campaign.has_tightness = true;
            campaign.min_lower_tightness = std::min(campaign.min_lower_tightness, res.tightness.lower);
            campaign.max_upper_tightness = std::max(campaign.max_upper_tightness, res.tightness.upper);
        }
        if (res.verdict == Verdict::falsified && campaign.first_falsified_trial < 0) {
            campaign.first_falsified_trial = t;
            campaign.first_failure_detail = res.detail;
            campaign.reproducer = scenarios[static_cast<std::size_t>(t)];
        }
    }
    if (!campaign.has_tightness) {
        campaign.min_lower_tightness = 0.0;
        campaign.max_upper_tightness = 0.0;
    }
    return campaign;
}

}  // namespace csframe
