#include "csframe/perturbation.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace csframe {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::hypothesis_violated: return "hypothesis-violated";
        case Verdict::falsified: return "falsified";
    }
    return "unknown";
}

namespace {

bool check_central_invertible(const AlgebraElement& a, const std::string& name, const Tol& tol,
                              std::vector<std::string>& failures) {
    bool ok = true;
    if (!is_central(a, tol.algebraic)) {
        failures.push_back(name + " is not central");
        ok = false;
    }
    if (alg_min_singular(a) <= tol.rank * alg_norm(a)) {
        failures.push_back(name + " is not invertible");
        ok = false;
    }
    return ok;
}

TheoremReport hypothesis_failure(std::string theorem, std::vector<std::string> failures,
                                 std::uint64_t seed, int trials) {
    TheoremReport report;
    report.theorem = std::move(theorem);
    report.hypothesis_satisfied = false;
    report.hypothesis_failures = std::move(failures);
    report.verdict = Verdict::hypothesis_violated;
    report.seed = seed;
    report.trials = trials;
    if (!report.hypothesis_failures.empty()) report.detail = report.hypothesis_failures.front();
    return report;
}

void conclude(TheoremReport& report, bool ok, const std::string& what) {
    if (!ok) {
        report.verdict = Verdict::falsified;
        if (report.detail.empty()) report.detail = "conclusion failed: " + what;
    }
}

// Per-block orthogonal projectors onto ker(T) for the synthesis-style
// operator T, plus the kernel dimension per block.
struct KernelData {
    std::vector<Matrix> projectors;
    std::vector<int> dims;
};

KernelData kernel_projectors(const AdjointableOperator& T, double rel_tol) {
    KernelData out;
    for (int k = 0; k < T.descriptor().num_blocks(); ++k) {
        Eigen::JacobiSVD<Matrix> svd(T.block(k), Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double thresh = rel_tol * std::max(sv.size() > 0 ? sv(0) : 0.0,
                                                 std::numeric_limits<double>::min());
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > thresh) ++rank;
        const Eigen::Index cols = T.block(k).cols();
        const Matrix vnull = svd.matrixV().rightCols(cols - rank);
        out.projectors.push_back(vnull * vnull.adjoint());
        out.dims.push_back(static_cast<int>(cols) - rank);
    }
    return out;
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

FrameBounds predict_sum_bounds(double A, double B, double N, const AlgebraElement& a1,
                               const AlgebraElement& a2, const Tol& tol) {
    std::vector<std::string> failures;
    check_central_invertible(a1, "a1", tol, failures);
    check_central_invertible(a2, "a2", tol, failures);
    if (!failures.empty()) throw HypothesisViolated(failures.front());
    const double na1 = alg_norm(a1);
    const double na2 = alg_norm(a2);
    const double na1inv = alg_norm(invert(a1, tol.rank));
    if (!(N * na2 * na2 < A / (na1inv * na1inv)))
        throw HypothesisViolated("Bessel bound too large: N·‖a2‖² ≥ A·‖a1⁻¹‖⁻²");
    // Expanded squares keep the N = 0 and γ-free limits exact.
    const double c1 = 1.0 / na1inv;
    const double lower = c1 * c1 * A - 2.0 * c1 * na2 * std::sqrt(A * N) + na2 * na2 * N;
    const double upper = na1 * na1 * B + 2.0 * na1 * na2 * std::sqrt(B * N) + na2 * na2 * N;
    return {lower, upper, FrameBounds::Semantics::norm};
}

TheoremReport verify_sum_theorem(const FrameMap& F, const FrameMap& G, const AlgebraElement& a1,
                                 const AlgebraElement& a2, int trials, std::uint64_t seed,
                                 const Tol& tol) {
    std::vector<std::string> failures;
    const FrameBounds fb = order_bounds(F);
    if (!(fb.lower > tol.rank * std::max(fb.upper, std::numeric_limits<double>::min())))
        failures.push_back("F is not a frame");
    check_central_invertible(a1, "a1", tol, failures);
    check_central_invertible(a2, "a2", tol, failures);
    FrameBounds predicted{};
    double N = 0.0;
    if (failures.empty()) {
        N = order_bounds(G).upper;
        try {
            predicted = predict_sum_bounds(fb.lower, fb.upper, N, a1, a2, tol);
        } catch (const HypothesisViolated& e) {
            failures.push_back(e.what());
        }
    }
    if (!failures.empty()) return hypothesis_failure("sum3", std::move(failures), seed, trials);

    TheoremReport report;
    report.theorem = "sum3";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;
    report.predicted = {{"lower", predicted.lower}, {"upper", predicted.upper}, {"N", N},
                        {"A", fb.lower},            {"B", fb.upper}};

    const FrameMap H = frame_linear_combination(a1, F, a2, G);
    const FrameBounds hb = order_bounds(H);
    const NormBoundsReport scan =
        norm_bounds_check(H, predicted.lower, predicted.upper, trials, seed, tol.sampled);
    report.measured = {{"order_lower", hb.lower},
                       {"order_upper", hb.upper},
                       {"min_ratio", scan.min_ratio},
                       {"max_ratio", scan.max_ratio}};
    conclude(report, scan.violations == 0, "norm sandwich violated at " + scan.witness);
    conclude(report, hb.lower > tol.rank * std::max(hb.upper, 1e-300), "a1F+a2G has zero lower bound");
    return report;
}

TheoremReport verify_bessel_difference(const FrameMap& F, const FrameMap& G,
                                       const AlgebraElement& a1, const AlgebraElement& a2,
                                       int trials, std::uint64_t seed, const Tol& tol) {
    std::vector<std::string> failures;
    const FrameBounds fb = order_bounds(F);
    if (!(fb.lower > tol.rank * std::max(fb.upper, std::numeric_limits<double>::min())))
        failures.push_back("F is not a frame");
    check_central_invertible(a1, "a1", tol, failures);
    check_central_invertible(a2, "a2", tol, failures);
    if (!failures.empty())
        return hypothesis_failure("sum4", std::move(failures), seed, trials);

    const AlgebraElement a2inv = invert(a2, tol.rank);
    const FrameMap diff = frame_linear_combination(a2inv, G, -(a2inv * a1), F);
    const double N = order_bounds(diff).upper;
    FrameBounds predicted{};
    try {
        predicted = predict_sum_bounds(fb.lower, fb.upper, N, a1, a2, tol);
    } catch (const HypothesisViolated& e) {
        return hypothesis_failure("sum4", {e.what()}, seed, trials);
    }

    TheoremReport report;
    report.theorem = "sum4";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;
    report.predicted = {{"lower", predicted.lower}, {"upper", predicted.upper}, {"N", N},
                        {"A", fb.lower},            {"B", fb.upper}};
    const FrameBounds gb = order_bounds(G);
    const NormBoundsReport scan =
        norm_bounds_check(G, predicted.lower, predicted.upper, trials, seed, tol.sampled);
    report.measured = {{"order_lower", gb.lower},
                       {"order_upper", gb.upper},
                       {"min_ratio", scan.min_ratio},
                       {"max_ratio", scan.max_ratio}};
    conclude(report, gb.lower > tol.rank * std::max(gb.upper, 1e-300), "G has zero lower bound");
    conclude(report, scan.violations == 0, "norm sandwich violated at " + scan.witness);
    return report;
}

namespace {

double pw_smallness(double alpha, double beta, double gamma, double A, double na1, double na1inv) {
    return std::max({beta, beta * na1inv * na1, na1inv * (alpha * na1 + gamma / std::sqrt(A))});
}

}  // namespace

HypothesisScanReport pw_hypothesis_check(const FrameMap& F, const FrameMap& G,
                                         const AlgebraElement& a1, const AlgebraElement& a2,
                                         double alpha, double beta, double gamma, int trials,
                                         std::uint64_t seed, const Tol& tol) {
    const FrameBounds fb = order_bounds(F);
    if (!(fb.lower > 0.0)) throw NotAFrame("coefficient hypothesis scan requires a frame");
    const double na1 = alg_norm(a1);
    const double na1inv = alg_norm(invert(a1, tol.rank));
    HypothesisScanReport report;
    report.seed = seed;
    report.smallness = pw_smallness(alpha, beta, gamma, fb.lower, na1, na1inv);
    if (!(report.smallness < 1.0))
        throw SmallnessViolated("smallness condition fails: max{...} = " +
                                std::to_string(report.smallness));

    const FrameMap aF = scale_frame(a1, F);
    const FrameMap aG = scale_frame(a2, G);
    const FrameMap delta = frame_linear_combination(a1, F, -a2, G);
    report.gamma_operator = op_norm(synthesis_op(aF) - synthesis_op(aG));
    report.operator_certificate =
        alpha == 0.0 && beta == 0.0 && gamma + tol.sampled >= report.gamma_operator;

    const std::vector<ModuleElement> eigen_dirs = frame_eigen_directions(F);
    // Sample kinds per trial: ‖f‖ = 1 random, ‖f‖ = 0.1 random, a unit
    // eigen-direction, another ‖f‖ = 1 random, then the large-‖f‖ regime
    // (informational only; the γ term fixes the ‖f‖ ≤ 1 normalization).
    const double scales[] = {1.0, 0.1, 1.0, 1.0, 10.0, 100.0};
    std::vector<double> excesses(static_cast<std::size_t>(trials), 0.0);
    std::vector<bool> restricted(static_cast<std::size_t>(trials), true);
    std::vector<std::string> notes(static_cast<std::size_t>(trials));
    for_indexed(Exec::parallel, trials, [&](std::ptrdiff_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const L2Element psi = random_l2_element(F.space(), F.descriptor(), rng);
        const int kind = static_cast<int>(t % 6);
        const double target = scales[kind];
        restricted[static_cast<std::size_t>(t)] = kind < 4;
        ModuleElement f = kind == 2 && !eigen_dirs.empty()
                              ? eigen_dirs[static_cast<std::size_t>(t / 6) % eigen_dirs.size()]
                              : random_module_element(F.descriptor(), F.d(), rng);
        const double nf = module_norm(f);
        if (nf > 1e-300) f = (target / nf) * f;

        AlgebraElement lhs_acc = AlgebraElement::zero(F.descriptor());
        AlgebraElement rhs1_acc = AlgebraElement::zero(F.descriptor());
        AlgebraElement rhs2_acc = AlgebraElement::zero(F.descriptor());
        for (int i = 0; i < F.size(); ++i) {
            const double mu = F.space().weight(i);
            lhs_acc += mu * (psi.value(i) * inner(delta.vector(i), f));
            rhs1_acc += mu * (psi.value(i) * inner(aF.vector(i), f));
            rhs2_acc += mu * (psi.value(i) * inner(aG.vector(i), f));
        }
        const double lhs = alg_norm(lhs_acc);
        const double rhs = alpha * alg_norm(rhs1_acc) + beta * alg_norm(rhs2_acc) + gamma * l2_norm(psi);
        excesses[static_cast<std::size_t>(t)] = lhs - rhs;
        if (restricted[static_cast<std::size_t>(t)] && lhs - rhs > tol.sampled * (1.0 + rhs)) {
            std::ostringstream os;
            os << "trial " << t << " with ‖f‖ = " << target << ": lhs " << lhs << " > rhs " << rhs;
            notes[static_cast<std::size_t>(t)] = os.str();
        }
    });
    report.samples = trials;
    for (int t = 0; t < trials; ++t) {
        if (restricted[static_cast<std::size_t>(t)])
            report.max_excess = std::max(report.max_excess, excesses[static_cast<std::size_t>(t)]);
        else
            report.max_excess_unrestricted =
                std::max(report.max_excess_unrestricted, excesses[static_cast<std::size_t>(t)]);
        if (!notes[static_cast<std::size_t>(t)].empty() && !report.counterexample_found) {
            report.counterexample_found = true;
            report.witness = notes[static_cast<std::size_t>(t)];
        }
    }
    return report;
}

FrameBounds pw_conclusion_bounds(double A, double B, double alpha, double beta, double gamma,
                                 const AlgebraElement& a1, const AlgebraElement& a2) {
    const Tol tol = Tol::defaults();
    const double na1 = alg_norm(a1);
    const double na1inv = alg_norm(invert(a1, tol.rank));
    const double na2inv = alg_norm(invert(a2, tol.rank));
    const double smallness = pw_smallness(alpha, beta, gamma, A, na1, na1inv);
    if (!(smallness < 1.0))
        throw SmallnessViolated("smallness condition fails: max{...} = " + std::to_string(smallness));
    // Lower constant from ‖f‖⁴ = ‖⟨f,f⟩‖² ≤ ‖a1⁻¹a2‖²·(1/A)·‖K⁻¹‖²‖f‖²·‖⟨S_G f,f⟩‖,
    // with the guaranteed ‖K⁻¹‖ bound (1+η)/(1−θ).
    const double na1inv_a2 = alg_norm(invert(a1, tol.rank) * a2);
    const double lower_frac = (1.0 - na1inv * (alpha * na1 + gamma / std::sqrt(A))) /
                              (1.0 + beta * na1inv * na1);
    const double lower = A / (na1inv_a2 * na1inv_a2) * lower_frac * lower_frac;
    // Upper constant from ‖T_G ψ‖ ≤ ‖a2⁻¹‖((1+α)‖a1‖√B + γ)/(1−β)·‖ψ‖;
    // (x√B + γ)² is expanded so the γ = 0 limit reproduces B exactly.
    const double x = (1.0 + alpha) * na1;
    const double upper = na2inv * na2inv *
                         (x * x * B + 2.0 * x * gamma * std::sqrt(B) + gamma * gamma) /
                         ((1.0 - beta) * (1.0 - beta));
    return {lower, upper, FrameBounds::Semantics::norm};
}

BridgeReport build_cross_reconstruction(const FrameMap& F, const FrameMap& G,
                                        const AlgebraElement& a1, const AlgebraElement& a2,
                                        double alpha, double beta, double gamma, const Tol& tol) {
    const FrameBounds fb = order_bounds(F);
    if (!(fb.lower > tol.rank * std::max(fb.upper, std::numeric_limits<double>::min())))
        throw NotAFrame("bridge operator requires a frame");
    const double na1 = alg_norm(a1);
    const double na1inv = alg_norm(invert(a1, tol.rank));
    const double smallness = pw_smallness(alpha, beta, gamma, fb.lower, na1, na1inv);
    if (!(smallness < 1.0))
        throw SmallnessViolated("smallness condition fails: max{...} = " + std::to_string(smallness));

    const FrameMap scaled_g = scale_frame(invert(a1, tol.rank) * a2, G);
    const AdjointableOperator s_inv = invert_op(frame_operator(F), tol.rank);
    const AdjointableOperator bridge =
        compose(synthesis_op(scaled_g), compose(analysis_op(F), s_inv));

    BridgeReport report;
    report.op = bridge;
    report.norm = op_norm(bridge);
    const double theta = na1inv * (alpha * na1 + gamma / std::sqrt(fb.lower));
    const double eta = beta * na1inv * na1;
    report.predicted_norm = (1.0 + theta) / (1.0 - eta);
    report.predicted_inverse_norm = (1.0 + eta) / (1.0 - theta);
    if (min_singular(bridge) <= tol.rank * std::max(report.norm, std::numeric_limits<double>::min()))
        throw NotInvertible("bridge operator is numerically singular");
    report.inverse_norm = op_norm(invert_op(bridge, tol.rank));
    return report;
}

L2Element canonical_coefficients(const FrameMap& F, const ModuleElement& f, double tol) {
    return analysis_apply(canonical_dual(F, tol), f);
}

TheoremReport verify_pw_theorem(const FrameMap& F, const FrameMap& G, const AlgebraElement& a1,
                                const AlgebraElement& a2, const PerturbationConstants& constants,
                                int trials, std::uint64_t seed, const Tol& tol) {
    const double alpha = constants.alpha, beta = constants.beta, gamma = constants.gamma;
    std::vector<std::string> failures;
    const FrameBounds fb = order_bounds(F);
    if (!(fb.lower > tol.rank * std::max(fb.upper, std::numeric_limits<double>::min())))
        failures.push_back("F is not a frame");
    check_central_invertible(a1, "a1", tol, failures);
    check_central_invertible(a2, "a2", tol, failures);
    if (!failures.empty()) return hypothesis_failure("pert1", std::move(failures), seed, trials);

    HypothesisScanReport scan;
    try {
        scan = pw_hypothesis_check(F, G, a1, a2, alpha, beta, gamma, trials, seed, tol);
    } catch (const SmallnessViolated& e) {
        return hypothesis_failure("pert1", {e.what()}, seed, trials);
    }
    if (scan.counterexample_found)
        return hypothesis_failure("pert1", {"coefficient hypothesis fails: " + scan.witness}, seed,
                                  trials);

    TheoremReport report;
    report.theorem = "pert1";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;

    const FrameBounds predicted = pw_conclusion_bounds(fb.lower, fb.upper, alpha, beta, gamma, a1, a2);
    report.predicted = {{"lower", predicted.lower}, {"upper", predicted.upper},
                        {"A", fb.lower},            {"B", fb.upper}};
    report.measured["gamma_operator"] = scan.gamma_operator;
    report.measured["hypothesis_max_excess"] = scan.max_excess;
    report.measured["hypothesis_max_excess_unrestricted"] = scan.max_excess_unrestricted;

    try {
        const BridgeReport bridge = build_cross_reconstruction(F, G, a1, a2, alpha, beta, gamma, tol);
        report.predicted["bridge_norm"] = bridge.predicted_norm;
        report.predicted["bridge_inverse_norm"] = bridge.predicted_inverse_norm;
        report.measured["bridge_norm"] = bridge.norm;
        report.measured["bridge_inverse_norm"] = bridge.inverse_norm;
        conclude(report, bridge.norm <= bridge.predicted_norm + tol.sampled, "bridge norm exceeds bound");
        conclude(report, bridge.inverse_norm <= bridge.predicted_inverse_norm + tol.sampled,
                 "bridge inverse norm exceeds bound");
    } catch (const NotInvertible& e) {
        conclude(report, false, e.what());
    }

    const FrameBounds gb = order_bounds(G);
    report.measured["order_lower"] = gb.lower;
    report.measured["order_upper"] = gb.upper;
    const NormBoundsReport gscan = norm_bounds_check(G, predicted.lower, predicted.upper,
                                                     trials, derive_seed(seed, 1), tol.sampled);
    report.measured["min_ratio"] = gscan.min_ratio;
    report.measured["max_ratio"] = gscan.max_ratio;
    conclude(report, gb.lower > tol.rank * std::max(gb.upper, 1e-300), "G has zero lower bound");
    conclude(report, gscan.violations == 0, "G norm sandwich violated at " + gscan.witness);
    conclude(report, gb.upper <= predicted.upper + tol.sampled, "G upper bound exceeds prediction");
    return report;
}

TheoremReport verify_riesz_preservation(const FrameMap& F, const FrameMap& G,
                                        const AlgebraElement& a1, const AlgebraElement& a2,
                                        const PerturbationConstants& constants, int trials,
                                        std::uint64_t seed, const Tol& tol) {
    const double alpha = constants.alpha, beta = constants.beta, gamma = constants.gamma;
    std::vector<std::string> failures;
    check_central_invertible(a1, "a1", tol, failures);
    check_central_invertible(a2, "a2", tol, failures);
    if (!riesz_type_or_false(F, tol.rank)) failures.push_back("F is not a Riesz-type frame");
    if (!failures.empty()) return hypothesis_failure("pert2", std::move(failures), seed, trials);

    const FrameBounds fb = order_bounds(F);
    const double M = synthesis_lower_bound(F);
    const double na1 = alg_norm(a1);
    const double na2 = alg_norm(a2);
    const double na1inv = alg_norm(invert(a1, tol.rank));
    const double na2inv = alg_norm(invert(a2, tol.rank));
    const double smallness =
        std::max({beta * na2 * na2inv, beta * na1 * na1inv, alpha / na1inv + gamma / M,
                  na1inv * (alpha * na1 + gamma / std::sqrt(fb.lower))});
    if (!(smallness < 1.0))
        return hypothesis_failure(
            "pert2", {"smallness condition fails: max{...} = " + std::to_string(smallness)}, seed,
            trials);

    // Sampled synthesis-norm hypothesis over ψ.
    const FrameMap aF = scale_frame(a1, F);
    const FrameMap aG = scale_frame(a2, G);
    const FrameMap delta = frame_linear_combination(a1, F, -a2, G);
    const double gamma_operator = op_norm(synthesis_op(aF) - synthesis_op(aG));
    std::vector<double> excesses(static_cast<std::size_t>(trials), 0.0);
    for_indexed(Exec::parallel, trials, [&](std::ptrdiff_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const L2Element psi = random_l2_element(F.space(), F.descriptor(), rng);
        const double lhs = module_norm(synthesis_apply(delta, psi));
        const double rhs = alpha * module_norm(synthesis_apply(aF, psi)) +
                           beta * module_norm(synthesis_apply(aG, psi)) + gamma * l2_norm(psi);
        excesses[static_cast<std::size_t>(t)] = lhs - rhs;
    });
    double max_excess = 0.0;
    for (double e : excesses) max_excess = std::max(max_excess, e);
    if (max_excess > tol.sampled * (1.0 + gamma))
        return hypothesis_failure(
            "pert2", {"synthesis-norm hypothesis fails by " + std::to_string(max_excess)}, seed,
            trials);

    TheoremReport report;
    report.theorem = "pert2";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;
    const double lower = ((1.0 - alpha) * M / na1inv - gamma) / ((1.0 + beta) * na2);
    const double upper = na2inv * (na1 * (1.0 + alpha) * std::sqrt(fb.upper) + gamma) /
                         (1.0 - beta * na2inv * na2);
    report.predicted = {{"lower", lower}, {"upper", upper}, {"M", M},
                        {"A", fb.lower},  {"B", fb.upper}};
    report.measured["gamma_operator"] = gamma_operator;
    report.measured["hypothesis_max_excess"] = max_excess;

    const AdjointableOperator syn_g = synthesis_op(G);
    const double g_low = min_singular(syn_g);
    const double g_high = op_norm(syn_g);
    report.measured["synthesis_min_singular"] = g_low;
    report.measured["synthesis_norm"] = g_high;
    conclude(report, riesz_type_or_false(G, tol.rank), "G is not a Riesz-type frame");
    conclude(report, g_low >= lower - tol.sampled, "synthesis lower constant below prediction");
    conclude(report, g_high <= upper + tol.sampled, "synthesis norm above prediction");
    return report;
}

TheoremReport verify_kernel_corollary(const FrameMap& F, const FrameMap& G, double alpha,
                                      double beta, int trials, std::uint64_t seed, const Tol& tol) {
    std::vector<std::string> failures;
    if (!(alpha >= 0.0 && alpha < 1.0)) failures.push_back("alpha must lie in [0,1)");
    if (!(beta >= 0.0 && beta < 1.0)) failures.push_back("beta must lie in [0,1)");
    if (!is_frame(F, tol.rank)) failures.push_back("F is not a frame");
    if (!failures.empty()) return hypothesis_failure("kernel", std::move(failures), seed, trials);

    const FrameMap delta = frame_difference(F, G);
    std::vector<double> excesses(static_cast<std::size_t>(trials), 0.0);
    for_indexed(Exec::parallel, trials, [&](std::ptrdiff_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const L2Element psi = random_l2_element(F.space(), F.descriptor(), rng);
        const double lhs = module_norm(synthesis_apply(delta, psi));
        const double rhs = alpha * module_norm(synthesis_apply(F, psi)) +
                           beta * module_norm(synthesis_apply(G, psi));
        excesses[static_cast<std::size_t>(t)] = lhs - rhs;
    });
    double max_excess = 0.0;
    for (double e : excesses) max_excess = std::max(max_excess, e);
    if (max_excess > tol.sampled)
        return hypothesis_failure(
            "kernel", {"synthesis-norm hypothesis fails by " + std::to_string(max_excess)}, seed,
            trials);

    TheoremReport report;
    report.theorem = "kernel";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;
    report.measured["hypothesis_max_excess"] = max_excess;

    const AdjointableOperator syn_f = synthesis_op(F);
    const AdjointableOperator syn_g = synthesis_op(G);
    const KernelData kf = kernel_projectors(syn_f, tol.rank);
    const KernelData kg = kernel_projectors(syn_g, tol.rank);
    double proj_gap = 0.0, range_gap = 0.0;
    bool dims_equal = true;
    for (std::size_t k = 0; k < kf.projectors.size(); ++k) {
        dims_equal = dims_equal && (kf.dims[k] == kg.dims[k]);
        proj_gap = std::max(proj_gap, spectral_norm(kf.projectors[k] - kg.projectors[k]));
        // Range projectors of the adjoints are the orthogonal complements.
        const Matrix id = Matrix::Identity(kf.projectors[k].rows(), kf.projectors[k].cols());
        range_gap = std::max(range_gap,
                             spectral_norm((id - kf.projectors[k]) - (id - kg.projectors[k])));
    }
    report.measured["kernel_projector_gap"] = proj_gap;
    report.measured["adjoint_range_projector_gap"] = range_gap;
    report.measured["kernel_dim_F"] = static_cast<double>(kf.dims.empty() ? 0 : kf.dims[0]);
    conclude(report, dims_equal, "kernel dimensions differ");
    conclude(report, proj_gap <= tol.sampled, "kernel projectors differ");
    conclude(report, range_gap <= tol.sampled, "adjoint range projectors differ");

    const bool riesz_f = riesz_type_or_false(F, tol.rank);
    const bool riesz_g = riesz_type_or_false(G, tol.rank);
    report.measured["riesz_F"] = riesz_f ? 1.0 : 0.0;
    report.measured["riesz_G"] = riesz_g ? 1.0 : 0.0;
    conclude(report, riesz_f == riesz_g, "Riesz-type biconditional fails");
    return report;
}

TheoremReport verify_dual_perturbation(const FrameMap& F, const FrameMap& G, const FrameMap& K,
                                       int trials, std::uint64_t seed, const Tol& tol) {
    std::vector<std::string> failures;
    if (!is_frame(F, tol.rank)) failures.push_back("F is not a frame");
    if (failures.empty() && !is_dual_pair(F, G, tol.rank)) failures.push_back("G is not a dual of F");
    double alpha = 0.0, beta = 0.0;
    for (int i = 0; i < F.size(); ++i) {
        const double mu = F.space().weight(i);
        const double gap = module_norm(F.vector(i) - K.vector(i));
        alpha += mu * gap * gap;
        beta += mu * gap * module_norm(G.vector(i));
    }
    if (!(beta < 1.0)) failures.push_back("beta = " + std::to_string(beta) + " is not < 1");
    if (!failures.empty()) return hypothesis_failure("pert-d", std::move(failures), seed, trials);

    const FrameBounds fb = order_bounds(F);
    const double D = order_bounds(G).upper;

    TheoremReport report;
    report.theorem = "pert-d";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.seed = seed;
    report.trials = trials;
    const double tk_bound = std::sqrt(alpha) + std::sqrt(fb.upper);
    report.predicted = {{"alpha", alpha},
                        {"beta", beta},
                        {"mixing_norm", 1.0 + beta},
                        {"mixing_inverse_norm", 1.0 / (1.0 - beta)},
                        {"synthesis_norm", tk_bound},
                        {"lower", (1.0 - beta) * (1.0 - beta) / D},
                        {"upper", tk_bound * tk_bound}};

    const AdjointableOperator mixing = mixed_frame_operator(G, K);
    const AdjointableOperator id = AdjointableOperator::identity(F.descriptor(), F.d());
    report.measured["mixing_norm"] = op_norm(mixing);
    report.measured["mixing_identity_gap"] = op_norm(mixing - id);
    conclude(report, report.measured["mixing_norm"] <= 1.0 + beta + tol.algebraic,
             "mixing operator norm exceeds 1+beta");
    conclude(report, report.measured["mixing_identity_gap"] <= beta + tol.algebraic,
             "mixing operator deviates from identity by more than beta");
    bool mixing_invertible = min_singular(mixing) >
                             tol.rank * std::max(op_norm(mixing), std::numeric_limits<double>::min());
    conclude(report, mixing_invertible, "mixing operator is singular");
    if (mixing_invertible) {
        report.measured["mixing_inverse_norm"] = op_norm(invert_op(mixing, tol.rank));
        conclude(report, report.measured["mixing_inverse_norm"] <= 1.0 / (1.0 - beta) + tol.sampled,
                 "mixing inverse norm exceeds 1/(1-beta)");
    }

    report.measured["synthesis_norm"] = op_norm(synthesis_op(K));
    conclude(report, report.measured["synthesis_norm"] <= tk_bound + tol.algebraic,
             "synthesis norm of K exceeds sqrt(alpha)+sqrt(B)");

    const FrameBounds kb = order_bounds(K);
    report.measured["order_lower"] = kb.lower;
    report.measured["order_upper"] = kb.upper;
    conclude(report, kb.lower > tol.rank * std::max(kb.upper, 1e-300), "K has zero lower bound");
    const double lower = (1.0 - beta) * (1.0 - beta) / D;
    const NormBoundsReport scan =
        norm_bounds_check(K, lower, tk_bound * tk_bound, trials, seed, tol.sampled);
    report.measured["min_ratio"] = scan.min_ratio;
    report.measured["max_ratio"] = scan.max_ratio;
    conclude(report, scan.violations == 0, "K norm sandwich violated at " + scan.witness);
    return report;
}

AdjointableOperator mixed_frame_operator(const FrameMap& F, const FrameMap& G) {
    if (F.space() != G.space()) throw SpaceMismatch("mixed frame operator across different spaces");
    if (F.descriptor() != G.descriptor() || F.d() != G.d())
        throw DimensionMismatch("mixed frame operator shape mismatch");
    return compose(synthesis_op(G), adjoint_op(synthesis_op(F)));
}

TheoremReport check_R_surjective(const FrameMap& F, const FrameMap& G, const Tol& tol) {
    std::vector<std::string> failures;
    if (!is_frame(F, tol.rank)) failures.push_back("F is not a frame");
    if (!failures.empty()) return hypothesis_failure("R-surjective", std::move(failures), 0, 0);

    TheoremReport report;
    report.theorem = "R-surjective";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;

    const AdjointableOperator R = mixed_frame_operator(F, G);
    const bool surjective = is_surjective(R, tol.rank);
    const bool g_frame = is_frame(G, tol.rank);
    const bool f_riesz = riesz_type_or_false(F, tol.rank);
    report.measured["surjective"] = surjective ? 1.0 : 0.0;
    report.measured["G_is_frame"] = g_frame ? 1.0 : 0.0;
    report.measured["F_riesz_type"] = f_riesz ? 1.0 : 0.0;
    report.measured["min_singular"] = min_singular(R);
    if (surjective) conclude(report, g_frame, "R surjective but G is not a frame");
    if (f_riesz && g_frame) conclude(report, surjective, "F Riesz-type and G frame but R not surjective");
    if (!surjective && report.verdict == Verdict::verified)
        report.detail = "R not surjective; no conclusion claimed";
    return report;
}

TheoremReport check_R_invertible(const FrameMap& F, const FrameMap& G, const Tol& tol) {
    std::vector<std::string> failures;
    if (!riesz_type_or_false(F, tol.rank)) failures.push_back("F is not a Riesz-type frame");
    if (!failures.empty()) return hypothesis_failure("R-invertible", std::move(failures), 0, 0);

    TheoremReport report;
    report.theorem = "R-invertible";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;

    const AdjointableOperator R = mixed_frame_operator(F, G);
    const bool invertible =
        min_singular(R) > tol.rank * std::max(op_norm(R), std::numeric_limits<double>::min());
    const bool g_riesz = riesz_type_or_false(G, tol.rank);
    report.measured["invertible"] = invertible ? 1.0 : 0.0;
    report.measured["G_riesz_type"] = g_riesz ? 1.0 : 0.0;
    report.measured["min_singular"] = min_singular(R);
    conclude(report, invertible == g_riesz, "invertibility does not match Riesz-typeness of G");
    return report;
}

TheoremReport verify_RS_theorem(const FrameMap& F, const FrameMap& G,
                                std::optional<double> lambda, const Tol& tol) {
    std::vector<std::string> failures;
    if (!is_frame(F, tol.rank)) failures.push_back("F is not a frame");
    if (!failures.empty()) return hypothesis_failure("R-S", std::move(failures), 0, 0);

    const FrameBounds fb = order_bounds(F);
    const AdjointableOperator R = mixed_frame_operator(F, G);
    const AdjointableOperator S = frame_operator(F);
    const double distance = op_norm(R - S);
    const double lam = lambda.value_or(distance);
    if (lambda && distance > *lambda + tol.sampled)
        return hypothesis_failure(
            "R-S", {"‖R−S‖ = " + std::to_string(distance) + " exceeds the supplied λ"}, 0, 0);
    if (!(lam < fb.lower))
        return hypothesis_failure("R-S", {"λ = " + std::to_string(lam) + " is not < A"}, 0, 0);

    TheoremReport report;
    report.theorem = "R-S";
    report.hypothesis_satisfied = true;
    report.verdict = Verdict::verified;
    report.predicted = {{"min_singular_floor", fb.lower - lam}, {"A", fb.lower}, {"lambda", lam}};
    report.measured["operator_distance"] = distance;
    report.measured["min_singular"] = min_singular(R);

    conclude(report, report.measured["min_singular"] >= fb.lower - lam - tol.sampled,
             "min singular value of R below A − λ");
    const FrameBounds gb = order_bounds(G);
    report.measured["order_lower"] = gb.lower;
    report.measured["order_upper"] = gb.upper;
    conclude(report, gb.lower > tol.rank * std::max(gb.upper, 1e-300), "G has zero lower bound");
    const bool riesz_f = riesz_type_or_false(F, tol.rank);
    const bool riesz_g = riesz_type_or_false(G, tol.rank);
    report.measured["riesz_F"] = riesz_f ? 1.0 : 0.0;
    report.measured["riesz_G"] = riesz_g ? 1.0 : 0.0;
    conclude(report, riesz_f == riesz_g, "Riesz-type biconditional fails");
    return report;
}

}  // namespace csframe
