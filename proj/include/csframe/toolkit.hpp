#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csframe/perturbation.hpp"

namespace csframe {

// One self-contained verification input: a descriptor, a measure space,
// frames, algebra scalars and hypothesis constants, plus the seed it was
// generated from.
struct Scenario {
    AlgebraDescriptor descriptor;
    MeasureSpace space;
    std::optional<FrameMap> F;
    std::optional<FrameMap> G;
    std::optional<FrameMap> K;
    std::optional<AlgebraElement> a1;
    std::optional<AlgebraElement> a2;
    PerturbationConstants constants;
    std::uint64_t seed = 0;
};

// Deterministic frame generator. Draws random vectors and weights, then
// blends the synthesis singular values toward the polar factor until
// order_bounds.upper/lower ≤ condition_target (condition_target = 1 yields a
// tight frame). Throws UnsatisfiableRequest when m < d or after the retry
// budget.
FrameMap gen_frame(const AlgebraDescriptor& desc, int d, int m, std::uint64_t seed,
                   double condition_target = 16.0);
// Same, on a caller-supplied measure space (for scenarios sharing atoms).
FrameMap gen_frame_on_space(const AlgebraDescriptor& desc, int d, const MeasureSpace& space,
                            std::uint64_t seed, double condition_target = 16.0);

// Perturbation direction generator. epsilon is the exact hypothesis budget
// of the targeted mode: the Bessel bound of F−G is epsilon² in
// bessel_difference mode, the synthesis-norm certificate γ equals epsilon in
// synthesis_norm mode, and β = ∫‖F−K‖‖G‖dμ equals epsilon in dual_based
// mode. Throws HypothesisUnreachable when the budget cannot satisfy the
// mode's hypothesis for the measured bounds of F.
enum class PerturbMode { bessel_difference, dual_based, synthesis_norm };
FrameMap gen_perturbation(const FrameMap& F, double epsilon, PerturbMode mode, std::uint64_t seed);

// Random central (blockwise scalar, invertible) and unitary elements.
AlgebraElement gen_central(const AlgebraDescriptor& desc, std::uint64_t seed);
AlgebraElement gen_unitary(const AlgebraDescriptor& desc, std::uint64_t seed);

// Registered theorem checkers, in campaign order.
const std::vector<std::string>& theorem_registry();

// Deterministically generates a hypothesis-satisfying scenario for the
// given theorem id.
Scenario gen_scenario(const std::string& theorem, std::uint64_t seed);

// Runs the checker for `theorem` on a scenario (absent algebra scalars
// default to identities; pert-FG-B defaults to a1 = 1, a2 = -1).
TheoremReport run_theorem(const std::string& theorem, const Scenario& scenario, int trials,
                          std::uint64_t seed, const Tol& tol = Tol::defaults());

// Aggregate of a falsification campaign: generate scenarios, run the
// checker, count verdicts. Any falsified trial keeps its scenario as a
// reproducer. Tightness ratios compare measured against predicted bounds.
struct CampaignReport {
    std::string theorem;
    int trials = 0;
    std::uint64_t seed = 0;
    int verified = 0;
    int hypothesis_violated = 0;
    int falsified = 0;
    bool has_tightness = false;
    double min_lower_tightness = 0.0;  // min over trials of measured/predicted lower
    double max_upper_tightness = 0.0;  // max over trials of measured/predicted upper
    int first_falsified_trial = -1;
    std::string first_failure_detail;
    std::optional<Scenario> reproducer;
};
CampaignReport falsify(const std::string& theorem, int trials, std::uint64_t seed,
                       int samples_per_trial = 40, Exec policy = Exec::parallel,
                       const Tol& tol = Tol::defaults());

}  // namespace csframe
