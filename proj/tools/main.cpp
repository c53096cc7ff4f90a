// Command-line front end: scenario generation, bounds, canonical duals,
// Riesz-type verdicts, theorem verification, and falsification campaigns.
//
// Exit codes: 0 success/verified, 1 hypothesis violated, 2 invalid input,
// 3 theorem-falsification signal (a reproducer file is always written).

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "csframe/serialize.hpp"
#include "csframe/toolkit.hpp"

using namespace csframe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitHypothesis = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitFalsified = 3;

struct CommonOpts {
    std::string out;
    std::string format = "text";
    std::uint64_t seed = 1;
    int trials = 200;
    double tol_base = 0.0;  // 0 = defaults / CSFRAME_TOL
};

Tol make_tol(const CommonOpts& opts) {
    Tol t = Tol::defaults();
    if (opts.tol_base > 0.0) {
        t.algebraic = opts.tol_base;
        t.rank = 10.0 * opts.tol_base;
        t.sampled = 100.0 * opts.tol_base;
    }
    return t;
}

void emit(const CommonOpts& opts, const Json& doc, const std::string& text) {
    if (!opts.out.empty()) save_json(opts.out, doc);
    if (opts.format == "json")
        std::cout << dump_json(doc);
    else
        std::cout << text;
}

std::vector<int> parse_descriptor(const std::string& s) {
    std::vector<int> sizes;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        sizes.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return sizes;
}

const FrameMap& pick_frame(const Scenario& sc, const std::string& which) {
    const std::optional<FrameMap>* f = &sc.F;
    if (which == "G") f = &sc.G;
    if (which == "K") f = &sc.K;
    if (!f->has_value()) throw ParseError("scenario has no frame " + which);
    return **f;
}

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::verified: return kExitOk;
        case Verdict::hypothesis_violated: return kExitHypothesis;
        case Verdict::falsified: return kExitFalsified;
    }
    return kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous frames over matrix C*-algebras: bounds, duals, perturbation checkers"};
    app.require_subcommand(1);
    CommonOpts opts;

    std::string descriptor = "1";
    int d = 2, m = 3;
    double condition = 16.0;
    std::string theorem, scenario_path, which_frame = "F";
    double lower = 0.0, upper = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opts.out, "write the JSON document to this file");
        cmd->add_option("--format", opts.format, "stdout format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--seed", opts.seed, "random seed");
        cmd->add_option("--trials", opts.trials, "sample / trial count");
        cmd->add_option("--tol", opts.tol_base, "override the base (algebraic) tolerance");
    };

    CLI::App* gen = app.add_subcommand("gen", "emit a Scenario JSON document");
    gen->add_option("--theorem", theorem, "generate a hypothesis-satisfying scenario for this id");
    gen->add_option("--descriptor", descriptor, "comma-separated block sizes, e.g. 2,3");
    gen->add_option("--d", d, "module rank");
    gen->add_option("--m", m, "number of atoms");
    gen->add_option("--condition", condition, "bounds-ratio target for the generated frame");
    add_common(gen);

    CLI::App* bounds = app.add_subcommand("bounds", "print frame bounds in both semantics");
    bounds->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    bounds->add_option("--frame", which_frame, "which frame: F|G|K")
        ->check(CLI::IsMember({"F", "G", "K"}));
    add_common(bounds);

    CLI::App* dual = app.add_subcommand("dual", "emit the canonical dual as a scenario");
    dual->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    add_common(dual);

    CLI::App* riesz = app.add_subcommand("riesz", "Riesz-type verdict and basis check");
    riesz->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    riesz->add_option("--frame", which_frame, "which frame: F|G|K")
        ->check(CLI::IsMember({"F", "G", "K"}));
    auto* lower_opt = riesz->add_option("--lower", lower, "sandwich lower constant to test");
    riesz->add_option("--upper", upper, "sandwich upper constant to test")->needs(lower_opt);
    add_common(riesz);

    CLI::App* verify = app.add_subcommand("verify", "run one theorem checker on a scenario");
    verify->add_option("--theorem", theorem, "theorem id")->required();
    verify->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    add_common(verify);

    CLI::App* falsify_cmd = app.add_subcommand("falsify", "run a falsification campaign");
    falsify_cmd->add_option("--theorem", theorem, "theorem id")->required();
    add_common(falsify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        const Tol tol = make_tol(opts);

        if (gen->parsed()) {
            Scenario sc;
            if (!theorem.empty()) {
                sc = gen_scenario(theorem, opts.seed);
            } else {
                sc.descriptor = AlgebraDescriptor(parse_descriptor(descriptor));
                sc.F = gen_frame(sc.descriptor, d, m, opts.seed, condition);
                sc.space = sc.F->space();
                sc.seed = opts.seed;
            }
            const Json doc = encode(sc);
            if (opts.out.empty())
                std::cout << dump_json(doc);  // a scenario is its JSON
            else
                emit(opts, doc, "scenario written to " + opts.out + "\n");
            return kExitOk;
        }

        const auto load_scenario = [&]() { return decode_scenario(load_json_file(scenario_path)); };

        if (bounds->parsed()) {
            const Scenario sc = load_scenario();
            const FrameMap& F = pick_frame(sc, which_frame);
            const FrameBounds ob = order_bounds(F);
            const FrameBounds nb = norm_bounds_estimate(F, opts.trials, opts.seed);
            Json doc{{"frame", which_frame},
                     {"order", encode(ob)},
                     {"norm_sampled", encode(nb)},
                     {"trials", opts.trials},
                     {"seed", opts.seed}};
            std::string text = "order semantics:          lower " + std::to_string(ob.lower) +
                               ", upper " + std::to_string(ob.upper) + "\n" +
                               "norm semantics (sampled): lower " + std::to_string(nb.lower) +
                               ", upper " + std::to_string(nb.upper) + "\n";
            emit(opts, doc, text);
            return kExitOk;
        }

        if (dual->parsed()) {
            const Scenario sc = load_scenario();
            const FrameMap& F = pick_frame(sc, "F");
            Scenario out;
            out.descriptor = sc.descriptor;
            out.space = sc.space;
            out.F = canonical_dual(F, tol.rank);
            out.seed = sc.seed;
            if (opts.out.empty())
                std::cout << dump_json(encode(out));
            else
                emit(opts, encode(out), "canonical dual written to " + opts.out + "\n");
            return kExitOk;
        }

        if (riesz->parsed()) {
            const Scenario sc = load_scenario();
            const FrameMap& F = pick_frame(sc, which_frame);
            const bool frame = is_frame(F, tol.rank);
            const bool riesz_type = riesz_type_or_false(F, tol.rank);
            double lo = lower, hi = upper;
            if (lower_opt->count() == 0) {
                const FrameBounds ob = order_bounds(F);
                lo = std::sqrt(std::max(ob.lower, 0.0));
                hi = std::sqrt(ob.upper);
            }
            const RieszBasisReport rb = riesz_basis_check(F, lo, hi, tol.sampled);
            Json doc{{"frame", which_frame},
                     {"is_frame", frame},
                     {"riesz_type", riesz_type},
                     {"mu_complete", rb.mu_complete},
                     {"riesz_basis", rb.is_riesz_basis},
                     {"sandwich_lower", lo},
                     {"sandwich_upper", hi},
                     {"sandwich_holds", rb.sandwich_at_given},
                     {"best_lower", rb.best_lower},
                     {"best_upper", rb.best_upper},
                     {"consistent", rb.consistent}};
            std::string text = std::string("frame: ") + (frame ? "yes" : "no") +
                               ", Riesz-type: " + (riesz_type ? "yes" : "no") +
                               ", mu-complete: " + (rb.mu_complete ? "yes" : "no") + "\n" +
                               "Riesz basis: " + (rb.is_riesz_basis ? "yes" : "no") +
                               " (best constants " + std::to_string(rb.best_lower) + ", " +
                               std::to_string(rb.best_upper) + "), predicates agree: " +
                               (rb.consistent ? "yes" : "no") + "\n";
            emit(opts, doc, text);
            return kExitOk;
        }

        if (verify->parsed()) {
            const Scenario sc = load_scenario();
            const TheoremReport report = run_theorem(theorem, sc, opts.trials, opts.seed, tol);
            std::string text = "theorem " + report.theorem + ": " + verdict_name(report.verdict);
            if (!report.detail.empty()) text += " (" + report.detail + ")";
            text += "\n";
            emit(opts, encode(report), text);
            return exit_code_for(report.verdict);
        }

        if (falsify_cmd->parsed()) {
            const CampaignReport campaign =
                falsify(theorem, opts.trials, opts.seed, 40, Exec::parallel, tol);
            std::string text = "theorem " + campaign.theorem + ": " +
                               std::to_string(campaign.verified) + " verified, " +
                               std::to_string(campaign.hypothesis_violated) +
                               " hypothesis-violated, " + std::to_string(campaign.falsified) +
                               " falsified\n";
            if (campaign.has_tightness)
                text += "tightness: lower >= " + std::to_string(campaign.min_lower_tightness) +
                        ", upper <= " + std::to_string(campaign.max_upper_tightness) + "\n";
            if (campaign.falsified > 0 && campaign.reproducer) {
                const std::string path = opts.out.empty()
                                             ? campaign.theorem + "-reproducer.json"
                                             : opts.out + ".reproducer.json";
                save_json(path, encode(*campaign.reproducer));
                text += "reproducer written to " + path + "\n";
            }
            emit(opts, encode(campaign), text);
            return campaign.falsified > 0 ? kExitFalsified : kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const UnknownTheorem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const SmallnessViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
