#include "csframe/serialize.hpp"

#include <fstream>

namespace csframe {

namespace {

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex decode_complex(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json encode(const AlgebraDescriptor& desc) { return Json{{"block_sizes", desc.block_sizes()}}; }

Json encode(const AlgebraElement& a) {
    Json blocks = Json::array();
    for (int k = 0; k < a.num_blocks(); ++k) {
        Json rows = Json::array();
        for (int r = 0; r < a.block(k).rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < a.block(k).cols(); ++c) row.push_back(encode_complex(a.block(k)(r, c)));
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    return Json{{"blocks", std::move(blocks)}};
}

Json encode(const ModuleElement& f) {
    Json coords = Json::array();
    for (int i = 0; i < f.d(); ++i) coords.push_back(encode(f.coord(i)));
    return Json{{"d", f.d()}, {"coords", std::move(coords)}};
}

Json encode(const AdjointableOperator& T) {
    Json entries = Json::array();
    for (int i = 0; i < T.d_in(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < T.d_out(); ++j) row.push_back(encode(T.entry(i, j)));
        entries.push_back(std::move(row));
    }
    return Json{{"d_in", T.d_in()}, {"d_out", T.d_out()}, {"entries", std::move(entries)}};
}

Json encode(const MeasureSpace& space) { return Json{{"weights", space.weights}}; }

Json encode(const FrameMap& F) {
    Json vectors = Json::array();
    for (int i = 0; i < F.size(); ++i) vectors.push_back(encode(F.vector(i)));
    return Json{{"space", encode(F.space())}, {"d", F.d()}, {"vectors", std::move(vectors)}};
}

Json encode(const FrameBounds& b) {
    return Json{{"lower", b.lower},
                {"upper", b.upper},
                {"semantics", b.semantics == FrameBounds::Semantics::order ? "order" : "norm"}};
}

Json encode(const PerturbationConstants& c) {
    return Json{{"alpha", c.alpha},
                {"beta", c.beta},
                {"gamma", c.gamma},
                {"lambda", c.lambda},
                {"N", c.bessel_n}};
}

Json encode(const Scenario& sc) {
    Json j{{"descriptor", encode(sc.descriptor)},
           {"space", encode(sc.space)},
           {"constants", encode(sc.constants)},
           {"seed", sc.seed}};
    if (sc.F) j["F"] = encode(*sc.F);
    if (sc.G) j["G"] = encode(*sc.G);
    if (sc.K) j["K"] = encode(*sc.K);
    if (sc.a1) j["a1"] = encode(*sc.a1);
    if (sc.a2) j["a2"] = encode(*sc.a2);
    return j;
}

Json encode(const TheoremReport& report) {
    Json hypothesis{{"satisfied", report.hypothesis_satisfied},
                    {"failures", report.hypothesis_failures}};
    return Json{{"theorem", report.theorem},
                {"hypothesis", std::move(hypothesis)},
                {"predicted", report.predicted},
                {"measured", report.measured},
                {"verdict", verdict_name(report.verdict)},
                {"detail", report.detail},
                {"seed", report.seed},
                {"trials", report.trials}};
}

Json encode(const CampaignReport& campaign) {
    Json j{{"theorem", campaign.theorem},
           {"trials", campaign.trials},
           {"seed", campaign.seed},
           {"verified", campaign.verified},
           {"hypothesis_violated", campaign.hypothesis_violated},
           {"falsified", campaign.falsified}};
    if (campaign.has_tightness)
        j["tightness"] = Json{{"min_lower", campaign.min_lower_tightness},
                              {"max_upper", campaign.max_upper_tightness}};
    if (campaign.first_falsified_trial >= 0) {
        j["first_falsified_trial"] = campaign.first_falsified_trial;
        j["first_failure_detail"] = campaign.first_failure_detail;
    }
    return j;
}

AlgebraDescriptor decode_descriptor(const Json& j) {
    try {
        return AlgebraDescriptor(j.at("block_sizes").get<std::vector<int>>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad descriptor: ") + e.what());
    }
}

AlgebraElement decode_algebra_element(const Json& j, const AlgebraDescriptor& desc) {
    try {
        const Json& blocks = j.at("blocks");
        if (static_cast<int>(blocks.size()) != desc.num_blocks())
            throw ParseError("block count does not match descriptor");
        std::vector<Matrix> out;
        for (int k = 0; k < desc.num_blocks(); ++k) {
            const int n = desc.block_size(k);
            const Json& rows = blocks[static_cast<std::size_t>(k)];
            if (static_cast<int>(rows.size()) != n) throw ParseError("block row count mismatch");
            Matrix b(n, n);
            for (int r = 0; r < n; ++r) {
                const Json& row = rows[static_cast<std::size_t>(r)];
                if (static_cast<int>(row.size()) != n) throw ParseError("block column count mismatch");
                for (int c = 0; c < n; ++c) b(r, c) = decode_complex(row[static_cast<std::size_t>(c)]);
            }
            out.push_back(std::move(b));
        }
        return {desc, std::move(out)};
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad algebra element: ") + e.what());
    }
}

ModuleElement decode_module_element(const Json& j, const AlgebraDescriptor& desc) {
    try {
        const int d = j.at("d").get<int>();
        const Json& coords = j.at("coords");
        if (static_cast<int>(coords.size()) != d) throw ParseError("coordinate count mismatch");
        std::vector<AlgebraElement> out;
        for (const auto& c : coords) out.push_back(decode_algebra_element(c, desc));
        return {desc, d, std::move(out)};
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad module element: ") + e.what());
    }
}

AdjointableOperator decode_operator(const Json& j, const AlgebraDescriptor& desc) {
    try {
        const int d_in = j.at("d_in").get<int>();
        const int d_out = j.at("d_out").get<int>();
        const Json& entries = j.at("entries");
        if (static_cast<int>(entries.size()) != d_in) throw ParseError("entry row count mismatch");
        std::vector<std::vector<AlgebraElement>> out;
        for (const auto& row : entries) {
            if (static_cast<int>(row.size()) != d_out) throw ParseError("entry column count mismatch");
            std::vector<AlgebraElement> r;
            for (const auto& e : row) r.push_back(decode_algebra_element(e, desc));
            out.push_back(std::move(r));
        }
        return AdjointableOperator::from_entries(desc, out);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad operator: ") + e.what());
    }
}

MeasureSpace decode_measure_space(const Json& j) {
    try {
        return MeasureSpace(j.at("weights").get<std::vector<double>>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad measure space: ") + e.what());
    } catch (const DimensionMismatch& e) {
        throw ParseError(std::string("bad measure space: ") + e.what());
    }
}

FrameMap decode_frame(const Json& j, const AlgebraDescriptor& desc) {
    try {
        const MeasureSpace space = decode_measure_space(j.at("space"));
        const int d = j.at("d").get<int>();
        const Json& vectors = j.at("vectors");
        std::vector<ModuleElement> out;
        for (const auto& v : vectors) out.push_back(decode_module_element(v, desc));
        return {space, desc, d, std::move(out)};
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad frame: ") + e.what());
    }
}

PerturbationConstants decode_constants(const Json& j) {
    try {
        PerturbationConstants c;
        c.alpha = j.value("alpha", 0.0);
        c.beta = j.value("beta", 0.0);
        c.gamma = j.value("gamma", 0.0);
        c.lambda = j.value("lambda", 0.0);
        c.bessel_n = j.value("N", 0.0);
        return c;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad constants: ") + e.what());
    }
}

Scenario decode_scenario(const Json& j) {
    try {
        Scenario sc;
        sc.descriptor = decode_descriptor(j.at("descriptor"));
        sc.space = decode_measure_space(j.at("space"));
        if (j.contains("F")) sc.F = decode_frame(j.at("F"), sc.descriptor);
        if (j.contains("G")) sc.G = decode_frame(j.at("G"), sc.descriptor);
        if (j.contains("K")) sc.K = decode_frame(j.at("K"), sc.descriptor);
        if (j.contains("a1")) sc.a1 = decode_algebra_element(j.at("a1"), sc.descriptor);
        if (j.contains("a2")) sc.a2 = decode_algebra_element(j.at("a2"), sc.descriptor);
        if (j.contains("constants")) sc.constants = decode_constants(j.at("constants"));
        sc.seed = j.value("seed", 0ULL);
        for (const auto* frame : {&sc.F, &sc.G, &sc.K})
            if (*frame && (*frame)->space() != sc.space)
                throw ParseError("frame measure space does not match the scenario space");
        return sc;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad scenario: ") + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << dump_json(j);
    if (!out) throw Error("write to " + path + " failed");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

}  // namespace csframe
