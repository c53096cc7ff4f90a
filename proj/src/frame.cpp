#include "csframe/frame.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace csframe {

MeasureSpace::MeasureSpace(std::vector<double> w) : weights(std::move(w)) {
    if (weights.empty()) throw DimensionMismatch("measure space needs at least one atom");
    for (double mu : weights)
        if (!(mu > 0.0)) throw DimensionMismatch("atom weights must be positive");
}

MeasureSpace MeasureSpace::uniform(int m) { return MeasureSpace(std::vector<double>(static_cast<std::size_t>(m), 1.0)); }

L2Element::L2Element(MeasureSpace space, AlgebraDescriptor desc, std::vector<AlgebraElement> values)
    : space_(std::move(space)), desc_(std::move(desc)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != space_.size())
        throw SpaceMismatch("L2 element value count != atom count");
    for (const auto& v : values_)
        if (v.descriptor() != desc_) throw DescriptorMismatch("L2 value descriptor mismatch");
}

L2Element L2Element::zero(const MeasureSpace& space, const AlgebraDescriptor& desc) {
    std::vector<AlgebraElement> values(static_cast<std::size_t>(space.size()), AlgebraElement::zero(desc));
    return {space, desc, std::move(values)};
}

L2Element L2Element::indicator(const MeasureSpace& space, int i, const AlgebraElement& value) {
    L2Element phi = zero(space, value.descriptor());
    phi.value(i) = value;
    return phi;
}

L2Element& L2Element::operator+=(const L2Element& rhs) {
    if (space_ != rhs.space_) throw SpaceMismatch("L2 spaces differ");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
    return *this;
}

L2Element& L2Element::operator-=(const L2Element& rhs) {
    if (space_ != rhs.space_) throw SpaceMismatch("L2 spaces differ");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
    return *this;
}

L2Element operator*(Complex c, const L2Element& phi) {
    L2Element out = phi;
    for (int i = 0; i < out.size(); ++i) out.value(i) = c * out.value(i);
    return out;
}

L2Element operator*(double c, const L2Element& phi) { return Complex(c, 0.0) * phi; }

AlgebraElement l2_inner(const L2Element& phi, const L2Element& psi) {
    if (phi.space() != psi.space()) throw SpaceMismatch("L2 inner product across different spaces");
    if (phi.descriptor() != psi.descriptor()) throw DescriptorMismatch("L2 inner descriptor mismatch");
    AlgebraElement acc = AlgebraElement::zero(phi.descriptor());
    for (int i = 0; i < phi.size(); ++i) {
        const double mu = phi.space().weight(i);
        for (int k = 0; k < acc.num_blocks(); ++k)
            acc.block(k) += mu * (phi.value(i).block(k) * psi.value(i).block(k).adjoint());
    }
    return acc;
}

double l2_norm(const L2Element& phi) { return std::sqrt(alg_norm(l2_inner(phi, phi))); }

Matrix l2_slices(const L2Element& phi, int k) {
    const int n = phi.descriptor().block_size(k);
    Matrix s(phi.size() * n, n);
    for (int i = 0; i < phi.size(); ++i)
        s.middleRows(i * n, n) = std::sqrt(phi.space().weight(i)) * phi.value(i).block(k).transpose();
    return s;
}

L2Element l2_from_slices(const MeasureSpace& space, const AlgebraDescriptor& desc,
                         const std::vector<Matrix>& s) {
    std::vector<AlgebraElement> values;
    values.reserve(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) {
        const double w = 1.0 / std::sqrt(space.weight(i));
        std::vector<Matrix> blocks;
        for (int k = 0; k < desc.num_blocks(); ++k) {
            const int n = desc.block_size(k);
            blocks.push_back(w * s[static_cast<std::size_t>(k)].middleRows(i * n, n).transpose());
        }
        values.emplace_back(desc, std::move(blocks));
    }
    return {space, desc, std::move(values)};
}

Vector flatten_l2(const L2Element& phi) {
    const auto& desc = phi.descriptor();
    Vector v(phi.size() * desc.dim());
    Eigen::Index off = 0;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const Matrix s = l2_slices(phi, k);
        for (int r = 0; r < desc.block_size(k); ++r) {
            v.segment(off, s.rows()) = s.col(r);
            off += s.rows();
        }
    }
    return v;
}

FrameMap::FrameMap(MeasureSpace space, AlgebraDescriptor desc, int d, std::vector<ModuleElement> vectors)
    : space_(std::move(space)), desc_(std::move(desc)), d_(d), vectors_(std::move(vectors)) {
    if (static_cast<int>(vectors_.size()) != space_.size())
        throw SpaceMismatch("frame vector count != atom count");
    for (const auto& v : vectors_)
        if (v.descriptor() != desc_ || v.d() != d_) throw DimensionMismatch("frame vector shape mismatch");
}

FrameMap FrameMap::standard_basis(const AlgebraDescriptor& desc, int d) {
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) vectors.push_back(ModuleElement::basis(desc, d, j));
    return {MeasureSpace::uniform(d), desc, d, std::move(vectors)};
}

AdjointableOperator synthesis_op(const FrameMap& F, Exec policy) {
    const auto& desc = F.descriptor();
    const int m = F.size();
    std::vector<Matrix> blocks;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        blocks.push_back(Matrix::Zero(F.d() * n, m * n));
    }
    // Atom column groups are disjoint: safe to fill concurrently.
    for_indexed(policy, m, [&](std::ptrdiff_t i) {
        const double root_mu = std::sqrt(F.space().weight(static_cast<int>(i)));
        for (int k = 0; k < desc.num_blocks(); ++k) {
            const int n = desc.block_size(k);
            blocks[static_cast<std::size_t>(k)].middleCols(static_cast<Eigen::Index>(i) * n, n) =
                root_mu * F.vector(static_cast<int>(i)).slices(k);
        }
    });
    return {desc, m, F.d(), std::move(blocks)};
}

AdjointableOperator analysis_op(const FrameMap& F, Exec policy) { return adjoint_op(synthesis_op(F, policy)); }

AdjointableOperator frame_operator(const FrameMap& F, Exec policy) {
    const AdjointableOperator syn = synthesis_op(F, policy);
    return compose(syn, adjoint_op(syn));
}

ModuleElement synthesis_apply(const FrameMap& F, const L2Element& phi) {
    if (F.space() != phi.space()) throw SpaceMismatch("synthesis across different measure spaces");
    if (F.descriptor() != phi.descriptor()) throw DescriptorMismatch("synthesis descriptor mismatch");
    ModuleElement acc = ModuleElement::zero(F.descriptor(), F.d());
    for (int i = 0; i < F.size(); ++i)
        acc += F.space().weight(i) * (phi.value(i) * F.vector(i));
    return acc;
}

L2Element analysis_apply(const FrameMap& F, const ModuleElement& f) {
    if (F.descriptor() != f.descriptor() || F.d() != f.d())
        throw DimensionMismatch("analysis shape mismatch");
    std::vector<AlgebraElement> values;
    values.reserve(static_cast<std::size_t>(F.size()));
    for (int i = 0; i < F.size(); ++i) values.push_back(inner(f, F.vector(i)));
    return {F.space(), F.descriptor(), std::move(values)};
}

AlgebraElement frame_quadratic_form(const FrameMap& F, const ModuleElement& f) {
    const L2Element c = analysis_apply(F, f);
    return l2_inner(c, c);
}

FrameBounds order_bounds(const FrameMap& F) {
    const auto eigs = self_adjoint_spectrum(frame_operator(F));
    return {eigs.front(), eigs.back(), FrameBounds::Semantics::order};
}

bool is_frame(const FrameMap& F, double tol) {
    const FrameBounds b = order_bounds(F);
    return b.lower > tol * std::max(b.upper, std::numeric_limits<double>::min());
}

std::vector<ModuleElement> frame_eigen_directions(const FrameMap& F) {
    const auto& desc = F.descriptor();
    const AdjointableOperator S = frame_operator(F);
    std::vector<ModuleElement> out;
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const Matrix herm = 0.5 * (S.block(k) + S.block(k).adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
        for (int c = 0; c < es.eigenvectors().cols(); ++c) {
            std::vector<Matrix> s;
            for (int kk = 0; kk < desc.num_blocks(); ++kk)
                s.push_back(Matrix::Zero(F.d() * desc.block_size(kk), desc.block_size(kk)));
            s[static_cast<std::size_t>(k)].col(0) = es.eigenvectors().col(c);
            ModuleElement f = ModuleElement::from_slices(desc, F.d(), s);
            const double nf = module_norm(f);
            if (nf > 1e-300) f = (1.0 / nf) * f;
            out.push_back(std::move(f));
        }
    }
    return out;
}

namespace {

// Sample set for the norm-semantics scans: eigen-directions of every block
// of S_F, the coordinate basis, then seeded random directions.
struct NormScan {
    std::vector<double> ratios;
    std::vector<std::string> labels;
};

NormScan scan_norm_ratios(const FrameMap& F, int trials, std::uint64_t seed, Exec policy) {
    const auto& desc = F.descriptor();

    std::vector<ModuleElement> samples = frame_eigen_directions(F);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < samples.size(); ++i)
        labels.push_back("eigen-direction #" + std::to_string(i));
    for (int j = 0; j < F.d(); ++j) {
        samples.push_back(ModuleElement::basis(desc, F.d(), j));
        labels.push_back("coordinate " + std::to_string(j));
    }
    const std::size_t structured = samples.size();
    samples.resize(structured + static_cast<std::size_t>(trials), ModuleElement::zero(desc, F.d()));
    for_indexed(policy, trials, [&](std::ptrdiff_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        samples[structured + static_cast<std::size_t>(t)] = random_module_element(desc, F.d(), rng);
    });
    for (int t = 0; t < trials; ++t) labels.push_back("random #" + std::to_string(t));

    NormScan scan;
    scan.ratios.assign(samples.size(), std::numeric_limits<double>::quiet_NaN());
    scan.labels = std::move(labels);
    for_indexed(policy, static_cast<std::ptrdiff_t>(samples.size()), [&](std::ptrdiff_t i) {
        const ModuleElement& f = samples[static_cast<std::size_t>(i)];
        const double den = alg_norm(inner(f, f));
        if (den < 1e-300) return;
        scan.ratios[static_cast<std::size_t>(i)] = alg_norm(frame_quadratic_form(F, f)) / den;
    });
    return scan;
}

}  // namespace

NormBoundsReport norm_bounds_check(const FrameMap& F, double lower, double upper, int trials,
                                   std::uint64_t seed, double tol, Exec policy) {
    const NormScan scan = scan_norm_ratios(F, trials, seed, policy);
    NormBoundsReport report;
    report.lower_tested = lower;
    report.upper_tested = upper;
    report.seed = seed;
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = 0.0;
    for (std::size_t i = 0; i < scan.ratios.size(); ++i) {
        const double r = scan.ratios[i];
        if (std::isnan(r)) continue;
        ++report.samples;
        report.min_ratio = std::min(report.min_ratio, r);
        report.max_ratio = std::max(report.max_ratio, r);
        const double gap = std::max(lower - r, r - upper);
        if (gap > tol) {
            ++report.violations;
            if (gap > report.worst_gap) {
                report.worst_gap = gap;
                report.witness = scan.labels[i] + " (ratio " + std::to_string(r) + ")";
            }
        }
    }
    if (report.samples == 0) {
        report.min_ratio = 0.0;
        report.max_ratio = 0.0;
    }
    return report;
}

FrameBounds norm_bounds_estimate(const FrameMap& F, int trials, std::uint64_t seed, Exec policy) {
    const NormScan scan = scan_norm_ratios(F, trials, seed, policy);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool any = false;
    for (double r : scan.ratios) {
        if (std::isnan(r)) continue;
        any = true;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!any) lo = hi = 0.0;
    return {lo, hi, FrameBounds::Semantics::norm};
}

FrameMap canonical_dual(const FrameMap& F, double tol) {
    if (!is_frame(F, tol)) throw NotAFrame("canonical dual requires a frame");
    const AdjointableOperator Sinv = invert_op(frame_operator(F), tol);
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(F.size()));
    for (int i = 0; i < F.size(); ++i) vectors.push_back(apply(Sinv, F.vector(i)));
    return {F.space(), F.descriptor(), F.d(), std::move(vectors)};
}

bool is_dual_pair(const FrameMap& F, const FrameMap& G, double tol) {
    if (F.space() != G.space()) throw SpaceMismatch("dual pair across different spaces");
    if (F.descriptor() != G.descriptor() || F.d() != G.d())
        throw DimensionMismatch("dual pair shape mismatch");
    const AdjointableOperator prod = compose(synthesis_op(F), adjoint_op(synthesis_op(G)));
    return op_norm(prod - AdjointableOperator::identity(F.descriptor(), F.d())) <= tol;
}

bool is_riesz_type(const FrameMap& F, double tol) {
    if (!is_frame(F, tol)) throw NotAFrame("Riesz-type predicate requires a frame");
    return is_surjective(analysis_op(F), tol);
}

bool riesz_type_or_false(const FrameMap& F, double tol) {
    return is_frame(F, tol) && is_surjective(analysis_op(F), tol);
}

bool is_mu_complete(const FrameMap& F, double tol) { return is_injective(analysis_op(F), tol); }

namespace {

// Domain-side smallest and largest singular values of the synthesis
// restricted to the atoms of `mask`.
std::pair<double, double> subset_synthesis_range(const AdjointableOperator& syn,
                                                 const AlgebraDescriptor& desc, int m,
                                                 std::uint64_t mask) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<int> atoms;
    for (int i = 0; i < m; ++i)
        if (mask & (1ULL << i)) atoms.push_back(i);
    for (int k = 0; k < desc.num_blocks(); ++k) {
        const int n = desc.block_size(k);
        Matrix sub(syn.block(k).rows(), static_cast<Eigen::Index>(atoms.size()) * n);
        for (std::size_t a = 0; a < atoms.size(); ++a)
            sub.middleCols(static_cast<Eigen::Index>(a) * n, n) = syn.block(k).middleCols(atoms[a] * n, n);
        Eigen::JacobiSVD<Matrix> svd(sub);
        hi = std::max(hi, svd.singularValues()(0));
        lo = std::min(lo, sub.cols() <= sub.rows() ? svd.singularValues().minCoeff() : 0.0);
    }
    return {lo, hi};
}

}  // namespace

RieszBasisReport riesz_basis_check(const FrameMap& F, double lower, double upper, double tol,
                                   const std::vector<std::uint64_t>* subset_sample, Exec policy) {
    const int m = F.size();
    std::vector<std::uint64_t> masks;
    if (subset_sample) {
        masks = *subset_sample;
    } else if (m <= 20) {
        masks.resize((1ULL << m) - 1);
        for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i + 1;
    } else {
        throw TooManyAtoms("subset enumeration infeasible for " + std::to_string(m) +
                           " atoms; supply a sampled subset list");
    }

    const AdjointableOperator syn = synthesis_op(F, policy);
    const std::uint64_t full_mask = (m >= 64) ? ~0ULL : ((1ULL << m) - 1);
    const auto full = subset_synthesis_range(syn, F.descriptor(), m, full_mask);

    std::vector<std::pair<double, double>> ranges(masks.size());
    for_indexed(policy, static_cast<std::ptrdiff_t>(masks.size()), [&](std::ptrdiff_t i) {
        ranges[static_cast<std::size_t>(i)] =
            subset_synthesis_range(syn, F.descriptor(), m, masks[static_cast<std::size_t>(i)]);
    });

    RieszBasisReport report;
    report.mu_complete = is_mu_complete(F);
    report.best_lower = full.first;
    report.best_upper = full.second;
    report.subsets_checked = masks.size();
    report.sandwich_at_given = report.mu_complete;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (ranges[i].first < lower - tol || ranges[i].second > upper + tol) {
            report.sandwich_at_given = false;
            if (report.failure.empty()) {
                std::ostringstream os;
                os << "subset mask " << masks[i] << " has synthesis range [" << ranges[i].first
                   << ", " << ranges[i].second << "]";
                report.failure = os.str();
            }
        }
    }
    if (!report.mu_complete && report.failure.empty()) report.failure = "family is not mu-complete";

    // Sampled full-set coefficients as witnesses (the subset singular values
    // above are already exact extremal constants).
    Rng wrng(derive_seed(0x52695a42ULL, static_cast<std::uint64_t>(m)));
    for (int t = 0; t < 32; ++t) {
        const L2Element phi = random_l2_element(F.space(), F.descriptor(), wrng);
        const double den = l2_norm(phi);
        if (den < 1e-300) continue;
        const double r = module_norm(synthesis_apply(F, phi)) / den;
        if (r < lower - tol || r > upper + tol) {
            report.sandwich_at_given = false;
            if (report.failure.empty())
                report.failure = "sampled coefficient family with synthesis ratio " + std::to_string(r);
        }
    }

    report.is_riesz_basis =
        report.mu_complete && full.first > Tol{}.rank * std::max(full.second, std::numeric_limits<double>::min());
    report.riesz_type = riesz_type_or_false(F);
    report.consistent = (report.is_riesz_basis == report.riesz_type);
    return report;
}

FrameMap scale_frame(const AlgebraElement& a, const FrameMap& F) {
    if (a.descriptor() != F.descriptor()) throw DescriptorMismatch("scale_frame descriptor mismatch");
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(F.size()));
    for (int i = 0; i < F.size(); ++i) vectors.push_back(a * F.vector(i));
    return {F.space(), F.descriptor(), F.d(), std::move(vectors)};
}

FrameMap frame_linear_combination(const AlgebraElement& a1, const FrameMap& F,
                                  const AlgebraElement& a2, const FrameMap& G) {
    if (F.space() != G.space()) throw SpaceMismatch("combination across different spaces");
    if (F.descriptor() != G.descriptor() || F.d() != G.d())
        throw DimensionMismatch("combination shape mismatch");
    std::vector<ModuleElement> vectors;
    vectors.reserve(static_cast<std::size_t>(F.size()));
    for (int i = 0; i < F.size(); ++i) vectors.push_back(a1 * F.vector(i) + a2 * G.vector(i));
    return {F.space(), F.descriptor(), F.d(), std::move(vectors)};
}

FrameMap frame_difference(const FrameMap& F, const FrameMap& G) {
    const AlgebraElement one = AlgebraElement::identity(F.descriptor());
    return frame_linear_combination(one, F, -one, G);
}

double synthesis_lower_bound(const FrameMap& F) { return min_singular(synthesis_op(F)); }

ModuleElement random_module_element(const AlgebraDescriptor& desc, int d, Rng& rng) {
    std::vector<AlgebraElement> coords;
    coords.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        AlgebraElement a = AlgebraElement::zero(desc);
        for (int k = 0; k < desc.num_blocks(); ++k)
            for (int r = 0; r < desc.block_size(k); ++r)
                for (int c = 0; c < desc.block_size(k); ++c) a.block(k)(r, c) = rng.complex_normal();
        coords.push_back(std::move(a));
    }
    return {desc, d, std::move(coords)};
}

L2Element random_l2_element(const MeasureSpace& space, const AlgebraDescriptor& desc, Rng& rng) {
    std::vector<AlgebraElement> values;
    values.reserve(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) {
        AlgebraElement a = AlgebraElement::zero(desc);
        for (int k = 0; k < desc.num_blocks(); ++k)
            for (int r = 0; r < desc.block_size(k); ++r)
                for (int c = 0; c < desc.block_size(k); ++c) a.block(k)(r, c) = rng.complex_normal();
        values.push_back(std::move(a));
    }
    return {space, desc, std::move(values)};
}

}  // namespace csframe
