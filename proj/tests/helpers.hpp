#pragma once

#include <vector>

#include "csframe/frame.hpp"
#include "csframe/toolkit.hpp"

namespace csframe::testing {

inline std::vector<AlgebraDescriptor> standard_descriptors() {
    return {AlgebraDescriptor({1}), AlgebraDescriptor({2}), AlgebraDescriptor({2, 3})};
}

// Scalar module element over A = C.
inline ModuleElement scalar_vec(const std::vector<Complex>& values) {
    const AlgebraDescriptor desc({1});
    std::vector<AlgebraElement> coords;
    for (Complex v : values) coords.push_back(AlgebraElement::scalar(desc, v));
    return {desc, static_cast<int>(values.size()), std::move(coords)};
}

// The redundant three-vector family in C²: (1,0), (0,1), (1/√2, 1/√2) with
// unit weights. Frame operator [[1.5, 0.5], [0.5, 1.5]], bounds (1, 2).
inline FrameMap three_vector_frame() {
    const AlgebraDescriptor desc({1});
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<ModuleElement> vectors = {scalar_vec({1.0, 0.0}), scalar_vec({0.0, 1.0}),
                                          scalar_vec({r, r})};
    return {MeasureSpace::uniform(3), desc, 2, std::move(vectors)};
}

inline AlgebraElement random_algebra_element(const AlgebraDescriptor& desc, Rng& rng) {
    AlgebraElement a = AlgebraElement::zero(desc);
    for (int k = 0; k < desc.num_blocks(); ++k)
        for (int r = 0; r < desc.block_size(k); ++r)
            for (int c = 0; c < desc.block_size(k); ++c) a.block(k)(r, c) = rng.complex_normal();
    return a;
}

inline AdjointableOperator random_adjointable(const AlgebraDescriptor& desc, int d_in, int d_out,
                                              Rng& rng) {
    std::vector<std::vector<AlgebraElement>> entries(static_cast<std::size_t>(d_in));
    for (int i = 0; i < d_in; ++i)
        for (int j = 0; j < d_out; ++j)
            entries[static_cast<std::size_t>(i)].push_back(random_algebra_element(desc, rng));
    return AdjointableOperator::from_entries(desc, entries);
}

}  // namespace csframe::testing
