#pragma once

#include <cstdlib>

namespace csframe {

// Layered numerical tolerances. Each layer of floating computation gets one
// order of magnitude of headroom over the previous one:
//   algebraic: exact ring/order identities (default 1e-9)
//   rank:      rank / surjectivity / invertibility decisions (default 1e-8)
//   sampled:   sampled norm-inequality verdicts (default 1e-7)
//
// The environment variable CSFRAME_TOL overrides the algebraic base; the
// other two are derived as 10x and 100x the base.
struct Tol {
    double algebraic = 1e-9;
    double rank = 1e-8;
    double sampled = 1e-7;

    static Tol defaults() {
        Tol t;
        if (const char* env = std::getenv("CSFRAME_TOL")) {
            char* end = nullptr;
            const double base = std::strtod(env, &end);
            if (end != env && base > 0.0) {
                t.algebraic = base;
                t.rank = 10.0 * base;
                t.sampled = 100.0 * base;
            }
        }
        return t;
    }
};

}  // namespace csframe
