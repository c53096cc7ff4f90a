// Benchmark comparing the serial reference kernels against the OpenMP
// parallel ones on desk-scale workloads: sampled norm scans, falsification
// campaigns, and subset enumeration. Also asserts that both paths produce
// identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "csframe/parallel.hpp"
#include "csframe/serialize.hpp"
#include "csframe/toolkit.hpp"

using namespace csframe;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-34s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());
    std::printf("%-34s %13s %13s %7s\n", "workload", "serial", "parallel", "speedup");

    {
        const FrameMap F = gen_frame(AlgebraDescriptor({3, 2}), 6, 24, 7, 64.0);
        NormBoundsReport rs, rp;
        const FrameBounds b = order_bounds(F);
        const double ts = time_ms([&] {
            rs = norm_bounds_check(F, b.lower, b.upper, 20000, 11, Tol{}.sampled, Exec::serial);
        });
        const double tp = time_ms([&] {
            rp = norm_bounds_check(F, b.lower, b.upper, 20000, 11, Tol{}.sampled, Exec::parallel);
        });
        row("norm scan (d=6, m=24, 20k f)", ts, tp,
            rs.min_ratio == rp.min_ratio && rs.max_ratio == rp.max_ratio &&
                rs.violations == rp.violations);
    }

    {
        CampaignReport cs, cp;
        const double ts = time_ms([&] { cs = falsify("sum3", 120, 99, 40, Exec::serial); });
        const double tp = time_ms([&] { cp = falsify("sum3", 120, 99, 40, Exec::parallel); });
        row("campaign (sum3, 120 trials)", ts, tp, dump_json(encode(cs)) == dump_json(encode(cp)));
    }

    {
        CampaignReport cs, cp;
        const double ts = time_ms([&] { cs = falsify("pert-d", 120, 99, 40, Exec::serial); });
        const double tp = time_ms([&] { cp = falsify("pert-d", 120, 99, 40, Exec::parallel); });
        row("campaign (pert-d, 120 trials)", ts, tp, dump_json(encode(cs)) == dump_json(encode(cp)));
    }

    {
        const FrameMap F = gen_frame(AlgebraDescriptor({2}), 14, 14, 5, 16.0);
        const FrameBounds b = order_bounds(F);
        RieszBasisReport rs, rp;
        const double ts = time_ms([&] {
            rs = riesz_basis_check(F, std::sqrt(b.lower), std::sqrt(b.upper), Tol{}.sampled,
                                   nullptr, Exec::serial);
        });
        const double tp = time_ms([&] {
            rp = riesz_basis_check(F, std::sqrt(b.lower), std::sqrt(b.upper), Tol{}.sampled,
                                   nullptr, Exec::parallel);
        });
        row("subset enumeration (m=14, 16k)", ts, tp,
            rs.best_lower == rp.best_lower && rs.best_upper == rp.best_upper &&
                rs.sandwich_at_given == rp.sandwich_at_given);
    }

    return 0;
}
