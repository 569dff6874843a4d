// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
//
// Times the pair-value matrix fill, serial against the OpenMP team, on the
// full rank-2 stratum over two atoms. The serial fill is the reference the
// tests compare against; this tool reports whether parallelism buys anything
// on the current machine and double-checks that both fills agree.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bvm/values.hpp"
#include "bvm/workspace.hpp"

namespace {

double time_fill_ms(bvm::Workspace& ws, const std::vector<bvm::NameId>& names, bool parallel,
                    bvm::PairMatrices& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = bvm::compute_pair_matrices(ws, names, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main() {
    bvm::Workspace ws({"p", "q"}, bvm::WorkspaceBounds{});
    const std::vector<bvm::NameId> names = ws.name_stratum(2);
    std::printf("pair-value fill over %zu names (%zu ordered pairs)\n", names.size(),
                names.size() * names.size());
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not enabled in this build\n");
#endif

    const int reps = 3;
    bvm::PairMatrices serial, parallel;
    double best_serial = 0, best_parallel = 0;
    for (int r = 0; r < reps; ++r) {
        const double ms = time_fill_ms(ws, names, false, serial);
        if (r == 0 || ms < best_serial) best_serial = ms;
    }
    for (int r = 0; r < reps; ++r) {
        const double ms = time_fill_ms(ws, names, true, parallel);
        if (r == 0 || ms < best_parallel) best_parallel = ms;
    }

    std::printf("serial   best of %d: %9.2f ms\n", reps, best_serial);
    std::printf("parallel best of %d: %9.2f ms\n", reps, best_parallel);
    std::printf("speedup: %.2fx\n", best_serial / best_parallel);

    const bool agree = serial.eq == parallel.eq && serial.mem == parallel.mem;
    std::printf("matrices agree: %s\n", agree ? "yes" : "NO");
    return agree ? 0 : 1;
}
