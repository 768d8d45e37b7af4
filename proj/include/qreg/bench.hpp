#pragma once

#include <chrono>
#include <vector>

#include "qreg/circuit.hpp"
#include "qreg/state_vector.hpp"

namespace qreg {

/// Wall-clock seconds for one full-register layer of the given single-qubit
/// gate (the gate applied to every qubit once), minimum over `reps` timed
/// repetitions on a warmed-up register. Memory stays at one 2^q amplitude
/// array throughout.
inline double time_gate_layer(int q, int reps, const Gate &g = Gate::h()) {
    StateVector state = StateVector::zero_state(q);
    auto layer = [&] {
        for (int k = 0; k < q; ++k) {
            apply(state, {g, {k}, {}});
        }
    };
    layer(); // warm-up
    double best = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        layer();
        const auto stop = std::chrono::steady_clock::now();
        const double seconds =
            std::chrono::duration<double>(stop - start).count();
        if (r == 0 || seconds < best) {
            best = seconds;
        }
    }
    return best;
}

struct BenchRow {
    int q = 0;
    double seconds = 0.0;
    double ratio = 0.0; // seconds relative to the previous row
};

inline std::vector<BenchRow> bench_gate_layers(const std::vector<int> &qs,
                                               int reps,
                                               const Gate &g = Gate::h()) {
    std::vector<BenchRow> rows;
    for (int q : qs) {
        BenchRow row;
        row.q = q;
        row.seconds = time_gate_layer(q, reps, g);
        if (!rows.empty() && rows.back().seconds > 0.0) {
            row.ratio = row.seconds / rows.back().seconds;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace qreg
