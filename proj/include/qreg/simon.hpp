#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qreg/bits.hpp"
#include "qreg/circuit.hpp"
#include "qreg/errors.hpp"
#include "qreg/rng.hpp"
#include "qreg/state_vector.hpp"

namespace qreg {

/// Black-box oracle for the hidden-shift problem: f(x) = f(z) iff
/// x = z XOR a. With a = 0 the table is a bijection, otherwise two-to-one.
/// The canonical construction is f(x) = min(x, x XOR a).
struct SimonOracle {
    int n = 0;
    std::uint64_t hidden_a = 0;
    std::vector<std::uint32_t> table;

    std::uint64_t eval(std::uint64_t x) const { return table[x]; }
};

inline SimonOracle make_simon_oracle(int n, std::uint64_t a) {
    if (n < 1 || n > 24) {
        throw InvalidArgumentError("simon oracle supports 1..24 bits");
    }
    if (a >> n) {
        throw InvalidArgumentError("hidden shift out of range");
    }
    SimonOracle o;
    o.n = n;
    o.hidden_a = a;
    o.table.resize(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < o.table.size(); ++x) {
        o.table[x] = static_cast<std::uint32_t>(std::min(x, x ^ a));
    }
    return o;
}

/// Applies U_f : |x>|y> -> |x>|y XOR f(x)> to a 2n-qubit register whose top
/// (high-order) n qubits hold x. A pure amplitude permutation, self-inverse;
/// the oracle stays a black box and is never expanded into gates.
inline void apply_simon_oracle(StateVector &state, const SimonOracle &o) {
    if (state.num_qubits() != 2 * o.n) {
        throw InvalidArgumentError("simon oracle expects a 2n-qubit register");
    }
    auto amps = state.amplitudes();
    const std::uint64_t block = std::uint64_t{1} << o.n;
    for (std::uint64_t x = 0; x < block; ++x) {
        const std::uint64_t fx = o.eval(x);
        if (fx == 0) {
            continue;
        }
        const std::uint64_t base = x << o.n;
        for (std::uint64_t y = 0; y < block; ++y) {
            const std::uint64_t z = y ^ fx;
            if (y < z) {
                std::swap(amps[base | y], amps[base | z]);
            }
        }
    }
}

/// The state just before measurement: (H^n ⊗ I^n) U_f (H^n ⊗ I^n) |0>_2n.
inline StateVector simon_premeasurement_state(const SimonOracle &o) {
    StateVector state = StateVector::zero_state(2 * o.n);
    for (int k = o.n; k < 2 * o.n; ++k) {
        apply(state, {Gate::h(), {k}, {}});
    }
    apply_simon_oracle(state, o);
    for (int k = o.n; k < 2 * o.n; ++k) {
        apply(state, {Gate::h(), {k}, {}});
    }
    return state;
}

/// One quantum query: run the circuit and measure the top register. The
/// sampled k always satisfies k . a = 0 (mod 2); every other string is
/// cancelled by destructive interference.
inline std::uint64_t simon_sample(const SimonOracle &o, Rng &rng) {
    StateVector state = simon_premeasurement_state(o);
    std::uint64_t k = 0;
    for (int q = 0; q < o.n; ++q) {
        const MeasurementOutcome r = state.measure_qubit(o.n + q, rng);
        k |= static_cast<std::uint64_t>(r.bit) << q;
    }
    return k;
}

/// Parity constraints k . a = 0 (mod 2) over GF(2), kept in reduced
/// row-echelon form with distinct pivot columns.
class Gf2System {
  public:
    explicit Gf2System(int n) : n_(n) {
        if (n < 1 || n > 63) {
            throw InvalidArgumentError("gf2 system width out of range");
        }
    }

    int width() const { return n_; }
    int rank() const { return static_cast<int>(rref_.size()); }
    int inserted() const { return inserted_; }
    const std::vector<std::uint64_t> &rows() const { return raw_; }
    const std::vector<std::uint64_t> &reduced_rows() const { return rref_; }

    /// Row-reduces k against the system; returns true iff the rank grew.
    bool insert(std::uint64_t k) {
        if (k >> n_) {
            throw InvalidArgumentError("gf2 row wider than the system");
        }
        ++inserted_;
        raw_.push_back(k);
        for (std::uint64_t row : rref_) {
            if (k & pivot_bit(row)) {
                k ^= row;
            }
        }
        if (k == 0) {
            return false;
        }
        const std::uint64_t p = pivot_bit(k);
        for (std::uint64_t &row : rref_) {
            if (row & p) {
                row ^= k;
            }
        }
        rref_.push_back(k);
        std::sort(rref_.begin(), rref_.end(), std::greater<>());
        return true;
    }

    /// The forced solution, when one exists. Rank n pins a = 0; rank n-1
    /// leaves exactly one nonzero vector orthogonal to every row, found by
    /// back-substitution over GF(2). Below that the system is underdetermined.
    std::optional<std::uint64_t> candidate() const {
        if (rank() == n_) {
            return 0;
        }
        if (rank() != n_ - 1) {
            return std::nullopt;
        }
        std::uint64_t pivots = 0;
        for (std::uint64_t row : rref_) {
            pivots |= pivot_bit(row);
        }
        std::uint64_t a = 0;
        for (int b = 0; b < n_; ++b) {
            if (!(pivots & (std::uint64_t{1} << b))) {
                a = std::uint64_t{1} << b; // the lone free column
                break;
            }
        }
        for (std::uint64_t row : rref_) {
            if (parity(row & a)) {
                a |= pivot_bit(row);
            }
        }
        return a;
    }

  private:
    static std::uint64_t pivot_bit(std::uint64_t row) {
        return std::uint64_t{1} << (63 - std::countl_zero(row));
    }

    int n_;
    int inserted_ = 0;
    std::vector<std::uint64_t> raw_;
    std::vector<std::uint64_t> rref_; // sorted by pivot, descending
};

struct SimonSolveResult {
    std::uint64_t recovered_a = 0;
    int quantum_queries = 0;
    std::vector<std::uint64_t> samples;
    std::vector<int> rank_trace; // rank after each sample
};

/// Full algorithm: sample constraints until the GF(2) system forces a
/// candidate, then verify it classically (a = 0 is accepted only once the
/// rank reaches n; a nonzero candidate must collide f(0) with f(a)). Returns
/// nothing if max_samples quantum queries are exhausted first.
inline std::optional<SimonSolveResult> simon_solve(const SimonOracle &o,
                                                   int max_samples, Rng &rng) {
    if (max_samples < o.n) {
        throw InvalidArgumentError("simon_solve needs max_samples >= n");
    }
    Gf2System system(o.n);
    SimonSolveResult result;
    auto accept = [&](std::uint64_t a) {
        result.recovered_a = a;
        return result;
    };
    while (result.quantum_queries < max_samples) {
        if (const auto cand = system.candidate()) {
            if (*cand == 0) {
                return accept(0);
            }
            if (o.eval(0) == o.eval(*cand)) {
                return accept(*cand);
            }
            // Verification failed: the true shift is 0 and the rank must
            // still reach n. Keep sampling.
        }
        const std::uint64_t k = simon_sample(o, rng);
        ++result.quantum_queries;
        result.samples.push_back(k);
        system.insert(k);
        result.rank_trace.push_back(system.rank());
    }
    if (const auto cand = system.candidate()) {
        if (*cand == 0 || o.eval(0) == o.eval(*cand)) {
            return accept(*cand);
        }
    }
    return std::nullopt;
}

struct ClassicalSearchResult {
    std::uint64_t recovered_a = 0;
    int queries = 0;
};

/// Classical baseline: feed distinct random inputs to f until two outputs
/// collide (then a = x XOR z) or the domain is exhausted (then a = 0).
inline ClassicalSearchResult simon_classical_baseline(const SimonOracle &o,
                                                      Rng &rng) {
    const std::uint64_t dom = std::uint64_t{1} << o.n;
    std::vector<std::uint64_t> inputs(dom);
    std::iota(inputs.begin(), inputs.end(), std::uint64_t{0});
    for (std::uint64_t i = dom - 1; i > 0; --i) {
        std::swap(inputs[i], inputs[rng.below(i + 1)]);
    }
    std::unordered_map<std::uint64_t, std::uint64_t> seen_value_to_input;
    seen_value_to_input.reserve(inputs.size());
    ClassicalSearchResult result;
    for (std::uint64_t x : inputs) {
        const std::uint64_t v = o.eval(x);
        ++result.queries;
        if (const auto it = seen_value_to_input.find(v);
            it != seen_value_to_input.end()) {
            result.recovered_a = x ^ it->second;
            return result;
        }
        seen_value_to_input.emplace(v, x);
    }
    result.recovered_a = 0;
    return result;
}

} // namespace qreg
