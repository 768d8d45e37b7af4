#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qreg/bits.hpp"
#include "qreg/circuit.hpp"
#include "qreg/errors.hpp"
#include "qreg/rng.hpp"
#include "qreg/state_vector.hpp"

namespace qreg {

/// Black-box search predicate over n-bit inputs, held as the set of marked
/// indices. This is the fast permutation-mode oracle; the gate-level route
/// is compiled from a formula by the SAT oracle module.
struct MarkedOracle {
    int n = 0;
    std::vector<std::uint64_t> marked; // sorted, distinct

    MarkedOracle(int n_, std::vector<std::uint64_t> marked_)
        : n(n_), marked(std::move(marked_)) {
        if (n < 1) {
            throw InvalidArgumentError("oracle needs at least one input bit");
        }
        std::sort(marked.begin(), marked.end());
        marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
        for (std::uint64_t m : marked) {
            if (m >> n) {
                throw InvalidArgumentError("marked index out of range");
            }
        }
    }

    static MarkedOracle single(int n, std::uint64_t ell) {
        return MarkedOracle(n, {ell});
    }

    bool is_marked(std::uint64_t j) const {
        return std::binary_search(marked.begin(), marked.end(), j);
    }
};

/// Initial state over n+1 qubits: H^(n+1) (I^n ⊗ X) |0>. The first register
/// (qubits 1..n) carries the uniform superposition with real coefficients;
/// qubit 0 is the auxiliary in the (|0> - |1>)/sqrt(2) factor.
inline StateVector grover_init(int n) {
    if (n < 1) {
        throw InvalidArgumentError("grover_init needs n >= 1");
    }
    StateVector state = StateVector::zero_state(n + 1);
    apply(state, {Gate::x(), {0}, {}});
    for (int k = 0; k <= n; ++k) {
        apply(state, {Gate::h(), {k}, {}});
    }
    return state;
}

/// U_f as a permutation: |j>|y> -> |j>|y XOR f(j)>, i.e. the auxiliary
/// amplitude pair of every marked j is swapped. With the auxiliary in the
/// |0> - |1> factor this flips the sign of the marked first-register
/// coefficients and nothing else.
inline void grover_sign_flip(StateVector &state, const MarkedOracle &oracle) {
    if (state.num_qubits() != oracle.n + 1) {
        throw InvalidArgumentError("grover_sign_flip: register size mismatch");
    }
    auto amps = state.amplitudes();
    for (std::uint64_t ell : oracle.marked) {
        std::swap(amps[2 * ell], amps[2 * ell + 1]);
    }
}

/// Inversion about the average on the first register: every coefficient
/// maps to 2*avg - coeff, applied separately to each auxiliary slice.
inline void invert_about_average(StateVector &state) {
    if (state.num_qubits() < 2) {
        throw InvalidArgumentError("invert_about_average needs n+1 qubits");
    }
    auto amps = state.amplitudes();
    const std::uint64_t half = state.dim() >> 1;
    for (std::uint64_t aux = 0; aux < 2; ++aux) {
        cplx acc(0.0, 0.0);
        for (std::uint64_t j = 0; j < half; ++j) {
            acc += amps[2 * j + aux];
        }
        const cplx twice_avg = 2.0 * acc / static_cast<double>(half);
        for (std::uint64_t j = 0; j < half; ++j) {
            amps[2 * j + aux] = twice_avg - amps[2 * j + aux];
        }
    }
}

/// D = X^n (C^{n-1}Z) X^n over n qubits: flips the sign of |0>_n only.
inline Circuit build_d_circuit(int n) {
    if (n < 1) {
        throw InvalidArgumentError("build_d_circuit needs n >= 1");
    }
    Circuit c(n);
    for (int k = 0; k < n; ++k) {
        c.x(k);
    }
    std::vector<int> controls;
    for (int k = 1; k < n; ++k) {
        controls.push_back(k);
    }
    c.cnz(controls, 0);
    for (int k = 0; k < n; ++k) {
        c.x(k);
    }
    return c;
}

/// Iteration schedule. Each Grover cycle rotates the (marked, unmarked)
/// coefficient pair by theta with sin(theta) = 2 sqrt(M(2^n - M)) / 2^n;
/// the success amplitude after k cycles is d_k = sin(k*theta + theta0) with
/// sin(theta0) = sqrt(M / 2^n). k_opt maximizes d_k^2 over the two integers
/// around (pi/2 - theta0)/theta, preferring the smaller on ties.
struct GroverSchedule {
    int n = 0;
    std::uint64_t num_marked = 1;
    double theta = 0.0;
    double theta0 = 0.0;
    int k_opt = 0;
    double predicted_success = 0.0;
};

inline double grover_dk(const GroverSchedule &s, int k) {
    return std::sin(k * s.theta + s.theta0);
}

inline double grover_uk(const GroverSchedule &s, int k) {
    return std::cos(k * s.theta + s.theta0);
}

inline GroverSchedule grover_schedule(int n, std::uint64_t num_marked = 1) {
    if (n < 1 || n > 62) {
        throw InvalidArgumentError("grover_schedule: n out of range");
    }
    const double dim = std::pow(2.0, n);
    const double m = static_cast<double>(num_marked);
    if (num_marked < 1 || m >= dim) {
        throw InvalidArgumentError("grover_schedule: num_marked out of range");
    }
    GroverSchedule s;
    s.n = n;
    s.num_marked = num_marked;
    s.theta = std::asin(2.0 * std::sqrt(m * (dim - m)) / dim);
    s.theta0 = std::asin(std::sqrt(m / dim));
    const double z = (std::numbers::pi / 2.0 - s.theta0) / s.theta;
    const int lo = std::max(0, static_cast<int>(std::floor(z)));
    const int hi = static_cast<int>(std::ceil(z));
    const double dlo = grover_dk(s, lo);
    const double dhi = grover_dk(s, hi);
    s.k_opt = dhi * dhi > dlo * dlo ? hi : lo;
    const double d = grover_dk(s, s.k_opt);
    s.predicted_success = d * d;
    return s;
}

/// Closed-form rotation values (d_k, u_k) for k = 0..k_max.
inline std::vector<std::pair<double, double>>
predicted_trajectory(int n, std::uint64_t num_marked, int k_max) {
    if (k_max < 0) {
        throw InvalidArgumentError("predicted_trajectory: k_max must be >= 0");
    }
    const GroverSchedule s = grover_schedule(n, num_marked);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        out.emplace_back(grover_dk(s, k), grover_uk(s, k));
    }
    return out;
}

struct GroverRunResult {
    std::map<std::string, std::uint64_t> histogram; // first register only
    StateVector final_state;
};

/// Exact marginal distribution of the first register (auxiliary and any
/// ancilla bits summed out). Entry j is the probability of reading jB_n.
inline std::vector<double> first_register_distribution(const StateVector &state,
                                                       int n) {
    std::vector<double> p(std::size_t{1} << n, 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        p[(idx >> 1) & ((std::uint64_t{1} << n) - 1)] += std::norm(amps[idx]);
    }
    return p;
}

/// Runs `iterations` full Grover cycles (sign flip, inversion about the
/// average) in fast permutation mode, then samples the first register.
/// The exact final state is returned for amplitude-level checks.
inline GroverRunResult grover_run(const MarkedOracle &oracle, int iterations,
                                  std::uint64_t shots, Rng &rng) {
    if (iterations < 0) {
        throw InvalidArgumentError("grover_run: iterations must be >= 0");
    }
    StateVector state = grover_init(oracle.n);
    for (int k = 0; k < iterations; ++k) {
        grover_sign_flip(state, oracle);
        invert_about_average(state);
    }
    const std::vector<double> p = first_register_distribution(state, oracle.n);
    std::vector<double> cum(p.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        acc += p[j];
        cum[j] = acc;
    }
    GroverRunResult result{{}, std::move(state)};
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::uint64_t j = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cum.begin(),
                                     static_cast<std::ptrdiff_t>(p.size()) - 1));
        ++result.histogram[to_bit_string(j, oracle.n)];
    }
    return result;
}

/// Probability that a first-register readout lands in the marked set.
inline double success_probability(const StateVector &state,
                                  const MarkedOracle &oracle) {
    const std::vector<double> p = first_register_distribution(state, oracle.n);
    double acc = 0.0;
    for (std::uint64_t ell : oracle.marked) {
        acc += p[ell];
    }
    return acc;
}

} // namespace qreg
