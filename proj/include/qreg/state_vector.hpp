#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qreg/bits.hpp"
#include "qreg/complex_matrix.hpp"
#include "qreg/errors.hpp"
#include "qreg/rng.hpp"

namespace qreg {

struct MeasurementOutcome {
    int qubit;
    int bit;
    double probability;
};

struct TwoQubitFactors {
    std::array<cplx, 2> high; // qubit 1, the most significant side
    std::array<cplx, 2> low;  // qubit 0
};

/// The quantum register: 2^q complex amplitudes indexed by basis integer j,
/// with qubit 0 as the least significant bit of j and qubit q-1 as the most
/// significant. Measurement collapses the state in place; the pre-measurement
/// state is not retrievable from the result (the model admits no cloning
/// operation, though the simulator allows copying a state for analysis).
class StateVector {
  public:
    /// Capacity limit on register width. Defaults to 24 qubits (256 MiB of
    /// amplitudes); the QREG_QMAX environment variable or set_max_qubits()
    /// overrides it.
    static int max_qubits() { return max_qubits_ref(); }

    static void set_max_qubits(int q) {
        if (q < 1 || q > 30) {
            throw InvalidArgumentError("max_qubits must be in [1, 30]");
        }
        max_qubits_ref() = q;
    }

    static StateVector zero_state(int num_qubits) {
        check_capacity(num_qubits);
        StateVector s;
        s.num_qubits_ = num_qubits;
        s.amps_.assign(std::size_t{1} << num_qubits, cplx(0.0, 0.0));
        s.amps_[0] = 1.0;
        return s;
    }

    static StateVector basis_state(int num_qubits, std::uint64_t j) {
        StateVector s = zero_state(num_qubits);
        if (j >> num_qubits) {
            throw InvalidArgumentError("basis index out of range");
        }
        s.amps_[0] = 0.0;
        s.amps_[j] = 1.0;
        return s;
    }

    /// Wraps raw amplitudes without a normalization check, so intermediate
    /// vectors in linearity arguments can be represented. Entries must be
    /// finite and the length a power of two.
    static StateVector from_amplitudes(std::vector<cplx> amps) {
        if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
            throw InvalidArgumentError(
                "amplitude count must be a nonzero power of two");
        }
        for (const cplx &a : amps) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InvalidArgumentError("amplitudes must be finite");
            }
        }
        StateVector s;
        s.num_qubits_ = std::countr_zero(amps.size());
        check_capacity(s.num_qubits_);
        s.amps_ = std::move(amps);
        return s;
    }

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return amps_.size(); }

    cplx amplitude(std::uint64_t j) const { return amps_.at(j); }

    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }

    double norm_sq() const {
        long double acc = 0.0L;
        for (const cplx &a : amps_) {
            acc += static_cast<long double>(std::norm(a));
        }
        return static_cast<double>(acc);
    }

    /// Probability that the listed qubits carry the listed bit values:
    /// the sum of |amplitude|^2 over all consistent basis states.
    double probability_of(const std::vector<int> &qubits,
                          const std::vector<int> &bits) const {
        if (qubits.size() != bits.size()) {
            throw InvalidArgumentError("probability_of: size mismatch");
        }
        std::uint64_t mask = 0;
        std::uint64_t want = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            check_qubit(qubits[i]);
            const std::uint64_t m = std::uint64_t{1} << qubits[i];
            if (mask & m) {
                throw InvalidArgumentError("probability_of: duplicate qubit");
            }
            if (bits[i] != 0 && bits[i] != 1) {
                throw InvalidArgumentError("probability_of: bits must be 0 or 1");
            }
            mask |= m;
            if (bits[i]) {
                want |= m;
            }
        }
        long double acc = 0.0L;
        for (std::uint64_t j = 0; j < dim(); ++j) {
            if ((j & mask) == want) {
                acc += static_cast<long double>(std::norm(amps_[j]));
            }
        }
        return static_cast<double>(acc);
    }

    /// Single-qubit measurement: samples x in {0, 1} with the probability
    /// mass carried by amplitudes whose bit k equals x, zeroes the
    /// inconsistent amplitudes and renormalizes the rest by 1/sqrt(Pr).
    MeasurementOutcome measure_qubit(int k, Rng &rng) {
        check_qubit(k);
        const std::uint64_t m = std::uint64_t{1} << k;
        long double p1acc = 0.0L;
        long double total = 0.0L;
        for (std::uint64_t j = 0; j < dim(); ++j) {
            const long double w = std::norm(amps_[j]);
            total += w;
            if (j & m) {
                p1acc += w;
            }
        }
        const double p0 = static_cast<double>(total - p1acc);
        const double p1 = static_cast<double>(p1acc);
        if (p0 < 1e-12 && p1 < 1e-12) {
            throw InvalidStateError(
                "measure_qubit: both outcomes have vanishing probability");
        }
        const int x = rng.uniform() < p0 / (p0 + p1) ? 0 : 1;
        const double px = x ? p1 : p0;
        const double inv = 1.0 / std::sqrt(px);
        const std::uint64_t keep = x ? m : 0;
        for (std::uint64_t j = 0; j < dim(); ++j) {
            amps_[j] = (j & m) == keep ? amps_[j] * inv : cplx(0.0, 0.0);
        }
        return {k, x, px};
    }

    /// Measures every qubit, one at a time in the given order. The joint
    /// outcome distribution is {|alpha_j|^2} regardless of the order.
    std::string measure_all(const std::vector<int> &order, Rng &rng) {
        if (static_cast<int>(order.size()) != num_qubits_) {
            throw InvalidArgumentError("measure_all: order size mismatch");
        }
        std::vector<bool> seen(static_cast<std::size_t>(num_qubits_), false);
        for (int k : order) {
            check_qubit(k);
            if (seen[static_cast<std::size_t>(k)]) {
                throw InvalidArgumentError("measure_all: not a permutation");
            }
            seen[static_cast<std::size_t>(k)] = true;
        }
        std::string out(static_cast<std::size_t>(num_qubits_), '0');
        for (int k : order) {
            const MeasurementOutcome r = measure_qubit(k, rng);
            out[static_cast<std::size_t>(num_qubits_ - 1 - k)] =
                r.bit ? '1' : '0';
        }
        return out;
    }

    /// Multinomial sample of `shots` full-register readouts from
    /// {|alpha_j|^2}. Deterministic for a given generator state; the state
    /// itself is left untouched (equivalent to rerunning the circuit and
    /// measuring, shot by shot).
    std::map<std::string, std::uint64_t> sample_counts(std::uint64_t shots,
                                                       Rng &rng) const {
        if (shots < 1) {
            throw InvalidArgumentError("sample_counts: shots must be >= 1");
        }
        std::vector<double> cum(amps_.size());
        long double acc = 0.0L;
        for (std::uint64_t j = 0; j < dim(); ++j) {
            acc += static_cast<long double>(std::norm(amps_[j]));
            cum[j] = static_cast<double>(acc);
        }
        const double total = cum.back();
        std::map<std::string, std::uint64_t> hist;
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = rng.uniform() * total;
            const auto it = std::upper_bound(cum.begin(), cum.end(), u);
            const std::uint64_t j = static_cast<std::uint64_t>(
                std::min<std::ptrdiff_t>(it - cum.begin(),
                                         static_cast<std::ptrdiff_t>(dim()) - 1));
            ++hist[to_bit_string(j, num_qubits_)];
        }
        return hist;
    }

  private:
    static int &max_qubits_ref() {
        static int v = [] {
            if (const char *env = std::getenv("QREG_QMAX")) {
                const int q = std::atoi(env);
                if (q >= 1 && q <= 30) {
                    return q;
                }
            }
            return 24;
        }();
        return v;
    }

    static void check_capacity(int num_qubits) {
        if (num_qubits < 1) {
            throw InvalidArgumentError("register needs at least one qubit");
        }
        if (num_qubits > max_qubits()) {
            throw CapacityError("register of " + std::to_string(num_qubits) +
                                " qubits exceeds the capacity of " +
                                std::to_string(max_qubits()));
        }
    }

    void check_qubit(int k) const {
        if (k < 0 || k >= num_qubits_) {
            throw InvalidArgumentError("qubit index " + std::to_string(k) +
                                       " out of range");
        }
    }

    int num_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// Kronecker product of two registers, with `a` on the most significant side.
inline StateVector tensor_states(const StateVector &a, const StateVector &b) {
    const int q = a.num_qubits() + b.num_qubits();
    if (q > StateVector::max_qubits()) {
        throw CapacityError("tensor_states exceeds register capacity");
    }
    std::vector<cplx> out(std::size_t{1} << q);
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        for (std::uint64_t j = 0; j < b.dim(); ++j) {
            out[(i << b.num_qubits()) | j] = av[i] * bv[j];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

/// Splits a two-qubit state into single-qubit factors when the coefficients
/// satisfy g00*g11 = g01*g10 (within tol); otherwise the state is entangled
/// and nothing is returned. Moduli come from the square-root identities
/// |a0| = sqrt(|g00|^2+|g01|^2) etc.; phases are read off relative to the
/// largest coefficient so that kron(high, low) reproduces the input even
/// when some coefficients vanish.
inline std::optional<TwoQubitFactors>
try_factor_two_qubit(const StateVector &s, double tol = 1e-10) {
    if (s.num_qubits() != 2) {
        throw InvalidArgumentError("try_factor_two_qubit needs a 2-qubit state");
    }
    const cplx g[4] = {s.amplitude(0), s.amplitude(1), s.amplitude(2),
                       s.amplitude(3)};
    if (std::abs(g[0] * g[3] - g[1] * g[2]) >= tol) {
        return std::nullopt;
    }
    int anchor = 0;
    for (int k = 1; k < 4; ++k) {
        if (std::abs(g[k]) > std::abs(g[anchor])) {
            anchor = k;
        }
    }
    const int r = anchor >> 1;
    const int c = anchor & 1;
    const double amod[2] = {std::sqrt(std::norm(g[0]) + std::norm(g[1])),
                            std::sqrt(std::norm(g[2]) + std::norm(g[3]))};
    const double bmod[2] = {std::sqrt(std::norm(g[0]) + std::norm(g[2])),
                            std::sqrt(std::norm(g[1]) + std::norm(g[3]))};
    TwoQubitFactors f;
    f.high[0] = std::polar(amod[0], std::arg(g[0 * 2 + c]));
    f.high[1] = std::polar(amod[1], std::arg(g[1 * 2 + c]));
    f.low[c] = cplx(bmod[c], 0.0);
    f.low[1 - c] = std::polar(
        bmod[1 - c], std::arg(g[r * 2 + (1 - c)]) - std::arg(g[r * 2 + c]));
    return f;
}

} // namespace qreg
