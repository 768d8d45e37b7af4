#pragma once

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "qreg/complex_matrix.hpp"
#include "qreg/errors.hpp"
#include "qreg/gates.hpp"
#include "qreg/state_vector.hpp"

namespace qreg {

/// One circuit step: a base gate, its target qubit(s), and any control
/// qubits. CNOT is X with one control, CCNOT is X with two, CnZ is Z with
/// n controls, and so on.
struct GateApplication {
    Gate gate;
    std::vector<int> targets;
    std::vector<int> controls;

    friend bool operator==(const GateApplication &a, const GateApplication &b) {
        return a.gate == b.gate && a.targets == b.targets &&
               a.controls == b.controls;
    }
};

/// An ordered gate sequence over a fixed qubit count. The step list reads
/// left to right in circuit time; as matrices the composite is the product
/// in the reverse order. Measurements are not circuit steps: circuits stay
/// pure unitaries and remain invertible.
class Circuit {
  public:
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1) {
            throw InvalidArgumentError("circuit needs at least one qubit");
        }
    }

    int num_qubits() const { return num_qubits_; }
    const std::vector<GateApplication> &steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }

    Circuit &add(GateApplication step) {
        validate(step);
        steps_.push_back(std::move(step));
        return *this;
    }

    Circuit &add(const Gate &g, std::vector<int> targets,
                 std::vector<int> controls = {}) {
        return add(GateApplication{g, std::move(targets), std::move(controls)});
    }

    Circuit &i(int q) { return add(Gate::i(), {q}); }
    Circuit &x(int q) { return add(Gate::x(), {q}); }
    Circuit &y(int q) { return add(Gate::y(), {q}); }
    Circuit &z(int q) { return add(Gate::z(), {q}); }
    Circuit &h(int q) { return add(Gate::h(), {q}); }
    Circuit &sx(int q) { return add(Gate::sx(), {q}); }
    Circuit &sxdg(int q) { return add(Gate::sxdg(), {q}); }
    Circuit &s(int q) { return add(Gate::s(), {q}); }
    Circuit &sdg(int q) { return add(Gate::sdg(), {q}); }
    Circuit &t(int q) { return add(Gate::t(), {q}); }
    Circuit &p(double theta, int q) { return add(Gate::p(theta), {q}); }
    Circuit &u(double theta, double phi, double lambda, int q) {
        return add(Gate::u(theta, phi, lambda), {q});
    }
    Circuit &swap(int a, int b) { return add(Gate::swap(), {a, b}); }
    Circuit &cx(int control, int target) {
        return add(Gate::x(), {target}, {control});
    }
    Circuit &cz(int control, int target) {
        return add(Gate::z(), {target}, {control});
    }
    Circuit &ccx(int c1, int c2, int target) {
        return add(Gate::x(), {target}, {c1, c2});
    }
    Circuit &mcx(std::vector<int> controls, int target) {
        return add(Gate::x(), {target}, std::move(controls));
    }
    Circuit &cnz(std::vector<int> controls, int target) {
        return add(Gate::z(), {target}, std::move(controls));
    }

    /// Appends a fragment defined on its own register, mapping fragment
    /// qubit k to qubit_map[k].
    Circuit &append(const Circuit &fragment, const std::vector<int> &qubit_map) {
        if (static_cast<int>(qubit_map.size()) != fragment.num_qubits()) {
            throw InvalidArgumentError("append: qubit map size mismatch");
        }
        for (const GateApplication &step : fragment.steps()) {
            GateApplication mapped = step;
            for (int &q : mapped.targets) {
                q = qubit_map[static_cast<std::size_t>(q)];
            }
            for (int &q : mapped.controls) {
                q = qubit_map[static_cast<std::size_t>(q)];
            }
            add(std::move(mapped));
        }
        return *this;
    }

    Circuit &append(const Circuit &other) {
        if (other.num_qubits() != num_qubits_) {
            throw InvalidArgumentError("append: qubit count mismatch");
        }
        for (const GateApplication &step : other.steps()) {
            add(step);
        }
        return *this;
    }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.num_qubits_ == b.num_qubits_ && a.steps_ == b.steps_;
    }

  private:
    void validate(const GateApplication &step) const {
        if (static_cast<int>(step.targets.size()) != step.gate.arity()) {
            throw InvalidArgumentError("gate arity does not match target count");
        }
        std::uint64_t seen = 0;
        auto claim = [&](int q) {
            if (q < 0 || q >= num_qubits_) {
                throw InvalidArgumentError("qubit index " + std::to_string(q) +
                                           " out of range");
            }
            const std::uint64_t m = std::uint64_t{1} << q;
            if (seen & m) {
                throw InvalidArgumentError("gate qubits must be distinct");
            }
            seen |= m;
        };
        for (int q : step.targets) {
            claim(q);
        }
        for (int q : step.controls) {
            claim(q);
        }
    }

    int num_qubits_;
    std::vector<GateApplication> steps_;
};

/// Applies one gate to the state in place, in O(2^q) time: amplitude pairs
/// that differ in the target bit are combined through the 2x2 gate matrix,
/// and controlled gates touch only pairs whose control bits are all 1. No
/// 2^q x 2^q matrix is ever materialized.
inline void apply(StateVector &state, const GateApplication &step) {
    const int q = state.num_qubits();
    std::uint64_t cmask = 0;
    auto check = [&](int k) {
        if (k < 0 || k >= q) {
            throw InvalidArgumentError("apply: qubit index out of range");
        }
    };
    for (int k : step.controls) {
        check(k);
        cmask |= std::uint64_t{1} << k;
    }
    auto amps = state.amplitudes();
    if (step.gate.kind == GateKind::SWAP) {
        check(step.targets.at(0));
        check(step.targets.at(1));
        const std::uint64_t ma = std::uint64_t{1} << step.targets[0];
        const std::uint64_t mb = std::uint64_t{1} << step.targets[1];
        for (std::uint64_t j = 0; j < state.dim(); ++j) {
            if ((j & ma) && !(j & mb) && (j & cmask) == cmask) {
                std::swap(amps[j], amps[j ^ ma ^ mb]);
            }
        }
        return;
    }
    check(step.targets.at(0));
    const auto m = gate_entries(step.gate);
    const std::uint64_t mask = std::uint64_t{1} << step.targets[0];
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = state.dim() >> 1;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        if ((i0 & cmask) != cmask) {
            continue;
        }
        const std::uint64_t i1 = i0 | mask;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

/// Runs the circuit on the given state: steps applied in list order.
inline StateVector run(const Circuit &c, StateVector state) {
    if (state.num_qubits() != c.num_qubits()) {
        throw InvalidArgumentError("run: qubit count mismatch");
    }
    for (const GateApplication &step : c.steps()) {
        apply(state, step);
    }
    return state;
}

/// Full 2^q x 2^q unitary of a circuit, built column by column by running
/// the circuit on each basis state. Verification-only; capped at 12 qubits.
inline ComplexMatrix unitary_of(const Circuit &c) {
    if (c.num_qubits() > 12) {
        throw CapacityError("unitary_of supports at most 12 qubits");
    }
    const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
    ComplexMatrix u(dim, dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        const StateVector col = run(c, StateVector::basis_state(c.num_qubits(), j));
        for (std::uint64_t i = 0; i < dim; ++i) {
            u(i, j) = col.amplitude(i);
        }
    }
    return u;
}

/// Reverses the step list and replaces each gate by its adjoint, so that
/// inverse(c) undoes c exactly.
inline Circuit inverse(const Circuit &c) {
    Circuit out(c.num_qubits());
    for (auto it = c.steps().rbegin(); it != c.steps().rend(); ++it) {
        out.add(adjoint_gate(it->gate), it->targets, it->controls);
    }
    return out;
}

/// SWAP of qubits 0 and 1 as three CNOTs.
inline Circuit swap_decomposition() {
    Circuit c(2);
    c.cx(1, 0).cx(0, 1).cx(1, 0);
    return c;
}

/// CZ of control 1, target 0 as a Hadamard-conjugated CNOT.
inline Circuit cz_decomposition() {
    Circuit c(2);
    c.h(0).cx(1, 0).h(0);
    return c;
}

/// CCNOT with controls 2, 1 and target 0 as five gates: controlled square
/// roots of X interleaved with CNOTs between the controls.
inline Circuit ccnot_decomposition() {
    Circuit c(3);
    c.add(Gate::sx(), {0}, {1});
    c.cx(2, 1);
    c.add(Gate::sxdg(), {0}, {1});
    c.cx(2, 1);
    c.add(Gate::sx(), {0}, {2});
    return c;
}

namespace detail {

/// Recursive multi-controlled phase: C^k P(theta) on the given controls and
/// target, emitted as controlled half-angle phase gates around two
/// multi-controlled-X blocks, recursing on one fewer control. The X blocks
/// stay native multi-controlled steps here.
inline void emit_cn_phase(Circuit &c, double theta, std::vector<int> controls,
                          int target) {
    if (controls.empty()) {
        c.p(theta, target);
        return;
    }
    if (controls.size() == 1) {
        if (theta == std::numbers::pi) {
            c.cz(controls[0], target);
        } else if (theta == std::numbers::pi / 2.0) {
            c.add(Gate::s(), {target}, {controls[0]});
        } else if (theta == -std::numbers::pi / 2.0) {
            c.add(Gate::sdg(), {target}, {controls[0]});
        } else {
            c.add(Gate::p(theta), {target}, {controls[0]});
        }
        return;
    }
    const int pivot = controls.front();
    std::vector<int> rest(controls.begin() + 1, controls.end());
    emit_cn_phase(c, theta / 2.0, {pivot}, target);
    c.mcx(rest, pivot);
    emit_cn_phase(c, -theta / 2.0, {pivot}, target);
    c.mcx(rest, pivot);
    emit_cn_phase(c, theta / 2.0, rest, target);
}

} // namespace detail

/// C^{n}Z on target 0 with controls 1..n, decomposed recursively: each level
/// peels one control with a controlled square root of the phase and two
/// multi-controlled-X blocks, bottoming out at CZ.
inline Circuit cnz_decomposition(int n_controls) {
    if (n_controls < 1) {
        throw InvalidArgumentError("cnz_decomposition requires n_controls >= 1");
    }
    Circuit c(n_controls + 1);
    std::vector<int> controls;
    for (int k = 1; k <= n_controls; ++k) {
        controls.push_back(k);
    }
    detail::emit_cn_phase(c, std::numbers::pi, controls, 0);
    return c;
}

/// Multi-controlled X via a chain of CCNOTs through ancilla qubits that
/// enter in |0> and are restored on exit. k controls need k-2 ancillas.
inline Circuit mcx_with_ancilla(const std::vector<int> &controls, int target,
                                const std::vector<int> &ancillas,
                                int num_qubits) {
    Circuit c(num_qubits);
    const std::size_t k = controls.size();
    if (k == 0) {
        c.x(target);
        return c;
    }
    if (k == 1) {
        c.cx(controls[0], target);
        return c;
    }
    if (k == 2) {
        c.ccx(controls[0], controls[1], target);
        return c;
    }
    if (ancillas.size() < k - 2) {
        throw InvalidArgumentError("mcx_with_ancilla: needs " +
                                   std::to_string(k - 2) + " ancillas, got " +
                                   std::to_string(ancillas.size()));
    }
    std::uint64_t seen = 0;
    auto claim = [&](int q) {
        const std::uint64_t m = std::uint64_t{1} << q;
        if (seen & m) {
            throw InvalidArgumentError("mcx_with_ancilla: qubits must be distinct");
        }
        seen |= m;
    };
    claim(target);
    for (int q : controls) {
        claim(q);
    }
    for (int q : ancillas) {
        claim(q);
    }
    // a[0] = c0 and c1; a[j] = c_{j+1} and a[j-1]; the last CCNOT writes the
    // target, then the chain is undone to reset every ancilla.
    Circuit forward(num_qubits);
    forward.ccx(controls[0], controls[1], ancillas[0]);
    for (std::size_t j = 2; j + 1 < k; ++j) {
        forward.ccx(controls[j], ancillas[j - 2], ancillas[j - 1]);
    }
    c.append(forward);
    c.ccx(controls[k - 1], ancillas[k - 3], target);
    c.append(inverse(forward));
    return c;
}

namespace detail {

inline void lower_step(const GateApplication &step,
                       std::vector<GateApplication> &out);

inline std::vector<int> augmented(const std::vector<int> &controls, int extra) {
    std::vector<int> v = controls;
    v.push_back(extra);
    return v;
}

/// Controlled single-qubit V with one control, lowered to u gates and CNOTs
/// through the ZYZ form V = e^{ia} Rz(b) Ry(g) Rz(d):
///   C, CX, B, CX, A on the target and a phase on the control, with
///   A = Rz(b)Ry(g/2), B = Ry(-g/2)Rz(-(d+b)/2), C = Rz((d-b)/2).
inline void emit_controlled_1q(const ComplexMatrix &v, int control, int target,
                               std::vector<GateApplication> &out) {
    const ZyzAngles e = zyz_decompose(v);
    out.push_back({Gate::u(0.0, 0.0, (e.lambda - e.phi) / 2.0), {target}, {}});
    out.push_back({Gate::x(), {target}, {control}});
    out.push_back(
        {Gate::u(-e.theta / 2.0, 0.0, -(e.lambda + e.phi) / 2.0), {target}, {}});
    out.push_back({Gate::x(), {target}, {control}});
    out.push_back({Gate::u(e.theta / 2.0, e.phi, 0.0), {target}, {}});
    if (e.alpha != 0.0) {
        out.push_back({Gate::p(e.alpha), {control}, {}});
    }
}

/// Controlled phase with one control: p(t/2) on both qubits, with a CNOT
/// pair cancelling the extra phase unless both bits are 1.
inline void emit_controlled_phase(double theta, int control, int target,
                                  std::vector<GateApplication> &out) {
    out.push_back({Gate::p(theta / 2.0), {control}, {}});
    out.push_back({Gate::p(theta / 2.0), {target}, {}});
    out.push_back({Gate::x(), {target}, {control}});
    out.push_back({Gate::p(-theta / 2.0), {target}, {}});
    out.push_back({Gate::x(), {target}, {control}});
}

/// Multi-controlled single-qubit V: peel one control with controlled
/// square roots of V around two multi-controlled-X blocks, which are lowered
/// recursively in turn.
inline void emit_mc_1q(const ComplexMatrix &v, std::vector<int> controls,
                       int target, std::vector<GateApplication> &out) {
    if (controls.empty()) {
        const ZyzAngles e = zyz_decompose(v);
        out.push_back({Gate::u(e.theta, e.phi, e.lambda), {target}, {}});
        if (e.alpha != 0.0) {
            // X p X p realizes the global phase e^{ia} exactly; call sites
            // in the recursion rely on the exact matrix, not just its class
            // up to phase.
            out.push_back({Gate::x(), {target}, {}});
            out.push_back({Gate::p(e.alpha), {target}, {}});
            out.push_back({Gate::x(), {target}, {}});
            out.push_back({Gate::p(e.alpha), {target}, {}});
        }
        return;
    }
    if (controls.size() == 1) {
        emit_controlled_1q(v, controls[0], target, out);
        return;
    }
    const int pivot = controls.front();
    std::vector<int> rest(controls.begin() + 1, controls.end());
    const ComplexMatrix w = sqrt_unitary(v);
    emit_controlled_1q(w, pivot, target, out);
    lower_step({Gate::x(), {pivot}, rest}, out);
    emit_controlled_1q(adjoint(w), pivot, target, out);
    lower_step({Gate::x(), {pivot}, rest}, out);
    emit_mc_1q(w, rest, target, out);
}

inline void lower_step(const GateApplication &step,
                       std::vector<GateApplication> &out) {
    const Gate &g = step.gate;
    const std::size_t nc = step.controls.size();
    if (g.kind == GateKind::SWAP) {
        const int a = step.targets[0];
        const int b = step.targets[1];
        lower_step({Gate::x(), {a}, augmented(step.controls, b)}, out);
        lower_step({Gate::x(), {b}, augmented(step.controls, a)}, out);
        lower_step({Gate::x(), {a}, augmented(step.controls, b)}, out);
        return;
    }
    if (nc == 0) {
        if (g.kind != GateKind::I) {
            out.push_back(step);
        }
        return;
    }
    const int t = step.targets[0];
    if (g.kind == GateKind::I) {
        return;
    }
    if (g.kind == GateKind::X && nc == 1) {
        out.push_back(step);
        return;
    }
    if (g.kind == GateKind::X) {
        out.push_back({Gate::h(), {t}, {}});
        lower_step({Gate::z(), {t}, step.controls}, out);
        out.push_back({Gate::h(), {t}, {}});
        return;
    }
    // Diagonal phase-type gates lower through the controlled-phase scheme.
    double phase_angle = 0.0;
    bool is_phase = true;
    switch (g.kind) {
    case GateKind::Z:
        phase_angle = std::numbers::pi;
        break;
    case GateKind::S:
        phase_angle = std::numbers::pi / 2.0;
        break;
    case GateKind::SDG:
        phase_angle = -std::numbers::pi / 2.0;
        break;
    case GateKind::T:
        phase_angle = std::numbers::pi / 4.0;
        break;
    case GateKind::P:
        phase_angle = g.theta;
        break;
    default:
        is_phase = false;
        break;
    }
    if (is_phase) {
        if (nc == 1) {
            emit_controlled_phase(phase_angle, step.controls[0], t, out);
        } else {
            const int pivot = step.controls.front();
            std::vector<int> rest(step.controls.begin() + 1,
                                  step.controls.end());
            emit_controlled_phase(phase_angle / 2.0, pivot, t, out);
            lower_step({Gate::x(), {pivot}, rest}, out);
            emit_controlled_phase(-phase_angle / 2.0, pivot, t, out);
            lower_step({Gate::x(), {pivot}, rest}, out);
            lower_step({Gate::p(phase_angle / 2.0), {t}, rest}, out);
        }
        return;
    }
    emit_mc_1q(gate_matrix(g), step.controls, t, out);
}

} // namespace detail

/// Rewrites every step into single-qubit gates and CNOTs only. Exact (no
/// approximation); multi-controlled gates expand recursively, so circuits
/// with many controls on one gate grow quickly.
inline Circuit decompose_to_basic(const Circuit &c) {
    std::vector<GateApplication> out;
    for (const GateApplication &step : c.steps()) {
        detail::lower_step(step, out);
    }
    Circuit lowered(c.num_qubits());
    for (GateApplication &step : out) {
        lowered.add(std::move(step));
    }
    return lowered;
}

} // namespace qreg
