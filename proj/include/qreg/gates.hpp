#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qreg/complex_matrix.hpp"
#include "qreg/errors.hpp"

namespace qreg {

/// Base gates of the library. Multi-qubit named gates (CNOT, CZ, CCNOT,
/// CnZ, MCX, controlled-anything) are represented in circuits as one of
/// these plus an explicit control list; their reference matrices are
/// produced by `controlled()` below.
enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    SX,   // square root of X
    SXDG, // its adjoint
    S,    // square root of Z, diag(1, i)
    SDG,  // diag(1, -i)
    T,    // diag(1, e^{i pi/4})
    P,    // diag(1, e^{i theta}); covers the deeper roots Z^{1/2^k}
    U,    // general parameterized single-qubit gate U(theta, phi, lambda)
    SWAP,
};

struct Gate {
    GateKind kind = GateKind::I;
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;

    static Gate i() { return {GateKind::I}; }
    static Gate x() { return {GateKind::X}; }
    static Gate y() { return {GateKind::Y}; }
    static Gate z() { return {GateKind::Z}; }
    static Gate h() { return {GateKind::H}; }
    static Gate sx() { return {GateKind::SX}; }
    static Gate sxdg() { return {GateKind::SXDG}; }
    static Gate s() { return {GateKind::S}; }
    static Gate sdg() { return {GateKind::SDG}; }
    static Gate t() { return {GateKind::T}; }
    static Gate p(double theta) { return {GateKind::P, theta}; }
    static Gate u(double theta, double phi, double lambda) {
        return {GateKind::U, theta, phi, lambda};
    }
    static Gate swap() { return {GateKind::SWAP}; }

    /// Z^{1/2^level}: level 0 is Z itself, 1 is S, 2 is T, deeper levels
    /// give diag(1, e^{i pi / 2^level}).
    static Gate z_root(int level) {
        if (level < 0 || level > 60) {
            throw InvalidArgumentError("z_root level out of range");
        }
        return p(std::numbers::pi / static_cast<double>(1ull << level));
    }

    int arity() const { return kind == GateKind::SWAP ? 2 : 1; }

    friend bool operator==(const Gate &a, const Gate &b) {
        return a.kind == b.kind && a.theta == b.theta && a.phi == b.phi &&
               a.lambda == b.lambda;
    }
};

/// The parameterized single-qubit unitary
///   [ e^{-i(phi+lambda)/2} cos(theta/2)   -e^{-i(phi-lambda)/2} sin(theta/2) ]
///   [ e^{ i(phi-lambda)/2} sin(theta/2)    e^{ i(phi+lambda)/2} cos(theta/2) ].
/// Unitary for every parameter choice; equal to Rz(phi) Ry(theta) Rz(lambda).
inline std::array<cplx, 4> u_gate_entries(double theta, double phi,
                                          double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx epl = std::polar(1.0, (phi + lambda) / 2.0);
    const cplx emi = std::polar(1.0, (phi - lambda) / 2.0);
    return {std::conj(epl) * c, -std::conj(emi) * s, emi * s, epl * c};
}

/// 2x2 entries {m00, m01, m10, m11} of a single-qubit gate.
inline std::array<cplx, 4> gate_entries(const Gate &g) {
    const cplx i01(0.0, 1.0);
    switch (g.kind) {
    case GateKind::I:
        return {1, 0, 0, 1};
    case GateKind::X:
        return {0, 1, 1, 0};
    case GateKind::Y:
        return {0, -i01, i01, 0};
    case GateKind::Z:
        return {1, 0, 0, -1};
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {r, r, r, -r};
    }
    case GateKind::SX:
        return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5),
                cplx(0.5, 0.5)};
    case GateKind::SXDG:
        return {cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5),
                cplx(0.5, -0.5)};
    case GateKind::S:
        return {1, 0, 0, i01};
    case GateKind::SDG:
        return {1, 0, 0, -i01};
    case GateKind::T:
        return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4.0)};
    case GateKind::P:
        return {1, 0, 0, std::polar(1.0, g.theta)};
    case GateKind::U:
        return u_gate_entries(g.theta, g.phi, g.lambda);
    case GateKind::SWAP:
        break;
    }
    throw InvalidArgumentError("gate_entries: not a single-qubit gate");
}

inline ComplexMatrix gate_matrix(const Gate &g) {
    if (g.kind == GateKind::SWAP) {
        ComplexMatrix m(4, 4);
        m(0, 0) = 1;
        m(1, 2) = 1;
        m(2, 1) = 1;
        m(3, 3) = 1;
        return m;
    }
    const auto e = gate_entries(g);
    return ComplexMatrix(2, 2, {e[0], e[1], e[2], e[3]});
}

inline ComplexMatrix u_gate(double theta, double phi, double lambda) {
    return gate_matrix(Gate::u(theta, phi, lambda));
}

inline Gate adjoint_gate(const Gate &g) {
    switch (g.kind) {
    case GateKind::SX:
        return Gate::sxdg();
    case GateKind::SXDG:
        return Gate::sx();
    case GateKind::S:
        return Gate::sdg();
    case GateKind::SDG:
        return Gate::s();
    case GateKind::T:
        return Gate::p(-std::numbers::pi / 4.0);
    case GateKind::P:
        return Gate::p(-g.theta);
    case GateKind::U:
        return Gate::u(-g.theta, -g.lambda, -g.phi);
    default:
        return g; // I, X, Y, Z, H, SWAP are self-adjoint
    }
}

/// Matrix of `base` extended with `num_controls` control qubits on the
/// high-order side: identity everywhere except the trailing block.
/// controlled(X, 1) is the CNOT_21 matrix, controlled(Z, 1) is CZ.
inline ComplexMatrix controlled(const ComplexMatrix &base, int num_controls) {
    if (!base.is_square()) {
        throw InvalidArgumentError("controlled: base must be square");
    }
    if (!is_unitary(base)) {
        throw InvalidArgumentError("controlled: base must be unitary");
    }
    if (num_controls < 0 || num_controls > 20) {
        throw InvalidArgumentError("controlled: control count out of range");
    }
    std::size_t dim = base.rows() << num_controls;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    const std::size_t off = dim - base.rows();
    for (std::size_t r = 0; r < base.rows(); ++r) {
        for (std::size_t c = 0; c < base.cols(); ++c) {
            m(off + r, off + c) = base(r, c);
        }
    }
    return m;
}

inline ComplexMatrix cnot_matrix() {
    return controlled(gate_matrix(Gate::x()), 1);
}
inline ComplexMatrix cz_matrix() { return controlled(gate_matrix(Gate::z()), 1); }
inline ComplexMatrix swap_matrix() { return gate_matrix(Gate::swap()); }
inline ComplexMatrix ccnot_matrix() {
    return controlled(gate_matrix(Gate::x()), 2);
}
inline ComplexMatrix cnz_matrix(int num_controls) {
    return controlled(gate_matrix(Gate::z()), num_controls);
}
inline ComplexMatrix mcx_matrix(int num_controls) {
    return controlled(gate_matrix(Gate::x()), num_controls);
}

/// ZYZ Euler angles of a 2x2 unitary: V = e^{i alpha} U(theta, phi, lambda).
struct ZyzAngles {
    double alpha;
    double theta;
    double phi;
    double lambda;
};

inline ZyzAngles zyz_decompose(const ComplexMatrix &v) {
    if (v.rows() != 2 || v.cols() != 2) {
        throw InvalidArgumentError("zyz_decompose expects a 2x2 matrix");
    }
    if (!is_unitary(v, 1e-9)) {
        throw InvalidArgumentError("zyz_decompose expects a unitary matrix");
    }
    const cplx det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    const double alpha = std::arg(det) / 2.0;
    const cplx w00 = std::polar(1.0, -alpha) * v(0, 0);
    const cplx w10 = std::polar(1.0, -alpha) * v(1, 0);
    const double theta = 2.0 * std::atan2(std::abs(w10), std::abs(w00));
    double phi_plus_lambda = 0.0;  // -2 arg(w00) when cos != 0
    double phi_minus_lambda = 0.0; // 2 arg(w10) when sin != 0
    if (std::abs(w00) > 1e-12) {
        phi_plus_lambda = -2.0 * std::arg(w00);
    }
    if (std::abs(w10) > 1e-12) {
        phi_minus_lambda = 2.0 * std::arg(w10);
    }
    return {alpha, theta, (phi_plus_lambda + phi_minus_lambda) / 2.0,
            (phi_plus_lambda - phi_minus_lambda) / 2.0};
}

/// Principal square root of a 2x2 unitary, via the axis-angle form
/// V = e^{i delta} (cos(t) I + i sin(t) n.sigma).
inline ComplexMatrix sqrt_unitary(const ComplexMatrix &v) {
    if (v.rows() != 2 || v.cols() != 2 || !is_unitary(v, 1e-9)) {
        throw InvalidArgumentError("sqrt_unitary expects a 2x2 unitary");
    }
    const cplx det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    const double delta = std::arg(det) / 2.0;
    const cplx scale = std::polar(1.0, -delta);
    const cplx r00 = scale * v(0, 0);
    const cplx r01 = scale * v(0, 1);
    const cplx r10 = scale * v(1, 0);
    const cplx r11 = scale * v(1, 1);
    double cost = std::clamp(((r00 + r11) / 2.0).real(), -1.0, 1.0);
    const double t = std::acos(cost);
    const double sint = std::sin(t);
    double nx = 0.0, ny = 0.0, nz = 1.0;
    if (sint > 1e-12) {
        nz = ((r00 - r11) / (2.0 * cplx(0.0, 1.0) * sint)).real();
        nx = ((r01 + r10) / (2.0 * cplx(0.0, 1.0) * sint)).real();
        ny = ((r01 - r10) / (2.0 * sint)).real();
    }
    const double th = t / 2.0;
    const cplx half = std::polar(1.0, delta / 2.0);
    const cplx ish(0.0, std::sin(th));
    ComplexMatrix w(2, 2);
    w(0, 0) = half * (std::cos(th) + ish * nz);
    w(0, 1) = half * (ish * nx + std::sin(th) * ny);
    w(1, 0) = half * (ish * nx - std::sin(th) * ny);
    w(1, 1) = half * (std::cos(th) - ish * nz);
    return w;
}

} // namespace qreg
