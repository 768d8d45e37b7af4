#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qreg/errors.hpp"

namespace qreg {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. This type backs verification oracles
/// and small reference matrices only; the simulation kernel never builds
/// a full 2^q x 2^q operator.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) {
            throw InvalidArgumentError("matrix entry count does not match shape");
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    /// A column matrix wrapping a vector, so kets can be fed to kron/matmul.
    static ComplexMatrix column(const std::vector<cplx> &v) {
        return ComplexMatrix(v.size(), 1, v);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }

    const std::vector<cplx> &entries() const { return a_; }

    bool is_square() const { return rows_ == cols_; }

    bool is_finite() const {
        return std::all_of(a_.begin(), a_.end(), [](const cplx &z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    friend bool operator==(const ComplexMatrix &x, const ComplexMatrix &y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

using ComplexVector = std::vector<cplx>;

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix d(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t p = 0; p < b.rows(); ++p) {
                for (std::size_t q = 0; q < b.cols(); ++q) {
                    d(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
                }
            }
        }
    }
    return d;
}

inline ComplexVector kron(const ComplexVector &u, const ComplexVector &w) {
    ComplexVector out(u.size() * w.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            out[i * w.size() + j] = u[i] * w[j];
        }
    }
    return out;
}

/// Tensor power A^(x)n for n >= 1.
inline ComplexMatrix kron_pow(const ComplexMatrix &a, int n) {
    if (n < 1) {
        throw InvalidArgumentError("kron_pow requires n >= 1");
    }
    ComplexMatrix out = a;
    for (int i = 1; i < n; ++i) {
        out = kron(out, a);
    }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgumentError("matmul dimension mismatch");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexVector matvec(const ComplexMatrix &a, const ComplexVector &v) {
    if (a.cols() != v.size()) {
        throw InvalidArgumentError("matvec dimension mismatch");
    }
    ComplexVector out(a.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

inline double max_abs_diff(const ComplexMatrix &x, const ComplexMatrix &y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw InvalidArgumentError("max_abs_diff shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
        }
    }
    return worst;
}

inline bool approx_equal(const ComplexMatrix &x, const ComplexMatrix &y,
                         double tol) {
    return x.rows() == y.rows() && x.cols() == y.cols() &&
           max_abs_diff(x, y) < tol;
}

/// True iff max-entry deviation of A*A from the identity is below tol.
/// The default tolerance absorbs accumulation over long decomposed circuits.
inline bool is_unitary(const ComplexMatrix &a, double tol = 1e-10) {
    if (!a.is_square()) {
        throw InvalidArgumentError("is_unitary requires a square matrix");
    }
    return approx_equal(matmul(adjoint(a), a),
                        ComplexMatrix::identity(a.rows()), tol);
}

inline cplx trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw InvalidArgumentError("trace requires a square matrix");
    }
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

inline ComplexMatrix operator*(const cplx &s, const ComplexMatrix &a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = s * a(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator+(const ComplexMatrix &x, const ComplexMatrix &y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw InvalidArgumentError("matrix addition shape mismatch");
    }
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            out(i, j) = x(i, j) + y(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix &x, const ComplexMatrix &y) {
    return x + cplx(-1.0, 0.0) * y;
}

} // namespace qreg
