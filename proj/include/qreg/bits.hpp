#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "qreg/errors.hpp"

namespace qreg {

inline int bit_of(std::uint64_t v, int k) {
    return static_cast<int>((v >> k) & 1u);
}

/// Renders a basis index as '0'/'1' characters, most significant qubit
/// first: the 3-qubit index 5 renders as "101".
inline std::string to_bit_string(std::uint64_t v, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; ++k) {
        if (bit_of(v, k)) {
            s[static_cast<std::size_t>(width - 1 - k)] = '1';
        }
    }
    return s;
}

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

/// A basis index together with the register width it lives in.
struct BasisLabel {
    std::uint64_t value;
    int width;

    BasisLabel(std::uint64_t value_, int width_) : value(value_), width(width_) {
        if (width < 1 || width > 63) {
            throw InvalidArgumentError("basis label width out of range: " +
                                       std::to_string(width));
        }
        if (value >> width) {
            throw InvalidArgumentError("basis value " + std::to_string(value) +
                                       " does not fit in " + std::to_string(width) +
                                       " bits");
        }
    }

    std::string str() const { return to_bit_string(value, width); }
};

/// Bitwise dot product: the number of positions where both labels have a 1.
/// Callers interested in the mod-2 value take the parity of the result.
inline int dot_q(const BasisLabel &j, const BasisLabel &k) {
    if (j.width != k.width) {
        throw InvalidArgumentError("dot_q width mismatch");
    }
    return std::popcount(j.value & k.value);
}

/// Bitwise modulo-2 addition of two labels of equal width.
inline BasisLabel xor_q(const BasisLabel &j, const BasisLabel &k) {
    if (j.width != k.width) {
        throw InvalidArgumentError("xor_q width mismatch");
    }
    return BasisLabel(j.value ^ k.value, j.width);
}

/// Unchecked variants used on hot paths where widths are known to agree.
inline int dot_bits(std::uint64_t j, std::uint64_t k) {
    return std::popcount(j & k);
}

inline int dot_parity(std::uint64_t j, std::uint64_t k) {
    return parity(j & k);
}

} // namespace qreg
