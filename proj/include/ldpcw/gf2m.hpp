#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/errors.hpp"

namespace ldpcw {

// Lexicographically smallest primitive polynomial per degree, as bit patterns
// (bit i = coefficient of x^i). Index 0 unused.
inline constexpr std::array<std::uint32_t, 9> default_primitive_poly = {
    0,
    0b11,         // x + 1
    0b111,        // x^2 + x + 1
    0b1011,       // x^3 + x + 1
    0b10011,      // x^4 + x + 1
    0b100101,     // x^5 + x^2 + 1
    0b1000011,    // x^6 + x + 1
    0b10000011,   // x^7 + x + 1
    0b100011101,  // x^8 + x^4 + x^3 + x^2 + 1
};

// GF(2^m) in the polynomial basis with log/antilog table arithmetic. The
// defining polynomial must be primitive (x generates the multiplicative
// group); this is verified at construction. Elements are bit patterns of
// polynomial coefficients, 0..q-1.
class GfField {
  public:
    explicit GfField(unsigned m) : GfField(m, poly_for(m)) {}

    GfField(unsigned m, std::uint32_t poly) : m_(m), poly_(poly) {
        if (m < 1 || m > 16) throw domain_error("GfField: m must be in 1..16");
        if ((poly >> m) != 1u)
            throw domain_error("GfField: polynomial degree must equal m");
        const std::uint32_t q = 1u << m;
        log_.assign(q, 0);
        antilog_.assign(q, 0);
        // walk powers of x; primitivity <=> period is exactly q-1
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            if (v == 1 && i > 0)
                throw domain_error("GfField: polynomial is not primitive");
            antilog_[i] = static_cast<std::uint16_t>(v);
            log_[v] = static_cast<std::uint16_t>(i);
            v <<= 1;
            if (v & q) v ^= poly;
        }
        if (v != 1) throw domain_error("GfField: polynomial is not primitive");
        antilog_[q - 1] = 1;  // wraparound entry, convenient for mul
    }

    unsigned m() const { return m_; }
    std::uint32_t q() const { return 1u << m_; }
    std::uint32_t modulus() const { return poly_; }

    static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        const std::uint32_t qm1 = q() - 1;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= qm1) s -= qm1;
        return antilog_[s];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw domain_error("GfField: inverse of zero");
        const std::uint32_t qm1 = q() - 1;
        return antilog_[(qm1 - log_[a]) % qm1];
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        const std::uint32_t qm1 = q() - 1;
        return antilog_[(static_cast<std::uint64_t>(log_[a]) * (e % qm1)) % qm1];
    }

    std::uint16_t log(std::uint32_t a) const { return log_[a]; }
    std::uint16_t antilog(std::uint32_t i) const { return antilog_[i]; }

    // m x m binary matrix T of the linear map x -> a*x in the polynomial
    // basis: bits(a*x) = T * bits(x). Column j is bits(a * x^j).
    BitMatrix companion(std::uint32_t a) const {
        BitMatrix t(m_, m_);
        for (unsigned j = 0; j < m_; ++j) {
            const std::uint32_t col = mul(a, 1u << j);
            for (unsigned i = 0; i < m_; ++i)
                if ((col >> i) & 1u) t.set(i, j, true);
        }
        return t;
    }

  private:
    static std::uint32_t poly_for(unsigned m) {
        if (m < 1 || m > 8)
            throw domain_error("GfField: no default polynomial for this m, pass one");
        return default_primitive_poly[m];
    }

    unsigned m_;
    std::uint32_t poly_;
    std::vector<std::uint16_t> log_, antilog_;
};

}  // namespace ldpcw
