#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ldpcw/errors.hpp"

namespace ldpcw {

// Exact arithmetic backends. Spectrum coefficients mix astronomically large
// binomials with tiny ratios, so everything stays rational until the final
// channel-parameter evaluation, which runs in 50-digit floats.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (std::size_t i = 0; i < k; ++i) {
        c *= static_cast<std::uint64_t>(n - i);
        c /= static_cast<std::uint64_t>(i + 1);
    }
    return c;
}

// Generating function with exact rational coefficients, coefficient w the
// count (or average count) at weight w.
struct RatPoly {
    std::vector<BigRat> coeff;  // coeff[w], degree = coeff.size()-1 after trim

    RatPoly() = default;
    explicit RatPoly(std::vector<BigRat> c) : coeff(std::move(c)) { trim(); }

    static RatPoly one() { return RatPoly({BigRat(1)}); }

    std::size_t degree() const { return coeff.empty() ? 0 : coeff.size() - 1; }

    BigRat at(std::size_t w) const {
        return w < coeff.size() ? coeff[w] : BigRat(0);
    }

    void trim() {
        while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
    }

    bool operator==(const RatPoly& other) const {
        const std::size_t top = std::max(coeff.size(), other.coeff.size());
        for (std::size_t w = 0; w < top; ++w)
            if (at(w) != other.at(w)) return false;
        return true;
    }
};

inline RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly out;
    out.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), BigRat(0));
    for (std::size_t w = 0; w < out.coeff.size(); ++w) out.coeff[w] = a.at(w) + b.at(w);
    out.trim();
    return out;
}

// Product truncated to degree max_deg (no truncation when max_deg is npos).
inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b,
                        std::size_t max_deg = static_cast<std::size_t>(-1)) {
    if (a.coeff.empty() || b.coeff.empty()) return RatPoly({BigRat(0)});
    const std::size_t full = a.degree() + b.degree();
    const std::size_t deg = std::min(full, max_deg);
    RatPoly out;
    out.coeff.assign(deg + 1, BigRat(0));
    for (std::size_t i = 0; i < a.coeff.size(); ++i) {
        if (i > deg) break;
        if (a.coeff[i] == 0) continue;
        const std::size_t jmax = std::min(b.coeff.size() - 1, deg - i);
        for (std::size_t j = 0; j <= jmax; ++j)
            out.coeff[i + j] += a.coeff[i] * b.coeff[j];
    }
    out.trim();
    return out;
}

// Composition outer(inner), requiring inner(0) = 0 so that the coefficient
// of s^w only draws on finitely many terms. Truncated at max_deg.
inline RatPoly poly_compose(const RatPoly& outer, const RatPoly& inner,
                            std::size_t max_deg) {
    if (inner.at(0) != 0)
        throw domain_error("poly_compose: inner constant term must be zero");
    // Horner from the top coefficient down.
    RatPoly acc({outer.coeff.empty() ? BigRat(0) : outer.coeff.back()});
    for (std::size_t i = outer.coeff.size(); i-- > 1;) {
        acc = poly_mul(acc, inner, max_deg);
        acc = poly_add(acc, RatPoly({outer.coeff[i - 1]}));
    }
    acc.trim();
    return acc;
}

// Coefficients of p^M up to max_deg by the power recurrence
//   c_0 = p_0^M,   c_w = (1/(w p_0)) * sum_{j>=1} ((M+1) j - w) p_j c_{w-j},
// linear in max_deg for fixed-degree p. Requires p(0) != 0.
inline RatPoly poly_power(const RatPoly& p, std::uint64_t exponent,
                          std::size_t max_deg) {
    if (p.at(0) == 0) throw domain_error("poly_power: constant term must be nonzero");
    if (exponent == 0) return RatPoly::one();
    const std::size_t pdeg = p.degree();
    // degree of the full power, careful about overflow for silly exponents
    const std::size_t full =
        (exponent > (static_cast<std::size_t>(-1) / (pdeg ? pdeg : 1)))
            ? static_cast<std::size_t>(-1)
            : static_cast<std::size_t>(exponent * pdeg);
    const std::size_t deg = std::min(full, max_deg);

    RatPoly out;
    out.coeff.assign(deg + 1, BigRat(0));
    BigRat p0_pow = 1;
    for (std::uint64_t i = 0; i < exponent; ++i) p0_pow *= p.coeff[0];
    out.coeff[0] = p0_pow;
    const BigRat m_plus_1 = BigRat(exponent) + 1;
    for (std::size_t w = 1; w <= deg; ++w) {
        BigRat acc = 0;
        for (std::size_t j = 1; j <= std::min(w, pdeg); ++j)
            acc += (m_plus_1 * j - w) * p.at(j) * out.coeff[w - j];
        out.coeff[w] = acc / (BigRat(w) * p.coeff[0]);
    }
    out.trim();
    return out;
}

inline BigRat poly_eval(const RatPoly& p, const BigRat& x) {
    BigRat acc = 0;
    for (std::size_t i = p.coeff.size(); i-- > 0;) acc = acc * x + p.coeff[i];
    return acc;
}

}  // namespace ldpcw
