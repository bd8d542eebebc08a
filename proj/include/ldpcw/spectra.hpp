#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldpcw/errors.hpp"
#include "ldpcw/polynomial.hpp"

namespace ldpcw {

// Weight generating function of the q-ary solutions of one weight-K check:
//   g(s) = ((1 + (q-1)s)^K + (q-1)(1-s)^K) / q.
// Coefficients are nonnegative integers (solution counts).
inline RatPoly g_poly(unsigned k_weight, unsigned q) {
    if (k_weight < 2) throw domain_error("g_poly: K >= 2");
    if (q < 2) throw domain_error("g_poly: q >= 2");
    RatPoly out;
    out.coeff.assign(k_weight + 1, BigRat(0));
    const BigInt qm1 = q - 1;
    BigInt qm1_pow = 1;
    for (std::size_t w = 0; w <= k_weight; ++w) {
        const BigInt sign = (w % 2 == 0) ? qm1 : BigInt(-static_cast<long>(q - 1));
        out.coeff[w] = BigRat(binomial(k_weight, w) * (qm1_pow + sign), BigInt(q));
        qm1_pow *= qm1;
    }
    out.trim();
    return out;
}

// Generating function of length-K q-ary sequences with weight != 1:
//   g_stop(s) = (1 + (q-1)s)^K - K(q-1)s.
inline RatPoly g_stop_poly(unsigned k_weight, unsigned q) {
    if (k_weight < 2) throw domain_error("g_stop_poly: K >= 2");
    if (q < 2) throw domain_error("g_stop_poly: q >= 2");
    RatPoly out;
    out.coeff.assign(k_weight + 1, BigRat(0));
    BigInt qm1_pow = 1;
    for (std::size_t w = 0; w <= k_weight; ++w) {
        out.coeff[w] = BigRat(binomial(k_weight, w) * qm1_pow);
        qm1_pow *= (q - 1);
    }
    out.coeff[1] = 0;
    out.trim();
    return out;
}

// Average binary weight of one nonzero q-ary symbol under uniform images:
//   phi(s) = ((1+s)^m - 1) / (q-1),  q = 2^m.  phi(1) = 1.
inline RatPoly phi_poly(unsigned m) {
    if (m < 1) throw domain_error("phi_poly: m >= 1");
    const BigInt qm1 = (BigInt(1) << m) - 1;
    RatPoly out;
    out.coeff.assign(m + 1, BigRat(0));
    for (std::size_t w = 1; w <= m; ++w) out.coeff[w] = BigRat(binomial(m, w), qm1);
    return out;
}

enum class SpectrumKind { Weight, Stopping };

// Exact ensemble-average spectrum over binary weight w = 0..n*m. For
// Weight/Stopping kinds the per-check factor is g / g_stop.
struct SpectrumTable {
    std::size_t n_bits = 0;      // n*m
    std::vector<BigRat> s;       // s[w], size n_bits+1
    SpectrumKind kind = SpectrumKind::Weight;
    unsigned j_weight = 0, k_weight = 0, q = 2;
    std::size_t n = 0;

    // first weight >= 1 with a nonzero coefficient, or 0 if none
    std::size_t first_nonzero() const {
        for (std::size_t w = 1; w < s.size(); ++w)
            if (s[w] != 0) return w;
        return 0;
    }
};

// E{A_{nm,w}} = C(nm,w)^(1-J) * N_{nm,w}^J with N from G(s) = (f(phi(s)))^M,
// f the per-check factor and M = n/K checks per strip.
inline SpectrumTable ensemble_avg_spectrum(unsigned j_weight, unsigned k_weight,
                                           unsigned q, std::size_t n,
                                           SpectrumKind kind) {
    if (j_weight < 1) throw domain_error("spectrum: J >= 1");
    if (n == 0 || n % k_weight != 0) throw domain_error("spectrum: K must divide n");
    unsigned m = 0;
    while ((1u << (m + 1)) <= q) ++m;
    if ((1u << m) != q) throw domain_error("spectrum: q must be a power of two");
    if (m < 1) throw domain_error("spectrum: q >= 2");

    const std::size_t strip_checks = n / k_weight;  // M
    const std::size_t nm = n * m;
    const RatPoly factor =
        kind == SpectrumKind::Weight ? g_poly(k_weight, q) : g_stop_poly(k_weight, q);
    const RatPoly per_check =
        poly_compose(factor, phi_poly(m), static_cast<std::size_t>(m) * k_weight);
    const RatPoly strip = poly_power(per_check, strip_checks, nm);

    SpectrumTable out;
    out.n_bits = nm;
    out.kind = kind;
    out.j_weight = j_weight;
    out.k_weight = k_weight;
    out.q = q;
    out.n = n;
    out.s.assign(nm + 1, BigRat(0));
    for (std::size_t w = 0; w <= nm; ++w) {
        const BigRat n_w = strip.at(w);
        if (n_w == 0) continue;
        BigRat num = 1;
        for (unsigned j = 0; j < j_weight; ++j) num *= n_w;
        const BigInt binom = binomial(nm, w);
        BigRat denom = 1;
        for (unsigned j = 0; j + 1 < j_weight; ++j) denom *= BigRat(binom);
        out.s[w] = num / denom;
    }
    return out;
}

struct BoundPoint {
    double eps = 0.0;
    double raw = 0.0;      // unclamped union-bound value
    double clamped = 0.0;  // min(raw, 1)
};

// Union-type upper bound on ML (weight spectrum) or BP (stopping spectrum)
// decoding error probability over BEC(eps):
//   P_e <= sum_{i=d}^n min{ C(n,i), sum_{w=d}^i S_w C(n-w, i-w) } eps^i (1-eps)^(n-i).
// Inner sums are exact rationals; only the final evaluation is floating.
inline std::vector<BoundPoint> union_bound_bec(std::size_t n,
                                               const std::vector<BigRat>& spectrum,
                                               const std::vector<double>& eps_grid,
                                               std::size_t d_override = 0) {
    if (spectrum.size() != n + 1)
        throw domain_error("union_bound_bec: spectrum must have n+1 entries");
    std::size_t d = d_override;
    if (d == 0) {
        for (std::size_t w = 1; w <= n; ++w)
            if (spectrum[w] != 0) {
                d = w;
                break;
            }
    }
    if (d == 0) {
        // no nonzero coefficients: the bound is identically zero
        std::vector<BoundPoint> out;
        for (const double eps : eps_grid) out.push_back({eps, 0.0, 0.0});
        return out;
    }

    std::vector<BigRat> term(n + 1, BigRat(0));
    for (std::size_t i = d; i <= n; ++i) {
        BigRat inner = 0;
        for (std::size_t w = d; w <= i; ++w) {
            if (spectrum[w] == 0) continue;
            inner += spectrum[w] * BigRat(binomial(n - w, i - w));
        }
        const BigRat cap(binomial(n, i));
        term[i] = inner < cap ? inner : cap;
    }

    // Up to this length the per-eps sum is done in exact rationals (eps taken
    // as the exact binary value of the double) and rounded once at the end;
    // past it, 50-digit floats keep the evaluation overflow-safe.
    constexpr std::size_t exact_eval_limit = 256;

    std::vector<BoundPoint> out;
    out.reserve(eps_grid.size());
    for (const double eps : eps_grid) {
        if (eps < 0.0 || eps > 1.0)
            throw domain_error("union_bound_bec: eps must be in [0,1]");
        double raw = 0.0;
        if (n <= exact_eval_limit) {
            const BigRat e(eps);
            const BigRat one_minus = 1 - e;
            BigRat acc = 0;
            BigRat pe = 1, pq = 1;
            for (std::size_t f = 0; f < d; ++f) pe *= e;
            for (std::size_t f = d; f < n; ++f) pq *= one_minus;
            for (std::size_t i = d; i <= n; ++i) {
                if (term[i] != 0) acc += term[i] * pe * pq;
                if (i == n) break;
                pe *= e;
                if (one_minus != 0)
                    pq /= one_minus;
                else
                    pq = (i + 1 == n) ? BigRat(1) : BigRat(0);
            }
            raw = BigFloat(acc).convert_to<double>();
        } else {
            const BigFloat e(eps), one_minus(1.0 - eps);
            BigFloat acc = 0;
            BigFloat pe = pow(e, static_cast<unsigned>(d));
            BigFloat pq = pow(one_minus, static_cast<unsigned>(n - d));
            for (std::size_t i = d; i <= n; ++i) {
                if (term[i] != 0) acc += BigFloat(term[i]) * pe * pq;
                pe *= e;
                if (i < n && one_minus != 0) pq /= one_minus;
                if (one_minus == 0) pq = (i + 1 == n) ? BigFloat(1) : BigFloat(0);
            }
            raw = acc.convert_to<double>();
        }
        out.push_back({eps, raw, std::min(raw, 1.0)});
    }
    return out;
}

inline std::vector<BoundPoint> union_bound_bec(const SpectrumTable& table,
                                               const std::vector<double>& eps_grid,
                                               std::size_t d_override = 0) {
    return union_bound_bec(table.n_bits, table.s, eps_grid, d_override);
}

// Asymptotic fraction of regular draws in the RU ensemble,
// exp(-(K-1)(J-1)/2).
inline double regular_fraction(unsigned j_weight, unsigned k_weight) {
    return std::exp(-0.5 * static_cast<double>(k_weight - 1) *
                    static_cast<double>(j_weight - 1));
}

// ---------------------------------------------------------------------------
// CSV emission. Spectrum rows are (w, S_w, exact) where S_w is a decimal
// string: full precision when the expansion terminates (exact=1), 50
// significant digits otherwise (exact=0).
// ---------------------------------------------------------------------------

inline std::string rational_to_decimal(const BigRat& v, unsigned digits = 50,
                                       bool* exact_out = nullptr) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;

    // the expansion terminates iff the denominator is 2^a * 5^b
    BigInt den = denominator(v);
    unsigned twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    const bool terminating = den == 1;
    if (exact_out) *exact_out = terminating;

    if (!terminating) {
        BigFloat f(v);
        std::ostringstream ss;
        ss << std::setprecision(static_cast<int>(digits)) << f;
        return ss.str();
    }

    const unsigned t = std::max(twos, fives);
    BigInt scaled = numerator(v);
    for (unsigned i = 0; i < t; ++i) scaled *= 10;
    scaled /= denominator(v);
    std::string s = scaled.str();
    bool neg = false;
    if (!s.empty() && s[0] == '-') {
        neg = true;
        s = s.substr(1);
    }
    if (t > 0) {
        if (s.size() <= t) s = std::string(t + 1 - s.size(), '0') + s;
        s.insert(s.size() - t, ".");
    }
    return (neg ? "-" : "") + s;
}

inline void spectrum_to_csv(std::ostream& out, const SpectrumTable& table) {
    out << "w,S_w,exact\n";
    for (std::size_t w = 0; w < table.s.size(); ++w) {
        bool exact = false;
        const std::string dec = rational_to_decimal(table.s[w], 50, &exact);
        out << w << ',' << dec << ',' << (exact ? 1 : 0) << '\n';
    }
}

inline void bounds_to_csv(std::ostream& out, const std::vector<BoundPoint>& ml,
                          const std::vector<BoundPoint>& bp) {
    out << "eps,bound_ml,bound_bp\n";
    const std::size_t count = std::max(ml.size(), bp.size());
    for (std::size_t i = 0; i < count; ++i) {
        const double eps = i < ml.size() ? ml[i].eps : bp[i].eps;
        std::ostringstream line;
        line << std::setprecision(17) << eps << ',';
        if (i < ml.size())
            line << std::scientific << std::setprecision(12) << ml[i].clamped;
        line << ',';
        if (i < bp.size())
            line << std::scientific << std::setprecision(12) << bp[i].clamped;
        out << line.str() << '\n';
    }
}

}  // namespace ldpcw
