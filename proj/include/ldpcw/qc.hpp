#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/linear_code.hpp"

namespace ldpcw {

// Monomial polynomial parity-check matrix of a rate b/c quasi-cyclic code:
// a (c-b) x c array whose entries are either zero or D^w, plus the lifting
// degree M. Expansion with M > memory() gives an [Mc, >=Mb] block code.
struct QcPolynomialMatrix {
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t lifting = 0;            // M
    std::vector<std::int32_t> exps;     // (c-b) x c row-major; -1 encodes zero

    static constexpr std::int32_t zero_entry = -1;

    std::size_t block_rows() const { return c - b; }

    std::int32_t exponent(std::size_t i, std::size_t j) const {
        return exps[i * c + j];
    }
    void set_exponent(std::size_t i, std::size_t j, std::int32_t w) {
        exps[i * c + j] = w;
    }

    // syndrome memory: largest exponent present
    std::int32_t memory() const {
        std::int32_t mu = 0;
        for (const std::int32_t w : exps) mu = std::max(mu, w);
        return mu;
    }

    std::size_t nonzero_entries() const {
        return static_cast<std::size_t>(
            std::count_if(exps.begin(), exps.end(), [](std::int32_t w) { return w >= 0; }));
    }

    void validate() const {
        if (c <= b) throw domain_error("qc: need c > b");
        if (exps.size() != block_rows() * c)
            throw domain_error("qc: entry array does not match (c-b) x c");
        for (const std::int32_t w : exps)
            if (w < zero_entry) throw domain_error("qc: negative exponent");
        if (static_cast<std::int64_t>(lifting) <= memory())
            throw domain_error("qc: lifting degree M must exceed the syndrome memory");
    }
};

// Indicator pattern B = H(D) at D = 1.
inline BitMatrix qc_base_matrix(const QcPolynomialMatrix& q) {
    BitMatrix b(q.block_rows(), q.c);
    for (std::size_t i = 0; i < q.block_rows(); ++i)
        for (std::size_t j = 0; j < q.c; ++j)
            if (q.exponent(i, j) >= 0) b.set(i, j, true);
    return b;
}

// Tailbiting expansion: M(c-b) x Mc matrix where block-row t places the
// series coefficient H_w at block-column (t + w) mod M. Column t*c + j within
// a block-column addresses base column j.
inline LinearCode qc_expand_tailbiting(const QcPolynomialMatrix& q) {
    q.validate();
    const std::size_t m = q.lifting;
    const std::size_t cb = q.block_rows();
    BitMatrix h(m * cb, m * q.c);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t i = 0; i < cb; ++i) {
            for (std::size_t j = 0; j < q.c; ++j) {
                const std::int32_t w = q.exponent(i, j);
                if (w < 0) continue;
                const std::size_t block_col = (t + static_cast<std::size_t>(w)) % m;
                h.set(t * cb + i, block_col * q.c + j, true);
            }
        }
    }
    return LinearCode::from_parity_check(std::move(h));
}

// Circulant expansion: each D^w becomes P^w where P is the identity with
// rows cyclically shifted right by one (P[u, (u+1) mod M] = 1), each zero
// entry an M x M zero block. Column-permutation equivalent to the
// tailbiting form.
inline LinearCode qc_expand_circulant(const QcPolynomialMatrix& q) {
    q.validate();
    const std::size_t m = q.lifting;
    const std::size_t cb = q.block_rows();
    BitMatrix h(m * cb, m * q.c);
    for (std::size_t i = 0; i < cb; ++i) {
        for (std::size_t j = 0; j < q.c; ++j) {
            const std::int32_t w = q.exponent(i, j);
            if (w < 0) continue;
            for (std::size_t u = 0; u < m; ++u) {
                const std::size_t v = (u + static_cast<std::size_t>(w)) % m;
                h.set(i * m + u, j * m + v, true);
            }
        }
    }
    return LinearCode::from_parity_check(std::move(h));
}

}  // namespace ldpcw
