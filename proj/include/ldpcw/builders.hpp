#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/gf2m.hpp"
#include "ldpcw/linear_code.hpp"
#include "ldpcw/rng.hpp"

namespace ldpcw {

// Gallager (J,K)-regular ensemble: J stacked strips of r/J rows each. The
// first strip has row j covering columns jK..jK+K-1; strips 2..J are
// independent uniform column permutations of it (strip i permuted with the
// stream derive_seed(seed, i)).
inline LinearCode build_gallager(unsigned j_weight, unsigned k_weight,
                                 std::size_t n, std::uint64_t seed) {
    if (j_weight < 1 || k_weight < 1) throw domain_error("gallager: J,K >= 1");
    if (n % k_weight != 0) throw domain_error("gallager: K must divide n");
    const std::size_t strip_rows = n / k_weight;
    const std::size_t r = strip_rows * j_weight;

    BitMatrix h(r, n);
    std::vector<std::uint32_t> perm(n);
    for (unsigned strip = 0; strip < j_weight; ++strip) {
        std::iota(perm.begin(), perm.end(), 0);
        if (strip > 0) {
            Rng rng(derive_seed(seed, strip));
            rng.shuffle(perm);
        }
        for (std::size_t row = 0; row < strip_rows; ++row)
            for (std::size_t t = 0; t < k_weight; ++t)
                h.set(strip * strip_rows + row, perm[row * k_weight + t], true);
    }
    return LinearCode::from_parity_check(std::move(h));
}

struct RuResult {
    LinearCode code;
    bool regular = false;  // true iff every K-chunk of sockets was duplicate-free
};

// Core of the RU construction, taking the already-permuted socket sequence
// b (0-based variable indices, length Jn): row i gets ones in columns
// b[iK..iK+K-1]. Duplicates within a chunk set the same entry once and make
// the draw irregular.
inline RuResult build_ru_from_sockets(unsigned j_weight, unsigned k_weight,
                                      std::size_t n,
                                      const std::vector<std::uint32_t>& sockets) {
    const std::size_t edges = static_cast<std::size_t>(j_weight) * n;
    if (edges % k_weight != 0) throw domain_error("ru: K must divide J*n");
    if (sockets.size() != edges) throw domain_error("ru: socket sequence length");
    const std::size_t r = edges / k_weight;

    BitMatrix h(r, n);
    bool regular = true;
    for (std::size_t row = 0; row < r; ++row) {
        for (std::size_t t = 0; t < k_weight; ++t) {
            const std::uint32_t col = sockets[row * k_weight + t];
            if (h.get(row, col)) regular = false;
            h.set(row, col, true);
        }
    }
    return {LinearCode::from_parity_check(std::move(h)), regular};
}

inline RuResult build_ru(unsigned j_weight, unsigned k_weight, std::size_t n,
                         std::uint64_t seed) {
    std::vector<std::uint32_t> sockets;
    sockets.reserve(static_cast<std::size_t>(j_weight) * n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (unsigned rep = 0; rep < j_weight; ++rep) sockets.push_back(v);
    Rng rng(seed);
    rng.shuffle(sockets);
    return build_ru_from_sockets(j_weight, k_weight, n, sockets);
}

// A binary base matrix labeled with nonzero field elements over its support,
// label order row-major.
struct NonbinaryLabeledMatrix {
    BitMatrix base;
    GfField field;
    std::vector<std::uint16_t> labels;

    void validate() const {
        if (labels.size() != base.ones_count())
            throw domain_error("labeled matrix: label count differs from support");
        for (const std::uint16_t a : labels)
            if (a == 0 || a >= field.q())
                throw domain_error("labeled matrix: labels must be nonzero field elements");
    }
};

inline NonbinaryLabeledMatrix random_labeling(const BitMatrix& base,
                                              const GfField& field,
                                              std::uint64_t seed) {
    NonbinaryLabeledMatrix out{base, field, {}};
    out.labels.reserve(base.ones_count());
    Rng rng(seed);
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t j = 0; j < base.cols(); ++j)
            if (base.get(i, j))
                out.labels.push_back(
                    static_cast<std::uint16_t>(1 + rng.uniform_below(field.q() - 1)));
    return out;
}

// Binary image: replace label a at (i,j) by the m x m companion matrix of a,
// zeros by zero blocks. The null space of the image is the bit-expansion of
// the q-ary null space.
inline LinearCode binary_image(const NonbinaryLabeledMatrix& labeled) {
    labeled.validate();
    const unsigned m = labeled.field.m();
    const std::size_t rows = labeled.base.rows();
    const std::size_t cols = labeled.base.cols();
    BitMatrix h(rows * m, cols * m);
    std::size_t next_label = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!labeled.base.get(i, j)) continue;
            const BitMatrix block = labeled.field.companion(labeled.labels[next_label++]);
            for (unsigned u = 0; u < m; ++u)
                for (unsigned v = 0; v < m; ++v)
                    if (block.get(u, v)) h.set(i * m + u, j * m + v, true);
        }
    }
    return LinearCode::from_parity_check(std::move(h));
}

}  // namespace ldpcw
