#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ldpcw/bit_matrix.hpp"

namespace ldpcw {

// A binary linear code given by a parity-check matrix, with the derived data
// every consumer needs: dimensions, rank and the Tanner adjacency. Immutable
// after construction; safe to share across threads.
struct LinearCode {
    BitMatrix H;        // r x n
    std::size_t n = 0;  // block length (columns)
    std::size_t r = 0;  // parity-check rows (may exceed rank)
    std::size_t rank = 0;
    std::size_t k = 0;  // n - rank

    std::vector<std::vector<std::uint32_t>> check_vars;  // per row: variable indices
    std::vector<std::vector<std::uint32_t>> var_checks;  // per column: check indices

    static LinearCode from_parity_check(BitMatrix h) {
        LinearCode code;
        code.n = h.cols();
        code.r = h.rows();
        code.rank = gf2_rank(h);
        code.k = code.n - code.rank;
        code.check_vars.resize(code.r);
        code.var_checks.resize(code.n);
        for (std::size_t i = 0; i < code.r; ++i) {
            for (std::size_t j = 0; j < code.n; ++j) {
                if (h.get(i, j)) {
                    code.check_vars[i].push_back(static_cast<std::uint32_t>(j));
                    code.var_checks[j].push_back(static_cast<std::uint32_t>(i));
                }
            }
        }
        code.H = std::move(h);
        return code;
    }

    double rate() const { return static_cast<double>(k) / static_cast<double>(n); }

    // k x n basis of the code (null space of H).
    BitMatrix generator_matrix() const { return null_space_basis(H); }

    bool is_codeword(std::span<const std::uint8_t> x) const {
        const auto syndrome = mat_vec_mul(H, x);
        for (const std::uint8_t s : syndrome)
            if (s) return false;
        return true;
    }

    // (min, max) column and row weights; a (J,K)-regular code has min == max
    // on both.
    std::pair<std::size_t, std::size_t> col_weight_range() const {
        std::size_t lo = n, hi = 0;
        for (const auto& adj : var_checks) {
            lo = std::min(lo, adj.size());
            hi = std::max(hi, adj.size());
        }
        return {lo, hi};
    }
    std::pair<std::size_t, std::size_t> row_weight_range() const {
        std::size_t lo = n, hi = 0;
        for (const auto& adj : check_vars) {
            lo = std::min(lo, adj.size());
            hi = std::max(hi, adj.size());
        }
        return {lo, hi};
    }
};

}  // namespace ldpcw
