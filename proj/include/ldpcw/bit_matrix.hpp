#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "ldpcw/errors.hpp"

namespace ldpcw {

// Dense bit-packed matrix over GF(2), row-major, 64-bit words. The carrier
// for parity-check matrices, duals and erasure submatrices. Values are meant
// to be immutable once handed to a LinearCode; the mutating row operations
// exist for construction and elimination.
class BitMatrix {
  public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {
        if (cols == 0) throw domain_error("BitMatrix needs at least one column");
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    // Test/fixture helper: one string of '0'/'1' per row.
    static BitMatrix from_strings(const std::vector<std::string>& rows) {
        BitMatrix m(rows.size(), rows.empty() ? 1 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            assert(rows[i].size() == m.cols());
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                if (rows[i][j] == '1') m.set(i, j, true);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        assert(r < rows_ && c < cols_);
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        if (v)
            bits_[r * wpr_ + c / 64] |= mask;
        else
            bits_[r * wpr_ + c / 64] &= ~mask;
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {bits_.data() + r * wpr_, wpr_};
    }
    std::span<std::uint64_t> row(std::size_t r) {
        return {bits_.data() + r * wpr_, wpr_};
    }

    void xor_row_into(std::size_t src, std::size_t dst) {
        std::uint64_t* d = bits_.data() + dst * wpr_;
        const std::uint64_t* s = bits_.data() + src * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint64_t* pa = bits_.data() + a * wpr_;
        std::uint64_t* pb = bits_.data() + b * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
    }

    std::size_t row_weight(std::size_t r) const {
        std::size_t w = 0;
        for (const std::uint64_t word : row(r)) w += std::popcount(word);
        return w;
    }

    std::size_t col_weight(std::size_t c) const {
        std::size_t w = 0;
        for (std::size_t r = 0; r < rows_; ++r) w += get(r, c);
        return w;
    }

    std::size_t ones_count() const {
        std::size_t w = 0;
        for (const std::uint64_t word : bits_) w += std::popcount(word);
        return w;
    }

    bool row_is_zero(std::size_t r) const {
        for (const std::uint64_t word : row(r))
            if (word) return false;
        return true;
    }

    BitMatrix transposed() const {
        if (rows_ == 0) throw domain_error("transpose of a zero-row matrix");
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
        if (top.cols() != bottom.cols())
            throw domain_error("vstack: column count mismatch");
        BitMatrix out(top.rows() + bottom.rows(), top.cols());
        std::memcpy(out.bits_.data(), top.bits_.data(),
                    top.bits_.size() * sizeof(std::uint64_t));
        std::memcpy(out.bits_.data() + top.bits_.size(), bottom.bits_.data(),
                    bottom.bits_.size() * sizeof(std::uint64_t));
        return out;
    }

    BitMatrix submatrix_cols(std::span<const std::uint32_t> cols) const {
        if (cols.empty()) throw domain_error("submatrix_cols: empty selection");
        BitMatrix out(rows_, cols.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (get(r, cols[j])) out.set(r, j, true);
        return out;
    }

    void append_row(std::span<const std::uint64_t> words) {
        assert(words.size() == wpr_);
        bits_.insert(bits_.end(), words.begin(), words.end());
        // mask tail bits beyond cols_
        if (cols_ % 64) bits_.back() &= (std::uint64_t{1} << (cols_ % 64)) - 1;
        ++rows_;
    }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
    }

    std::string dump() const {
        std::string s;
        s.reserve(rows_ * (cols_ + 1));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct RrefResult {
    std::size_t rank = 0;
    BitMatrix rref;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row-echelon form by Gaussian elimination. Pivot selection is the
// first row (lowest index) with a one in the current column, which makes the
// result deterministic.
inline RrefResult rank_and_rref(const BitMatrix& m) {
    RrefResult out;
    out.rref = m;
    BitMatrix& a = out.rref;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
        std::size_t sel = a.rows();
        for (std::size_t r = pivot_row; r < a.rows(); ++r) {
            if (a.get(r, c)) {
                sel = r;
                break;
            }
        }
        if (sel == a.rows()) continue;
        a.swap_rows(pivot_row, sel);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != pivot_row && a.get(r, c)) a.xor_row_into(pivot_row, r);
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    out.rank = out.pivot_cols.size();
    return out;
}

inline std::size_t gf2_rank(const BitMatrix& m) { return rank_and_rref(m).rank; }

// Basis of {x : M x^T = 0} as a (cols - rank) x cols matrix; zero rows when
// the kernel is trivial.
inline BitMatrix null_space_basis(const BitMatrix& m) {
    const RrefResult rr = rank_and_rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (const std::size_t c : rr.pivot_cols) is_pivot[c] = true;

    BitMatrix basis(n - rr.rank, n);
    std::size_t row_out = 0;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.set(row_out, free_col, true);
        for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p)
            if (rr.rref.get(p, free_col)) basis.set(row_out, rr.pivot_cols[p], true);
        ++row_out;
    }
    return basis;
}

// y = M x over GF(2); x given as unpacked bits.
inline std::vector<std::uint8_t> mat_vec_mul(const BitMatrix& m,
                                             std::span<const std::uint8_t> x) {
    assert(x.size() == m.cols());
    std::vector<std::uint64_t> packed((m.cols() + 63) / 64, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & 1) packed[i / 64] |= std::uint64_t{1} << (i % 64);
    std::vector<std::uint8_t> y(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        const auto row = m.row(r);
        for (std::size_t w = 0; w < row.size(); ++w) acc ^= row[w] & packed[w];
        y[r] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }
    return y;
}

inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw domain_error("mat_mul: shape mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(r, k))
                for (std::size_t w = 0; w < out.words_per_row(); ++w)
                    out.row(r)[w] ^= b.row(k)[w];
    return out;
}

}  // namespace ldpcw
