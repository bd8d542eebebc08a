#include <catch2/catch_amalgamated.hpp>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/rng.hpp"

using namespace ldpcw;

namespace {

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng.next() & 1) m.set(i, j, true);
    return m;
}

// independent oracle: rank by plain elimination over a bool grid
std::size_t naive_rank(const BitMatrix& m) {
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t r = rank; r < m.rows(); ++r)
            if (a[r][c]) {
                sel = r;
                break;
            }
        if (sel == m.rows()) continue;
        std::swap(a[rank], a[sel]);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && a[r][c])
                for (std::size_t j = 0; j < m.cols(); ++j) a[r][j] ^= a[rank][j];
        ++rank;
    }
    return rank;
}

// standard [8,4] extended Hamming parity-check matrix
BitMatrix extended_hamming() {
    return BitMatrix::from_strings({
        "10101010",
        "01100110",
        "00011110",
        "11111111",
    });
}

}  // namespace

TEST_CASE("rref of the identity") {
    const BitMatrix id = BitMatrix::identity(3);
    const RrefResult rr = rank_and_rref(id);
    CHECK(rr.rank == 3);
    CHECK(rr.rref == id);
    CHECK(rr.pivot_cols == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("duplicate rows collapse to rank one") {
    const BitMatrix m = BitMatrix::from_strings({"1011", "1011"});
    CHECK(rank_and_rref(m).rank == 1);
}

TEST_CASE("rref properties on random matrices") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng.uniform_below(8);
        const std::size_t cols = 1 + rng.uniform_below(10);
        const BitMatrix m = random_matrix(rows, cols, rng);
        const RrefResult rr = rank_and_rref(m);
        CHECK(rr.rank == naive_rank(m));
        REQUIRE(std::is_sorted(rr.pivot_cols.begin(), rr.pivot_cols.end()));
        // pivot columns are unit vectors in the rref
        for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p) {
            for (std::size_t r = 0; r < rows; ++r)
                CHECK(rr.rref.get(r, rr.pivot_cols[p]) == (r == p));
        }
        // rank(M) == rank(M^T)
        CHECK(gf2_rank(m.transposed()) == rr.rank);
    }
}

TEST_CASE("null space of the identity is empty") {
    const BitMatrix basis = null_space_basis(BitMatrix::identity(5));
    CHECK(basis.rows() == 0);
    CHECK(basis.cols() == 5);
}

TEST_CASE("null space of a single parity check") {
    const BitMatrix basis = null_space_basis(BitMatrix::from_strings({"11"}));
    REQUIRE(basis.rows() == 1);
    CHECK(basis.get(0, 0));
    CHECK(basis.get(0, 1));
}

TEST_CASE("null space of the extended Hamming check matrix") {
    const BitMatrix h = extended_hamming();
    const BitMatrix basis = null_space_basis(h);
    REQUIRE(basis.rows() == 4);
    // every basis row is orthogonal to every row of H
    for (std::size_t b = 0; b < basis.rows(); ++b) {
        std::vector<std::uint8_t> v(8, 0);
        for (std::size_t j = 0; j < 8; ++j) v[j] = basis.get(b, j);
        for (const std::uint8_t s : mat_vec_mul(h, v)) CHECK(s == 0);
    }
}

TEST_CASE("null space basis has full rank and complementary size") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.uniform_below(6);
        const std::size_t cols = 1 + rng.uniform_below(9);
        const BitMatrix m = random_matrix(rows, cols, rng);
        const std::size_t rank = gf2_rank(m);
        const BitMatrix basis = null_space_basis(m);
        REQUIRE(basis.rows() == cols - rank);
        if (basis.rows() > 0) CHECK(gf2_rank(basis) == basis.rows());
        for (std::size_t b = 0; b < basis.rows(); ++b) {
            std::vector<std::uint8_t> v(cols, 0);
            for (std::size_t j = 0; j < cols; ++j) v[j] = basis.get(b, j);
            for (const std::uint8_t s : mat_vec_mul(m, v)) REQUIRE(s == 0);
        }
    }
}

TEST_CASE("vstack and submatrix_cols") {
    const BitMatrix a = BitMatrix::from_strings({"110", "011"});
    const BitMatrix b = BitMatrix::from_strings({"101"});
    const BitMatrix s = BitMatrix::vstack(a, b);
    REQUIRE(s.rows() == 3);
    CHECK(s.get(2, 0));
    CHECK_FALSE(s.get(2, 1));

    const std::vector<std::uint32_t> pick{0, 2};
    const BitMatrix sub = a.submatrix_cols(pick);
    CHECK(sub.rows() == 2);
    CHECK(sub.cols() == 2);
    CHECK(sub.get(0, 0));
    CHECK_FALSE(sub.get(0, 1));
    CHECK(sub.get(1, 1));
}
