#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ldpcw/builders.hpp"
#include "ldpcw/io.hpp"
#include "ldpcw/rng.hpp"

using namespace ldpcw;

TEST_CASE("alist bytes of a small matrix") {
    const BitMatrix h = BitMatrix::from_strings({"110", "011"});
    std::ostringstream out;
    write_alist(out, h);
    CHECK(out.str() ==
          "3 2\n"
          "2 2\n"
          "1 2 1\n"
          "2 2\n"
          "1 0\n"
          "1 2\n"
          "2 0\n"
          "1 2\n"
          "2 3\n");
}

TEST_CASE("alist round trip on random matrices") {
    Rng rng(3133);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t rows = 1 + rng.uniform_below(10);
        const std::size_t cols = 1 + rng.uniform_below(14);
        BitMatrix h(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (rng.next() % 3 == 0) h.set(i, j, true);
        std::ostringstream out;
        write_alist(out, h);
        std::istringstream in(out.str());
        CHECK(read_alist(in) == h);
    }
}

TEST_CASE("alist writer and reader agree on zero columns") {
    BitMatrix h(2, 3);
    h.set(0, 0, true);
    h.set(1, 0, true);
    h.set(1, 2, true);  // column 1 has no entries
    std::ostringstream out;
    write_alist(out, h);
    std::istringstream in(out.str());
    CHECK(read_alist(in) == h);
}

TEST_CASE("alist reader accepts unpadded lists") {
    const std::string text =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "1\n"
        "1 2\n"
        "2\n"
        "1 2\n"
        "2 3\n";
    std::istringstream in(text);
    CHECK(read_alist(in) == BitMatrix::from_strings({"110", "011"}));
}

TEST_CASE("alist reader rejects malformed input") {
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_alist(in), parse_error);
    };
    reject("");                       // empty
    reject("3\n");                    // truncated header
    reject("3 0\n1 1\n");             // nonpositive dimension
    reject("2 1\n1 1\n1 1\n1\n1\n");  // truncated index lists
    // index out of range
    reject("2 1\n1 1\n1 1\n2\n3\n1 2\n");
    // row list contradicts column lists
    reject(
        "2 2\n1 1\n1 1\n1 2\n1\n2\n1\n2\n");
}

TEST_CASE("qc exponent file round trip") {
    QcPolynomialMatrix q;
    q.b = 2;
    q.c = 4;
    q.lifting = 7;
    q.exps = {0, 3, QcPolynomialMatrix::zero_entry, 5,
              2, QcPolynomialMatrix::zero_entry, 4, 0};
    std::ostringstream out;
    write_qc(out, q);
    CHECK(out.str() ==
          "2 4 7\n"
          "0 3 -1 5\n"
          "2 -1 4 0\n");
    std::istringstream in(out.str());
    const QcPolynomialMatrix back = read_qc(in);
    CHECK(back.b == q.b);
    CHECK(back.c == q.c);
    CHECK(back.lifting == q.lifting);
    CHECK(back.exps == q.exps);
}

TEST_CASE("qc reader rejects lifting at or below the memory") {
    std::istringstream in("1 2 3\n3 0\n");
    CHECK_THROWS_AS(read_qc(in), parse_error);
}

TEST_CASE("qc reader rejects malformed headers") {
    std::istringstream a("2 2 4\n0 0\n");  // c must exceed b
    CHECK_THROWS_AS(read_qc(a), parse_error);
    std::istringstream b("1 2\n0 0\n");
    CHECK_THROWS_AS(read_qc(b), parse_error);
}

TEST_CASE("label file round trip") {
    const BitMatrix base = BitMatrix::from_strings({"1101", "0111"});
    const GfField field(4);
    const NonbinaryLabeledMatrix lab = random_labeling(base, field, 321);
    std::ostringstream out;
    write_labeled(out, lab);
    std::istringstream in(out.str());
    const NonbinaryLabeledMatrix back = read_labeled(in);
    CHECK(back.base == lab.base);
    CHECK(back.labels == lab.labels);
    CHECK(back.field.m() == lab.field.m());
    CHECK(back.field.modulus() == lab.field.modulus());
}

TEST_CASE("label file rejects label count mismatch") {
    const std::string text =
        "2 1\n"
        "1 1\n"
        "1 1\n"
        "1\n"
        "1\n"
        "1 2\n"
        "gf 2 7\n"
        "2\n";  // row has support 2 but only one label
    std::istringstream in(text);
    CHECK_THROWS_AS(read_labeled(in), parse_error);
}
