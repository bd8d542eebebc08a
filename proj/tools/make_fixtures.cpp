// Regenerates the bundled fixtures under data/:
//   xqr48.alist  - the [48,24,12] extended quadratic-residue code, with a
//                  parity-check matrix assembled from 24 independent
//                  weight-12 dual codewords chosen greedily for balanced
//                  column weights ("sparse form")
//   qc48.qc      - a (3,6)-regular rate-1/2 QC exponent matrix, lifting 6,
//                  selected for girth 6, full rank and the best minimum
//                  distance found in a deterministic seeded search
//   qc48.alist   - its tailbiting expansion
//
// Run from the repository root: build/tools/make_fixtures [data-dir]

#include <array>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ldpcw/analysis.hpp"
#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/io.hpp"
#include "ldpcw/linear_code.hpp"
#include "ldpcw/qc.hpp"
#include "ldpcw/rng.hpp"

namespace {

using namespace ldpcw;

// Generator polynomial of the length-47 binary quadratic-residue code,
// ascending coefficients (degree 23). The extended [48,24] code it defines
// is self-dual with minimum distance 12.
constexpr std::array<int, 24> qr47_generator = {1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0,
                                                1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1};

// All codewords of the extended code, as 48-bit words, via a Gray sweep over
// the 24 generator rows (cyclic shifts of g, each with its overall parity).
std::vector<std::uint64_t> extended_qr_generators() {
    std::uint64_t g = 0;
    for (unsigned i = 0; i < qr47_generator.size(); ++i)
        if (qr47_generator[i]) g |= std::uint64_t{1} << i;
    std::vector<std::uint64_t> rows;
    for (unsigned s = 0; s < 24; ++s) {
        const std::uint64_t shifted = g << s;  // stays within 47 bits for s <= 23
        const std::uint64_t parity =
            static_cast<std::uint64_t>(std::popcount(shifted) & 1) << 47;
        rows.push_back(shifted | parity);
    }
    return rows;
}

std::vector<std::uint64_t> weight12_codewords(const std::vector<std::uint64_t>& gen) {
    std::vector<std::uint64_t> out;
    std::uint64_t cur = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << gen.size()); ++i) {
        cur ^= gen[std::countr_zero(i)];
        if (std::popcount(cur) == 12) out.push_back(cur);
    }
    return out;
}

// Greedy sparse-form selection: among the weight-12 dual codewords, append
// the rank-increasing row that keeps the column-weight profile flattest.
BitMatrix sparse_form_from_low_weight(const std::vector<std::uint64_t>& words) {
    std::array<std::uint64_t, 64> pivot{};  // xor basis keyed by highest set bit
    const auto reduce = [&](std::uint64_t v) {
        while (v) {
            const int b = 63 - std::countl_zero(v);
            if (!pivot[b]) break;
            v ^= pivot[b];
        }
        return v;
    };
    const auto independent = [&](std::uint64_t v) { return reduce(v) != 0; };
    const auto insert = [&](std::uint64_t v) {
        v = reduce(v);
        pivot[63 - std::countl_zero(v)] = v;
    };

    std::vector<std::uint64_t> chosen;
    std::array<int, 48> col_weight{};
    while (chosen.size() < 24) {
        std::uint64_t best = 0;
        long best_cost = -1;
        for (const std::uint64_t w : words) {
            if (!independent(w)) continue;
            long cost = 0;
            for (int j = 0; j < 48; ++j)
                if ((w >> j) & 1) cost += 2 * col_weight[j] + 1;  // sum-of-squares delta
            if (best_cost < 0 || cost < best_cost || (cost == best_cost && w < best)) {
                best_cost = cost;
                best = w;
            }
        }
        if (best_cost < 0) throw std::runtime_error("sparse form: ran out of rows");
        insert(best);
        chosen.push_back(best);
        for (int j = 0; j < 48; ++j)
            if ((best >> j) & 1) ++col_weight[j];
    }

    BitMatrix h(24, 48);
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (int j = 0; j < 48; ++j)
            if ((chosen[i] >> j) & 1) h.set(i, j, true);
    return h;
}

// (3,6)-regular 4x8 base: row r has zeros at columns 2r and 2r+1.
QcPolynomialMatrix qc_candidate(std::uint64_t seed) {
    QcPolynomialMatrix q;
    q.b = 4;
    q.c = 8;
    q.lifting = 6;
    q.exps.assign(4 * 8, QcPolynomialMatrix::zero_entry);
    Rng rng(seed);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 8; ++c)
            if (c != 2 * r && c != 2 * r + 1)
                q.set_exponent(r, c, static_cast<std::int32_t>(rng.uniform_below(6)));
    return q;
}

void make_qc_fixture(const std::string& dir) {
    QcPolynomialMatrix best;
    DistanceResult best_d;
    std::size_t evaluated = 0;
    bool have = false;
    for (std::uint64_t cand = 0; cand < 100000 && evaluated < 64; ++cand) {
        const QcPolynomialMatrix q = qc_candidate(derive_seed(20240601, cand));
        const LinearCode code = qc_expand_tailbiting(q);
        if (code.rank != 24) continue;
        const auto g = girth(code);
        if (!g || *g < 6) continue;
        const DistanceResult d = min_distance(code);
        ++evaluated;
        const bool better = !have || d.distance > best_d.distance ||
                            (d.distance == best_d.distance && d.count < best_d.count);
        if (better) {
            best = q;
            best_d = d;
            have = true;
        }
    }
    if (!have) throw std::runtime_error("qc search found no girth-6 full-rank candidate");

    const LinearCode code = qc_expand_tailbiting(best);
    const auto report = analyze(code);
    std::printf("qc48: d_min=%zu A=%llu d_stop=%zu d_dual=%zu girth=%u (evaluated %zu)\n",
                report.dmin.distance,
                static_cast<unsigned long long>(report.dmin.count), report.dstop.size,
                report.ddual.distance, report.girth_length ? *report.girth_length : 0,
                evaluated);
    write_qc_file(dir + "/qc48.qc", best);
    write_alist_file(dir + "/qc48.alist", code.H);
}

void make_xqr_fixture(const std::string& dir) {
    const auto gens = extended_qr_generators();
    const auto w12 = weight12_codewords(gens);
    std::printf("xqr48: %zu weight-12 codewords\n", w12.size());
    if (w12.size() != 17296) throw std::runtime_error("unexpected weight-12 count");

    const BitMatrix h = sparse_form_from_low_weight(w12);
    const LinearCode code = LinearCode::from_parity_check(h);
    if (code.rank != 24) throw std::runtime_error("sparse form is rank deficient");

    const DistanceResult dmin = min_distance(code);
    const DistanceResult ddual = dual_min_distance(code);
    std::printf("xqr48: d_min=%zu A=%llu d_dual=%zu cols=%s\n", dmin.distance,
                static_cast<unsigned long long>(dmin.count), ddual.distance,
                [&] {
                    auto [lo, hi] = code.col_weight_range();
                    return std::to_string(lo) + ".." + std::to_string(hi);
                }()
                    .c_str());
    if (dmin.distance != 12 || dmin.count != 17296 || ddual.distance != 12)
        throw std::runtime_error("extended QR invariants failed");
    write_alist_file(dir + "/xqr48.alist", code.H);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    try {
        make_xqr_fixture(dir);
        make_qc_fixture(dir);
    } catch (const std::exception& e) {
        std::cerr << "fixture generation failed: " << e.what() << '\n';
        return 1;
    }
    std::cout << "fixtures written to " << dir << '\n';
    return 0;
}
