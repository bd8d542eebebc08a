#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ldpcw/builders.hpp"
#include "ldpcw/io.hpp"
#include "ldpcw/simulate.hpp"

using namespace ldpcw;

namespace {

LinearCode extended_hamming() {
    return LinearCode::from_parity_check(BitMatrix::from_strings({
        "10101010",
        "01100110",
        "00011110",
        "11111111",
    }));
}

bool is_stopping_subset(const BitMatrix& h, std::uint32_t mask) {
    for (std::size_t i = 0; i < h.rows(); ++i) {
        int ones = 0;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if ((mask >> j) & 1u && h.get(i, j)) ++ones;
        if (ones == 1) return false;
    }
    return true;
}

bool contains_stopping_subset(const BitMatrix& h, std::uint32_t mask) {
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask)
        if (is_stopping_subset(h, sub)) return true;
    return false;
}

}  // namespace

TEST_CASE("no erasures means no frame errors") {
    const LinearCode code = extended_hamming();
    SweepSpec spec;
    spec.grid = {0.0};
    spec.max_frames = 500;
    const auto records = run_sweep(code, spec);
    REQUIRE(records.size() == 1);
    CHECK(records[0].frames == 500);
    CHECK(records[0].frame_errors == 0);
    CHECK(records[0].fer == 0.0);
}

TEST_CASE("full erasure always fails for both bp and ml") {
    const LinearCode code = extended_hamming();
    for (const DecoderKind d : {DecoderKind::Bp, DecoderKind::Ml}) {
        SweepSpec spec;
        spec.grid = {1.0};
        spec.decoder = d;
        spec.max_frames = 200;
        spec.target_frame_errors = 200;
        const auto records = run_sweep(code, spec);
        CHECK(records[0].fer == 1.0);
    }
}

TEST_CASE("bp fer over bec matches the exact pattern enumeration") {
    const LinearCode code = extended_hamming();
    const double eps = 0.3;

    // semi-analytic oracle: sum over all 256 erasure patterns
    double exact = 0.0;
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        const int ones = std::popcount(mask);
        const double prob =
            std::pow(eps, ones) * std::pow(1.0 - eps, 8 - ones);
        if (contains_stopping_subset(code.H, mask)) exact += prob;
    }

    SweepSpec spec;
    spec.grid = {eps};
    spec.max_frames = 40000;
    spec.target_frame_errors = 40000;  // run all frames
    spec.base_seed = 71;
    const auto records = run_sweep(code, spec);
    REQUIRE(records.size() == 1);
    INFO("fer " << records[0].fer << " exact " << exact << " ci "
                << records[0].ci95_halfwidth);
    CHECK(std::abs(records[0].fer - exact) <= 3.0 * records[0].ci95_halfwidth);
}

TEST_CASE("sweeps are reproducible byte for byte") {
    const LinearCode code = extended_hamming();
    SweepSpec spec;
    spec.grid = {0.2, 0.4};
    spec.max_frames = 2000;
    spec.base_seed = 5;
    const auto a = run_sweep(code, spec);
    const auto b = run_sweep(code, spec);
    std::ostringstream csv_a, csv_b;
    records_to_csv(csv_a, a);
    records_to_csv(csv_b, b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(csv_a.str().find("channel,param,decoder,rpc_rows,frames,frame_errors,"
                           "fer,ci95,seed\n") == 0);
}

TEST_CASE("ml frame errors are a subset of bp frame errors with paired seeds") {
    const LinearCode code = extended_hamming();
    const std::vector<std::uint8_t> zero(8, 0);
    const std::uint64_t base_seed = 31337;
    const std::uint64_t point_seed = derive_seed(base_seed, 0);
    for (std::uint64_t frame_idx = 0; frame_idx < 4000; ++frame_idx) {
        Rng rng_a(derive_seed(point_seed, frame_idx));
        Rng rng_b(derive_seed(point_seed, frame_idx));
        const BecFrame fa = bec_transmit(zero, 0.45, rng_a);
        const BecFrame fb = bec_transmit(zero, 0.45, rng_b);
        REQUIRE(fa.erased == fb.erased);  // pairing really is exact
        if (ml_bec(code, fa).status != DecodeStatus::Success)
            CHECK(bp_peel_bec(code, fb).status != DecodeStatus::Success);
    }
}

TEST_CASE("rpc with zero rows reproduces the bp sweep exactly") {
    const LinearCode code = extended_hamming();
    SweepSpec bp;
    bp.grid = {0.25, 0.5};
    bp.max_frames = 3000;
    bp.base_seed = 88;
    SweepSpec rpc = bp;
    rpc.decoder = DecoderKind::Rpc;
    rpc.rpc_rows = 0;
    const auto a = run_sweep(code, bp);
    const auto b = run_sweep(code, rpc);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].frame_errors == b[i].frame_errors);
        CHECK(a[i].frames == b[i].frames);
    }
}

TEST_CASE("bec fer curves are statistically monotone in the erasure rate") {
    const LinearCode code = extended_hamming();
    SweepSpec spec;
    spec.grid = {0.1, 0.2, 0.3, 0.4, 0.5};
    spec.max_frames = 5000;
    spec.target_frame_errors = 5000;
    spec.base_seed = 4242;
    const auto records = run_sweep(code, spec);
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        CHECK(records[i].fer <= records[i + 1].fer +
                                    3.0 * (records[i].ci95_halfwidth +
                                           records[i + 1].ci95_halfwidth));
    }
}

TEST_CASE("awgn bp improves sharply with snr on the bundled qc code") {
    const LinearCode code =
        LinearCode::from_parity_check(read_alist_file(std::string(LDPCW_DATA_DIR) +
                                                      "/qc48.alist"));
    SweepSpec spec;
    spec.channel = Channel::Awgn;
    spec.grid = {2.0, 8.0};
    spec.max_frames = 10000;
    spec.target_frame_errors = 10000;
    spec.base_seed = 99;
    const auto records = run_sweep(code, spec);
    REQUIRE(records.size() == 2);
    INFO("fer@2dB " << records[0].fer << " fer@8dB " << records[1].fer);
    CHECK(records[1].fer <
          records[0].fer - 3.0 * (records[0].ci95_halfwidth +
                                  records[1].ci95_halfwidth));
}

TEST_CASE("random-codeword mode agrees with the all-zero shortcut") {
    const LinearCode code = extended_hamming();
    SweepSpec zero_spec;
    zero_spec.grid = {0.35};
    zero_spec.max_frames = 20000;
    zero_spec.target_frame_errors = 20000;
    zero_spec.base_seed = 7;
    SweepSpec random_spec = zero_spec;
    random_spec.random_codewords = true;
    random_spec.base_seed = 8;
    const auto a = run_sweep(code, zero_spec);
    const auto b = run_sweep(code, random_spec);
    CHECK(std::abs(a[0].fer - b[0].fer) <=
          3.0 * (a[0].ci95_halfwidth + b[0].ci95_halfwidth));
}

TEST_CASE("sweep validation rejects bad grids") {
    const LinearCode code = extended_hamming();
    SweepSpec spec;
    spec.grid = {};
    CHECK_THROWS_AS(run_sweep(code, spec), domain_error);
    spec.grid = {1.5};
    CHECK_THROWS_AS(run_sweep(code, spec), domain_error);
}
