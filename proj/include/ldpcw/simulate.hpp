#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ldpcw/analysis.hpp"
#include "ldpcw/decoders.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/linear_code.hpp"
#include "ldpcw/rng.hpp"

namespace ldpcw {

enum class DecoderKind { Bp, Ml, Rpc };

inline const char* decoder_label(DecoderKind d) {
    switch (d) {
        case DecoderKind::Bp: return "BP";
        case DecoderKind::Ml: return "ML";
        case DecoderKind::Rpc: return "RPC";
    }
    return "?";
}

struct SweepSpec {
    Channel channel = Channel::Bec;
    std::vector<double> grid;  // erasure probabilities or Eb/N0 in dB
    DecoderKind decoder = DecoderKind::Bp;
    unsigned rpc_rows = 0;
    std::size_t rpc_weight_budget = 0;  // 0 => unlimited
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t target_frame_errors = 100;
    std::uint64_t base_seed = 1;
    bool random_codewords = false;  // default: all-zero word (code symmetry)
    BpParams bp;
    std::size_t ml_max_dim = 26;

    void validate() const {
        if (grid.empty()) throw domain_error("sweep: empty channel grid");
        if (target_frame_errors < 1) throw domain_error("sweep: target_frame_errors >= 1");
        for (const double g : grid) {
            if (channel == Channel::Bec && (g < 0.0 || g > 1.0))
                throw domain_error("sweep: erasure probability must be in [0,1]");
            if (channel == Channel::Awgn && !std::isfinite(g))
                throw domain_error("sweep: Eb/N0 must be finite");
        }
    }
};

struct SimRecord {
    Channel channel = Channel::Bec;
    double param = 0.0;  // eps or Eb/N0 dB
    std::string decoder;
    unsigned rpc_rows = 0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double fer = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

// sigma^2 = 1 / (2 R Eb/N0), with R the actual rate k/n.
inline double awgn_sigma2(double ebno_db, double rate) {
    if (rate <= 0.0) throw domain_error("awgn: nonpositive rate");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
}

// Monte Carlo FER sweep. Frame generation, channel noise and decoding are
// deterministic functions of (base_seed, grid index, frame index), so grid
// points and frames can be distributed arbitrarily without changing results.
inline std::vector<SimRecord> run_sweep(const LinearCode& code, const SweepSpec& spec) {
    spec.validate();
    if (spec.channel == Channel::Awgn && spec.decoder == DecoderKind::Ml &&
        code.k > spec.ml_max_dim)
        throw budget_error("sweep: ML over AWGN capped at dimension " +
                           std::to_string(spec.ml_max_dim));

    const LinearCode* decode_code = &code;
    LinearCode extended;
    if (spec.decoder == DecoderKind::Rpc && spec.rpc_rows > 0) {
        extended = extend_rpc(code, spec.rpc_rows, spec.rpc_weight_budget);
        verify_rpc_extension(code, extended);
        decode_code = &extended;
    }

    const BitMatrix gen = code.generator_matrix();
    std::vector<SimRecord> records;
    records.reserve(spec.grid.size());

    for (std::size_t point = 0; point < spec.grid.size(); ++point) {
        const double param = spec.grid[point];
        const std::uint64_t point_seed = derive_seed(spec.base_seed, point);
        const double sigma2 = spec.channel == Channel::Awgn
                                  ? awgn_sigma2(param, code.rate())
                                  : 0.0;

        SimRecord rec;
        rec.channel = spec.channel;
        rec.param = param;
        rec.decoder = decoder_label(spec.decoder);
        rec.rpc_rows = spec.decoder == DecoderKind::Rpc ? spec.rpc_rows : 0;
        rec.seed = spec.base_seed;

        const auto start = std::chrono::steady_clock::now();
        std::uint64_t frames = 0, errors = 0;
        std::vector<std::uint8_t> codeword(code.n, 0);
        while (frames < spec.max_frames && errors < spec.target_frame_errors) {
            Rng rng(derive_seed(point_seed, frames));
            if (spec.random_codewords) {
                std::fill(codeword.begin(), codeword.end(), 0);
                for (std::size_t g = 0; g < gen.rows(); ++g) {
                    if (rng.next() & 1) {
                        for (std::size_t j = 0; j < code.n; ++j)
                            codeword[j] ^= gen.get(g, j);
                    }
                }
            }

            bool frame_error = false;
            if (spec.channel == Channel::Bec) {
                const BecFrame frame = bec_transmit(codeword, param, rng);
                DecodeOutcome outcome;
                switch (spec.decoder) {
                    case DecoderKind::Bp:
                        outcome = bp_peel_bec(*decode_code, frame);
                        break;
                    case DecoderKind::Ml:
                        outcome = ml_bec(code, frame);
                        break;
                    case DecoderKind::Rpc:
                        outcome = decode_rpc(Channel::Bec, *decode_code, frame);
                        break;
                }
                frame_error = outcome.status != DecodeStatus::Success ||
                              outcome.estimate != codeword;
            } else {
                const AwgnFrame frame = awgn_transmit(codeword, sigma2, rng);
                DecodeOutcome outcome;
                switch (spec.decoder) {
                    case DecoderKind::Bp:
                        outcome = bp_sumproduct_awgn(*decode_code, frame, spec.bp);
                        break;
                    case DecoderKind::Ml:
                        outcome = ml_awgn_exhaustive(code, frame, spec.ml_max_dim);
                        break;
                    case DecoderKind::Rpc:
                        outcome = decode_rpc(Channel::Awgn, *decode_code, frame, spec.bp);
                        break;
                }
                frame_error = outcome.status != DecodeStatus::Success ||
                              outcome.estimate != codeword;
            }
            ++frames;
            if (frame_error) ++errors;
        }

        rec.frames = frames;
        rec.frame_errors = errors;
        rec.fer = frames ? static_cast<double>(errors) / static_cast<double>(frames) : 0.0;
        rec.ci95_halfwidth =
            frames ? 1.96 * std::sqrt(rec.fer * (1.0 - rec.fer) /
                                      static_cast<double>(frames))
                   : 0.0;
        rec.wall_time_s = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        records.push_back(std::move(rec));
    }
    return records;
}

inline void records_to_csv(std::ostream& out, const std::vector<SimRecord>& records) {
    out << "channel,param,decoder,rpc_rows,frames,frame_errors,fer,ci95,seed\n";
    char buf[160];
    for (const SimRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%.10g,%s,%u,%llu,%llu,%.6e,%.6e,%llu\n",
                      r.channel == Channel::Bec ? "bec" : "awgn", r.param,
                      r.decoder.c_str(), r.rpc_rows,
                      static_cast<unsigned long long>(r.frames),
                      static_cast<unsigned long long>(r.frame_errors), r.fer,
                      r.ci95_halfwidth, static_cast<unsigned long long>(r.seed));
        out << buf;
    }
}

// Bare (x, y) pairs for external plotters: channel parameter against FER.
inline void records_to_plot_data(std::ostream& out,
                                 const std::vector<SimRecord>& records) {
    char buf[80];
    for (const SimRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%.10g %.6e\n", r.param, r.fer);
        out << buf;
    }
}

}  // namespace ldpcw
