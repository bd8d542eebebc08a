#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/linear_code.hpp"
#include "ldpcw/rng.hpp"

namespace ldpcw {

enum class DecodeStatus { Success, Failure, Ambiguous };

struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::Failure;
    std::vector<std::uint8_t> estimate;           // full or partial word
    unsigned iterations = 0;
    std::vector<std::uint32_t> residual_erasures; // BEC only
    std::vector<double> posterior_llr;            // AWGN sum-product only
};

// ---------------------------------------------------------------------------
// Channels.
// ---------------------------------------------------------------------------

struct BecFrame {
    std::vector<std::uint8_t> transmitted;
    std::vector<std::uint32_t> erased;    // sorted
    std::vector<std::int8_t> received;    // 0, 1, or kErased

    static constexpr std::int8_t kErased = -1;

    static BecFrame make(std::vector<std::uint8_t> codeword,
                         std::vector<std::uint32_t> erasures) {
        std::sort(erasures.begin(), erasures.end());
        erasures.erase(std::unique(erasures.begin(), erasures.end()), erasures.end());
        BecFrame f;
        f.received.assign(codeword.size(), 0);
        for (std::size_t i = 0; i < codeword.size(); ++i)
            f.received[i] = static_cast<std::int8_t>(codeword[i] & 1);
        for (const std::uint32_t e : erasures) f.received[e] = kErased;
        f.transmitted = std::move(codeword);
        f.erased = std::move(erasures);
        return f;
    }
};

inline BecFrame bec_transmit(const std::vector<std::uint8_t>& codeword, double eps,
                             Rng& rng) {
    std::vector<std::uint32_t> erased;
    for (std::uint32_t i = 0; i < codeword.size(); ++i)
        if (rng.bernoulli(eps)) erased.push_back(i);
    return BecFrame::make(codeword, std::move(erased));
}

struct AwgnFrame {
    std::vector<std::uint8_t> transmitted;
    std::vector<double> received;  // BPSK 0 -> +1, 1 -> -1, plus noise
    double sigma2 = 1.0;
};

inline AwgnFrame awgn_transmit(const std::vector<std::uint8_t>& codeword,
                               double sigma2, Rng& rng) {
    if (sigma2 <= 0.0) throw domain_error("awgn_transmit: sigma2 must be positive");
    AwgnFrame f;
    f.transmitted = codeword;
    f.sigma2 = sigma2;
    const double sigma = std::sqrt(sigma2);
    f.received.resize(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i)
        f.received[i] = (codeword[i] ? -1.0 : 1.0) + sigma * rng.gaussian();
    return f;
}

// ---------------------------------------------------------------------------
// BEC decoders.
// ---------------------------------------------------------------------------

// Peeling decoder: repeatedly solve checks with exactly one erased neighbor.
// The residual erasure set is the maximal stopping set contained in the
// erasure pattern; iterations counts peeling sweeps.
inline DecodeOutcome bp_peel_bec(const LinearCode& code, const BecFrame& frame,
                                 unsigned max_rounds = 0) {
    DecodeOutcome out;
    std::vector<std::uint8_t> value(code.n, 0);
    std::vector<std::uint8_t> known(code.n, 0);
    for (std::size_t i = 0; i < code.n; ++i) {
        if (frame.received[i] != BecFrame::kErased) {
            value[i] = static_cast<std::uint8_t>(frame.received[i]);
            known[i] = 1;
        }
    }
    std::vector<std::uint32_t> erased_degree(code.r, 0);
    std::vector<std::uint8_t> known_sum(code.r, 0);
    for (std::size_t c = 0; c < code.r; ++c) {
        for (const std::uint32_t v : code.check_vars[c]) {
            if (known[v])
                known_sum[c] ^= value[v];
            else
                ++erased_degree[c];
        }
    }

    unsigned rounds = 0;
    if (max_rounds == 0) max_rounds = static_cast<unsigned>(code.n) + 1;
    std::size_t unresolved = frame.erased.size();
    while (unresolved > 0 && rounds < max_rounds) {
        bool progress = false;
        for (std::size_t c = 0; c < code.r; ++c) {
            if (erased_degree[c] != 1) continue;
            std::uint32_t target = 0;
            for (const std::uint32_t v : code.check_vars[c])
                if (!known[v]) {
                    target = v;
                    break;
                }
            const std::uint8_t bit = known_sum[c];
            value[target] = bit;
            known[target] = 1;
            --unresolved;
            for (const std::uint32_t c2 : code.var_checks[target]) {
                --erased_degree[c2];
                known_sum[c2] ^= bit;
            }
            progress = true;
        }
        if (!progress) break;
        ++rounds;
    }

    out.iterations = rounds;
    out.estimate = value;
    for (std::uint32_t i = 0; i < code.n; ++i)
        if (!known[i]) out.residual_erasures.push_back(i);
    out.status =
        out.residual_erasures.empty() ? DecodeStatus::Success : DecodeStatus::Failure;
    return out;
}

// ML over the BEC: solve the linear system on the erased positions. Success
// iff the erased columns are independent; otherwise Ambiguous, with every
// uniquely determined position still filled in.
inline DecodeOutcome ml_bec(const LinearCode& code, const BecFrame& frame) {
    DecodeOutcome out;
    out.estimate.assign(code.n, 0);
    std::vector<std::uint8_t> known(code.n, 0);
    for (std::size_t i = 0; i < code.n; ++i) {
        if (frame.received[i] != BecFrame::kErased) {
            out.estimate[i] = static_cast<std::uint8_t>(frame.received[i]);
            known[i] = 1;
        }
    }
    const std::size_t e = frame.erased.size();
    if (e == 0) {
        out.status = DecodeStatus::Success;
        return out;
    }

    // augmented system [H_E | s], s the syndrome of the known positions
    BitMatrix sys(code.r, e + 1);
    for (std::size_t c = 0; c < code.r; ++c) {
        std::uint8_t syn = 0;
        for (const std::uint32_t v : code.check_vars[c])
            if (known[v]) syn ^= out.estimate[v];
        if (syn) sys.set(c, e, true);
    }
    for (std::size_t j = 0; j < e; ++j)
        for (const std::uint32_t c : code.var_checks[frame.erased[j]])
            sys.set(c, j, true);

    const RrefResult rr = rank_and_rref(sys);
    // pivots among the first e columns; the augmented column is always
    // consistent because the transmitted word solves the system
    std::vector<bool> determined(e, false);
    std::vector<std::uint8_t> solution(e, 0);
    std::size_t pivot_count = 0;
    for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p) {
        const std::size_t col = rr.pivot_cols[p];
        if (col == e) continue;  // would mean inconsistency; cannot happen here
        ++pivot_count;
        // in RREF every other pivot column is zero in row p, so any 1 right
        // of the pivot sits in a free column and leaves this variable open
        bool forced = true;
        for (std::size_t j = col + 1; j < e; ++j)
            if (rr.rref.get(p, j)) {
                forced = false;
                break;
            }
        if (forced) {
            determined[col] = true;
            solution[col] = rr.rref.get(p, e) ? 1 : 0;
        }
    }

    for (std::size_t j = 0; j < e; ++j) {
        if (determined[j])
            out.estimate[frame.erased[j]] = solution[j];
        else
            out.residual_erasures.push_back(frame.erased[j]);
    }
    out.status = (pivot_count == e) ? DecodeStatus::Success : DecodeStatus::Ambiguous;
    return out;
}

// ---------------------------------------------------------------------------
// AWGN decoders.
// ---------------------------------------------------------------------------

struct BpParams {
    unsigned max_iter = 50;
    double llr_clip = 25.0;
    bool early_exit = true;  // stop once the hard decision satisfies H
};

// Flooding-schedule sum-product on channel LLRs 2y/sigma^2 with the exact
// tanh rule; message magnitudes are clipped to llr_clip. Success means the
// hard decision satisfies every check (not necessarily the transmitted word).
inline DecodeOutcome bp_sumproduct_awgn(const LinearCode& code, const AwgnFrame& frame,
                                        const BpParams& params = {}) {
    if (params.max_iter < 1) throw domain_error("bp_sumproduct_awgn: max_iter >= 1");
    const double clip = params.llr_clip;
    const auto clamp = [clip](double v) { return std::clamp(v, -clip, clip); };

    std::vector<double> channel(code.n);
    for (std::size_t i = 0; i < code.n; ++i)
        channel[i] = clamp(2.0 * frame.received[i] / frame.sigma2);

    // edge arrays indexed per check, in check_vars order
    std::vector<std::vector<double>> var_to_check(code.r), check_to_var(code.r);
    for (std::size_t c = 0; c < code.r; ++c) {
        var_to_check[c].assign(code.check_vars[c].size(), 0.0);
        check_to_var[c].assign(code.check_vars[c].size(), 0.0);
        for (std::size_t t = 0; t < code.check_vars[c].size(); ++t)
            var_to_check[c][t] = channel[code.check_vars[c][t]];
    }
    // position of check c in var v's adjacency, for the variable update
    std::vector<std::vector<std::uint32_t>> edge_slot(code.r);
    {
        std::vector<std::uint32_t> cursor(code.n, 0);
        for (std::size_t c = 0; c < code.r; ++c) {
            edge_slot[c].resize(code.check_vars[c].size());
            for (std::size_t t = 0; t < code.check_vars[c].size(); ++t) {
                const std::uint32_t v = code.check_vars[c][t];
                edge_slot[c][t] = cursor[v]++;
            }
        }
    }

    DecodeOutcome out;
    std::vector<double> posterior(code.n, 0.0);
    std::vector<std::uint8_t> hard(code.n, 0);
    std::vector<std::vector<double>> incoming(code.n);
    for (std::size_t v = 0; v < code.n; ++v)
        incoming[v].assign(code.var_checks[v].size(), 0.0);

    for (unsigned iter = 1; iter <= params.max_iter; ++iter) {
        // check-node update with forward/backward exclusion products
        for (std::size_t c = 0; c < code.r; ++c) {
            const std::size_t deg = code.check_vars[c].size();
            if (deg == 0) continue;
            if (deg == 1) {
                check_to_var[c][0] = clip;  // the lone neighbor must be zero
            } else {
                static thread_local std::vector<double> fwd, bwd;
                fwd.assign(deg, 0.0);
                bwd.assign(deg, 0.0);
                fwd[0] = std::tanh(var_to_check[c][0] / 2.0);
                bwd[deg - 1] = std::tanh(var_to_check[c][deg - 1] / 2.0);
                for (std::size_t t = 1; t < deg; ++t) {
                    fwd[t] = fwd[t - 1] * std::tanh(var_to_check[c][t] / 2.0);
                    bwd[deg - 1 - t] =
                        bwd[deg - t] * std::tanh(var_to_check[c][deg - 1 - t] / 2.0);
                }
                for (std::size_t t = 0; t < deg; ++t) {
                    double prod = 1.0;
                    if (t > 0) prod *= fwd[t - 1];
                    if (t + 1 < deg) prod *= bwd[t + 1];
                    prod = std::clamp(prod, -1.0, 1.0);
                    double msg;
                    if (std::abs(prod) >= 1.0 - 1e-15)
                        msg = prod >= 0 ? clip : -clip;
                    else
                        msg = 2.0 * std::atanh(prod);
                    check_to_var[c][t] = clamp(msg);
                }
            }
            for (std::size_t t = 0; t < deg; ++t)
                incoming[code.check_vars[c][t]][edge_slot[c][t]] = check_to_var[c][t];
        }

        // variable-node update, posteriors and hard decision
        for (std::size_t v = 0; v < code.n; ++v) {
            double sum = channel[v];
            for (const double m : incoming[v]) sum += m;
            posterior[v] = sum;
            hard[v] = sum <= 0.0 ? 1 : 0;
        }
        for (std::size_t c = 0; c < code.r; ++c) {
            for (std::size_t t = 0; t < code.check_vars[c].size(); ++t) {
                const std::uint32_t v = code.check_vars[c][t];
                var_to_check[c][t] = clamp(posterior[v] - check_to_var[c][t]);
            }
        }

        out.iterations = iter;
        if (params.early_exit && code.is_codeword(hard)) {
            out.status = DecodeStatus::Success;
            out.estimate = hard;
            out.posterior_llr = posterior;
            return out;
        }
    }

    out.estimate = hard;
    out.posterior_llr = posterior;
    out.status = code.is_codeword(hard) ? DecodeStatus::Success : DecodeStatus::Failure;
    return out;
}

// Exhaustive maximum-likelihood decoding by correlation over all 2^k
// codewords. Failure iff the maximizer differs from the transmitted word.
inline DecodeOutcome ml_awgn_exhaustive(const LinearCode& code, const AwgnFrame& frame,
                                        std::size_t max_dim = 26) {
    if (code.k > max_dim)
        throw budget_error("ml_awgn_exhaustive: dimension " + std::to_string(code.k) +
                           " exceeds cap " + std::to_string(max_dim));
    const BitMatrix gen = code.generator_matrix();
    const std::size_t k = gen.rows();

    std::vector<std::uint8_t> current(code.n, 0), best(code.n, 0);
    double corr = 0.0;
    for (const double y : frame.received) corr += y;  // all-zero word, all +1
    double best_corr = corr;

    const std::uint64_t total = k ? (std::uint64_t{1} << k) : 1;
    for (std::uint64_t i = 1; i < total; ++i) {
        const unsigned flip = static_cast<unsigned>(std::countr_zero(i));
        for (std::size_t j = 0; j < code.n; ++j) {
            if (!gen.get(flip, j)) continue;
            // flipping bit j toggles its BPSK sign
            corr += frame.received[j] * (current[j] ? 2.0 : -2.0);
            current[j] ^= 1;
        }
        if (corr > best_corr) {
            best_corr = corr;
            best = current;
        }
    }
    DecodeOutcome out;
    out.estimate = best;
    out.status = (best == frame.transmitted) ? DecodeStatus::Success
                                             : DecodeStatus::Failure;
    return out;
}

// ---------------------------------------------------------------------------
// Redundant-parity-check decoding: BP run on an extended matrix.
// ---------------------------------------------------------------------------

enum class Channel { Bec, Awgn };

// Checks that `extended` defines the same code as `original` (equal null
// spaces: same rank, and stacking adds no rank).
inline void verify_rpc_extension(const LinearCode& original,
                                 const LinearCode& extended) {
    if (original.n != extended.n)
        throw domain_error("rpc: extended matrix has different length");
    if (extended.rank != original.rank ||
        gf2_rank(BitMatrix::vstack(original.H, extended.H)) != original.rank)
        throw domain_error("rpc: extended matrix changes the row space");
}

inline DecodeOutcome decode_rpc(Channel channel, const LinearCode& extended,
                                const BecFrame& frame, unsigned max_rounds = 0) {
    if (channel != Channel::Bec) throw domain_error("decode_rpc: frame/channel mismatch");
    return bp_peel_bec(extended, frame, max_rounds);
}

inline DecodeOutcome decode_rpc(Channel channel, const LinearCode& extended,
                                const AwgnFrame& frame, const BpParams& params = {}) {
    if (channel != Channel::Awgn) throw domain_error("decode_rpc: frame/channel mismatch");
    return bp_sumproduct_awgn(extended, frame, params);
}

}  // namespace ldpcw
