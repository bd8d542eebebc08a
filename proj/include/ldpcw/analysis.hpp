#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/linear_code.hpp"
#include "ldpcw/polynomial.hpp"
#include "ldpcw/rng.hpp"

namespace ldpcw {

enum class SearchStatus { Exact, CapExceeded };

struct AnalysisBudget {
    double time_limit_s = 60.0;
    std::size_t max_dim = 30;  // largest 2^k sweep attempted
};

struct DistanceResult {
    SearchStatus status = SearchStatus::CapExceeded;
    std::size_t distance = 0;   // 0 with count 0 means "no nonzero codeword"
    std::uint64_t count = 0;    // multiplicity at `distance`
};

namespace detail {

class Deadline {
  public:
    explicit Deadline(double seconds)
        : end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(seconds))) {}
    bool expired() const { return std::chrono::steady_clock::now() > end_; }

  private:
    std::chrono::steady_clock::time_point end_;
};

struct PackedRows {
    std::size_t count = 0;
    std::size_t wpr = 0;
    std::vector<std::uint64_t> words;

    std::span<const std::uint64_t> row(std::size_t i) const {
        return {words.data() + i * wpr, wpr};
    }
};

inline PackedRows pack_rows(const BitMatrix& m, std::size_t row_count) {
    PackedRows out;
    out.count = row_count;
    out.wpr = m.words_per_row();
    out.words.reserve(row_count * out.wpr);
    for (std::size_t i = 0; i < row_count; ++i) {
        const auto r = m.row(i);
        out.words.insert(out.words.end(), r.begin(), r.end());
    }
    return out;
}

// Lexicographic order on bit vectors read from bit 0 upward: the first
// differing position decides, 0 before 1.
inline bool lex_less(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        const std::uint64_t diff = a[w] ^ b[w];
        if (diff) return ((a[w] >> std::countr_zero(diff)) & 1u) == 0;
    }
    return false;
}

inline std::size_t weight_of(std::span<const std::uint64_t> v) {
    std::size_t w = 0;
    for (const std::uint64_t word : v) w += std::popcount(word);
    return w;
}

// Minimum nonzero weight (and multiplicity) over the span of the given
// independent rows, by a Gray-code sweep of all 2^count combinations.
inline DistanceResult min_weight_sweep(const PackedRows& rows,
                                       const AnalysisBudget& budget) {
    if (rows.count == 0) return {SearchStatus::Exact, 0, 0};
    if (rows.count > budget.max_dim) return {SearchStatus::CapExceeded, 0, 0};
    const Deadline deadline(budget.time_limit_s);

    std::vector<std::uint64_t> cur(rows.wpr, 0);
    std::size_t best = static_cast<std::size_t>(-1);
    std::uint64_t count = 0;
    const std::uint64_t total = std::uint64_t{1} << rows.count;
    for (std::uint64_t i = 1; i < total; ++i) {
        const unsigned flip = static_cast<unsigned>(std::countr_zero(i));
        const auto row = rows.row(flip);
        std::size_t w = 0;
        for (std::size_t t = 0; t < rows.wpr; ++t) {
            cur[t] ^= row[t];
            w += std::popcount(cur[t]);
        }
        if (w < best) {
            best = w;
            count = 1;
        } else if (w == best) {
            ++count;
        }
        if ((i & 0x3FFFFF) == 0 && deadline.expired())
            return {SearchStatus::CapExceeded, 0, 0};
    }
    return {SearchStatus::Exact, best, count};
}

}  // namespace detail

// Exact minimum distance and multiplicity by enumerating all 2^k codewords.
inline DistanceResult min_distance(const LinearCode& code,
                                   const AnalysisBudget& budget = {}) {
    const BitMatrix gen = code.generator_matrix();
    return detail::min_weight_sweep(detail::pack_rows(gen, gen.rows()), budget);
}

// Minimum weight of the dual code (row space of H), same sweep over a row
// basis of H.
inline DistanceResult dual_min_distance(const LinearCode& code,
                                        const AnalysisBudget& budget = {}) {
    const RrefResult rr = rank_and_rref(code.H);
    return detail::min_weight_sweep(detail::pack_rows(rr.rref, rr.rank), budget);
}

// Shortest cycle in the Tanner graph (even, >= 4), or nullopt if the graph
// is acyclic. BFS from every vertex.
inline std::optional<unsigned> girth(const LinearCode& code) {
    const std::size_t v_count = code.n + code.r;
    const auto adjacency = [&](std::size_t u) -> std::span<const std::uint32_t> {
        return u < code.n ? std::span<const std::uint32_t>(code.var_checks[u])
                          : std::span<const std::uint32_t>(code.check_vars[u - code.n]);
    };
    const auto to_node = [&](std::size_t u, std::uint32_t nbr) -> std::size_t {
        return u < code.n ? code.n + nbr : nbr;
    };

    unsigned best = 0;
    std::vector<int> dist(v_count);
    std::vector<std::int64_t> parent(v_count);
    std::vector<std::size_t> queue(v_count);
    for (std::size_t root = 0; root < v_count; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[root] = 0;
        parent[root] = -1;
        queue[tail++] = root;
        while (head < tail) {
            const std::size_t u = queue[head++];
            if (best && 2u * static_cast<unsigned>(dist[u] + 1) >= best)
                continue;  // cannot improve
            for (const std::uint32_t nbr : adjacency(u)) {
                const std::size_t w = to_node(u, nbr);
                if (static_cast<std::int64_t>(w) == parent[u]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = static_cast<std::int64_t>(u);
                    queue[tail++] = w;
                } else {
                    const unsigned cycle = static_cast<unsigned>(dist[u] + dist[w] + 1);
                    if (!best || cycle < best) best = cycle;
                }
            }
        }
        if (best == 4) break;
    }
    if (!best) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// Stopping sets. A column set is a stopping set iff the induced submatrix has
// no row of weight exactly one. The DFS walks columns in increasing order,
// tracking per-row selection counts; a branch dies when some row is pinned at
// weight one and no later column can cover it.
// ---------------------------------------------------------------------------

namespace detail {

struct StoppingSearch {
    const LinearCode* code = nullptr;
    std::vector<std::uint16_t> row_count;  // exact selected-column count per row
    std::vector<std::uint32_t> max_col;    // last column covering each row
    std::vector<std::uint32_t> current;
    std::size_t deficit = 0;               // rows currently at count exactly 1
    std::size_t max_col_weight = 1;
    std::uint64_t nodes = 0;
    bool aborted = false;

    explicit StoppingSearch(const LinearCode& c) : code(&c) {
        row_count.assign(c.r, 0);
        max_col.assign(c.r, 0);
        for (std::size_t i = 0; i < c.r; ++i)
            max_col[i] = c.check_vars[i].empty() ? 0 : c.check_vars[i].back();
        for (const auto& checks : c.var_checks)
            max_col_weight = std::max(max_col_weight, checks.size());
    }

    // returns false when the new deficit is unfixable by columns > j
    bool push(std::uint32_t j) {
        bool fixable = true;
        for (const std::uint32_t row : code->var_checks[j]) {
            const std::uint16_t count = ++row_count[row];
            if (count == 1) {
                ++deficit;
                if (max_col[row] <= j) fixable = false;
            } else if (count == 2) {
                --deficit;
            }
        }
        current.push_back(j);
        return fixable;
    }

    void pop() {
        const std::uint32_t j = current.back();
        current.pop_back();
        for (const std::uint32_t row : code->var_checks[j]) {
            const std::uint16_t count = --row_count[row];
            if (count == 0)
                --deficit;
            else if (count == 1)
                ++deficit;
        }
    }
};

}  // namespace detail

struct StoppingDistanceResult {
    SearchStatus status = SearchStatus::CapExceeded;
    std::size_t size = 0;                 // 0 means "no nonempty stopping set"
    std::vector<std::uint32_t> witness;   // lexicographically least of that size
};

inline StoppingDistanceResult stopping_distance(const LinearCode& code,
                                                const AnalysisBudget& budget = {}) {
    const detail::Deadline deadline(budget.time_limit_s);
    detail::StoppingSearch search(code);

    std::vector<std::uint32_t> witness;
    // depth-first search for a valid set of exactly `target` columns
    const auto dfs = [&](auto&& self, std::uint32_t next, std::size_t target) -> bool {
        if (search.current.size() == target) {
            if (search.deficit == 0) {
                witness = search.current;
                return true;
            }
            return false;
        }
        const std::size_t slots = target - search.current.size();
        if (search.deficit > slots * search.max_col_weight) return false;
        if ((++search.nodes & 0xFFFFF) == 0 && deadline.expired()) {
            search.aborted = true;
            return false;
        }
        for (std::uint32_t j = next; j < code.n; ++j) {
            const bool fixable = search.push(j);
            if (fixable && self(self, j + 1, target)) return true;
            search.pop();
            if (search.aborted) return false;
        }
        return false;
    };

    for (std::size_t target = 1; target <= code.n; ++target) {
        if (dfs(dfs, 0, target)) return {SearchStatus::Exact, target, witness};
        if (search.aborted) return {SearchStatus::CapExceeded, 0, {}};
    }
    return {SearchStatus::Exact, 0, {}};
}

struct StoppingCensus {
    bool complete = false;
    // by_size[s] lists every stopping set of size s, each sorted ascending
    std::vector<std::vector<std::vector<std::uint32_t>>> by_size;

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& bucket : by_size) t += bucket.size();
        return t;
    }
};

// Every nonempty stopping set of size <= max_size, in lexicographic order
// within each size bucket.
inline StoppingCensus enumerate_stopping_sets(const LinearCode& code,
                                              std::size_t max_size,
                                              const AnalysisBudget& budget = {}) {
    const detail::Deadline deadline(budget.time_limit_s);
    detail::StoppingSearch search(code);
    StoppingCensus census;
    census.by_size.resize(max_size + 1);

    const auto dfs = [&](auto&& self, std::uint32_t next) -> void {
        if ((++search.nodes & 0xFFFFF) == 0 && deadline.expired()) {
            search.aborted = true;
            return;
        }
        if (search.current.size() == max_size) return;
        for (std::uint32_t j = next; j < code.n; ++j) {
            const bool fixable = search.push(j);
            if (fixable) {
                if (search.deficit == 0)
                    census.by_size[search.current.size()].push_back(search.current);
                self(self, j + 1);
            }
            search.pop();
            if (search.aborted) return;
        }
    };
    dfs(dfs, 0);
    census.complete = !search.aborted;
    return census;
}

// An erasure pattern is ML-decodable iff the selected columns of H are
// linearly independent.
inline bool is_ml_decodable(const LinearCode& code,
                            std::span<const std::uint32_t> cols) {
    if (cols.empty()) return true;
    if (cols.size() > code.r) return false;
    const std::size_t words = (code.r + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::uint64_t> vec(words);
    for (const std::uint32_t c : cols) {
        std::fill(vec.begin(), vec.end(), 0);
        for (const std::uint32_t row : code.var_checks[c])
            vec[row / 64] |= std::uint64_t{1} << (row % 64);
        for (const auto& b : basis) {
            // reduce by the basis vector's leading bit
            std::size_t lead_word = 0;
            while (b[lead_word] == 0) ++lead_word;
            const std::uint64_t lead_mask =
                std::uint64_t{1} << std::countr_zero(b[lead_word]);
            if (vec[lead_word] & lead_mask)
                for (std::size_t w = 0; w < words; ++w) vec[w] ^= b[w];
        }
        bool zero = true;
        for (const std::uint64_t w : vec)
            if (w) {
                zero = false;
                break;
            }
        if (zero) return false;
        basis.push_back(vec);
    }
    return true;
}

struct SampledCount {
    double estimate = 0.0;        // C(n,i) * hit fraction
    double ci95_halfwidth = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
};

// Unbiased sampling estimate of u_i, the number of ML-decodable stopping
// sets of size i, over uniformly drawn i-subsets of columns.
inline SampledCount sample_u(const LinearCode& code, std::size_t set_size,
                             std::uint64_t samples, std::uint64_t seed) {
    if (set_size == 0 || set_size > code.r || set_size > code.n)
        throw domain_error("sample_u: set size must be in 1..min(r, n)");
    if (samples == 0) throw domain_error("sample_u: need at least one sample");
    Rng rng(seed);
    std::vector<std::uint32_t> pool(code.n);
    std::vector<std::uint32_t> pick(set_size);
    std::vector<std::uint8_t> row_count(code.r);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t t = 0; t < set_size; ++t) {
            const std::size_t j =
                t + static_cast<std::size_t>(rng.uniform_below(code.n - t));
            std::swap(pool[t], pool[j]);
            pick[t] = pool[t];
        }
        std::fill(row_count.begin(), row_count.end(), 0);
        bool stopping = true;
        for (const std::uint32_t c : pick)
            for (const std::uint32_t row : code.var_checks[c]) ++row_count[row];
        for (std::size_t i = 0; i < code.r && stopping; ++i)
            if (row_count[i] == 1) stopping = false;
        if (stopping && is_ml_decodable(code, pick)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double total = binomial(code.n, set_size).convert_to<double>();
    const double half =
        1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) * total;
    return {p * total, half, samples, hits};
}

// ---------------------------------------------------------------------------
// Dual codeword enumeration and redundant-row extension.
// ---------------------------------------------------------------------------

// All dual codewords of weight <= weight_cap, sorted by (weight, lex order),
// as packed row words. want_count steers how much of the boundary weight
// class is retained: enumeration stops growing the cutoff weight once at
// least want_count words are collected.
inline std::vector<std::vector<std::uint64_t>> dual_codewords_by_weight(
    const LinearCode& code, std::size_t weight_cap, std::size_t want_count,
    const AnalysisBudget& budget = {}) {
    const RrefResult rr = rank_and_rref(code.H);
    if (rr.rank == 0) return {};
    if (rr.rank > budget.max_dim)
        throw budget_error("dual enumeration needs rank <= " +
                           std::to_string(budget.max_dim));
    if (weight_cap == 0 || weight_cap > code.n) weight_cap = code.n;
    const detail::PackedRows rows = detail::pack_rows(rr.rref, rr.rank);
    const std::uint64_t total = std::uint64_t{1} << rr.rank;

    // pass 1: weight histogram
    std::vector<std::uint64_t> hist(weight_cap + 1, 0);
    std::vector<std::uint64_t> cur(rows.wpr, 0);
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto row = rows.row(static_cast<unsigned>(std::countr_zero(i)));
        std::size_t w = 0;
        for (std::size_t t = 0; t < rows.wpr; ++t) {
            cur[t] ^= row[t];
            w += std::popcount(cur[t]);
        }
        if (w <= weight_cap) ++hist[w];
    }
    std::size_t cutoff = 0;
    std::uint64_t cumulative = 0;
    for (std::size_t w = 1; w <= weight_cap; ++w) {
        cumulative += hist[w];
        cutoff = w;
        if (cumulative >= want_count) break;
    }
    if (cumulative == 0) return {};

    // pass 2: collect words up to the cutoff weight
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(static_cast<std::size_t>(cumulative));
    std::fill(cur.begin(), cur.end(), 0);
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto row = rows.row(static_cast<unsigned>(std::countr_zero(i)));
        std::size_t w = 0;
        for (std::size_t t = 0; t < rows.wpr; ++t) {
            cur[t] ^= row[t];
            w += std::popcount(cur[t]);
        }
        if (w <= cutoff) out.push_back(cur);
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b) {
                  const std::size_t wa = detail::weight_of(a);
                  const std::size_t wb = detail::weight_of(b);
                  if (wa != wb) return wa < wb;
                  return detail::lex_less(a, b);
              });
    return out;
}

// H extended by `extra_rows` dual codewords in nondecreasing weight order
// (ties lexicographic), skipping duplicates of existing rows. The row space
// is unchanged by construction.
inline LinearCode extend_rpc(const LinearCode& code, std::size_t extra_rows,
                             std::size_t weight_budget = 0,
                             const AnalysisBudget& budget = {}) {
    if (extra_rows == 0) return code;
    const auto duals = dual_codewords_by_weight(code, weight_budget,
                                                extra_rows + code.r, budget);

    std::vector<std::span<const std::uint64_t>> existing;
    existing.reserve(code.r);
    for (std::size_t i = 0; i < code.r; ++i) existing.push_back(code.H.row(i));

    BitMatrix extended = code.H;
    std::size_t appended = 0;
    for (const auto& word : duals) {
        if (appended == extra_rows) break;
        bool duplicate = false;
        for (const auto& row : existing) {
            if (std::equal(row.begin(), row.end(), word.begin())) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        extended.append_row(word);
        ++appended;
    }
    if (appended < extra_rows)
        throw budget_error(
            "extend_rpc: only " + std::to_string(appended) + " of " +
            std::to_string(extra_rows) +
            " dual codewords available within the weight budget");
    return LinearCode::from_parity_check(std::move(extended));
}

// ---------------------------------------------------------------------------
// Stopping redundancy hierarchy.
// ---------------------------------------------------------------------------

enum class RhoMode { ExactGreedy, Estimated };

struct RhoResult {
    std::size_t rows = 0;  // total parity-check rows (original + appended)
    RhoMode mode = RhoMode::ExactGreedy;
};

struct RhoOptions {
    RhoMode mode = RhoMode::ExactGreedy;
    std::size_t candidate_weight_cap = 0;  // 0 => no cap
    std::size_t max_candidates = 200000;
    std::uint64_t subset_samples = 20000;  // estimated: i-subsets per size
    std::uint64_t row_samples = 2000;      // estimated: dual rows per probed set
    std::uint64_t set_probes = 32;         // estimated: sets probed per size
    std::uint64_t seed = 1;
    AnalysisBudget budget;
};

namespace detail {

struct MaskedSet {
    std::vector<std::uint64_t> mask;
    std::size_t size = 0;
};

inline std::size_t overlap_weight(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w += std::popcount(a[i] & b[i]);
    return w;
}

}  // namespace detail

// Upper bounds on rho_l for the requested levels. Exact-greedy mode walks the
// full census and appends, at each step, the dual codeword that kills the
// most surviving ML-decodable stopping sets (a row kills a set by restricting
// to weight exactly one on it); the returned row count is an upper bound on
// rho_l. Estimated mode replaces the census with sampled u_i and a
// random-row coupon bound and is labeled by its mode.
inline std::map<std::size_t, RhoResult> rho_hierarchy(const LinearCode& code,
                                                      std::vector<std::size_t> levels,
                                                      const RhoOptions& opts = {}) {
    std::map<std::size_t, RhoResult> out;
    if (levels.empty()) return out;
    std::sort(levels.begin(), levels.end());
    const std::size_t level_max = levels.back();
    if (level_max > code.n) throw domain_error("rho_hierarchy: level exceeds n");
    const std::size_t wpr = code.H.words_per_row();

    if (opts.mode == RhoMode::ExactGreedy) {
        StoppingCensus census =
            enumerate_stopping_sets(code, level_max, opts.budget);
        if (!census.complete)
            throw budget_error("rho_hierarchy: stopping-set census hit its budget");
        auto candidates = dual_codewords_by_weight(
            code, opts.candidate_weight_cap, opts.max_candidates, opts.budget);

        std::vector<detail::MaskedSet> active;
        std::vector<std::vector<std::uint64_t>> appended;
        const auto to_mask = [&](const std::vector<std::uint32_t>& cols) {
            detail::MaskedSet m;
            m.mask.assign(wpr, 0);
            m.size = cols.size();
            for (const std::uint32_t c : cols)
                m.mask[c / 64] |= std::uint64_t{1} << (c % 64);
            return m;
        };

        std::size_t admitted_up_to = 0;
        std::size_t appended_count = 0;
        for (const std::size_t level : levels) {
            for (std::size_t s = admitted_up_to + 1; s <= level; ++s) {
                for (const auto& cols : census.by_size[s]) {
                    if (!is_ml_decodable(code, cols)) continue;
                    detail::MaskedSet m = to_mask(cols);
                    bool killed = false;
                    for (const auto& row : appended) {
                        if (detail::overlap_weight(row, m.mask) == 1) {
                            killed = true;
                            break;
                        }
                    }
                    if (!killed) active.push_back(std::move(m));
                }
            }
            admitted_up_to = level;

            while (!active.empty()) {
                std::size_t best_idx = candidates.size();
                std::size_t best_kills = 0;
                for (std::size_t c = 0; c < candidates.size(); ++c) {
                    std::size_t kills = 0;
                    for (const auto& set : active)
                        if (detail::overlap_weight(candidates[c], set.mask) == 1)
                            ++kills;
                    if (kills > best_kills) {
                        best_kills = kills;
                        best_idx = c;
                    }
                }
                if (best_kills == 0)
                    throw budget_error(
                        "rho_hierarchy: no candidate row kills the survivors; raise "
                        "max_candidates or the weight cap");
                const auto chosen = candidates[best_idx];
                active.erase(std::remove_if(active.begin(), active.end(),
                                            [&](const detail::MaskedSet& set) {
                                                return detail::overlap_weight(
                                                           chosen, set.mask) == 1;
                                            }),
                             active.end());
                appended.push_back(chosen);
                ++appended_count;
            }
            out[level] = {code.r + appended_count, RhoMode::ExactGreedy};
        }
        return out;
    }

    // Estimated mode: coupon-collector style bound from sampled quantities,
    // reported as APPROXIMATE by its mode tag.
    const RrefResult rr = rank_and_rref(code.H);
    if (rr.rank == 0 || rr.rank > opts.budget.max_dim)
        throw budget_error("rho_hierarchy: estimated mode needs 1 <= rank <= max_dim");
    const detail::PackedRows basis = detail::pack_rows(rr.rref, rr.rank);

    struct SizeStats {
        double u_hat = 0.0;
        double kill_p = 0.0;
    };
    std::vector<SizeStats> stats(level_max + 1);
    Rng rng(opts.seed);
    std::vector<std::uint32_t> pool(code.n);
    std::vector<std::uint8_t> row_count(code.r);
    std::vector<std::uint64_t> random_row(wpr);
    for (std::size_t i = 1; i <= level_max && i <= code.r && i <= code.n; ++i) {
        const SampledCount u =
            sample_u(code, i, opts.subset_samples, derive_seed(opts.seed, i));
        stats[i].u_hat = u.estimate;
        if (u.estimate <= 0.0) continue;

        // probe kill probability on sampled ML-decodable stopping sets
        double worst = 1.0;
        std::uint64_t probed = 0;
        for (std::uint64_t attempt = 0;
             attempt < opts.subset_samples && probed < opts.set_probes; ++attempt) {
            std::iota(pool.begin(), pool.end(), 0);
            std::vector<std::uint32_t> pick(i);
            for (std::size_t t = 0; t < i; ++t) {
                const std::size_t j =
                    t + static_cast<std::size_t>(rng.uniform_below(code.n - t));
                std::swap(pool[t], pool[j]);
                pick[t] = pool[t];
            }
            std::fill(row_count.begin(), row_count.end(), 0);
            for (const std::uint32_t c : pick)
                for (const std::uint32_t row : code.var_checks[c]) ++row_count[row];
            bool stopping = true;
            for (std::size_t t = 0; t < code.r && stopping; ++t)
                if (row_count[t] == 1) stopping = false;
            if (!stopping || !is_ml_decodable(code, pick)) continue;
            ++probed;

            std::vector<std::uint64_t> set_mask(wpr, 0);
            for (const std::uint32_t c : pick)
                set_mask[c / 64] |= std::uint64_t{1} << (c % 64);
            std::uint64_t kills = 0;
            for (std::uint64_t t = 0; t < opts.row_samples; ++t) {
                std::fill(random_row.begin(), random_row.end(), 0);
                bool nonzero = false;
                for (std::size_t b = 0; b < basis.count; ++b) {
                    if (rng.next() & 1) {
                        const auto row = basis.row(b);
                        for (std::size_t w = 0; w < wpr; ++w) random_row[w] ^= row[w];
                        nonzero = true;
                    }
                }
                if (!nonzero) continue;
                if (detail::overlap_weight(random_row, set_mask) == 1) ++kills;
            }
            const double q =
                static_cast<double>(kills) / static_cast<double>(opts.row_samples);
            const double lower = std::max(
                q - 2.0 * std::sqrt(q * (1.0 - q) /
                                    static_cast<double>(opts.row_samples)),
                q / 2.0);
            worst = std::min(worst, lower);
        }
        if (probed == 0) {
            // u_hat > 0 but no set materialized; fall back to the crudest bound
            worst = std::ldexp(1.0, -static_cast<int>(rr.rank));
        }
        stats[i].kill_p = std::max(worst, std::ldexp(1.0, -static_cast<int>(rr.rank)));
    }

    for (const std::size_t level : levels) {
        // smallest t with sum_i u_i (1 - p_i)^t < 1
        const auto survivors = [&](double t) {
            double acc = 0.0;
            for (std::size_t i = 1; i <= level && i <= code.r; ++i) {
                if (stats[i].u_hat <= 0.0) continue;
                acc += std::exp(std::log(stats[i].u_hat) +
                                t * std::log1p(-stats[i].kill_p));
                if (acc >= 1.0) return acc;
            }
            return acc;
        };
        std::uint64_t lo = 0, hi = 1;
        while (survivors(static_cast<double>(hi)) >= 1.0) {
            hi *= 2;
            if (hi > (std::uint64_t{1} << 50))
                throw budget_error("rho_hierarchy: estimate diverged");
        }
        while (lo + 1 < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (survivors(static_cast<double>(mid)) < 1.0)
                hi = mid;
            else
                lo = mid;
        }
        const std::uint64_t extra = survivors(0.0) < 1.0 ? 0 : hi;
        out[level] = {code.r + static_cast<std::size_t>(extra), RhoMode::Estimated};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Aggregate report.
// ---------------------------------------------------------------------------

struct AnalysisReport {
    std::size_t n = 0, k = 0, r = 0, rank = 0;
    std::pair<std::size_t, std::size_t> col_weights{0, 0};
    std::pair<std::size_t, std::size_t> row_weights{0, 0};
    std::optional<unsigned> girth_length;
    DistanceResult dmin;
    DistanceResult ddual;
    StoppingDistanceResult dstop;
    std::map<std::size_t, RhoResult> rho;  // empty unless requested
};

inline AnalysisReport analyze(const LinearCode& code,
                              const AnalysisBudget& budget = {}) {
    AnalysisReport rep;
    rep.n = code.n;
    rep.k = code.k;
    rep.r = code.r;
    rep.rank = code.rank;
    rep.col_weights = code.col_weight_range();
    rep.row_weights = code.row_weight_range();
    rep.girth_length = girth(code);
    rep.dmin = min_distance(code, budget);
    rep.ddual = dual_min_distance(code, budget);
    rep.dstop = stopping_distance(code, budget);
    return rep;
}

namespace detail {

inline std::string weight_profile(std::pair<std::size_t, std::size_t> range) {
    if (range.first == range.second) return std::to_string(range.first);
    return std::to_string(range.first) + ".." + std::to_string(range.second);
}

inline std::string distance_value(const DistanceResult& d) {
    if (d.status == SearchStatus::CapExceeded) return "CAP_EXCEEDED";
    if (d.count == 0) return "none";
    return std::to_string(d.distance);
}

}  // namespace detail

// Flat key-value block, one pair per line.
inline std::string report_text(const AnalysisReport& rep) {
    std::ostringstream out;
    out << "n=" << rep.n << '\n'
        << "k=" << rep.k << '\n'
        << "r=" << rep.r << '\n'
        << "rank=" << rep.rank << '\n'
        << "rate=" << static_cast<double>(rep.k) / static_cast<double>(rep.n) << '\n'
        << "d_min=" << detail::distance_value(rep.dmin) << '\n'
        << "A=" << (rep.dmin.status == SearchStatus::Exact ? std::to_string(rep.dmin.count)
                                                           : "CAP_EXCEEDED")
        << '\n'
        << "d_stop="
        << (rep.dstop.status == SearchStatus::Exact
                ? (rep.dstop.size ? std::to_string(rep.dstop.size) : "none")
                : "CAP_EXCEEDED")
        << '\n'
        << "d_dual=" << detail::distance_value(rep.ddual) << '\n'
        << "girth=" << (rep.girth_length ? std::to_string(*rep.girth_length) : "none")
        << '\n'
        << "J=" << detail::weight_profile(rep.col_weights) << '\n'
        << "K=" << detail::weight_profile(rep.row_weights) << '\n';
    for (const auto& [level, rho] : rep.rho)
        out << "rho_" << level << '=' << rho.rows
            << (rho.mode == RhoMode::Estimated ? " (APPROXIMATE)" : " (greedy upper bound)")
            << '\n';
    return out.str();
}

// One CSV row in Table-style column order; header generated alongside so the
// rho columns track the requested levels.
inline std::string report_csv_header(const AnalysisReport& rep) {
    std::string h = "code,d_min,A_dmin,d_stop,d_dual,girth,J,K";
    for (const auto& [level, rho] : rep.rho) h += ",rho_" + std::to_string(level);
    return h;
}

inline std::string report_csv_row(const std::string& name, const AnalysisReport& rep) {
    std::ostringstream out;
    const auto cell = [](const std::string& v) { return v == "CAP_EXCEEDED" ? "" : v; };
    out << name << ',' << cell(detail::distance_value(rep.dmin)) << ','
        << (rep.dmin.status == SearchStatus::Exact ? std::to_string(rep.dmin.count) : "")
        << ','
        << (rep.dstop.status == SearchStatus::Exact ? std::to_string(rep.dstop.size) : "")
        << ',' << cell(detail::distance_value(rep.ddual)) << ','
        << (rep.girth_length ? std::to_string(*rep.girth_length) : "none") << ','
        << detail::weight_profile(rep.col_weights) << ','
        << detail::weight_profile(rep.row_weights);
    for (const auto& [level, rho] : rep.rho) out << ',' << rho.rows;
    return out.str();
}

}  // namespace ldpcw
