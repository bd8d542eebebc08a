// Command-line front end: build codes, analyze their structure, extend
// parity-check matrices with redundant rows, compute ensemble spectra and
// union bounds, and run Monte Carlo FER sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpcw/analysis.hpp"
#include "ldpcw/builders.hpp"
#include "ldpcw/decoders.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/io.hpp"
#include "ldpcw/qc.hpp"
#include "ldpcw/search.hpp"
#include "ldpcw/simulate.hpp"
#include "ldpcw/spectra.hpp"

namespace {

using namespace ldpcw;

// "a,b,c" or "start:step:stop" (inclusive within rounding slack)
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
            step <= 0)
            throw domain_error("grid must be 'a,b,c' or 'start:step:stop'");
        for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw domain_error("bad grid value '" + tok + "'");
        }
    }
    if (out.empty()) throw domain_error("empty grid");
    return out;
}

std::vector<std::size_t> parse_levels(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoul(tok));
        } catch (const std::exception&) {
            throw domain_error("bad level '" + tok + "'");
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw parse_error("write failed: " + path);
}

// spectrum CSV reader for the `bound` subcommand: rows (w, S_w, exact)
std::pair<std::size_t, std::vector<BigRat>> read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty spectrum CSV");
    std::vector<std::pair<std::size_t, BigRat>> rows;
    std::size_t max_w = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string w_tok, s_tok;
        if (!std::getline(ss, w_tok, ',') || !std::getline(ss, s_tok, ','))
            throw parse_error("bad spectrum CSV row: " + line);
        std::size_t w = 0;
        try {
            w = std::stoul(w_tok);
        } catch (const std::exception&) {
            throw parse_error("bad weight in spectrum CSV: " + w_tok);
        }
        // parse a (possibly signed, possibly scientific) decimal exactly
        BigRat v;
        try {
            std::string mantissa = s_tok;
            long exp10 = 0;
            if (const auto epos = mantissa.find_first_of("eE");
                epos != std::string::npos) {
                exp10 = std::stol(mantissa.substr(epos + 1));
                mantissa = mantissa.substr(0, epos);
            }
            std::string digits;
            long frac_digits = 0;
            bool neg = false, seen_dot = false;
            for (const char ch : mantissa) {
                if (ch == '-')
                    neg = true;
                else if (ch == '+')
                    continue;
                else if (ch == '.')
                    seen_dot = true;
                else if (ch >= '0' && ch <= '9') {
                    digits += ch;
                    if (seen_dot) ++frac_digits;
                } else
                    throw parse_error("bad coefficient: " + s_tok);
            }
            if (digits.empty()) throw parse_error("bad coefficient: " + s_tok);
            BigInt num(digits);
            if (neg) num = -num;
            BigInt den = 1;
            long shift = frac_digits - exp10;
            for (long i = 0; i < shift; ++i) den *= 10;
            for (long i = 0; i < -shift; ++i) num *= 10;
            v = BigRat(num, den);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("bad coefficient in spectrum CSV: " + s_tok);
        }
        rows.emplace_back(w, v);
        max_w = std::max(max_w, w);
    }
    std::vector<BigRat> s(max_w + 1, BigRat(0));
    for (const auto& [w, v] : rows) s[w] = v;
    return {max_w, std::move(s)};
}

int run(int argc, char** argv) {
    CLI::App app{"workbench for short LDPC codes: construction, structure "
                 "analysis, spectra, bounds and FER simulation"};
    app.require_subcommand(1);

    // --- gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "construct a parity-check matrix");
    std::string family, out_path, qc_in, qc_form = "tailbiting", base_family = "gallager";
    std::string labels_out, poly_hex;
    unsigned j_w = 3, k_w = 6, gf_m = 1;
    std::size_t n_len = 48, search_candidates = 0;
    std::uint64_t seed = 1;
    gen->add_option("--family", family, "gallager|ru|qc|nonbinary")->required();
    gen->add_option("--j", j_w, "column weight J");
    gen->add_option("--k", k_w, "row weight K");
    gen->add_option("--n", n_len, "block length");
    gen->add_option("--seed", seed, "PRNG seed");
    gen->add_option("--out", out_path, "output alist path")->required();
    gen->add_option("--qc-in", qc_in, "QC exponent file (family=qc)");
    gen->add_option("--qc-form", qc_form, "tailbiting|circulant (family=qc)");
    gen->add_option("--m", gf_m, "field extension degree (family=nonbinary)");
    gen->add_option("--poly", poly_hex, "primitive polynomial, hex (family=nonbinary)");
    gen->add_option("--base", base_family, "gallager|ru base (family=nonbinary)");
    gen->add_option("--labels-out", labels_out, "write the nonbinary label file here");
    gen->add_option("--search", search_candidates,
                    "rank this many seeded candidates by (d_min desc, A asc)");

    // --- analyze ----------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand("analyze", "structural parameters of a code");
    std::string in_path, csv_name, rho_levels_text, rho_mode_text = "exact";
    bool csv_flag = false;
    double time_budget = 60.0;
    std::size_t max_dim = 30, rho_candidates = 20000;
    analyze_cmd->add_option("--in", in_path, "alist input")->required();
    analyze_cmd->add_flag("--csv", csv_flag, "emit one CSV row instead of the text block");
    analyze_cmd->add_option("--name", csv_name, "code label for the CSV row");
    analyze_cmd->add_option("--rho", rho_levels_text,
                            "comma-separated levels for the stopping-redundancy hierarchy");
    analyze_cmd->add_option("--rho-mode", rho_mode_text, "exact|estimate");
    analyze_cmd->add_option("--rho-candidates", rho_candidates,
                            "candidate dual rows for greedy mode");
    analyze_cmd->add_option("--time-budget", time_budget, "seconds per search");
    analyze_cmd->add_option("--max-dim", max_dim, "largest 2^k enumeration");

    // --- extend -----------------------------------------------------------
    auto* extend_cmd = app.add_subcommand("extend", "append redundant dual rows");
    std::string extend_in, extend_out;
    std::size_t extend_rows = 0, weight_budget = 0;
    extend_cmd->add_option("--in", extend_in, "alist input")->required();
    extend_cmd->add_option("--rows", extend_rows, "number of dual codewords to append")
        ->required();
    extend_cmd->add_option("--weight-budget", weight_budget,
                           "only draw dual codewords up to this weight (0 = all)");
    extend_cmd->add_option("--out", extend_out, "output alist path")->required();

    // --- spectrum ---------------------------------------------------------
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "exact ensemble-average spectrum");
    unsigned sp_j = 3, sp_k = 6, sp_q = 2;
    std::size_t sp_n = 48;
    std::string sp_kind = "weight", sp_out;
    spectrum_cmd->add_option("--j", sp_j, "column weight J")->required();
    spectrum_cmd->add_option("--k", sp_k, "row weight K")->required();
    spectrum_cmd->add_option("--q", sp_q, "field size (power of two)");
    spectrum_cmd->add_option("--n", sp_n, "symbols per strip")->required();
    spectrum_cmd->add_option("--kind", sp_kind, "weight|stopping");
    spectrum_cmd->add_option("--out", sp_out, "output CSV path")->required();

    // --- bound ------------------------------------------------------------
    auto* bound_cmd = app.add_subcommand("bound", "union-type BEC bound from spectra");
    std::string weight_csv, stopping_csv, bound_out, eps_text;
    std::size_t d_override = 0;
    bound_cmd->add_option("--weight-csv", weight_csv, "spectrum CSV for the ML bound");
    bound_cmd->add_option("--stopping-csv", stopping_csv, "spectrum CSV for the BP bound");
    bound_cmd->add_option("--eps", eps_text, "erasure grid 'a,b,c' or 'a:step:b'")
        ->required();
    bound_cmd->add_option("--d", d_override, "override the first summed weight");
    bound_cmd->add_option("--out", bound_out, "output CSV path")->required();

    // --- simulate ----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo FER sweep");
    std::string sim_in, sim_channel = "bec", sim_decoder = "bp", sim_out;
    std::string sim_eps, sim_ebno;
    SweepSpec spec;
    unsigned sim_rpc_rows = 0;
    sim_cmd->add_option("--in", sim_in, "alist input")->required();
    sim_cmd->add_option("--channel", sim_channel, "bec|awgn");
    sim_cmd->add_option("--decoder", sim_decoder, "bp|ml|rpc");
    sim_cmd->add_option("--rpc-rows", sim_rpc_rows, "redundant rows for decoder=rpc");
    sim_cmd->add_option("--eps", sim_eps, "erasure grid (channel=bec)");
    sim_cmd->add_option("--ebno-db", sim_ebno, "Eb/N0 grid in dB (channel=awgn)");
    sim_cmd->add_option("--max-frames", spec.max_frames, "frame cap per point");
    sim_cmd->add_option("--target-errors", spec.target_frame_errors,
                        "stop a point after this many frame errors");
    sim_cmd->add_option("--seed", spec.base_seed, "base seed");
    sim_cmd->add_option("--max-iter", spec.bp.max_iter, "sum-product iteration cap");
    sim_cmd->add_option("--llr-clip", spec.bp.llr_clip, "LLR clipping magnitude");
    sim_cmd->add_flag("--random-codewords", spec.random_codewords,
                      "transmit random codewords instead of the all-zero word");
    bool plot_data = false;
    sim_cmd->add_flag("--plot-data", plot_data,
                      "emit bare 'param fer' pairs instead of the CSV schema");
    sim_cmd->add_option("--out", sim_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "DOMAIN/ " << e.what() << '\n';
        return 2;
    }

    if (gen->parsed()) {
        LinearCode code;
        std::ostringstream meta;
        meta << "meta: family=" << family << " seed=" << seed
             << " rng=" << rng_algorithm_id;
        if (family == "gallager" || family == "ru") {
            if (search_candidates > 0) {
                const SearchOutcome best = search_best_code(
                    family == "gallager" ? RandomFamily::Gallager : RandomFamily::Ru,
                    j_w, k_w, n_len, search_candidates, seed);
                code = best.code;
                meta << " candidates=" << best.candidates << " winner_seed=" << best.seed
                     << " d_min=" << best.distance.distance << " A=" << best.distance.count;
            } else if (family == "gallager") {
                code = build_gallager(j_w, k_w, n_len, seed);
            } else {
                const RuResult ru = build_ru(j_w, k_w, n_len, seed);
                code = ru.code;
                meta << " regular=" << (ru.regular ? "true" : "false");
            }
            meta << " j=" << j_w << " k=" << k_w << " n=" << n_len;
        } else if (family == "qc") {
            if (qc_in.empty()) throw domain_error("gen --family qc needs --qc-in");
            const QcPolynomialMatrix q = read_qc_file(qc_in);
            if (qc_form == "tailbiting")
                code = qc_expand_tailbiting(q);
            else if (qc_form == "circulant")
                code = qc_expand_circulant(q);
            else
                throw domain_error("--qc-form must be tailbiting or circulant");
            meta << " b=" << q.b << " c=" << q.c << " M=" << q.lifting
                 << " form=" << qc_form;
        } else if (family == "nonbinary") {
            LinearCode base_code;
            if (base_family == "gallager")
                base_code = build_gallager(j_w, k_w, n_len, derive_seed(seed, 0));
            else if (base_family == "ru")
                base_code = build_ru(j_w, k_w, n_len, derive_seed(seed, 0)).code;
            else
                throw domain_error("--base must be gallager or ru");
            const GfField field =
                poly_hex.empty()
                    ? GfField(gf_m)
                    : GfField(gf_m, static_cast<std::uint32_t>(
                                        std::stoul(poly_hex, nullptr, 16)));
            const NonbinaryLabeledMatrix labeled =
                random_labeling(base_code.H, field, derive_seed(seed, 1));
            if (!labels_out.empty()) write_labeled_file(labels_out, labeled);
            code = binary_image(labeled);
            meta << " m=" << gf_m << " q=" << field.q() << " base=" << base_family
                 << " j=" << j_w << " k=" << k_w << " n=" << n_len;
        } else {
            throw domain_error("unknown family '" + family + "'");
        }
        write_alist_file(out_path, code.H);
        meta << " n_bits=" << code.n << " rows=" << code.r << " rank=" << code.rank;
        std::cout << meta.str() << '\n';
        return 0;
    }

    if (analyze_cmd->parsed()) {
        const LinearCode code = LinearCode::from_parity_check(read_alist_file(in_path));
        AnalysisBudget budget;
        budget.time_limit_s = time_budget;
        budget.max_dim = max_dim;
        AnalysisReport rep = analyze(code, budget);
        if (!rho_levels_text.empty()) {
            RhoOptions opts;
            opts.budget = budget;
            opts.max_candidates = rho_candidates;
            opts.seed = seed;
            if (rho_mode_text == "estimate")
                opts.mode = RhoMode::Estimated;
            else if (rho_mode_text != "exact")
                throw domain_error("--rho-mode must be exact or estimate");
            rep.rho = rho_hierarchy(code, parse_levels(rho_levels_text), opts);
        }
        if (csv_flag) {
            std::cout << report_csv_header(rep) << '\n'
                      << report_csv_row(csv_name.empty() ? in_path : csv_name, rep)
                      << '\n';
        } else {
            std::cout << report_text(rep);
        }
        return 0;
    }

    if (extend_cmd->parsed()) {
        const LinearCode code =
            LinearCode::from_parity_check(read_alist_file(extend_in));
        const LinearCode extended = extend_rpc(code, extend_rows, weight_budget);
        write_alist_file(extend_out, extended.H);
        std::cout << "meta: appended=" << (extended.r - code.r)
                  << " rows=" << extended.r << " rank=" << extended.rank << '\n';
        return 0;
    }

    if (spectrum_cmd->parsed()) {
        SpectrumKind kind;
        if (sp_kind == "weight")
            kind = SpectrumKind::Weight;
        else if (sp_kind == "stopping")
            kind = SpectrumKind::Stopping;
        else
            throw domain_error("--kind must be weight or stopping");
        const SpectrumTable table = ensemble_avg_spectrum(sp_j, sp_k, sp_q, sp_n, kind);
        std::ostringstream out;
        spectrum_to_csv(out, table);
        write_text_file(sp_out, out.str());
        return 0;
    }

    if (bound_cmd->parsed()) {
        if (weight_csv.empty() && stopping_csv.empty())
            throw domain_error("bound needs --weight-csv and/or --stopping-csv");
        const std::vector<double> grid = parse_grid(eps_text);
        std::vector<BoundPoint> ml, bp;
        if (!weight_csv.empty()) {
            const auto [n_bits, s] = read_spectrum_csv(weight_csv);
            ml = union_bound_bec(n_bits, s, grid, d_override);
        }
        if (!stopping_csv.empty()) {
            const auto [n_bits, s] = read_spectrum_csv(stopping_csv);
            bp = union_bound_bec(n_bits, s, grid, d_override);
        }
        std::ostringstream out;
        bounds_to_csv(out, ml, bp);
        write_text_file(bound_out, out.str());
        return 0;
    }

    if (sim_cmd->parsed()) {
        const LinearCode code = LinearCode::from_parity_check(read_alist_file(sim_in));
        if (sim_channel == "bec") {
            spec.channel = Channel::Bec;
            if (sim_eps.empty()) throw domain_error("channel=bec needs --eps");
            spec.grid = parse_grid(sim_eps);
        } else if (sim_channel == "awgn") {
            spec.channel = Channel::Awgn;
            if (sim_ebno.empty()) throw domain_error("channel=awgn needs --ebno-db");
            spec.grid = parse_grid(sim_ebno);
        } else {
            throw domain_error("--channel must be bec or awgn");
        }
        if (sim_decoder == "bp")
            spec.decoder = DecoderKind::Bp;
        else if (sim_decoder == "ml")
            spec.decoder = DecoderKind::Ml;
        else if (sim_decoder == "rpc")
            spec.decoder = DecoderKind::Rpc;
        else
            throw domain_error("--decoder must be bp, ml or rpc");
        spec.rpc_rows = sim_rpc_rows;

        const std::vector<SimRecord> records = run_sweep(code, spec);
        std::ostringstream out;
        if (plot_data)
            records_to_plot_data(out, records);
        else
            records_to_csv(out, records);
        if (sim_out.empty())
            std::cout << out.str();
        else
            write_text_file(sim_out, out.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ldpcw::parse_error& e) {
        std::cerr << "PARSE/ " << e.what() << '\n';
        return 1;
    } catch (const ldpcw::domain_error& e) {
        std::cerr << "DOMAIN/ " << e.what() << '\n';
        return 2;
    } catch (const ldpcw::budget_error& e) {
        std::cerr << "BUDGET/ " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "DOMAIN/ " << e.what() << '\n';
        return 2;
    }
}
