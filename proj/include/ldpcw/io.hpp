#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldpcw/bit_matrix.hpp"
#include "ldpcw/builders.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/qc.hpp"

namespace ldpcw {

namespace detail {

inline std::vector<long long> parse_int_line(const std::string& line,
                                             const char* what) {
    std::istringstream ss(line);
    std::vector<long long> out;
    long long v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw parse_error(std::string("bad integer in ") + what);
    return out;
}

inline std::string next_content_line(std::istream& in, const char* what) {
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i == line.size()) continue;   // blank
        if (line[i] == '#') continue;     // comment
        return line;
    }
    throw parse_error(std::string("unexpected end of file while reading ") + what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// alist: the standard sparse parity-check interchange format.
//   n r
//   max_col_degree max_row_degree
//   per-column degrees / per-row degrees
//   n lines of 1-based row indices per column, zero-padded
//   r lines of 1-based column indices per row, zero-padded
// The writer zero-pads; the reader accepts padded and unpadded lists and
// cross-checks the row lists against the column lists.
// ---------------------------------------------------------------------------

inline void write_alist(std::ostream& out, const BitMatrix& h) {
    const std::size_t n = h.cols(), r = h.rows();
    std::vector<std::vector<std::size_t>> col_idx(n), row_idx(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (h.get(i, j)) {
                col_idx[j].push_back(i + 1);
                row_idx[i].push_back(j + 1);
            }
    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : col_idx) max_col = std::max(max_col, c.size());
    for (const auto& rr : row_idx) max_row = std::max(max_row, rr.size());

    out << n << ' ' << r << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::size_t j = 0; j < n; ++j) out << col_idx[j].size() << (j + 1 < n ? ' ' : '\n');
    for (std::size_t i = 0; i < r; ++i) out << row_idx[i].size() << (i + 1 < r ? ' ' : '\n');
    const auto emit = [&](const std::vector<std::size_t>& idx, std::size_t width) {
        if (width == 0) width = 1;  // keep one '0' token so the line survives round-trip
        for (std::size_t t = 0; t < width; ++t) {
            out << (t < idx.size() ? idx[t] : 0);
            out << (t + 1 < width ? ' ' : '\n');
        }
    };
    for (std::size_t j = 0; j < n; ++j) emit(col_idx[j], max_col);
    for (std::size_t i = 0; i < r; ++i) emit(row_idx[i], max_row);
}

inline BitMatrix read_alist(std::istream& in) {
    const auto header = detail::parse_int_line(
        detail::next_content_line(in, "alist header"), "alist header");
    if (header.size() != 2 || header[0] < 1 || header[1] < 1)
        throw parse_error("alist header must be 'n r' with positive counts");
    const std::size_t n = static_cast<std::size_t>(header[0]);
    const std::size_t r = static_cast<std::size_t>(header[1]);

    const auto maxima = detail::parse_int_line(
        detail::next_content_line(in, "alist degree maxima"), "alist degree maxima");
    if (maxima.size() != 2 || maxima[0] < 0 || maxima[1] < 0)
        throw parse_error("alist second line must hold the two degree maxima");

    const auto read_degrees = [&](std::size_t count, const char* what) {
        std::vector<std::size_t> degs;
        degs.reserve(count);
        while (degs.size() < count) {
            for (const long long v :
                 detail::parse_int_line(detail::next_content_line(in, what), what)) {
                if (v < 0) throw parse_error(std::string("negative degree in ") + what);
                degs.push_back(static_cast<std::size_t>(v));
            }
        }
        if (degs.size() != count)
            throw parse_error(std::string("degree count mismatch in ") + what);
        return degs;
    };
    const auto col_deg = read_degrees(n, "alist column degrees");
    const auto row_deg = read_degrees(r, "alist row degrees");

    BitMatrix h(r, n);
    const auto read_index_lines = [&](std::size_t count, std::size_t limit,
                                      const std::vector<std::size_t>& degs,
                                      bool columns) {
        for (std::size_t outer = 0; outer < count; ++outer) {
            const char* what = columns ? "alist column list" : "alist row list";
            std::vector<long long> vals =
                detail::parse_int_line(detail::next_content_line(in, what), what);
            std::size_t seen = 0;
            for (const long long v : vals) {
                if (v == 0) continue;  // padding
                if (v < 0 || static_cast<std::size_t>(v) > limit)
                    throw parse_error(std::string("index out of range in ") + what);
                ++seen;
                const std::size_t other = static_cast<std::size_t>(v) - 1;
                if (columns)
                    h.set(other, outer, true);
                else if (!h.get(outer, other))
                    throw parse_error("alist row lists disagree with column lists");
            }
            if (seen != degs[outer])
                throw parse_error(std::string("list length does not match degree in ") +
                                  what);
        }
    };
    read_index_lines(n, r, col_deg, true);
    read_index_lines(r, n, row_deg, false);

    std::size_t ones = 0;
    for (const std::size_t d : row_deg) ones += d;
    if (h.ones_count() != ones)
        throw parse_error("alist row lists disagree with column lists");
    return h;
}

// ---------------------------------------------------------------------------
// QC exponent file: header "b c M", then (c-b) lines of c integers, -1 for a
// zero entry and w >= 0 for a D^w monomial.
// ---------------------------------------------------------------------------

inline void write_qc(std::ostream& out, const QcPolynomialMatrix& q) {
    out << q.b << ' ' << q.c << ' ' << q.lifting << '\n';
    for (std::size_t i = 0; i < q.block_rows(); ++i) {
        for (std::size_t j = 0; j < q.c; ++j)
            out << q.exponent(i, j) << (j + 1 < q.c ? ' ' : '\n');
    }
}

inline QcPolynomialMatrix read_qc(std::istream& in) {
    const auto header = detail::parse_int_line(
        detail::next_content_line(in, "qc header"), "qc header");
    if (header.size() != 3 || header[0] < 1 || header[1] <= header[0] || header[2] < 1)
        throw parse_error("qc header must be 'b c M' with c > b >= 1, M >= 1");
    QcPolynomialMatrix q;
    q.b = static_cast<std::size_t>(header[0]);
    q.c = static_cast<std::size_t>(header[1]);
    q.lifting = static_cast<std::size_t>(header[2]);
    q.exps.reserve(q.block_rows() * q.c);
    for (std::size_t i = 0; i < q.block_rows(); ++i) {
        const auto vals = detail::parse_int_line(
            detail::next_content_line(in, "qc exponent row"), "qc exponent row");
        if (vals.size() != q.c) throw parse_error("qc exponent row has wrong length");
        for (const long long v : vals) {
            if (v < -1) throw parse_error("qc exponent must be -1 or >= 0");
            q.exps.push_back(static_cast<std::int32_t>(v));
        }
    }
    try {
        q.validate();
    } catch (const domain_error& e) {
        throw parse_error(e.what());
    }
    return q;
}

// ---------------------------------------------------------------------------
// Nonbinary label file: the alist of the base matrix, then a field line
// "gf m poly_hex", then one line per base row with the hexadecimal labels of
// that row's support in column order.
// ---------------------------------------------------------------------------

inline void write_labeled(std::ostream& out, const NonbinaryLabeledMatrix& labeled) {
    labeled.validate();
    write_alist(out, labeled.base);
    out << "gf " << labeled.field.m() << ' ' << std::hex << labeled.field.modulus()
        << std::dec << '\n';
    std::size_t next = 0;
    for (std::size_t i = 0; i < labeled.base.rows(); ++i) {
        bool first = true;
        std::size_t support = 0;
        for (std::size_t j = 0; j < labeled.base.cols(); ++j)
            if (labeled.base.get(i, j)) ++support;
        for (std::size_t t = 0; t < support; ++t) {
            out << (first ? "" : " ") << std::hex << labeled.labels[next++] << std::dec;
            first = false;
        }
        out << '\n';
    }
}

inline NonbinaryLabeledMatrix read_labeled(std::istream& in) {
    BitMatrix base = read_alist(in);
    const std::string field_line = detail::next_content_line(in, "label field line");
    std::istringstream ss(field_line);
    std::string tag;
    unsigned m = 0;
    std::string poly_hex;
    ss >> tag >> m >> poly_hex;
    if (tag != "gf" || m == 0 || poly_hex.empty())
        throw parse_error("label file field line must be 'gf m poly_hex'");
    std::uint32_t poly = 0;
    try {
        poly = static_cast<std::uint32_t>(std::stoul(poly_hex, nullptr, 16));
    } catch (const std::exception&) {
        throw parse_error("bad polynomial in label file");
    }
    NonbinaryLabeledMatrix out{std::move(base), GfField(m, poly), {}};
    out.labels.reserve(out.base.ones_count());
    for (std::size_t i = 0; i < out.base.rows(); ++i) {
        std::size_t support = 0;
        for (std::size_t j = 0; j < out.base.cols(); ++j)
            if (out.base.get(i, j)) ++support;
        if (support == 0) continue;
        const std::string line = detail::next_content_line(in, "label row");
        std::istringstream ls(line);
        std::string tok;
        std::size_t seen = 0;
        while (ls >> tok) {
            std::uint32_t v = 0;
            try {
                v = static_cast<std::uint32_t>(std::stoul(tok, nullptr, 16));
            } catch (const std::exception&) {
                throw parse_error("bad label in label file");
            }
            out.labels.push_back(static_cast<std::uint16_t>(v));
            ++seen;
        }
        if (seen != support) throw parse_error("label row length does not match support");
    }
    try {
        out.validate();
    } catch (const domain_error& e) {
        throw parse_error(e.what());
    }
    return out;
}

// File-path conveniences.

template <typename Reader>
auto read_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return reader(in);
}

template <typename T, typename Writer>
void write_file(const std::string& path, const T& value, Writer writer) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    writer(out, value);
    if (!out) throw parse_error("write failed: " + path);
}

inline BitMatrix read_alist_file(const std::string& path) {
    return read_file(path, [](std::istream& in) { return read_alist(in); });
}
inline void write_alist_file(const std::string& path, const BitMatrix& h) {
    write_file(path, h, [](std::ostream& out, const BitMatrix& m) { write_alist(out, m); });
}
inline QcPolynomialMatrix read_qc_file(const std::string& path) {
    return read_file(path, [](std::istream& in) { return read_qc(in); });
}
inline void write_qc_file(const std::string& path, const QcPolynomialMatrix& q) {
    write_file(path, q,
               [](std::ostream& out, const QcPolynomialMatrix& m) { write_qc(out, m); });
}
inline NonbinaryLabeledMatrix read_labeled_file(const std::string& path) {
    return read_file(path, [](std::istream& in) { return read_labeled(in); });
}
inline void write_labeled_file(const std::string& path,
                               const NonbinaryLabeledMatrix& labeled) {
    write_file(path, labeled, [](std::ostream& out, const NonbinaryLabeledMatrix& m) {
        write_labeled(out, m);
    });
}

}  // namespace ldpcw
