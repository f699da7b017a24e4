#pragma once

// Plain-text matrix format:
//
//   rows cols
//   re im re im ...        (2*cols numbers per line, `rows` lines)
//
// Numbers are written in the shortest form that reads back to the same double.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "gpolar/matcore.hpp"

namespace gpolar {

inline std::string format_double(double x) {
    if (x == 0.0) return "0";   // no "-0"
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

inline void write_matrix(std::ostream& os, const ComplexMatrix& M) {
    os << M.rows() << ' ' << M.cols() << '\n';
    for (Index i = 0; i < M.rows(); ++i) {
        for (Index j = 0; j < M.cols(); ++j) {
            if (j > 0) os << ' ';
            os << format_double(M(i, j).real()) << ' ' << format_double(M(i, j).imag());
        }
        os << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline bool blank(std::string_view line) { return split_ws(line).empty(); }

template <class T>
T parse_number(std::string_view tok, int line_no) {
    T value{};
    // from_chars rejects a leading '+', which hand-written files sometimes carry.
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(tok) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) {
            throw ParseError("line " + std::to_string(line_no) + ": non-finite entry");
        }
    }
    return value;
}

} // namespace detail

inline ComplexMatrix read_matrix(std::istream& is) {
    std::string line;
    int line_no = 0;
    auto next_nonblank = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            if (!detail::blank(line)) return true;
        }
        return false;
    };

    if (!next_nonblank()) {
        throw ParseError("empty matrix file");
    }
    const auto header = detail::split_ws(line);
    if (header.size() != 2) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'rows cols'");
    }
    const auto rows = detail::parse_number<long long>(header[0], line_no);
    const auto cols = detail::parse_number<long long>(header[1], line_no);
    if (rows <= 0 || cols <= 0) {
        throw ParseError("line " + std::to_string(line_no) + ": dimensions must be positive");
    }

    ComplexMatrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (!next_nonblank()) {
            throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
        }
        const auto toks = detail::split_ws(line);
        if (static_cast<long long>(toks.size()) != 2 * cols) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(2 * cols) + " numbers, got " + std::to_string(toks.size()));
        }
        for (Index j = 0; j < cols; ++j) {
            const auto k = static_cast<std::size_t>(2 * j);
            M(i, j) = Complex(detail::parse_number<double>(toks[k], line_no),
                              detail::parse_number<double>(toks[k + 1], line_no));
        }
    }
    if (next_nonblank()) {
        throw ParseError("line " + std::to_string(line_no) + ": trailing data after matrix");
    }
    return M;
}

inline ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return read_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

inline void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& M) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    write_matrix(out, M);
    if (!out) {
        throw Error("write failed: " + path.string());
    }
}

} // namespace gpolar
