#pragma once

// Plain-text matrices and vectors. A square matrix is a line "N" followed by
// N rows; a rectangular one starts with "R C". Vectors are one line of
// rationals.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"
#include "vancycle/rational.hpp"

namespace vancycle {

namespace detail {

inline std::string format_rows(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& a) {
  std::size_t width = 1;
  for (auto x : a) width = std::max(width, std::to_string(x).size());
  std::ostringstream out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::string s = std::to_string(a[r * cols + c]);
      if (c) out << ' ';
      out << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

inline std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::int64_t parse_entry(const std::string& t) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size()) throw InputError("matrix entry '" + t + "' is not an integer");
  return v;
}

inline std::size_t parse_count(const std::string& t) {
  std::int64_t v = parse_entry(t);
  if (v < 0) throw InputError("negative matrix size");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline std::string format_matrix(const IntMatrix& m) {
  return std::to_string(m.size()) + "\n" + detail::format_rows(m.size(), m.size(), m.data());
}

inline std::string format_matrix(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& a) {
  if (a.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  return std::to_string(rows) + " " + std::to_string(cols) + "\n" + detail::format_rows(rows, cols, a);
}

/// Parses the square format; the header line must hold N alone.
inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header) && detail::tokens(header).empty()) {
  }
  auto head = detail::tokens(header);
  if (head.size() != 1) throw InputError("matrix header must be a single size N");
  const std::size_t n = detail::parse_count(head[0]);
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto body = detail::tokens(rest);
  if (body.size() != n * n)
    throw DimensionMismatch("expected " + std::to_string(n * n) + " entries, found " + std::to_string(body.size()));
  std::vector<std::int64_t> a;
  a.reserve(body.size());
  for (const auto& t : body) a.push_back(detail::parse_entry(t));
  return IntMatrix(n, std::move(a));
}

inline std::string format_vector(const CycleVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s + "\n";
}

inline CycleVector parse_vector(const std::string& text) {
  auto toks = detail::tokens(text);
  CycleVector v(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto r = try_parse_rat(toks[i]);
    if (!r) throw ParseError("vector entry '" + toks[i] + "' is not a rational", i);
    v[i] = *r;
  }
  return v;
}

}  // namespace vancycle
