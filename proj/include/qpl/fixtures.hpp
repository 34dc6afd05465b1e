#pragma once

// Generator matrices of the worked example codes, shipped in-library so tools
// and tests need no data files. fixtures/<id>.code holds the same data.

#include "qpl/codes.hpp"

namespace qpl::fixtures {

struct CodeFixture {
  std::string id;
  std::string summary;
  std::size_t n;
  std::size_t m;
  std::vector<Matrix> generators;
};

namespace detail {

inline Matrix digits(std::size_t m, std::initializer_list<const char*> rows) {
  const PrimeField f2(2);
  Matrix a(f2, rows.size(), m);
  std::size_t r = 0;
  for (const char* row : rows) {
    for (std::size_t c = 0; c < m; ++c) a.set(r, c, row[c] - '0');
    ++r;
  }
  return a;
}

}  // namespace detail

/// 5x2 binary MRD code with d = 2; one 2-space has rank value 1.
inline CodeFixture ex_2_17_c1() {
  using detail::digits;
  return {"ex-2-17-c1", "MRD code C1 in F_2^{5x2}", 5, 2,
          {digits(2, {"11", "10", "00", "10", "00"}), digits(2, {"11", "11", "10", "01", "00"}),
           digits(2, {"00", "00", "11", "00", "01"}), digits(2, {"00", "01", "00", "00", "11"}),
           digits(2, {"10", "01", "11", "00", "01"})}};
}

/// 5x2 binary MRD code with d = 2, not equivalent to C1.
inline CodeFixture ex_2_17_c2() {
  using detail::digits;
  return {"ex-2-17-c2", "MRD code C2 in F_2^{5x2}", 5, 2,
          {digits(2, {"10", "01", "00", "00", "00"}), digits(2, {"00", "10", "01", "00", "00"}),
           digits(2, {"00", "00", "10", "01", "00"}), digits(2, {"00", "00", "00", "10", "01"}),
           digits(2, {"01", "00", "01", "00", "10"})}};
}

inline CodeFixture ex_3_3a() {
  using detail::digits;
  return {"ex-3-3a", "3-dim code in F_2^{3x3}, principal denominator 3", 3, 3,
          {digits(3, {"010", "001", "001"}), digits(3, {"011", "000", "001"}), digits(3, {"011", "100", "010"})}};
}

/// Spanned by the unit matrices E11, E12, E23, E32, E41, E42.
inline CodeFixture ex_3_3b() {
  using detail::digits;
  return {"ex-3-3b", "6-dim code in F_2^{5x3} spanned by unit matrices", 5, 3,
          {digits(3, {"100", "000", "000", "000", "000"}), digits(3, {"010", "000", "000", "000", "000"}),
           digits(3, {"000", "001", "000", "000", "000"}), digits(3, {"000", "000", "010", "000", "000"}),
           digits(3, {"000", "000", "000", "100", "000"}), digits(3, {"000", "000", "000", "010", "000"})}};
}

/// f = x^4 + x + 1 as (f_0, ..., f_3).
inline std::vector<std::int64_t> ex_3_8_polynomial() { return {1, 1, 0, 0}; }

/// <A1, A2, A3, A1 U, A2 U, A3 U> with U = Delta_f^5; right F_4-linear, d = 3.
inline CodeFixture ex_3_8() {
  using detail::digits;
  const std::vector<Matrix> a = {digits(4, {"0110", "0000", "0000", "1001", "0011", "1001"}),
                                 digits(4, {"1000", "0000", "1000", "1001", "0111", "0001"}),
                                 digits(4, {"1101", "0010", "0010", "1000", "0001", "1010"})};
  const Matrix u = companion_matrix(PrimeField(2), ex_3_8_polynomial()).pow(5);
  std::vector<Matrix> gens = a;
  for (const Matrix& x : a) gens.push_back(x * u);
  return {"ex-3-8", "right F_4-linear code in F_2^{6x4}", 6, 4, gens};
}

inline CodeFixture ex_4_6c() {
  using detail::digits;
  return {"ex-4-6c", "code C = <A1, A2, A3> in F_2^{4x3}", 4, 3,
          {digits(3, {"000", "100", "011", "010"}), digits(3, {"101", "100", "000", "111"}),
           digits(3, {"010", "011", "010", "011"})}};
}

inline CodeFixture ex_4_6cprime() {
  using detail::digits;
  return {"ex-4-6cprime", "code C' = <A1, A2, A3'> in F_2^{4x3}", 4, 3,
          {digits(3, {"000", "100", "011", "010"}), digits(3, {"101", "100", "000", "111"}),
           digits(3, {"100", "000", "101", "101"})}};
}

inline std::vector<CodeFixture> all_codes() {
  return {ex_3_3a(), ex_3_3b(), ex_2_17_c1(), ex_2_17_c2(), ex_3_8(), ex_4_6c(), ex_4_6cprime()};
}

inline RankMetricCode code(const CodeFixture& f) { return RankMetricCode(PrimeField(2), f.n, f.m, f.generators); }

inline std::optional<CodeFixture> find_code(std::string_view id) {
  for (auto& f : all_codes())
    if (f.id == id) return f;
  return std::nullopt;
}

}  // namespace qpl::fixtures
