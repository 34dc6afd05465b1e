#pragma once

// Rank-metric codes in F_q^{n x m}: invariants, trace-duals, the subcodes
// C(V, c), the column polymatroid and right-linearity checks.

#include "qpl/qpolymatroid.hpp"

namespace qpl {

class RankMetricCode {
 public:
  /// The basis matrices must be n x m and linearly independent.
  RankMetricCode(PrimeField field, std::size_t n, std::size_t m, const std::vector<Matrix>& basis)
      : RankMetricCode(field, n, m, flatten(field, n, m, basis), basis.size()) {
    generators_ = basis;
  }

  /// Span of arbitrary (possibly dependent) generators.
  static RankMetricCode span_of(PrimeField field, std::size_t n, std::size_t m, const std::vector<Matrix>& generators) {
    return RankMetricCode(field, n, m, flatten(field, n, m, generators), std::nullopt);
  }
  /// Span of the rows of a k x nm matrix of flattened codewords.
  static RankMetricCode from_flat(std::size_t n, std::size_t m, const Matrix& rows) {
    if (rows.cols() != n * m) throw InputError("flattened codewords must have n*m entries");
    return RankMetricCode(rows.field(), n, m, rows, std::nullopt);
  }
  static RankMetricCode zero(PrimeField field, std::size_t n, std::size_t m) {
    return from_flat(n, m, Matrix(field, 0, n * m));
  }
  static RankMetricCode full(PrimeField field, std::size_t n, std::size_t m) {
    return from_flat(n, m, Matrix::identity(field, n * m));
  }

  const PrimeField& field() const noexcept { return flat_.field(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return flat_.rows(); }
  /// Canonical k x nm RREF of the flattened basis (row-major matrices).
  const Matrix& flat() const noexcept { return flat_; }

  Matrix basis_matrix(std::size_t i) const { return unflatten(flat_.row(i)); }
  std::vector<Matrix> basis_matrices() const {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_matrix(i));
    return out;
  }
  /// The basis as supplied at construction (the RREF basis for spans).
  std::vector<Matrix> generators() const { return generators_.empty() && dim() > 0 ? basis_matrices() : generators_; }

  bool contains(const Matrix& mat) const {
    check_shape(mat);
    const Matrix row(field(), 1, n_ * m_, std::vector<std::int64_t>(mat.entries().begin(), mat.entries().end()));
    return rref(flat_.stacked(row)).rank == dim();
  }

  Matrix unflatten(std::span<const Residue> entries) const {
    Matrix mat(field(), n_, m_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j) mat.set(i, j, entries[i * m_ + j]);
    return mat;
  }

  friend bool operator==(const RankMetricCode& a, const RankMetricCode& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.flat_ == b.flat_;
  }

 private:
  RankMetricCode(PrimeField field, std::size_t n, std::size_t m, const Matrix& rows, std::optional<std::size_t> expect)
      : n_(n), m_(m), flat_(field, 0, n * m) {
    const RowEchelon e = rref(rows);
    if (expect && e.rank != *expect) throw InputError("basis matrices are linearly dependent");
    flat_ = e.reduced.row_block(0, e.rank);
  }

  static Matrix flatten(PrimeField field, std::size_t n, std::size_t m, const std::vector<Matrix>& mats) {
    Matrix rows(field, mats.size(), n * m);
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const Matrix& a = mats[i];
      if (a.rows() != n || a.cols() != m || !(a.field() == field))
        throw InputError("codeword " + std::to_string(i + 1) + " is not a " + std::to_string(n) + "x" + std::to_string(m) + " matrix over F_" + std::to_string(field.order()));
      for (std::size_t j = 0; j < n * m; ++j) rows.set(i, j, a.entries()[j]);
    }
    return rows;
  }

  void check_shape(const Matrix& mat) const {
    if (mat.rows() != n_ || mat.cols() != m_ || !(mat.field() == field())) throw InputError("matrix does not live in the code's ambient space");
  }

  std::size_t n_;
  std::size_t m_;
  Matrix flat_;
  std::vector<Matrix> generators_;
};

/// Minimum rank of a nonzero codeword, by enumerating codewords up to scalars.
inline std::size_t rank_distance(const RankMetricCode& c, std::uint64_t budget = default_codeword_budget()) {
  const std::size_t k = c.dim();
  if (k == 0) throw InputError("rank distance of the zero code is undefined");
  const std::uint32_t q = c.field().order();
  std::uint64_t count = 0;
  if (!checked_pow(q, k, count) || count > budget)
    throw CapacityError("code has q^" + std::to_string(k) + " codewords, above the budget of " + std::to_string(budget));
  const PrimeField& f = c.field();
  const Matrix& b = c.flat();
  std::size_t best = std::min(c.n(), c.m());
  std::vector<Residue> word(c.n() * c.m());
  for (std::uint64_t code = 1; code < count && best > 1; ++code) {
    const auto coeff = detail::decode(code, q, k);
    // Leading coefficient 1 picks one representative per line of codewords.
    std::size_t lead = 0;
    while (coeff[lead] == 0) ++lead;
    if (coeff[lead] != 1) continue;
    std::fill(word.begin(), word.end(), 0);
    for (std::size_t i = lead; i < k; ++i) {
      if (coeff[i] == 0) continue;
      const auto row = b.row(i);
      for (std::size_t j = 0; j < word.size(); ++j) word[j] = f.add(word[j], f.mul(coeff[i], row[j]));
    }
    best = std::min(best, c.unflatten(word).rank());
  }
  return best;
}

/// Trace-dual {N : sum_ij M_ij N_ij = 0 for all M in C}.
inline RankMetricCode dual_code(const RankMetricCode& c) {
  return RankMetricCode::from_flat(c.n(), c.m(), kernel(c.flat()).basis());
}

namespace detail {

/// k x (rows(p) m) matrix whose row i is vec(p B_i); its left kernel is the
/// set of coefficient vectors of codewords annihilated by p.
inline Matrix annihilation_map(const RankMetricCode& c, const Matrix& p) {
  const std::size_t width = p.rows() * c.m();
  Matrix z(c.field(), c.dim(), width);
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const Matrix img = p * c.basis_matrix(i);
    for (std::size_t j = 0; j < width; ++j) z.set(i, j, img.entries()[j]);
  }
  return z;
}

}  // namespace detail

/// C(V, c) = {M in C : colsp(M) <= V}, as the kernel of M -> P M with P a check matrix of V.
inline RankMetricCode subcode_colspace(const RankMetricCode& c, const Subspace& v) {
  if (v.ambient_dim() != c.n() || !(v.field() == c.field())) throw InputError("subspace does not live in F_q^n");
  const Matrix check = orthogonal(v).basis();
  const Subspace coeffs = kernel(detail::annihilation_map(c, check).transpose());
  return RankMetricCode::from_flat(c.n(), c.m(), coeffs.basis() * c.flat());
}

/// The column polymatroid: tau(V) = dim C - dim C(V^perp, c), D = m.
inline QPolymatroid column_polymatroid(const RankMetricCode& c, const LatticePtr& index) {
  if (index->ambient_dim() != c.n() || !(index->field() == c.field())) throw InputError("lattice does not match the code's row count");
  if (c.m() == 0) throw InputError("codes with m = 0 have no column polymatroid");
  // V is a check matrix of V^perp, so dim C - dim C(V^perp, c) is the rank of M -> B_V M on C.
  std::vector<std::int64_t> tau(index->size());
  for (Ordinal v : index->all()) {
    const Matrix& bv = index->subspace(v).basis();
    tau[v] = bv.rows() == 0 || c.dim() == 0 ? 0 : static_cast<std::int64_t>(detail::annihilation_map(c, bv).rank());
  }
  return QPolymatroid(index, static_cast<std::int64_t>(c.m()), std::move(tau));
}

/// Code of all transposes.
inline RankMetricCode transposed(const RankMetricCode& c) {
  std::vector<Matrix> mats;
  for (const Matrix& b : c.basis_matrices()) mats.push_back(b.transpose());
  return RankMetricCode::span_of(c.field(), c.m(), c.n(), mats);
}

/// X C Y (or X C^T Y when transpose_first, which needs n = m).
inline RankMetricCode transform(const RankMetricCode& c, const Matrix& x, const Matrix& y, bool transpose_first = false) {
  if (transpose_first && c.n() != c.m()) throw InputError("transposition needs square codewords");
  if (!x.is_invertible() || x.rows() != c.n()) throw InputError("X must be an invertible " + std::to_string(c.n()) + "x" + std::to_string(c.n()) + " matrix");
  if (!y.is_invertible() || y.rows() != c.m()) throw InputError("Y must be an invertible " + std::to_string(c.m()) + "x" + std::to_string(c.m()) + " matrix");
  std::vector<Matrix> mats;
  for (const Matrix& b : c.basis_matrices()) mats.push_back(x * (transpose_first ? b.transpose() : b) * y);
  return RankMetricCode(c.field(), c.n(), c.m(), mats);
}

/// Companion matrix of f = x^m - sum f_i x^i: ones on the superdiagonal, last row (f_0, ..., f_{m-1}).
/// Singular exactly when f_0 = 0; callers that need invertibility check it.
inline Matrix companion_matrix(PrimeField field, const std::vector<std::int64_t>& f) {
  if (f.empty()) throw InputError("companion matrix needs a polynomial of degree at least 1");
  const std::size_t m = f.size();
  Matrix d(field, m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) d.set(i, i + 1, 1);
  for (std::size_t j = 0; j < m; ++j) d.set(m - 1, j, f[j]);
  return d;
}

namespace detail {

inline Matrix right_linearity_generator(const RankMetricCode& c, const std::vector<std::int64_t>& f, std::size_t s) {
  const std::size_t m = c.m();
  if (f.size() != m) throw InputError("polynomial degree must equal m = " + std::to_string(m));
  if (s == 0 || m % s != 0) throw InputError("s must divide m");
  const Matrix delta = companion_matrix(c.field(), f);
  if (!delta.is_invertible()) throw InputError("companion matrix is singular (f_0 = 0)");
  const std::uint64_t q = c.field().order();
  std::uint64_t qm = 0, qs = 0;
  if (!checked_pow(q, m, qm) || !checked_pow(q, s, qs)) throw CapacityError("q^m overflows");
  return delta.pow((qm - 1) / (qs - 1));
}

inline bool invariant_under(const RankMetricCode& c, const Matrix& u) {
  for (const Matrix& b : c.basis_matrices())
    if (!c.contains(b * u)) return false;
  return true;
}

}  // namespace detail

/// True iff C X is invariant under right multiplication by Delta_f^M, M = (q^m - 1)/(q^s - 1).
inline bool is_right_linear(const RankMetricCode& c, const std::vector<std::int64_t>& f, std::size_t s, const Matrix& x) {
  if (x.rows() != c.m() || !x.is_invertible()) throw InputError("X must be an invertible " + std::to_string(c.m()) + "x" + std::to_string(c.m()) + " matrix");
  const Matrix u = detail::right_linearity_generator(c, f, s);
  return detail::invariant_under(transform(c, Matrix::identity(c.field(), c.n()), x), u);
}

/// Searches GL_m(F_2) for X making C right linear. Only q = 2, m <= 4.
inline std::optional<Matrix> find_right_linear_transform(const RankMetricCode& c, const std::vector<std::int64_t>& f, std::size_t s) {
  if (c.field().order() != 2 || c.m() > 4) throw InputError("the X search is limited to q = 2 and m <= 4");
  const Matrix u = detail::right_linearity_generator(c, f, s);
  const std::size_t m = c.m();
  const Matrix id = Matrix::identity(c.field(), c.n());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (m * m)); ++bits) {
    Matrix x(c.field(), m, m);
    for (std::size_t i = 0; i < m * m; ++i) x.set(i / m, i % m, static_cast<std::int64_t>((bits >> i) & 1));
    if (!x.is_invertible()) continue;
    if (detail::invariant_under(transform(c, id, x), u)) return x;
  }
  return std::nullopt;
}

struct CodeReport {
  std::size_t dim = 0;
  std::optional<std::size_t> d;
  std::optional<std::size_t> d_dual;
  /// max{m,n}(min{m,n} - d + 1); absent for the zero code.
  std::optional<std::size_t> singleton_rhs;
  bool is_mrd = false;
};

inline CodeReport analyze(const RankMetricCode& c, std::uint64_t budget = default_codeword_budget()) {
  CodeReport r;
  r.dim = c.dim();
  if (c.dim() > 0) {
    r.d = rank_distance(c, budget);
    const std::size_t lo = std::min(c.n(), c.m());
    const std::size_t hi = std::max(c.n(), c.m());
    r.singleton_rhs = hi * (lo - *r.d + 1);
    r.is_mrd = r.dim == *r.singleton_rhs;
  }
  const RankMetricCode dual = dual_code(c);
  if (dual.dim() > 0) r.d_dual = rank_distance(dual, budget);
  return r;
}

/// Code file: "q <q> n <n> m <m> k <k>", then k blocks of n digit rows separated by blank lines.
inline RankMetricCode read_code(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) throw ParseError(reader.line_number() + 1, 1, "empty code file");
  const auto h = detail::parse_header(line, reader.line_number(), {"q", "n", "m", "k"});
  const PrimeField field = detail::parse_field(h[0], reader.line_number());
  const std::size_t n = h[1], m = h[2], k = h[3];
  if (n == 0 || m == 0) throw ParseError(reader.line_number(), 1, "n and m must be positive");
  if (k > n * m) throw ParseError(reader.line_number(), 1, "k exceeds n*m");
  std::vector<Matrix> mats;
  for (std::size_t b = 0; b < k; ++b) {
    if (!reader.next_nonblank(line)) throw ParseError(reader.line_number() + 1, 1, "missing codeword " + std::to_string(b + 1));
    Matrix a(field, n, m);
    detail::parse_digit_row(line, reader.line_number(), a, 0);
    for (std::size_t r = 1; r < n; ++r) {
      if (!reader.next(line) || detail::LineReader::is_blank(line))
        throw ParseError(reader.line_number(), 1, "codeword " + std::to_string(b + 1) + " has fewer than " + std::to_string(n) + " rows");
      detail::parse_digit_row(line, reader.line_number(), a, r);
    }
    mats.push_back(std::move(a));
  }
  while (reader.next(line))
    if (!detail::LineReader::is_blank(line)) throw ParseError(reader.line_number(), 1, "unexpected text after the last codeword");
  try {
    return RankMetricCode(field, n, m, mats);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(1, 1, e.what());
  }
}

inline void write_code(std::ostream& out, const RankMetricCode& c) {
  out << "q " << c.field().order() << " n " << c.n() << " m " << c.m() << " k " << c.dim() << '\n';
  const auto gens = c.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out << '\n';
    out << gens[i].to_digits();
  }
}

}  // namespace qpl
