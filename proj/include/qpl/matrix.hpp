#pragma once

// Dense matrices over a prime field, row reduction and the matrix text format.

#include "qpl/field.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qpl {

struct RowEchelon;

class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  /// Entries are given row-major and reduced modulo q.
  Matrix(PrimeField field, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& entries)
      : Matrix(field, rows, cols) {
    if (entries.size() != rows * cols) throw InputError("matrix entry count does not match shape");
    for (std::size_t i = 0; i < entries.size(); ++i) entries_[i] = field.reduce(entries[i]);
  }

  static Matrix identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
    return m;
  }

  /// Builds a matrix from rows; every row must have `cols` entries.
  static Matrix from_rows(PrimeField field, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) m.entries_[r * cols + c] = field.reduce(rows[r][c]);
    }
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) { entries_[r * cols_ + c] = field_.reduce(value); }

  std::span<const Residue> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Residue> entries() const noexcept { return entries_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
    return t;
  }

  /// Rows [first, first + count).
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix b(field_, count, cols_);
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, b.entries_.begin());
    return b;
  }

  /// Stacks `other` below this matrix.
  Matrix stacked(const Matrix& other) const {
    if (other.cols_ != cols_ || !(other.field_ == field_)) throw InputError("cannot stack matrices of different shape");
    Matrix s(field_, rows_ + other.rows_, cols_);
    std::copy(entries_.begin(), entries_.end(), s.entries_.begin());
    std::copy(other.entries_.begin(), other.entries_.end(), s.entries_.begin() + static_cast<std::ptrdiff_t>(entries_.size()));
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_)) throw InputError("matrix product shape mismatch");
    Matrix p(a.field_, a.rows_, b.cols_);
    const std::uint64_t q = a.field_.order();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a.entries_[i * a.cols_ + k];
        if (aik == 0) continue;
        const Residue* brow = b.entries_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
      }
      for (std::size_t j = 0; j < b.cols_; ++j) p.entries_[i * b.cols_ + j] = static_cast<Residue>(acc[j] % q);
    }
    return p;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) throw InputError("matrix sum shape mismatch");
    Matrix s = a;
    for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] = a.field_.add(a.entries_[i], b.entries_[i]);
    return s;
  }

  Matrix scaled(Residue c) const {
    Matrix s = *this;
    for (auto& e : s.entries_) e = field_.mul(e, c);
    return s;
  }

  Matrix pow(std::uint64_t e) const {
    if (rows_ != cols_) throw InputError("power of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Residue x) { return x == 0; });
  }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  std::size_t rank() const;
  bool is_invertible() const { return is_square() && rank() == rows_; }
  /// Inverse by Gauss-Jordan; nullopt when singular or not square.
  std::optional<Matrix> inverse() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  /// Rows as digit strings, one per line (q must be at most 10).
  std::string to_digits() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s.push_back(static_cast<char>('0' + (*this)(r, c)));
      s.push_back('\n');
    }
    return s;
  }

 private:
  friend RowEchelon rref(const Matrix&);

  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> entries_;
};

struct RowEchelon {
  /// Same shape as the input; zero rows collect at the bottom.
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Unique, so the result is a canonical form of the row space.
inline RowEchelon rref(const Matrix& m) {
  Matrix r = m;
  const PrimeField& f = r.field_;
  const std::size_t rows = r.rows_;
  const std::size_t cols = r.cols_;
  auto* e = r.entries_.data();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && e[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != lead)
      std::swap_ranges(e + p * cols, e + (p + 1) * cols, e + lead * cols);
    const Residue inv = f.inv(e[lead * cols + c]);
    if (inv != 1)
      for (std::size_t j = c; j < cols; ++j) e[lead * cols + j] = f.mul(e[lead * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead) continue;
      const Residue factor = e[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        e[i * cols + j] = f.sub(e[i * cols + j], f.mul(factor, e[lead * cols + j]));
    }
    pivots.push_back(c);
    ++lead;
  }
  return RowEchelon{std::move(r), lead, std::move(pivots)};
}

inline std::size_t Matrix::rank() const { return rref(*this).rank; }

inline std::optional<Matrix> Matrix::inverse() const {
  if (!is_square()) return std::nullopt;
  const std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, (*this)(r, c));
    aug.set(r, n + r, 1);
  }
  const RowEchelon ech = rref(aug);
  if (ech.rank < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(field_, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, ech.reduced(r, n + c));
  return inv;
}

namespace detail {

/// Line reader that tracks 1-based line numbers and skips '#' comment lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in, bool allow_comments = true) : in_(in), comments_(allow_comments) {}

  /// Next line that is not a comment; blank lines are returned as-is.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (comments_ && !line.empty() && line[0] == '#') continue;
      return true;
    }
    return false;
  }
  /// Next line that is neither a comment nor blank.
  bool next_nonblank(std::string& line) {
    while (next(line))
      if (!is_blank(line)) return true;
    return false;
  }
  std::size_t line_number() const noexcept { return number_; }

  static bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
  }

 private:
  std::istream& in_;
  bool comments_;
  std::size_t number_ = 0;
};

/// Parses a header such as "q 2 rows 3 cols 4" into the listed keys, in order.
inline std::vector<std::uint64_t> parse_header(const std::string& line, std::size_t line_no,
                                               const std::vector<std::string>& keys) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < line.size() && line[pos] == ' ') ++pos;
  };
  for (const auto& key : keys) {
    skip_ws();
    if (line.compare(pos, key.size(), key) != 0)
      throw ParseError(line_no, pos + 1, "expected '" + key + "'");
    pos += key.size();
    if (pos >= line.size() || line[pos] != ' ') throw ParseError(line_no, pos + 1, "expected a space after '" + key + "'");
    skip_ws();
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
      value = value * 10 + static_cast<std::uint64_t>(line[pos] - '0');
      if (value > (std::uint64_t{1} << 40)) throw ParseError(line_no, start + 1, "value too large");
      ++pos;
    }
    if (pos == start) throw ParseError(line_no, pos + 1, "expected a number after '" + key + "'");
    values.push_back(value);
  }
  skip_ws();
  if (pos != line.size()) throw ParseError(line_no, pos + 1, "unexpected trailing text");
  return values;
}

inline PrimeField parse_field(std::uint64_t q, std::size_t line_no) {
  if (q > 10 || !is_prime(q)) throw ParseError(line_no, 1, "field order must be a prime below 10 for the text formats");
  return PrimeField(static_cast<std::uint32_t>(q));
}

/// Reads one line of exactly `cols` digits, each below q, into row `r` of `m`.
inline void parse_digit_row(const std::string& line, std::size_t line_no, Matrix& m, std::size_t r) {
  const std::size_t cols = m.cols();
  if (line.size() != cols) throw ParseError(line_no, std::min(line.size(), cols) + 1, "expected " + std::to_string(cols) + " digits");
  for (std::size_t c = 0; c < cols; ++c) {
    const char ch = line[c];
    if (ch < '0' || ch > '9' || static_cast<std::uint32_t>(ch - '0') >= m.field().order())
      throw ParseError(line_no, c + 1, "invalid residue '" + std::string(1, ch) + "'");
    m.set(r, c, ch - '0');
  }
}

}  // namespace detail

/// Reads "q <q> rows <r> cols <c>" followed by r lines of c digits.
inline Matrix read_matrix(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) throw ParseError(reader.line_number() + 1, 1, "empty matrix file");
  const auto h = detail::parse_header(line, reader.line_number(), {"q", "rows", "cols"});
  const PrimeField field = detail::parse_field(h[0], reader.line_number());
  Matrix m(field, h[1], h[2]);
  for (std::size_t r = 0; r < h[1]; ++r) {
    if (!reader.next(line)) throw ParseError(reader.line_number() + 1, 1, "missing matrix row");
    detail::parse_digit_row(line, reader.line_number(), m, r);
  }
  while (reader.next(line))
    if (!detail::LineReader::is_blank(line)) throw ParseError(reader.line_number(), 1, "unexpected extra row");
  return m;
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
  out << "q " << m.field().order() << " rows " << m.rows() << " cols " << m.cols() << '\n' << m.to_digits();
}

}  // namespace qpl
