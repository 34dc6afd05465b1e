#pragma once

// Canonical subspaces of F_q^n and their lattice operations.

#include "qpl/matrix.hpp"

#include <compare>
#include <functional>

namespace qpl {

/// A subspace of F_q^n stored by its RREF basis (no zero rows). Equal subspaces
/// have identical bases, so comparisons and keys are canonical.
class Subspace {
 public:
  static Subspace zero(PrimeField field, std::size_t n) { return Subspace(Matrix(field, 0, n)); }
  static Subspace full(PrimeField field, std::size_t n) { return Subspace(Matrix::identity(field, n)); }

  /// Row space of an arbitrary matrix.
  static Subspace row_space(const Matrix& generators) {
    RowEchelon e = rref(generators);
    return Subspace(e.reduced.row_block(0, e.rank));
  }

  static Subspace span(PrimeField field, std::size_t n, const std::vector<std::vector<std::int64_t>>& generators) {
    for (const auto& g : generators)
      if (g.size() != n) throw InputError("generator length " + std::to_string(g.size()) + " does not match ambient dimension " + std::to_string(n));
    return row_space(Matrix::from_rows(field, n, generators));
  }

  /// Standard basis vector e_i (1-based, as in the usual notation).
  static std::vector<std::int64_t> unit(std::size_t n, std::size_t i) {
    std::vector<std::int64_t> v(n, 0);
    v.at(i - 1) = 1;
    return v;
  }

  const PrimeField& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// RREF rows as digit strings joined by ';'; the zero space is "-".
  std::string key() const {
    if (dim() == 0) return "-";
    std::string k;
    for (std::size_t r = 0; r < dim(); ++r) {
      if (r) k.push_back(';');
      for (Residue x : basis_.row(r)) k.push_back(static_cast<char>('0' + x));
    }
    return k;
  }

  bool contains(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw InputError("vector length does not match ambient dimension");
    // Reduce v against the RREF rows; v is a member iff nothing remains.
    std::vector<Residue> w(v.begin(), v.end());
    const PrimeField& f = field();
    for (std::size_t r = 0; r < dim(); ++r) {
      auto row = basis_.row(r);
      std::size_t pivot = 0;
      while (row[pivot] == 0) ++pivot;
      const Residue c = w[pivot];
      if (c == 0) continue;
      for (std::size_t j = pivot; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, row[j]));
    }
    return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
  }

  bool is_subspace_of(const Subspace& other) const {
    check_compatible(other);
    for (std::size_t r = 0; r < dim(); ++r)
      if (!other.contains(basis_.row(r))) return false;
    return true;
  }

  /// Calls fn on every vector of the subspace (q^dim of them), zero first.
  void for_each_vector(const std::function<void(std::span<const Residue>)>& fn) const {
    const std::uint32_t q = field().order();
    const std::size_t k = dim();
    const std::size_t n = ambient_dim();
    std::vector<Residue> coeff(k, 0);
    std::vector<Residue> v(n, 0);
    while (true) {
      fn(v);
      std::size_t i = 0;
      while (i < k) {
        // Increment coefficient i and update v by one copy of row i.
        coeff[i] = (coeff[i] + 1) % q;
        auto row = basis_.row(i);
        for (std::size_t j = 0; j < n; ++j) v[j] = field().add(v[j], row[j]);
        if (coeff[i] != 0) break;
        ++i;
      }
      if (i == k) return;
    }
  }

  void check_compatible(const Subspace& other) const {
    if (!(field() == other.field()) || ambient_dim() != other.ambient_dim())
      throw InputError("subspaces live in different ambient spaces");
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

  /// Canonical order: by dimension, then lexicographically by RREF entries.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    const auto ea = a.basis_.entries();
    const auto eb = b.basis_.entries();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

 private:
  explicit Subspace(Matrix rref_basis) : basis_(std::move(rref_basis)) {}

  Matrix basis_;
};

/// Null space {x : m x = 0}.
inline Subspace kernel(const Matrix& m) {
  const RowEchelon e = rref(m);
  const std::size_t n = m.cols();
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  Matrix gens(f, n - e.rank, n);
  std::size_t g = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    gens.set(g, free, 1);
    for (std::size_t i = 0; i < e.rank; ++i) gens.set(g, e.pivots[i], f.neg(e.reduced(i, free)));
    ++g;
  }
  return Subspace::row_space(gens);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  return Subspace::row_space(a.basis().stacked(b.basis()));
}

/// Orthogonal complement under the standard dot product.
inline Subspace orthogonal(const Subspace& v) { return kernel(v.basis()); }

/// Orthogonal complement under the bilinear form x^T G y. G must be symmetric and invertible.
inline Subspace orthogonal(const Subspace& v, const Matrix& gram) {
  if (gram.rows() != v.ambient_dim() || !gram.is_square() || !(gram.field() == v.field()))
    throw InputError("Gram matrix shape does not match the ambient space");
  if (!gram.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  if (!gram.is_invertible()) throw InputError("Gram matrix is singular");
  return kernel(v.basis() * gram);
}

/// a ∩ b as the orthogonal of the sum of orthogonals.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  return orthogonal(sum(orthogonal(a), orthogonal(b)));
}

/// Image {A x : x in v} for a square matrix A acting on column vectors.
inline Subspace apply(const Matrix& a, const Subspace& v) {
  if (!a.is_square() || a.cols() != v.ambient_dim()) throw InputError("matrix does not act on the ambient space");
  return Subspace::row_space(v.basis() * a.transpose());
}

}  // namespace qpl
