#pragma once

// Exhaustive canonical enumeration of the subspace lattice of F_q^n.
//
// Every subspace gets an ordinal in canonical order (dimension, then RREF
// key). Internally each subspace also carries the bitset of the lines
// (1-dimensional subspaces) it contains; a subspace is determined by its
// lines, so meets are bitset intersections and joins go through orthogonals.

#include "qpl/subspace.hpp"

#include <array>
#include <cstdlib>
#include <memory>
#include <unordered_map>

namespace qpl {

using Ordinal = std::uint32_t;

inline constexpr std::uint64_t kDefaultLatticeBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultCodewordBudget = std::uint64_t{1} << 24;

/// QPL_BUDGET, when set to a positive integer, overrides both default budgets.
inline std::uint64_t budget_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("QPL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}
inline std::uint64_t default_lattice_budget() { return budget_from_env(kDefaultLatticeBudget); }
inline std::uint64_t default_codeword_budget() { return budget_from_env(kDefaultCodewordBudget); }

/// Number of k-dimensional subspaces of F_q^n; 0 when k > n.
inline std::uint64_t gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t q) {
  if (k > n) return 0;
  // Pascal-type recurrence [n,k] = [n-1,k-1] + q^k [n-1,k], row by row.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = std::min(i, k); j >= 1; --j) {
      std::uint64_t qj = 0;
      std::uint64_t term = 0;
      if (!checked_pow(q, j, qj) || __builtin_mul_overflow(qj, row[j], &term) ||
          __builtin_add_overflow(term, row[j - 1], &row[j]))
        throw CapacityError("Gaussian binomial overflows 64 bits");
    }
  }
  return row[k];
}

namespace detail {

/// Calls fn on every k x n matrix in reduced row echelon form of rank k.
inline void for_each_rref(PrimeField field, std::size_t k, std::size_t n, const std::function<void(const Matrix&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
  const std::uint32_t q = field.order();
  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = pivots[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(r, c);
    Matrix m(field, k, n);
    for (std::size_t r = 0; r < k; ++r) m.set(r, pivots[r], 1);
    std::vector<Residue> digits(free_slots.size(), 0);
    while (true) {
      fn(m);
      std::size_t i = 0;
      for (; i < digits.size(); ++i) {
        digits[i] = (digits[i] + 1) % q;
        m.set(free_slots[i].first, free_slots[i].second, digits[i]);
        if (digits[i] != 0) break;
      }
      if (i == digits.size()) break;
    }
    // Next k-combination of pivot columns.
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

inline std::uint64_t encode(std::span<const Residue> v, std::uint32_t q) {
  std::uint64_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * q + v[i];
  return code;
}

inline std::vector<Residue> decode(std::uint64_t code, std::uint32_t q, std::size_t n) {
  std::vector<Residue> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<Residue>(code % q);
    code /= q;
  }
  return v;
}

}  // namespace detail

/// All k-dimensional subspaces of v, in canonical order.
inline std::vector<Subspace> subspaces_of(const Subspace& v, std::size_t k) {
  if (k > v.dim()) throw InputError("requested subspace dimension exceeds dim v");
  std::vector<Subspace> out;
  detail::for_each_rref(v.field(), k, v.dim(), [&](const Matrix& coords) {
    out.push_back(Subspace::row_space(coords * v.basis()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Subspace> hyperplanes_of(const Subspace& v) {
  if (v.dim() == 0) return {};
  return subspaces_of(v, v.dim() - 1);
}

/// All w with v <= w <= within and dim w = dim v + 1.
inline std::vector<Subspace> covers_of(const Subspace& v, const Subspace& within) {
  if (!v.is_subspace_of(within)) throw InputError("covers_of: v is not contained in the bounding space");
  std::vector<Subspace> out;
  if (v.dim() == within.dim()) return out;
  for (const Subspace& line : subspaces_of(within, 1)) {
    if (line.is_subspace_of(v)) continue;
    Subspace w = sum(v, line);
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The complete subspace lattice of F_q^n, built once and then read-only.
class LatticeIndex {
 public:
  static std::shared_ptr<const LatticeIndex> build(PrimeField field, std::size_t n,
                                                   std::uint64_t budget = default_lattice_budget()) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const std::uint64_t c = gaussian_binomial(n, k, field.order());
      if (__builtin_add_overflow(total, c, &total)) throw CapacityError("subspace count overflows");
    }
    if (total > budget)
      throw CapacityError("lattice of F_" + std::to_string(field.order()) + "^" + std::to_string(n) + " has " +
                          std::to_string(total) + " subspaces, above the budget of " + std::to_string(budget));
    return std::shared_ptr<const LatticeIndex>(new LatticeIndex(field, n));
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return spaces_.size(); }

  const Subspace& subspace(Ordinal v) const { return spaces_.at(v); }
  std::size_t dim(Ordinal v) const { return spaces_[v].dim(); }
  std::string key(Ordinal v) const { return spaces_[v].key(); }

  /// Ordinals of the k-dimensional stratum, in canonical order.
  std::span<const Ordinal> stratum(std::size_t k) const {
    return std::span<const Ordinal>(all_).subspan(offsets_.at(k), offsets_.at(k + 1) - offsets_.at(k));
  }
  std::span<const Ordinal> all() const noexcept { return all_; }

  Ordinal zero() const noexcept { return 0; }
  Ordinal full() const noexcept { return static_cast<Ordinal>(spaces_.size() - 1); }

  std::optional<Ordinal> find(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
  }

  Ordinal ordinal_of(const Subspace& v) const {
    if (!(v.field() == field_) || v.ambient_dim() != n_) throw InputError("subspace does not belong to this lattice");
    std::vector<std::uint64_t> bits(words_, 0);
    v.for_each_vector([&](std::span<const Residue> x) {
      const std::uint64_t code = detail::encode(x, field_.order());
      if (code != 0) set_bit(bits.data(), line_of_code_[code]);
    });
    return lookup(bits.data());
  }

  bool leq(Ordinal a, Ordinal b) const noexcept {
    const std::uint64_t* la = lines(a);
    const std::uint64_t* lb = lines(b);
    for (std::size_t w = 0; w < words_; ++w)
      if (la[w] & ~lb[w]) return false;
    return true;
  }

  Ordinal meet(Ordinal a, Ordinal b) const {
    const std::uint64_t* la = lines(a);
    const std::uint64_t* lb = lines(b);
    if (words_ <= kInlineWords) {
      std::array<std::uint64_t, kInlineWords> buf{};
      for (std::size_t w = 0; w < words_; ++w) buf[w] = la[w] & lb[w];
      return lookup(buf.data());
    }
    std::vector<std::uint64_t> buf(words_);
    for (std::size_t w = 0; w < words_; ++w) buf[w] = la[w] & lb[w];
    return lookup(buf.data());
  }

  Ordinal join(Ordinal a, Ordinal b) const { return perp_[meet(perp_[a], perp_[b])]; }

  /// Orthogonal complement under the standard dot product.
  Ordinal perp(Ordinal a) const { return perp_[a]; }

  std::span<const Ordinal> hyperplanes(Ordinal v) const {
    return std::span<const Ordinal>(hyper_).subspan(hyper_off_[v], hyper_off_[v + 1] - hyper_off_[v]);
  }
  /// Upper covers of v inside the full space.
  std::span<const Ordinal> covers(Ordinal v) const {
    return std::span<const Ordinal>(cover_).subspan(cover_off_[v], cover_off_[v + 1] - cover_off_[v]);
  }

  /// All k-dimensional subspaces of v, in canonical order.
  std::vector<Ordinal> subspaces_of(Ordinal v, std::size_t k) const {
    if (k > dim(v)) throw InputError("requested subspace dimension exceeds dim v");
    std::vector<Ordinal> out;
    if (k + 1 == dim(v)) {
      auto h = hyperplanes(v);
      return {h.begin(), h.end()};
    }
    detail::for_each_rref(field_, k, dim(v), [&](const Matrix& coords) {
      out.push_back(ordinal_of(Subspace::row_space(coords * spaces_[v].basis())));
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Subspaces w with v <= w <= within and dim w = dim v + 1.
  std::vector<Ordinal> covers_of(Ordinal v, Ordinal within) const {
    if (!leq(v, within)) throw InputError("covers_of: v is not contained in the bounding space");
    std::vector<Ordinal> out;
    for (Ordinal w : covers(v))
      if (leq(w, within)) out.push_back(w);
    return out;
  }

  std::size_t line_count() const noexcept { return line_count_; }
  std::size_t words() const noexcept { return words_; }
  /// Bitset of the lines (stratum-1 positions) contained in v.
  const std::uint64_t* lines(Ordinal v) const noexcept { return bits_.data() + std::size_t{v} * words_; }
  /// Ordinal of the line with stratum position `line`.
  Ordinal line_ordinal(std::size_t line) const noexcept { return static_cast<Ordinal>(offsets_[1] + line); }
  /// Stratum position of the line spanned by the nonzero vector with the given code.
  std::size_t line_of_code(std::uint64_t code) const { return line_of_code_.at(code); }
  std::size_t line_of(std::span<const Residue> v) const { return line_of_code(detail::encode(v, field_.order())); }
  /// Encoded representative vector of a line.
  std::uint64_t line_code(std::size_t line) const { return line_rep_[line]; }
  std::uint64_t vector_count() const noexcept { return line_of_code_.size(); }

  /// Ordinal of the subspace whose line set is `bits` (words() words); throws if absent.
  Ordinal lookup(const std::uint64_t* bits) const {
    std::size_t slot = hash_bits(bits) & (table_.size() - 1);
    while (true) {
      const Ordinal o = table_[slot];
      if (o == kEmpty) throw InputError("line set does not describe a subspace");
      if (std::equal(bits, bits + words_, lines(o))) return o;
      slot = (slot + 1) & (table_.size() - 1);
    }
  }

  static void set_bit(std::uint64_t* bits, std::size_t i) noexcept { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static bool test_bit(const std::uint64_t* bits, std::size_t i) noexcept { return (bits[i >> 6] >> (i & 63)) & 1; }

 private:
  static constexpr std::size_t kInlineWords = 16;
  static constexpr Ordinal kEmpty = ~Ordinal{0};

  LatticeIndex(PrimeField field, std::size_t n) : field_(field), n_(n) {
    const std::uint32_t q = field.order();
    offsets_.push_back(0);
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<Subspace> stratum;
      detail::for_each_rref(field, k, n, [&](const Matrix& m) { stratum.push_back(Subspace::row_space(m)); });
      std::sort(stratum.begin(), stratum.end());
      for (auto& s : stratum) spaces_.push_back(std::move(s));
      offsets_.push_back(spaces_.size());
    }
    all_.resize(spaces_.size());
    for (std::size_t i = 0; i < all_.size(); ++i) all_[i] = static_cast<Ordinal>(i);
    for (std::size_t i = 0; i < spaces_.size(); ++i) by_key_.emplace(spaces_[i].key(), static_cast<Ordinal>(i));

    // Line table: every nonzero vector maps to the position of its line.
    line_count_ = n >= 1 ? offsets_[2] - offsets_[1] : 0;
    words_ = std::max<std::size_t>(1, (line_count_ + 63) / 64);
    std::uint64_t vectors = 0;
    checked_pow(q, n, vectors);
    line_of_code_.assign(vectors, 0);
    line_rep_.resize(line_count_);
    for (std::size_t l = 0; l < line_count_; ++l) {
      const Subspace& line = spaces_[offsets_[1] + l];
      line_rep_[l] = detail::encode(line.basis().row(0), q);
      std::vector<Residue> v(line.basis().row(0).begin(), line.basis().row(0).end());
      for (Residue c = 1; c < q; ++c) {
        std::vector<Residue> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = field.mul(c, v[j]);
        line_of_code_[detail::encode(w, q)] = l;
      }
    }

    bits_.assign(spaces_.size() * words_, 0);
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      std::uint64_t* b = bits_.data() + i * words_;
      spaces_[i].for_each_vector([&](std::span<const Residue> x) {
        const std::uint64_t code = detail::encode(x, q);
        if (code != 0) set_bit(b, line_of_code_[code]);
      });
    }

    std::size_t cap = 1;
    while (cap < 2 * spaces_.size()) cap <<= 1;
    table_.assign(cap, kEmpty);
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      std::size_t slot = hash_bits(lines(static_cast<Ordinal>(i))) & (cap - 1);
      while (table_[slot] != kEmpty) slot = (slot + 1) & (cap - 1);
      table_[slot] = static_cast<Ordinal>(i);
    }

    perp_.resize(spaces_.size());
    for (std::size_t i = 0; i < spaces_.size(); ++i) perp_[i] = ordinal_of(orthogonal(spaces_[i]));

    build_hyperplanes();
  }

  // Hyperplanes of V are the kernels of the nonzero functionals on V, up to
  // scalars. In RREF coordinates a vector's coordinates are its pivot entries.
  void build_hyperplanes() {
    const std::uint32_t q = field_.order();
    hyper_off_.assign(spaces_.size() + 1, 0);
    std::vector<std::vector<Ordinal>> per(spaces_.size());
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      const Subspace& v = spaces_[i];
      const std::size_t k = v.dim();
      if (k == 0) continue;
      std::vector<std::size_t> pivots;
      for (std::size_t r = 0; r < k; ++r) {
        auto row = v.basis().row(r);
        std::size_t p = 0;
        while (row[p] == 0) ++p;
        pivots.push_back(p);
      }
      std::vector<std::vector<Residue>> functionals;
      detail::for_each_rref(field_, 1, k, [&](const Matrix& m) {
        functionals.emplace_back(m.row(0).begin(), m.row(0).end());
      });
      std::vector<std::uint64_t> hb(functionals.size() * words_, 0);
      const std::uint64_t* lv = lines(static_cast<Ordinal>(i));
      for (std::size_t l = 0; l < line_count_; ++l) {
        if (!test_bit(lv, l)) continue;
        const auto x = detail::decode(line_rep_[l], q, n_);
        for (std::size_t f = 0; f < functionals.size(); ++f) {
          Residue dot = 0;
          for (std::size_t r = 0; r < k; ++r) dot = field_.add(dot, field_.mul(functionals[f][r], x[pivots[r]]));
          if (dot == 0) set_bit(hb.data() + f * words_, l);
        }
      }
      for (std::size_t f = 0; f < functionals.size(); ++f) per[i].push_back(lookup(hb.data() + f * words_));
      std::sort(per[i].begin(), per[i].end());
    }
    std::vector<std::vector<Ordinal>> up(spaces_.size());
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      hyper_off_[i + 1] = hyper_off_[i] + per[i].size();
      hyper_.insert(hyper_.end(), per[i].begin(), per[i].end());
      for (Ordinal h : per[i]) up[h].push_back(static_cast<Ordinal>(i));
    }
    cover_off_.assign(spaces_.size() + 1, 0);
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      cover_off_[i + 1] = cover_off_[i] + up[i].size();
      cover_.insert(cover_.end(), up[i].begin(), up[i].end());
    }
  }

  std::uint64_t hash_bits(const std::uint64_t* bits) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t z = bits[w] + h;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      h = z ^ (z >> 31);
    }
    return h;
  }

  PrimeField field_;
  std::size_t n_;
  std::vector<Subspace> spaces_;
  std::vector<Ordinal> all_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<std::string, Ordinal> by_key_;
  std::size_t line_count_ = 0;
  std::size_t words_ = 1;
  std::vector<std::size_t> line_of_code_;
  std::vector<std::uint64_t> line_rep_;
  std::vector<std::uint64_t> bits_;
  std::vector<Ordinal> table_;
  std::vector<Ordinal> perp_;
  std::vector<std::size_t> hyper_off_;
  std::vector<Ordinal> hyper_;
  std::vector<std::size_t> cover_off_;
  std::vector<Ordinal> cover_;
};

using LatticePtr = std::shared_ptr<const LatticeIndex>;

}  // namespace qpl
