#pragma once

// Equivalence and scaling-equivalence of q-polymatroids by backtracking over
// invertible matrices, with fingerprint pre-screening.

#include "qpl/qpolymatroid.hpp"

namespace qpl {

enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct EquivalenceResult {
  Verdict verdict = Verdict::unknown;
  /// For yes: A with rho_b(A V) = scale * rho_a(V) for every V.
  std::optional<Matrix> isomorphism;
  /// For no: why, e.g. "fingerprint dim 2".
  std::string certificate;
  std::uint64_t nodes = 0;
  Rational scale{1};
};

inline constexpr std::uint64_t kDefaultEquivalenceBudget = 5'000'000;

namespace detail {

/// Search for A in GL_n with tb(A V) = ta(V) for all V. Images of e_1, e_2, ...
/// are chosen one at a time; after choosing the image of e_k every subspace of
/// <e_1..e_k> not inside <e_1..e_{k-1}> has a determined image and is checked.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const LatticeIndex& L, std::span<const std::int64_t> ta, std::span<const std::int64_t> tb,
                    std::uint64_t budget)
      : L_(L), ta_(ta), tb_(tb), budget_(budget), n_(L.ambient_dim()), q_(L.field().order()) {
    // Levels: subspaces contained in <e_1..e_k> but not in <e_1..e_{k-1}>, by dimension.
    std::vector<Ordinal> prefix(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) {
      std::vector<std::vector<std::int64_t>> gens;
      for (std::size_t i = 1; i <= k; ++i) gens.push_back(Subspace::unit(n_, i));
      prefix[k] = L.ordinal_of(Subspace::span(L.field(), n_, gens));
    }
    levels_.resize(n_ + 1);
    for (Ordinal v : L.all()) {
      for (std::size_t k = 1; k <= n_; ++k) {
        if (L.leq(v, prefix[k])) {
          if (!L.leq(v, prefix[k - 1])) levels_[k].push_back(v);
          break;
        }
      }
    }
    std::uint64_t total = 1;
    checked_pow(q_, n_, total);
    image_.assign(total * n_, 0);
    in_span_.assign(total, 0);
    chosen_.assign(n_, 0);
    words_ = L.words();
  }

  std::optional<Matrix> run() {
    if (!descend(0)) return std::nullopt;
    Matrix a(L_.field(), n_, n_);
    for (std::size_t c = 0; c < n_; ++c) {
      const auto v = decode(chosen_[c], q_, n_);
      for (std::size_t r = 0; r < n_; ++r) a.set(r, c, v[r]);
    }
    return a;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  // image_ holds, for every code x < q^k of a vector in <e_1..e_k>, the image A x.
  Residue* image(std::uint64_t code) { return image_.data() + code * n_; }

  bool descend(std::size_t k) {
    if (k == n_) return true;
    std::uint64_t qk = 1;
    checked_pow(q_, k, qk);
    const std::uint64_t total = L_.vector_count();
    // Line of e_{k+1} must map to a line with the same rank value.
    const Ordinal e_line = L_.line_ordinal(L_.line_of_code(qk));
    for (std::uint64_t cand = 1; cand < total; ++cand) {
      if (in_span_[cand]) continue;
      const Ordinal cand_line = L_.line_ordinal(L_.line_of_code(cand));
      if (tb_[cand_line] != ta_[e_line]) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      const auto v = decode(cand, q_, n_);
      // Extend images to <e_1..e_{k+1}>: x + t e_{k+1} -> A x + t v.
      std::vector<std::uint64_t> added;
      for (std::uint64_t t = 1; t < q_; ++t) {
        for (std::uint64_t x = 0; x < qk; ++x) {
          Residue* dst = image(x + t * qk);
          const Residue* src = image(x);
          for (std::size_t j = 0; j < n_; ++j)
            dst[j] = L_.field().add(src[j], L_.field().mul(static_cast<Residue>(t), v[j]));
          const std::uint64_t code = encode(std::span<const Residue>(dst, n_), q_);
          in_span_[code] = 1;
          added.push_back(code);
        }
      }
      chosen_[k] = cand;
      const bool ok = check_level(k + 1) && descend(k + 1);
      if (ok) return true;
      for (std::uint64_t code : added) in_span_[code] = 0;
      if (exhausted_) return false;
    }
    return false;
  }

  bool check_level(std::size_t k) {
    std::vector<std::uint64_t> bits(words_);
    for (Ordinal w : levels_[k]) {
      std::fill(bits.begin(), bits.end(), 0);
      const std::uint64_t* lw = L_.lines(w);
      for (std::size_t l = 0; l < L_.line_count(); ++l) {
        if (!LatticeIndex::test_bit(lw, l)) continue;
        const Residue* img = image(L_.line_code(l));
        LatticeIndex::set_bit(bits.data(), L_.line_of_code(encode(std::span<const Residue>(img, n_), q_)));
      }
      if (tb_[L_.lookup(bits.data())] != ta_[w]) return false;
    }
    return true;
  }

  const LatticeIndex& L_;
  std::span<const std::int64_t> ta_;
  std::span<const std::int64_t> tb_;
  std::uint64_t budget_;
  std::size_t n_;
  std::uint32_t q_;
  std::size_t words_ = 1;
  std::vector<std::vector<Ordinal>> levels_;
  std::vector<Residue> image_;
  std::vector<char> in_span_;
  std::vector<std::uint64_t> chosen_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

inline EquivalenceResult equivalent_tables(const LatticeIndex& L, std::span<const std::int64_t> ta,
                                           std::span<const std::int64_t> tb, std::uint64_t budget) {
  EquivalenceResult result;
  for (std::size_t k = 0; k <= L.ambient_dim(); ++k) {
    std::map<std::int64_t, std::size_t> fa, fb;
    for (Ordinal v : L.stratum(k)) {
      ++fa[ta[v]];
      ++fb[tb[v]];
    }
    if (fa != fb) {
      result.verdict = Verdict::no;
      result.certificate = "fingerprint dim " + std::to_string(k);
      return result;
    }
  }
  IsomorphismSearch search(L, ta, tb, budget);
  auto iso = search.run();
  result.nodes = search.nodes();
  if (iso) {
    result.verdict = Verdict::yes;
    result.isomorphism = std::move(iso);
  } else if (search.exhausted()) {
    result.verdict = Verdict::unknown;
    result.certificate = "node budget exhausted";
  } else {
    result.verdict = Verdict::no;
    result.certificate = "exhaustive search";
  }
  return result;
}

inline void check_same_ground(const QPolymatroid& a, const QPolymatroid& b) {
  if (!(a.field() == b.field()) || a.ground_dim() != b.ground_dim())
    throw InputError("q-polymatroids live on different ground spaces");
}

}  // namespace detail

/// Decides whether rho_b(A V) = rho_a(V) for some invertible A.
inline EquivalenceResult is_equivalent(const QPolymatroid& a, const QPolymatroid& b,
                                       std::uint64_t budget = kDefaultEquivalenceBudget) {
  detail::check_same_ground(a, b);
  // Compare rho on the common denominator lcm(Da, Db).
  const std::int64_t l = std::lcm(a.denom(), b.denom());
  const auto ta = integer_table(a, Rational(l));
  const auto tb = integer_table(b, Rational(l));
  return detail::equivalent_tables(a.index(), ta, tb, budget);
}

/// Decides whether rho_b(A V) = s rho_a(V) for some A and s > 0. The only
/// admissible scale is the ratio of principal denominators.
inline EquivalenceResult is_scaling_equivalent(const QPolymatroid& a, const QPolymatroid& b,
                                               std::uint64_t budget = kDefaultEquivalenceBudget) {
  detail::check_same_ground(a, b);
  const Rational mu_a = principal_denominator(a);
  const Rational mu_b = principal_denominator(b);
  const auto ta = integer_table(a, mu_a);
  const auto tb = integer_table(b, mu_b);
  EquivalenceResult r = detail::equivalent_tables(a.index(), ta, tb, budget);
  r.scale = mu_a / mu_b;
  return r;
}

}  // namespace qpl
