#pragma once

// q-polymatroids as exact integer rank tables over a subspace lattice.

#include "qpl/lattice.hpp"

#include <map>

namespace qpl {

/// Rank function rho = tau / D over every subspace of F_q^n.
///
/// Values are integers against a common denominator, so every comparison is
/// exact. Construction only checks totality; the rank axioms are data and are
/// checked by verify_axioms.
class QPolymatroid {
 public:
  QPolymatroid(LatticePtr index, std::int64_t denom, std::vector<std::int64_t> tau)
      : index_(std::move(index)), denom_(denom), tau_(std::move(tau)) {
    if (!index_) throw InputError("q-polymatroid needs a lattice");
    if (denom_ <= 0) throw InputError("denominator must be positive");
    if (tau_.size() != index_->size())
      throw InputError("rank table has " + std::to_string(tau_.size()) + " entries, lattice has " + std::to_string(index_->size()));
  }

  const LatticePtr& lattice() const noexcept { return index_; }
  const LatticeIndex& index() const noexcept { return *index_; }
  const PrimeField& field() const noexcept { return index_->field(); }
  std::size_t ground_dim() const noexcept { return index_->ambient_dim(); }
  std::int64_t denom() const noexcept { return denom_; }

  std::int64_t tau(Ordinal v) const { return tau_.at(v); }
  std::span<const std::int64_t> tau() const noexcept { return tau_; }
  Rational rho(Ordinal v) const { return Rational(tau_.at(v), denom_); }
  Rational rho(const Subspace& v) const { return rho(index_->ordinal_of(v)); }
  /// rho(E).
  Rational rank() const { return rho(index_->full()); }

  /// Equality of the rank functions rho (denominators may differ).
  friend bool operator==(const QPolymatroid& a, const QPolymatroid& b) {
    if (!(a.field() == b.field()) || a.ground_dim() != b.ground_dim()) return false;
    for (std::size_t i = 0; i < a.tau_.size(); ++i)
      if (a.tau_[i] * b.denom_ != b.tau_[i] * a.denom_) return false;
    return true;
  }

 private:
  LatticePtr index_;
  std::int64_t denom_;
  std::vector<std::int64_t> tau_;
};

struct Violation {
  std::string axiom;
  std::vector<std::string> witnesses;  // subspace keys
  Rational lhs{0};
  Rational rhs{0};
  std::string note;
};

/// Violations found by a verifier, capped at `limit` entries. ok() iff none were found.
struct AxiomReport {
  std::vector<Violation> violations;
  std::size_t limit = 10;
  std::size_t total = 0;

  bool ok() const noexcept { return total == 0; }
  bool full() const noexcept { return violations.size() >= limit; }
  void add(Violation v) {
    ++total;
    if (violations.size() < limit) violations.push_back(std::move(v));
  }
  void merge(const AxiomReport& other) {
    total += other.total;
    for (const auto& v : other.violations)
      if (violations.size() < limit) violations.push_back(v);
  }
  bool has(std::string_view axiom) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; });
  }
};

inline std::ostream& operator<<(std::ostream& out, const AxiomReport& r) {
  if (r.ok()) return out << "ok\n";
  out << r.total << " violation(s)\n";
  for (const auto& v : r.violations) {
    out << "  " << v.axiom << ":";
    for (const auto& w : v.witnesses) out << " [" << w << "]";
    if (v.lhs != Rational(0) || v.rhs != Rational(0)) out << " lhs=" << to_string(v.lhs) << " rhs=" << to_string(v.rhs);
    if (!v.note.empty()) out << " (" << v.note << ")";
    out << '\n';
  }
  return out;
}

/// Checks (R1) on every space, (R2) on every cover pair and (R3) on every
/// incomparable pair. With early_exit the scan stops once `limit` violations are recorded.
inline AxiomReport verify_axioms(const QPolymatroid& m, std::size_t limit = 10, bool early_exit = true) {
  AxiomReport report;
  report.limit = limit;
  const LatticeIndex& L = m.index();
  const std::int64_t D = m.denom();
  for (Ordinal v : L.all()) {
    const auto dim = static_cast<std::int64_t>(L.dim(v));
    if (m.tau(v) < 0 || m.tau(v) > D * dim)
      report.add({"R1", {L.key(v)}, m.rho(v), Rational(dim), "need 0 <= rho(V) <= dim V"});
  }
  for (Ordinal v : L.all()) {
    for (Ordinal h : L.hyperplanes(v))
      if (m.tau(h) > m.tau(v)) report.add({"R2", {L.key(h), L.key(v)}, m.rho(h), m.rho(v), "rho(H) > rho(V) for H < V"});
  }
  if (early_exit && report.full()) return report;
  const auto n = static_cast<Ordinal>(L.size());
  for (Ordinal a = 0; a < n; ++a) {
    for (Ordinal b = a + 1; b < n; ++b) {
      if (L.leq(a, b) || L.leq(b, a)) continue;
      const Ordinal j = L.join(a, b);
      const Ordinal i = L.meet(a, b);
      const std::int64_t lhs = m.tau(j) + m.tau(i);
      const std::int64_t rhs = m.tau(a) + m.tau(b);
      if (lhs > rhs) {
        report.add({"R3", {L.key(a), L.key(b)}, Rational(lhs, D), Rational(rhs, D), "rho(V+W)+rho(V^W) > rho(V)+rho(W)"});
        if (early_exit && report.full()) return report;
      }
    }
  }
  return report;
}

/// Smallest positive rational mu with mu * rho integer-valued; 1 for the zero map.
inline Rational principal_denominator(const QPolymatroid& m) {
  std::int64_t g = 0;
  for (std::int64_t t : m.tau()) g = std::gcd(g, t);
  if (g == 0) return Rational(1);
  return Rational(m.denom(), g);
}

inline bool is_denominator(const QPolymatroid& m, const Rational& mu) {
  if (mu <= Rational(0)) return false;
  // mu * tau / D = p tau / (r D) must be integral.
  const std::int64_t div = mu.denominator() * m.denom();
  return std::all_of(m.tau().begin(), m.tau().end(),
                     [&](std::int64_t t) { return (mu.numerator() * t) % div == 0; });
}

/// Integer-valued rank function (principal denominator 1).
inline bool is_q_matroid(const QPolymatroid& m) { return principal_denominator(m) == Rational(1); }

/// The induced integer table mu * rho. mu must be a denominator.
inline std::vector<std::int64_t> integer_table(const QPolymatroid& m, const Rational& mu) {
  if (!is_denominator(m, mu))
    throw InputError("mu = " + to_string(mu) + " is not a denominator (principal denominator " +
                     to_string(principal_denominator(m)) + ")");
  std::vector<std::int64_t> out(m.tau().size());
  const std::int64_t div = mu.denominator() * m.denom();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mu.numerator() * m.tau()[i] / div;
  return out;
}

/// The same rank function re-expressed as tau / D with D = mu (mu a positive integer denominator).
inline QPolymatroid with_denominator(const QPolymatroid& m, std::int64_t denom) {
  return QPolymatroid(m.lattice(), denom, integer_table(m, Rational(denom)));
}

/// Uniform q-matroid rho(V) = min{k, dim V}.
inline QPolymatroid uniform(std::size_t k, const LatticePtr& index) {
  if (k > index->ambient_dim()) throw InputError("uniform rank exceeds the ground dimension");
  std::vector<std::int64_t> tau(index->size());
  for (Ordinal v : index->all()) tau[v] = static_cast<std::int64_t>(std::min(k, index->dim(v)));
  return QPolymatroid(index, 1, std::move(tau));
}

/// Orthogonal complements of every subspace under the given Gram matrix.
inline std::vector<Ordinal> perp_table(const LatticeIndex& L, const Matrix* gram) {
  std::vector<Ordinal> perp(L.size());
  for (Ordinal v : L.all()) perp[v] = gram ? L.ordinal_of(orthogonal(L.subspace(v), *gram)) : L.perp(v);
  return perp;
}

inline void check_gram(const LatticeIndex& L, const Matrix& gram) {
  if (!(gram.field() == L.field()) || gram.rows() != L.ambient_dim() || !gram.is_square())
    throw InputError("Gram matrix must be " + std::to_string(L.ambient_dim()) + "x" + std::to_string(L.ambient_dim()) + " over the ground field");
  if (!gram.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  if (!gram.is_invertible()) throw InputError("Gram matrix is singular");
}

/// Dual rho*(V) = dim V + rho(V^perp) - rho(E); the standard dot product when gram is null.
inline QPolymatroid dual(const QPolymatroid& m, const Matrix* gram = nullptr) {
  const LatticeIndex& L = m.index();
  if (gram) check_gram(L, *gram);
  const auto perp = perp_table(L, gram);
  const std::int64_t D = m.denom();
  const std::int64_t top = m.tau(L.full());
  std::vector<std::int64_t> tau(L.size());
  for (Ordinal v : L.all()) tau[v] = D * static_cast<std::int64_t>(L.dim(v)) + m.tau(perp[v]) - top;
  return QPolymatroid(m.lattice(), D, std::move(tau));
}
inline QPolymatroid dual(const QPolymatroid& m, const Matrix& gram) { return dual(m, &gram); }

/// Per dimension, the multiset of rank values (value -> count).
using Fingerprint = std::map<std::size_t, std::map<Rational, std::size_t>>;

inline Fingerprint fingerprint(const QPolymatroid& m) {
  Fingerprint fp;
  for (Ordinal v : m.index().all()) ++fp[m.index().dim(v)][m.rho(v)];
  return fp;
}

/// The q-polymatroid m' with m'(A V) = m(V), for A invertible.
inline QPolymatroid relabel(const QPolymatroid& m, const Matrix& a) {
  if (!a.is_invertible()) throw InputError("relabeling matrix is singular");
  const LatticeIndex& L = m.index();
  std::vector<std::int64_t> tau(L.size(), 0);
  for (Ordinal v : L.all()) tau[L.ordinal_of(apply(a, L.subspace(v)))] = m.tau(v);
  return QPolymatroid(m.lattice(), m.denom(), std::move(tau));
}

/// QPM text format: "q <q> n <n> D <D>", then "<key> <tau>" per subspace in canonical order.
inline void write_qpm(std::ostream& out, const QPolymatroid& m) {
  const LatticeIndex& L = m.index();
  out << "q " << L.field().order() << " n " << L.ambient_dim() << " D " << m.denom() << '\n';
  for (Ordinal v : L.all()) out << L.key(v) << ' ' << m.tau(v) << '\n';
}

/// Reads a QPM file. Lines may appear in any order but must cover the lattice exactly once.
/// A lattice with matching parameters may be supplied for reuse.
inline QPolymatroid read_qpm(std::istream& in, LatticePtr index = nullptr) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) throw ParseError(reader.line_number() + 1, 1, "empty q-polymatroid file");
  const auto h = detail::parse_header(line, reader.line_number(), {"q", "n", "D"});
  const PrimeField field = detail::parse_field(h[0], reader.line_number());
  if (h[2] == 0) throw ParseError(reader.line_number(), 1, "denominator must be positive");
  if (!index || !(index->field() == field) || index->ambient_dim() != h[1]) index = LatticeIndex::build(field, h[1]);
  std::vector<std::int64_t> tau(index->size(), -1);
  while (reader.next(line)) {
    if (detail::LineReader::is_blank(line)) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError(reader.line_number(), line.size() + 1, "expected '<key> <tau>'");
    const std::string key = line.substr(0, space);
    const auto ord = index->find(key);
    if (!ord) throw ParseError(reader.line_number(), 1, "'" + key + "' is not a canonical subspace key");
    std::size_t pos = space + 1;
    std::int64_t value = 0;
    if (pos >= line.size()) throw ParseError(reader.line_number(), pos + 1, "missing rank value");
    for (; pos < line.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(line[pos]))) throw ParseError(reader.line_number(), pos + 1, "rank value must be a nonnegative integer");
      value = value * 10 + (line[pos] - '0');
      if (value > (std::int64_t{1} << 40)) throw ParseError(reader.line_number(), pos + 1, "rank value too large");
    }
    if (tau[*ord] != -1) throw ParseError(reader.line_number(), 1, "duplicate entry for '" + key + "'");
    tau[*ord] = value;
  }
  for (Ordinal v : index->all())
    if (tau[v] < 0) throw ParseError(reader.line_number() + 1, 1, "missing entry for subspace '" + index->key(v) + "'");
  return QPolymatroid(index, static_cast<std::int64_t>(h[2]), std::move(tau));
}

}  // namespace qpl
