#pragma once

// Candidate (collection, rank values, mu) triples: checking the independent-space
// axioms, extending the rank values to a q-polymatroid, and the round trip back.

#include "qpl/independence.hpp"

namespace qpl {

/// A collection of subspaces with rank values rho~(I) = nu(I) / D and a denominator mu.
class CandidateCollection {
 public:
  CandidateCollection(LatticePtr index, Rational mu, std::int64_t denom, const std::vector<std::pair<Ordinal, std::int64_t>>& members)
      : index_(std::move(index)), mu_(mu), denom_(denom), nu_(index_->size(), kAbsent) {
    if (mu_ <= Rational(0)) throw InputError("mu must be positive");
    if (denom_ <= 0) throw InputError("denominator must be positive");
    for (const auto& [ord, nu] : members) {
      if (ord >= index_->size()) throw InputError("member ordinal outside the lattice");
      if (nu_[ord] != kAbsent) throw InputError("duplicate member '" + index_->key(ord) + "'");
      if (nu < 0) throw InputError("negative rank value for '" + index_->key(ord) + "'");
      if ((mu_.numerator() * nu) % (mu_.denominator() * denom_) != 0)
        throw InputError("mu * rho~ is not an integer at '" + index_->key(ord) + "'");
      nu_[ord] = nu;
    }
    for (Ordinal v : index_->all())
      if (nu_[v] != kAbsent) members_.push_back(v);
  }

  /// Members given as subspaces; they must live in the lattice's ambient space.
  static CandidateCollection from_subspaces(LatticePtr index, Rational mu, std::int64_t denom,
                                            const std::vector<std::pair<Subspace, std::int64_t>>& members) {
    std::vector<std::pair<Ordinal, std::int64_t>> ords;
    for (const auto& [v, nu] : members) {
      if (!(v.field() == index->field()) || v.ambient_dim() != index->ambient_dim())
        throw InputError("member '" + v.key() + "' is outside the ambient lattice");
      ords.emplace_back(index->ordinal_of(v), nu);
    }
    return CandidateCollection(std::move(index), mu, denom, ords);
  }

  /// (I_mu(m), rho restricted to I_mu(m), mu).
  static CandidateCollection from_atlas(const IndependenceAtlas& a) {
    std::vector<std::pair<Ordinal, std::int64_t>> ords;
    for (Ordinal v : a.independents()) ords.emplace_back(v, a.source().tau(v));
    return CandidateCollection(a.source().lattice(), a.mu(), a.source().denom(), ords);
  }

  const LatticePtr& lattice() const noexcept { return index_; }
  const LatticeIndex& index() const noexcept { return *index_; }
  const Rational& mu() const noexcept { return mu_; }
  std::int64_t denom() const noexcept { return denom_; }
  const std::vector<Ordinal>& members() const noexcept { return members_; }
  bool contains(Ordinal v) const { return nu_.at(v) != kAbsent; }
  std::int64_t nu(Ordinal v) const {
    if (!contains(v)) throw InputError("'" + index_->key(v) + "' is not a member");
    return nu_[v];
  }
  Rational rho_tilde(Ordinal v) const { return Rational(nu(v), denom_); }

  /// A copy without one member.
  CandidateCollection without(Ordinal v) const {
    std::vector<std::pair<Ordinal, std::int64_t>> ords;
    for (Ordinal u : members_)
      if (u != v) ords.emplace_back(u, nu_[u]);
    return CandidateCollection(index_, mu_, denom_, ords);
  }

 private:
  static constexpr std::int64_t kAbsent = -1;

  LatticePtr index_;
  Rational mu_;
  std::int64_t denom_;
  std::vector<std::int64_t> nu_;
  std::vector<Ordinal> members_;
};

namespace detail {

/// Lattice-wide tables derived from a candidate.
struct CandidateTables {
  std::vector<char> member;
  std::vector<std::size_t> top;      // largest dimension of a member below V
  std::vector<std::int64_t> best;    // largest nu of a member below V
  std::vector<char> proper_members;  // every proper subspace of V is a member
};

inline CandidateTables candidate_tables(const CandidateCollection& c) {
  const LatticeIndex& L = c.index();
  CandidateTables t;
  t.member.assign(L.size(), 0);
  t.top.assign(L.size(), 0);
  t.best.assign(L.size(), 0);
  t.proper_members.assign(L.size(), 1);
  for (Ordinal v : c.members()) t.member[v] = 1;
  for (Ordinal v : L.all()) {
    std::size_t top = 0;
    std::int64_t best = 0;
    for (Ordinal h : L.hyperplanes(v)) {
      top = std::max(top, t.top[h]);
      best = std::max(best, t.best[h]);
      if (!t.member[h] || !t.proper_members[h]) t.proper_members[v] = 0;
    }
    if (t.member[v]) {
      top = L.dim(v);
      best = std::max(best, c.nu(v));
    }
    t.top[v] = top;
    t.best[v] = best;
  }
  return t;
}

}  // namespace detail

/// Checks (I1)-(I4), (R1')-(R4') and the closure property (C).
inline AxiomReport verify_candidate(const CandidateCollection& c, std::size_t limit = 10, bool early_exit = true) {
  AxiomReport report;
  report.limit = limit;
  const LatticeIndex& L = c.index();
  const auto t = detail::candidate_tables(c);
  const auto& members = c.members();
  const std::int64_t D = c.denom();
  const std::int64_t p = c.mu().numerator();
  const std::int64_t r = c.mu().denominator();
  auto stop = [&] { return early_exit && report.full(); };
  using detail::keys;

  if (!t.member[L.zero()]) report.add({"I1", keys(L, {L.zero()}), 0, 0, "zero space is not a member"});
  for (Ordinal v : members)
    for (Ordinal h : L.hyperplanes(v))
      if (!t.member[h]) report.add({"I2", keys(L, {v, h}), 0, 0, "hyperplane of a member is not a member"});
  if (stop()) return report;
  detail::check_augmentation(L, t.member, members, report, early_exit);
  if (stop()) return report;
  detail::check_basis_sums(L, t.member, members, t.top, "I4", report, early_exit);
  if (stop()) return report;

  for (Ordinal v : members) {
    const auto dim = static_cast<std::int64_t>(L.dim(v));
    const std::int64_t nu = c.nu(v);
    // dim/mu <= nu/D <= dim, scaled by D p.
    if (D * dim * r > p * nu) report.add({"R1'", keys(L, {v}), p * nu, D * dim * r, "rho~(I) < dim I / mu"});
    if (nu > D * dim) report.add({"R1'", keys(L, {v}), nu, D * dim, "rho~(I) > dim I"});
  }
  for (Ordinal j : members)
    for (Ordinal i : members)
      if (i != j && L.dim(i) < L.dim(j) && L.leq(i, j) && c.nu(i) > c.nu(j))
        report.add({"R2'", keys(L, {i, j}), c.nu(i), c.nu(j), "rho~ decreases along I <= J"});
  if (stop()) return report;
  for (std::size_t a = 0; a < members.size() && !stop(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const Ordinal i = members[a], j = members[b];
      const Ordinal meet = L.meet(i, j);
      if (!t.member[meet]) continue;  // reported under (I2)
      const std::int64_t lhs = t.best[L.join(i, j)] + c.nu(meet);
      const std::int64_t rhs = c.nu(i) + c.nu(j);
      if (lhs > rhs) {
        report.add({"R3'", keys(L, {i, j}), lhs, rhs, "max-submodularity fails"});
        if (stop()) break;
      }
    }
  if (stop()) return report;
  for (Ordinal v : L.all()) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = -1;
    Ordinal lo_at = v, hi_at = v;
    for (Ordinal u : L.stratum(t.top[v]))
      if (t.member[u] && L.leq(u, v)) {
        if (c.nu(u) < lo) lo = c.nu(u), lo_at = u;
        if (c.nu(u) > hi) hi = c.nu(u), hi_at = u;
      }
    if (hi >= 0 && lo != hi) {
      report.add({"R4'", keys(L, {v, lo_at, hi_at}), lo, hi, "maximal members below V have different rank values"});
      if (stop()) return report;
    }
  }
  for (Ordinal v : L.all()) {
    if (t.member[v] || !t.proper_members[v]) continue;
    const auto dim = static_cast<std::int64_t>(L.dim(v));
    // max rho~ over members below V >= dim V / mu
    if (p * t.best[v] >= D * dim * r) {
      report.add({"C", keys(L, {v}), p * t.best[v], D * dim * r, "V satisfies (i) and (ii) but is not a member"});
      if (stop()) return report;
    }
  }
  return report;
}

namespace detail {

inline std::string failed_axioms(const AxiomReport& r, bool allow_closure) {
  std::string out;
  for (const auto& v : r.violations) {
    if (allow_closure && v.axiom == "C") continue;
    if (out.find(v.axiom) == std::string::npos) out += (out.empty() ? "" : ", ") + v.axiom;
  }
  return out;
}

}  // namespace detail

/// rho(V) = max rho~ over members below V. Needs (I1)-(I4) and (R1')-(R4').
inline QPolymatroid extend_rank(const CandidateCollection& c) {
  const AxiomReport r = verify_candidate(c, 10, false);
  if (const auto bad = detail::failed_axioms(r, true); !bad.empty())
    throw PreconditionError("candidate fails " + bad + "; extension needs (I1)-(I4) and (R1')-(R4')");
  const auto t = detail::candidate_tables(c);
  return QPolymatroid(c.lattice(), c.denom(), t.best);
}

/// Extends, classifies at mu and compares with the members. Needs (C) as well.
inline AxiomReport roundtrip_check(const CandidateCollection& c, std::size_t limit = 10) {
  const AxiomReport pre = verify_candidate(c, limit, false);
  if (const auto bad = detail::failed_axioms(pre, false); !bad.empty())
    throw PreconditionError("candidate fails " + bad + "; the round trip needs every axiom including (C)");
  const QPolymatroid m = extend_rank(c);
  const IndependenceAtlas a = classify(m, c.mu());
  AxiomReport report;
  report.limit = limit;
  const LatticeIndex& L = c.index();
  for (Ordinal v : L.all()) {
    if (a.is_independent(v) == c.contains(v)) continue;
    report.add({"roundtrip", detail::keys(L, {v}), 0, 0,
                c.contains(v) ? "member is dependent in the extension" : "independent space of the extension is not a member"});
  }
  return report;
}

/// Candidate file: "q <q> n <n> mu <p>/<r> D <D>", then "<key> <nu>" per member.
inline void write_candidate(std::ostream& out, const CandidateCollection& c) {
  const LatticeIndex& L = c.index();
  out << "q " << L.field().order() << " n " << L.ambient_dim() << " mu " << c.mu().numerator() << '/'
      << c.mu().denominator() << " D " << c.denom() << '\n';
  for (Ordinal v : c.members()) out << L.key(v) << ' ' << c.nu(v) << '\n';
}

inline CandidateCollection read_candidate(std::istream& in, LatticePtr index = nullptr) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) throw ParseError(reader.line_number() + 1, 1, "empty candidate file");
  const std::size_t header_line = reader.line_number();
  // Split "mu p/r" out so the numeric keys can share the common header parser.
  const auto mu_pos = line.find(" mu ");
  const auto d_pos = line.find(" D ");
  if (mu_pos == std::string::npos || d_pos == std::string::npos || d_pos < mu_pos)
    throw ParseError(header_line, 1, "expected 'q <q> n <n> mu <p>/<r> D <D>'");
  const auto qn = detail::parse_header(line.substr(0, mu_pos), header_line, {"q", "n"});
  const auto dd = detail::parse_header(line.substr(d_pos + 1), header_line, {"D"});
  Rational mu;
  try {
    mu = parse_rational(line.substr(mu_pos + 4, d_pos - mu_pos - 4));
  } catch (const InputError& e) {
    throw ParseError(header_line, mu_pos + 5, e.what());
  }
  const PrimeField field = detail::parse_field(qn[0], header_line);
  if (!index || !(index->field() == field) || index->ambient_dim() != qn[1]) index = LatticeIndex::build(field, qn[1]);
  std::vector<std::pair<Ordinal, std::int64_t>> members;
  std::vector<char> seen(index->size(), 0);
  while (reader.next(line)) {
    if (detail::LineReader::is_blank(line)) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError(reader.line_number(), line.size() + 1, "expected '<key> <nu>'");
    const std::string key = line.substr(0, space);
    const auto ord = index->find(key);
    if (!ord) throw ParseError(reader.line_number(), 1, "'" + key + "' is not a canonical subspace key");
    if (seen[*ord]) throw ParseError(reader.line_number(), 1, "duplicate member '" + key + "'");
    seen[*ord] = 1;
    std::int64_t value = 0;
    std::size_t pos = space + 1;
    if (pos >= line.size()) throw ParseError(reader.line_number(), pos + 1, "missing rank value");
    for (; pos < line.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(line[pos]))) throw ParseError(reader.line_number(), pos + 1, "rank value must be a nonnegative integer");
      value = value * 10 + (line[pos] - '0');
      if (value > (std::int64_t{1} << 40)) throw ParseError(reader.line_number(), pos + 1, "rank value too large");
    }
    members.emplace_back(*ord, value);
  }
  try {
    return CandidateCollection(index, mu, static_cast<std::int64_t>(dd[0]), members);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(header_line, 1, e.what());
  }
}

}  // namespace qpl
