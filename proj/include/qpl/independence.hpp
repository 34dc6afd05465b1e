#pragma once

// mu-independence and everything derived from it: circuits, loops, bases,
// spanning and strongly independent spaces, the auxiliary q-matroid, and
// exhaustive checks of the structural properties these collections satisfy.

#include "qpl/qpolymatroid.hpp"

namespace qpl {

class IndependenceAtlas;
IndependenceAtlas classify(const QPolymatroid& m, const Rational& mu);

class IndependenceAtlas {
 public:
  const QPolymatroid& source() const noexcept { return source_; }
  const LatticeIndex& index() const noexcept { return source_.index(); }
  const Rational& mu() const noexcept { return mu_; }

  /// mu * rho(V), an integer.
  std::int64_t tau_mu(Ordinal v) const { return tau_mu_.at(v); }
  std::span<const std::int64_t> tau_mu() const noexcept { return tau_mu_; }

  bool is_independent(Ordinal v) const { return independent_.at(v) != 0; }
  /// Largest dimension of an independent subspace of V.
  std::size_t independent_rank(Ordinal v) const { return indep_rank_.at(v); }

  const std::vector<Ordinal>& independents() const noexcept { return independents_; }
  const std::vector<Ordinal>& dependents() const noexcept { return dependents_; }
  const std::vector<Ordinal>& circuits() const noexcept { return circuits_; }
  const std::vector<Ordinal>& loops() const noexcept { return loops_; }
  /// The mu-bases of E.
  const std::vector<Ordinal>& bases() const noexcept { return bases_; }
  const std::vector<Ordinal>& spanning() const noexcept { return spanning_; }
  const std::vector<Ordinal>& minimal_spanning() const noexcept { return minimal_spanning_; }
  const std::vector<Ordinal>& strongly_independent() const noexcept { return strong_; }
  const std::vector<Ordinal>& max_strongly_independent() const noexcept { return max_strong_; }

 private:
  friend IndependenceAtlas classify(const QPolymatroid& m, const Rational& mu);
  IndependenceAtlas(QPolymatroid source, Rational mu) : source_(std::move(source)), mu_(mu) {}

  QPolymatroid source_;
  Rational mu_;
  std::vector<std::int64_t> tau_mu_;
  std::vector<char> independent_;
  std::vector<std::size_t> indep_rank_;
  std::vector<Ordinal> independents_, dependents_, circuits_, loops_, bases_;
  std::vector<Ordinal> spanning_, minimal_spanning_, strong_, max_strong_;
};

/// Bottom-up over the lattice: V is independent iff mu rho(V) >= dim V and every
/// hyperplane of V is independent (every proper subspace lies in a hyperplane).
inline IndependenceAtlas classify(const QPolymatroid& m, const Rational& mu) {
  IndependenceAtlas a(m, mu);
  const LatticeIndex& L = m.index();
  a.tau_mu_ = integer_table(m, mu);
  a.independent_.assign(L.size(), 0);
  a.indep_rank_.assign(L.size(), 0);
  const std::int64_t top = m.tau(L.full());
  for (Ordinal v : L.all()) {
    const auto dim = static_cast<std::int64_t>(L.dim(v));
    bool hyper_indep = true;
    std::size_t best = 0;
    for (Ordinal h : L.hyperplanes(v)) {
      hyper_indep = hyper_indep && a.independent_[h];
      best = std::max(best, a.indep_rank_[h]);
    }
    const bool indep = hyper_indep && a.tau_mu_[v] >= dim;
    a.independent_[v] = indep;
    a.indep_rank_[v] = indep ? L.dim(v) : best;
    (indep ? a.independents_ : a.dependents_).push_back(v);
    if (!indep && hyper_indep) a.circuits_.push_back(v);
    if (dim == 1 && m.tau(v) == 0) a.loops_.push_back(v);
    if (m.tau(v) == top) a.spanning_.push_back(v);
    if (m.tau(v) == m.denom() * dim) a.strong_.push_back(v);
  }
  const std::size_t r = a.indep_rank_[L.full()];
  for (Ordinal v : L.stratum(r))
    if (a.independent_[v]) a.bases_.push_back(v);
  for (Ordinal v : a.spanning_) {
    const auto hs = L.hyperplanes(v);
    if (std::none_of(hs.begin(), hs.end(), [&](Ordinal h) { return m.tau(h) == top; })) a.minimal_spanning_.push_back(v);
  }
  const std::int64_t D = m.denom();
  for (Ordinal v : a.strong_) {
    const auto cs = L.covers(v);
    if (std::none_of(cs.begin(), cs.end(), [&](Ordinal c) { return m.tau(c) == D * static_cast<std::int64_t>(L.dim(c)); }))
      a.max_strong_.push_back(v);
  }
  return a;
}

/// All mu-bases of V: the independent subspaces of V of dimension independent_rank(V).
inline std::vector<Ordinal> bases_of(const IndependenceAtlas& a, Ordinal v) {
  const LatticeIndex& L = a.index();
  std::vector<Ordinal> out;
  for (Ordinal b : L.stratum(a.independent_rank(v)))
    if (a.is_independent(b) && L.leq(b, v)) out.push_back(b);
  return out;
}
inline std::vector<Ordinal> bases_of(const IndependenceAtlas& a, const Subspace& v) {
  return bases_of(a, a.index().ordinal_of(v));
}

/// Rank function of the auxiliary q-matroid, r(V) = min over W <= V of mu rho(W) + dim V - dim W,
/// via r(0) = 0 and r(V) = min(mu rho(V), 1 + min over hyperplanes H of r(H)).
inline QPolymatroid auxiliary_matroid(const QPolymatroid& m, const Rational& mu) {
  const LatticeIndex& L = m.index();
  const auto t = integer_table(m, mu);
  std::vector<std::int64_t> r(L.size(), 0);
  for (Ordinal v : L.all()) {
    std::int64_t best = t[v];
    for (Ordinal h : L.hyperplanes(v)) best = std::min(best, r[h] + 1);
    r[v] = best;
  }
  return QPolymatroid(m.lattice(), 1, std::move(r));
}

/// Non-circuits V with mu rho(V) = dim V - 1, and those among them whose
/// hyperplanes W all have mu rho(W) = dim V - 1.
struct NearCircuits {
  std::vector<Ordinal> deficient;
  std::vector<Ordinal> hyperplane_tight;
};

inline NearCircuits near_circuits(const IndependenceAtlas& a) {
  const LatticeIndex& L = a.index();
  std::vector<char> is_circuit(L.size(), 0);
  for (Ordinal c : a.circuits()) is_circuit[c] = 1;
  NearCircuits out;
  for (Ordinal v : L.all()) {
    const auto dim = static_cast<std::int64_t>(L.dim(v));
    if (dim == 0 || is_circuit[v] || a.tau_mu(v) != dim - 1) continue;
    out.deficient.push_back(v);
    const auto hs = L.hyperplanes(v);
    if (std::all_of(hs.begin(), hs.end(), [&](Ordinal h) { return a.tau_mu(h) == dim - 1; })) out.hyperplane_tight.push_back(v);
  }
  return out;
}

namespace detail {

inline std::vector<std::string> keys(const LatticeIndex& L, std::initializer_list<Ordinal> ords) {
  std::vector<std::string> out;
  for (Ordinal o : ords) out.push_back(L.key(o));
  return out;
}

/// For every member S of `family`, the lines x outside S with S + x in `family`.
inline std::vector<std::uint64_t> extension_bits(const LatticeIndex& L, const std::vector<char>& member,
                                                 const std::vector<Ordinal>& family) {
  const std::size_t w = L.words();
  std::vector<std::uint64_t> ext(L.size() * w, 0);
  for (Ordinal s : family)
    for (Ordinal c : L.covers(s))
      if (member[c]) {
        // Every line of c outside s extends s to c.
        const std::uint64_t* lc = L.lines(c);
        const std::uint64_t* ls = L.lines(s);
        for (std::size_t i = 0; i < w; ++i) ext[s * w + i] |= lc[i] & ~ls[i];
      }
  return ext;
}

inline bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

/// (I3): for I, J in the family with dim I < dim J some line x of J outside I has I + x in the family.
inline void check_augmentation(const LatticeIndex& L, const std::vector<char>& member, const std::vector<Ordinal>& family,
                               AxiomReport& report, bool early_exit) {
  const auto ext = extension_bits(L, member, family);
  const std::size_t w = L.words();
  for (Ordinal i : family)
    for (Ordinal j : family) {
      if (L.dim(i) >= L.dim(j)) continue;
      if (!intersects(ext.data() + i * w, L.lines(j), w)) {
        report.add({"I3", keys(L, {i, j}), 0, 0, "no x in J \\ I with I + <x> in the collection"});
        if (early_exit && report.full()) return;
      }
    }
}

/// (I4) with I_max(V) given by the members of `family` below V of dimension top[V]:
/// for incomparable V, W and I in I_max(V), J in I_max(W) some member of
/// I_max(V + W) lies in I + J, i.e. top[I + J] = top[V + W].
inline void check_basis_sums(const LatticeIndex& L, const std::vector<char>& member, const std::vector<Ordinal>& family,
                             const std::vector<std::size_t>& top, const std::string& label, AxiomReport& report,
                             bool early_exit) {
  const std::size_t n_fam = family.size();
  std::vector<std::uint32_t> slot(L.size(), 0);
  for (std::size_t i = 0; i < n_fam; ++i) slot[family[i]] = static_cast<std::uint32_t>(i);
  // maximal members below each V
  std::vector<std::vector<std::uint32_t>> maxima(L.size());
  for (Ordinal v : L.all())
    for (Ordinal b : L.stratum(top[v]))
      if (member[b] && L.leq(b, v)) maxima[v].push_back(slot[b]);
  // top of I + J for every pair of members, and g(I, W) = min over J in I_max(W) of that value
  std::vector<std::uint8_t> pair_top(n_fam * n_fam);
  for (std::size_t i = 0; i < n_fam; ++i)
    for (std::size_t j = i; j < n_fam; ++j)
      pair_top[i * n_fam + j] = pair_top[j * n_fam + i] = static_cast<std::uint8_t>(top[L.join(family[i], family[j])]);
  std::vector<std::uint8_t> g(n_fam * L.size(), 0xff);
  for (Ordinal w : L.all())
    for (std::uint32_t j : maxima[w])
      for (std::size_t i = 0; i < n_fam; ++i) {
        auto& cell = g[i * L.size() + w];
        cell = std::min(cell, pair_top[i * n_fam + j]);
      }
  for (Ordinal v : L.all())
    for (Ordinal w = v + 1; w < L.size(); ++w) {
      if (L.leq(v, w) || L.leq(w, v)) continue;
      const std::size_t target = top[L.join(v, w)];
      for (std::uint32_t i : maxima[v]) {
        if (g[i * L.size() + w] >= target) continue;
        Ordinal witness_j = family[maxima[w].front()];
        for (std::uint32_t j : maxima[w])
          if (pair_top[i * n_fam + j] < target) {
            witness_j = family[j];
            break;
          }
        report.add({label, keys(L, {v, w, family[i], witness_j}), 0, 0, "no maximal member of V + W inside I + J"});
        if (early_exit && report.full()) return;
        break;
      }
    }
}

}  // namespace detail

/// Exhaustive check of the properties that the independent spaces, dependent
/// spaces, bases and ranks of a q-polymatroid satisfy for a denominator mu.
inline AxiomReport verify_structure(const IndependenceAtlas& a, std::size_t limit = 10, bool early_exit = true) {
  AxiomReport report;
  report.limit = limit;
  const LatticeIndex& L = a.index();
  const QPolymatroid& m = a.source();
  std::vector<char> indep(L.size());
  for (Ordinal v : L.all()) indep[v] = a.is_independent(v);
  auto stop = [&] { return early_exit && report.full(); };
  using detail::keys;

  // Independent spaces.
  if (!indep[L.zero()]) report.add({"I1", keys(L, {L.zero()}), 0, 0, "zero space is dependent"});
  for (Ordinal v : a.independents())
    for (Ordinal h : L.hyperplanes(v))
      if (!indep[h]) report.add({"I2", keys(L, {v, h}), 0, 0, "hyperplane of an independent space is dependent"});
  if (stop()) return report;
  detail::check_augmentation(L, indep, a.independents(), report, early_exit);
  if (stop()) return report;
  std::vector<std::size_t> top(L.size());
  for (Ordinal v : L.all()) top[v] = a.independent_rank(v);
  detail::check_basis_sums(L, indep, a.independents(), top, "I4", report, early_exit);
  if (stop()) return report;

  // Dependent spaces.
  if (!indep[L.zero()]) report.add({"D1", keys(L, {L.zero()}), 0, 0, "zero space is dependent"});
  for (Ordinal v : a.dependents())
    for (Ordinal c : L.covers(v))
      if (indep[c]) report.add({"D2", keys(L, {v, c}), 0, 0, "space above a dependent space is independent"});
  std::vector<char> hyper_dependent(L.size(), 1);
  for (Ordinal v : L.all())
    for (Ordinal h : L.hyperplanes(v))
      if (indep[h]) hyper_dependent[v] = 0;
  const auto& deps = a.dependents();
  for (std::size_t i = 0; i < deps.size() && !stop(); ++i)
    for (std::size_t j = i + 1; j < deps.size(); ++j) {
      if (!indep[L.meet(deps[i], deps[j])]) continue;
      const Ordinal s = L.join(deps[i], deps[j]);
      if (!hyper_dependent[s]) {
        report.add({"D3", keys(L, {deps[i], deps[j]}), 0, 0, "a hyperplane of D1 + D2 is independent although D1 ∩ D2 is independent"});
        if (stop()) break;
      }
    }
  if (stop()) return report;

  // Bases of E.
  const auto& bases = a.bases();
  std::vector<char> is_basis(L.size(), 0);
  for (Ordinal b : bases) is_basis[b] = 1;
  if (bases.empty()) report.add({"B1", {}, 0, 0, "no basis"});
  for (Ordinal b1 : bases)
    for (Ordinal b2 : bases)
      if (b1 != b2 && L.leq(b1, b2)) report.add({"B2", keys(L, {b1, b2}), 0, 0, "basis properly contained in a basis"});
  {
    // Ext(A) = lines y with A + y a basis, for every hyperplane A of a basis.
    std::vector<Ordinal> basis_hyperplanes;
    std::vector<char> seen(L.size(), 0);
    for (Ordinal b : bases)
      for (Ordinal h : L.hyperplanes(b))
        if (!seen[h]) {
          seen[h] = 1;
          basis_hyperplanes.push_back(h);
        }
    const auto ext = detail::extension_bits(L, is_basis, basis_hyperplanes);
    const std::size_t w = L.words();
    for (Ordinal b1 : bases) {
      for (Ordinal h : L.hyperplanes(b1))
        for (Ordinal b2 : bases) {
          if (!L.leq(L.meet(b1, b2), h)) continue;
          if (!detail::intersects(ext.data() + h * w, L.lines(b2), w)) {
            report.add({"B3", keys(L, {b1, b2, h}), 0, 0, "no line Y of B2 with A + Y a basis"});
            if (stop()) return report;
          }
        }
    }
  }
  {
    // Maximal-dimensional intersections of bases with each A, numbered densely.
    std::vector<std::vector<std::uint32_t>> mi(L.size());
    std::vector<Ordinal> members;
    std::vector<std::uint32_t> slot(L.size(), ~std::uint32_t{0});
    for (Ordinal x : L.all()) {
      std::size_t best = 0;
      std::vector<Ordinal> meets;
      for (Ordinal b : bases) meets.push_back(L.meet(b, x));
      for (Ordinal k : meets) best = std::max(best, L.dim(k));
      for (Ordinal k : meets) {
        if (L.dim(k) != best) continue;
        if (slot[k] == ~std::uint32_t{0}) {
          slot[k] = static_cast<std::uint32_t>(members.size());
          members.push_back(k);
        }
        if (std::find(mi[x].begin(), mi[x].end(), slot[k]) == mi[x].end()) mi[x].push_back(slot[k]);
      }
    }
    const std::size_t f = members.size();
    constexpr Ordinal kUnset = ~Ordinal{0};
    std::vector<Ordinal> pair_join(f * f, kUnset);
    // covered[S * size + X]: 0 unknown, 1 some member of MI(S) lies in X, 2 none does.
    std::vector<std::uint8_t> covered(L.size() * L.size(), 0);
    for (Ordinal a1 : L.all()) {
      for (Ordinal a2 = a1 + 1; a2 < L.size(); ++a2) {
        if (L.leq(a1, a2) || L.leq(a2, a1)) continue;
        const Ordinal s = L.join(a1, a2);
        for (std::uint32_t i1 : mi[a1])
          for (std::uint32_t i2 : mi[a2]) {
            Ordinal& x = pair_join[i1 * f + i2];
            if (x == kUnset) x = pair_join[i2 * f + i1] = L.join(members[i1], members[i2]);
            std::uint8_t& c = covered[std::size_t{s} * L.size() + x];
            if (c == 0)
              c = std::any_of(mi[s].begin(), mi[s].end(), [&](std::uint32_t k) { return L.leq(members[k], x); }) ? 1 : 2;
            if (c == 2) {
              report.add({"B4", keys(L, {a1, a2, members[i1], members[i2]}), 0, 0, "no maximal intersection with A1 + A2 inside I1 + I2"});
              if (stop()) return report;
            }
          }
      }
    }
  }

  // Rank values.
  std::vector<std::int64_t> best(L.size(), 0);
  for (Ordinal v : L.all()) {
    std::int64_t b = indep[v] ? m.tau(v) : 0;
    for (Ordinal h : L.hyperplanes(v)) b = std::max(b, best[h]);
    best[v] = b;
    if (b != m.tau(v)) report.add({"rho-max", keys(L, {v}), b, m.tau(v), "max over independent subspaces differs from rho(V)"});
  }
  for (Ordinal v : L.all())
    for (Ordinal b : bases_of(a, v))
      if (m.tau(b) != m.tau(v)) report.add({"basis-rho", keys(L, {v, b}), m.tau(b), m.tau(v), "basis of V with a different rank value"});
  for (Ordinal c : a.circuits())
    if (a.tau_mu(c) != static_cast<std::int64_t>(L.dim(c)) - 1)
      report.add({"circuit-rank", keys(L, {c}), a.tau_mu(c), static_cast<std::int64_t>(L.dim(c)) - 1, "circuit with mu rho(C) != dim C - 1"});
  return report;
}

enum class ProbeKind { matroid_witness, polymatroid_witness, violation };

inline const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::matroid_witness: return "matroid_witness";
    case ProbeKind::polymatroid_witness: return "polymatroid_witness";
    case ProbeKind::violation: return "violation";
  }
  return "?";
}

struct ProbeResult {
  ProbeKind kind;
  /// A mu-basis B with B^perp a mu-basis of the dual, when one exists.
  std::optional<Ordinal> basis;
  std::string note;
};

/// Looks for a mu-basis B of m whose orthogonal is a mu-basis of the dual.
/// Finding one forces m to be a q-matroid; for a q-matroid and mu = 1 every basis must qualify.
inline ProbeResult basis_duality_probe(const QPolymatroid& m, const Rational& mu, const Matrix* gram = nullptr) {
  const LatticeIndex& L = m.index();
  const IndependenceAtlas primal = classify(m, mu);
  const IndependenceAtlas dual_atlas = classify(dual(m, gram), mu);
  const auto perp = perp_table(L, gram);
  std::vector<char> dual_basis(L.size(), 0);
  for (Ordinal b : dual_atlas.bases()) dual_basis[b] = 1;
  const bool matroid = is_q_matroid(m);
  std::optional<Ordinal> found;
  std::optional<Ordinal> failing;
  for (Ordinal b : primal.bases()) {
    if (dual_basis[perp[b]]) {
      if (!found) found = b;
    } else if (!failing) {
      failing = b;
    }
  }
  if (found && !matroid)
    return {ProbeKind::violation, found, "basis with orthogonal basis in a q-polymatroid that is not a q-matroid"};
  if (matroid && mu == Rational(1) && failing)
    return {ProbeKind::violation, failing, "q-matroid basis whose orthogonal is not a basis of the dual"};
  if (found) return {ProbeKind::matroid_witness, found, "B = " + L.key(*found)};
  return {ProbeKind::polymatroid_witness, std::nullopt, "no basis B with B^perp a basis of the dual"};
}

}  // namespace qpl
