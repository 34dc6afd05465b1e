#pragma once

// Worked examples as self-checking records: each check pairs an expected
// value (stored here as text) with the value recomputed from scratch.

#include "qpl/cryptomorphism.hpp"
#include "qpl/equivalence.hpp"
#include "qpl/fixtures.hpp"
#include "qpl/independence.hpp"

#include <set>
#include <tuple>

namespace qpl {

/// rho(x) = 1 on the 2-space x and min{dim V, 2} elsewhere; a q-matroid for n >= 3.
inline QPolymatroid plane_defect_matroid(const LatticePtr& index, const Subspace& x) {
  if (x.dim() != 2) throw InputError("the special space must be 2-dimensional");
  const Ordinal special = index->ordinal_of(x);
  std::vector<std::int64_t> tau(index->size());
  for (Ordinal v : index->all())
    tau[v] = v == special ? 1 : static_cast<std::int64_t>(std::min<std::size_t>(index->dim(v), 2));
  return QPolymatroid(index, 1, std::move(tau));
}

/// "dim 1: 1; dim 4: 496"; "none" for an empty list.
inline std::string counts_by_dim(const LatticeIndex& L, const std::vector<Ordinal>& spaces) {
  std::map<std::size_t, std::size_t> counts;
  for (Ordinal v : spaces) ++counts[L.dim(v)];
  if (counts.empty()) return "none";
  std::string out;
  for (const auto& [k, c] : counts) {
    if (!out.empty()) out += "; ";
    out += "dim " + std::to_string(k) + ": " + std::to_string(c);
  }
  return out;
}

/// Rank-value multiset over one stratum, e.g. "1x1, 3/2x28, 2x126".
inline std::string value_counts(const QPolymatroid& m, std::size_t k) {
  std::map<Rational, std::size_t> counts;
  for (Ordinal v : m.index().stratum(k)) ++counts[m.rho(v)];
  std::string out;
  for (const auto& [r, c] : counts) {
    if (!out.empty()) out += ", ";
    out += to_string(r) + "x" + std::to_string(c);
  }
  return out;
}

namespace registry {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass() const { return expected == actual; }
};

struct ExampleRecord {
  std::string id;
  std::string summary;
  std::vector<Check> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string verdict_text(const EquivalenceResult& r) {
  std::string s = to_string(r.verdict);
  if (!r.certificate.empty()) s += " (" + r.certificate + ")";
  return s;
}

inline QPolymatroid code_polymatroid(const fixtures::CodeFixture& f) {
  const RankMetricCode c = fixtures::code(f);
  return column_polymatroid(c, LatticeIndex::build(c.field(), c.n()));
}

inline Ordinal span_of(const LatticeIndex& L, const std::vector<std::vector<std::int64_t>>& gens) {
  return L.ordinal_of(Subspace::span(L.field(), L.ambient_dim(), gens));
}

inline std::size_t count_value(const QPolymatroid& m, std::size_t k, const Rational& r) {
  return static_cast<std::size_t>(
      std::count_if(m.index().stratum(k).begin(), m.index().stratum(k).end(), [&](Ordinal v) { return m.rho(v) == r; }));
}

/// Candidate of the closure counterexample: every subspace of F_2^3 except
/// <e1+e2, e3> and F_2^3, with the rank values of the 3x3 code's polymatroid.
inline CandidateCollection closure_counterexample(const QPolymatroid& m) {
  const LatticeIndex& L = m.index();
  const Ordinal skip = span_of(L, {{1, 1, 0}, {0, 0, 1}});
  std::vector<std::pair<Ordinal, std::int64_t>> members;
  for (Ordinal v : L.all())
    if (v != skip && v != L.full()) members.emplace_back(v, m.tau(v));
  return CandidateCollection(m.lattice(), Rational(3), m.denom(), members);
}

inline ExampleRecord mrd_pair() {
  ExampleRecord r{"ex-2-17", "two 5x2 binary MRD codes with non-equivalent column polymatroids", {}};
  const QPolymatroid m1 = code_polymatroid(fixtures::ex_2_17_c1());
  const QPolymatroid m2 = code_polymatroid(fixtures::ex_2_17_c2());
  for (const auto& [label, f] : {std::pair{"C1", fixtures::ex_2_17_c1()}, std::pair{"C2", fixtures::ex_2_17_c2()}}) {
    const CodeReport rep = analyze(fixtures::code(f));
    r.checks.push_back({std::string(label) + " dim, rank distance, MRD", "k=5 d=2 mrd=yes",
                        "k=" + std::to_string(rep.dim) + " d=" + std::to_string(rep.d.value_or(0)) +
                            " mrd=" + yes_no(rep.is_mrd)});
  }
  for (const auto& [label, m] : {std::pair{"C1", &m1}, std::pair{"C2", &m2}}) {
    r.checks.push_back({std::string(label) + " values on dim 0", "0x1", value_counts(*m, 0)});
    r.checks.push_back({std::string(label) + " values on dim 1", "1x31", value_counts(*m, 1)});
    r.checks.push_back({std::string(label) + " values on dim 4", "5/2x31", value_counts(*m, 4)});
    r.checks.push_back({std::string(label) + " values on dim 5", "5/2x1", value_counts(*m, 5)});
  }
  r.checks.push_back({"C1 values on dim 2", "1x1, 3/2x28, 2x126", value_counts(m1, 2)});
  r.checks.push_back({"C2 values on dim 2", "3/2x31, 2x124", value_counts(m2, 2)});
  r.checks.push_back({"C1 vs C2 equivalent", "no (fingerprint dim 2)", verdict_text(is_equivalent(m1, m2))});
  return r;
}

inline ExampleRecord small_code() {
  ExampleRecord r{"ex-3-3a", "3x3 binary code whose subspaces are all 3-independent", {}};
  const QPolymatroid m = code_polymatroid(fixtures::ex_3_3a());
  const LatticeIndex& L = m.index();
  const Ordinal x = span_of(L, {{1, 1, 0}, {0, 0, 1}});
  r.checks.push_back({"values on lines", "2/3x7", value_counts(m, 1)});
  r.checks.push_back({"value on <e1+e2, e3>", "2/3", to_string(m.rho(x))});
  std::map<Rational, std::size_t> rest;
  for (Ordinal v : L.all())
    if (L.dim(v) >= 2 && v != x) ++rest[m.rho(v)];
  std::string rest_text;
  for (const auto& [val, c] : rest) rest_text += (rest_text.empty() ? "" : ", ") + to_string(val) + "x" + std::to_string(c);
  r.checks.push_back({"values on the other nonzero spaces", "1x7", rest_text});
  const Rational mu = principal_denominator(m);
  r.checks.push_back({"principal denominator", "3", to_string(mu)});
  const IndependenceAtlas a = classify(m, mu);
  r.checks.push_back({"3-independent spaces", "16 of 16",
                      std::to_string(a.independents().size()) + " of " + std::to_string(L.size())});
  return r;
}

inline ExampleRecord unit_code() {
  ExampleRecord r{"ex-3-3b", "5x3 code spanned by unit matrices: a dependent space can outrank an independent one", {}};
  const QPolymatroid m = code_polymatroid(fixtures::ex_3_3b());
  const LatticeIndex& L = m.index();
  const IndependenceAtlas a = classify(m, Rational(3));
  const Ordinal i = span_of(L, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  const Ordinal v = span_of(L, {{1, 1, 0, 0, 0}, {0, 0, 0, 0, 1}});
  r.checks.push_back({"<e2, e3> independent", "yes", yes_no(a.is_independent(i))});
  r.checks.push_back({"value on <e2, e3>", "2/3", to_string(m.rho(i))});
  r.checks.push_back({"<e1+e2, e5> independent", "no", yes_no(a.is_independent(v))});
  r.checks.push_back({"value on <e1+e2, e5>", "1", to_string(m.rho(v))});
  return r;
}

inline ExampleRecord linear_code_circuits() {
  ExampleRecord r{"ex-3-8", "right F_4-linear 6x4 code: circuits and near-circuits", {}};
  const auto f = fixtures::ex_3_8();
  const RankMetricCode c = fixtures::code(f);
  const CodeReport rep = analyze(c);
  r.checks.push_back({"dimension", "6", std::to_string(rep.dim)});
  r.checks.push_back({"rank distance", "3", std::to_string(rep.d.value_or(0))});
  r.checks.push_back({"right F_4-linear at X = I", "yes",
                      yes_no(is_right_linear(c, fixtures::ex_3_8_polynomial(), 2, Matrix::identity(c.field(), c.m())))});
  const QPolymatroid m = column_polymatroid(c, LatticeIndex::build(c.field(), c.n()));
  const Rational mu = principal_denominator(m);
  r.checks.push_back({"principal denominator", "2", to_string(mu)});
  const IndependenceAtlas a = classify(m, mu);
  r.checks.push_back({"circuits", "total 497; dim 1: 1; dim 4: 496",
                      "total " + std::to_string(a.circuits().size()) + "; " + counts_by_dim(m.index(), a.circuits())});
  const NearCircuits nc = near_circuits(a);
  r.checks.push_back({"non-circuits with 2 rho(V) = dim V - 1", "169", std::to_string(nc.deficient.size())});
  std::set<std::size_t> dims;
  for (Ordinal v : nc.deficient) dims.insert(m.index().dim(v));
  r.checks.push_back({"their dimensions lie in {2, 3, 4}", "yes",
                      yes_no(!dims.empty() && *dims.begin() >= 2 && *dims.rbegin() <= 4)});
  r.checks.push_back({"of those, tight on every hyperplane", "97", std::to_string(nc.hyperplane_tight.size())});
  return r;
}

inline ExampleRecord auxiliary_counterexample() {
  ExampleRecord r{"ex-3-10b", "q-matroid on F_2^3 with one deficient plane; its auxiliary q-matroid at mu = 2", {}};
  const auto L = LatticeIndex::build(PrimeField(2), 3);
  const QPolymatroid m = plane_defect_matroid(L, Subspace::span(PrimeField(2), 3, {{1, 0, 0}, {0, 1, 0}}));
  r.checks.push_back({"rank axioms", "ok", verify_axioms(m).ok() ? "ok" : "violated"});
  r.checks.push_back({"principal denominator", "1", to_string(principal_denominator(m))});
  const QPolymatroid z = auxiliary_matroid(m, Rational(2));
  bool min4 = true;
  for (Ordinal v : L->all()) min4 = min4 && z.tau(v) == static_cast<std::int64_t>(std::min<std::size_t>(L->dim(v), 4));
  r.checks.push_back({"r(V) = min{dim V, 4} for all V", "yes", yes_no(min4)});
  r.checks.push_back({"Z(M, 2) = Z(U_2, 2)", "yes", yes_no(z == auxiliary_matroid(uniform(2, L), Rational(2)))});
  r.checks.push_back({"M equivalent to Z(M, 2)", "no", to_string(is_equivalent(m, z).verdict)});
  return r;
}

inline ExampleRecord mrd_bases() {
  ExampleRecord r{"ex-4-6a", "the MRD pair: every space 2-independent, unique basis F_2^5", {}};
  const QPolymatroid m1 = code_polymatroid(fixtures::ex_2_17_c1());
  const QPolymatroid m2 = code_polymatroid(fixtures::ex_2_17_c2());
  for (const auto& [label, m] : {std::pair{"C1", &m1}, std::pair{"C2", &m2}}) {
    const std::string p = label;
    const Rational mu = principal_denominator(*m);
    r.checks.push_back({p + " principal denominator", "2", to_string(mu)});
    const IndependenceAtlas a = classify(*m, mu);
    r.checks.push_back({p + " 2-independent spaces", "374 of 374",
                        std::to_string(a.independents().size()) + " of " + std::to_string(m->index().size())});
    std::string bases;
    for (Ordinal b : a.bases()) bases += (bases.empty() ? "" : " ") + m->index().key(b) + " rho=" + to_string(m->rho(b));
    r.checks.push_back({p + " 2-bases", "10000;01000;00100;00010;00001 rho=5/2", bases});
  }
  r.checks.push_back({"C1 vs C2 equivalent", "no", to_string(is_equivalent(m1, m2).verdict)});
  return r;
}

inline ExampleRecord shared_bases() {
  ExampleRecord r{"ex-4-6b", "4x3 codes C, C' with the same bases and non-equivalent polymatroids", {}};
  const QPolymatroid m = code_polymatroid(fixtures::ex_4_6c());
  const QPolymatroid mp = code_polymatroid(fixtures::ex_4_6cprime());
  for (const auto& [label, q, ones] : {std::tuple{"M", &m, "33"}, std::tuple{"M'", &mp, "32"}}) {
    const std::string p = label;
    const Rational mu = principal_denominator(*q);
    r.checks.push_back({p + " principal denominator", "3", to_string(mu)});
    const IndependenceAtlas a = classify(*q, mu);
    std::string deps;
    for (Ordinal v : a.dependents()) deps += (deps.empty() ? "" : " ") + q->index().key(v);
    r.checks.push_back({p + " dependent spaces", "1000;0100;0010;0001", deps});
    r.checks.push_back({p + " bases", "dim 3: 15", counts_by_dim(q->index(), a.bases())});
    std::set<Rational> base_values;
    for (Ordinal b : a.bases()) base_values.insert(q->rho(b));
    std::string bv;
    for (const Rational& x : base_values) bv += (bv.empty() ? "" : ", ") + to_string(x);
    r.checks.push_back({p + " rank values of bases", "1", bv});
    r.checks.push_back({p + " dim-2 spaces with value 1", ones, std::to_string(count_value(*q, 2, Rational(1)))});
    r.checks.push_back({p + " dim-1 spaces with value 1", "4", std::to_string(count_value(*q, 1, Rational(1)))});
  }
  r.checks.push_back({"M vs M' equivalent", "no (fingerprint dim 1)", verdict_text(is_equivalent(m, mp))});
  return r;
}

inline ExampleRecord closure_property() {
  ExampleRecord r{"ex-4-8", "a candidate satisfying every axiom except the closure property", {}};
  const QPolymatroid m = code_polymatroid(fixtures::ex_3_3a());
  const CandidateCollection c = closure_counterexample(m);
  const AxiomReport rep = verify_candidate(c, 10, false);
  std::string failed;
  for (const auto& v : rep.violations) {
    failed += (failed.empty() ? "" : " ") + v.axiom;
    for (const auto& w : v.witnesses) failed += " at " + w;
  }
  r.checks.push_back({"failed axioms", "C at 110;001", failed.empty() ? "none" : failed});
  r.checks.push_back({"members vs 3-independent spaces", "14 of 16",
                      std::to_string(c.members().size()) + " of " +
                          std::to_string(classify(m, Rational(3)).independents().size())});
  r.checks.push_back({"extension equals the 3x3 code's polymatroid", "yes", yes_no(extend_rank(c) == m)});
  std::string rt = "accepted";
  try {
    roundtrip_check(c);
  } catch (const PreconditionError&) {
    rt = "rejected";
  }
  r.checks.push_back({"round trip", "rejected", rt});
  return r;
}

inline ExampleRecord minimal_spanning() {
  ExampleRecord r{"ex-5-3", "minimal spanning spaces of the MRD code C1 and of M", {}};
  const QPolymatroid m1 = code_polymatroid(fixtures::ex_2_17_c1());
  const IndependenceAtlas a1 = classify(m1, principal_denominator(m1));
  r.checks.push_back({"C1 minimal spanning spaces", "dim 3: 126", counts_by_dim(m1.index(), a1.minimal_spanning())});
  const QPolymatroid m = code_polymatroid(fixtures::ex_4_6c());
  const IndependenceAtlas a = classify(m, principal_denominator(m));
  r.checks.push_back({"M minimal spanning spaces", "dim 1: 4; dim 2: 10", counts_by_dim(m.index(), a.minimal_spanning())});
  r.checks.push_back({"M bases", "dim 3: 15", counts_by_dim(m.index(), a.bases())});
  return r;
}

using Builder = ExampleRecord (*)();

inline const std::vector<std::pair<std::string, Builder>>& table() {
  static const std::vector<std::pair<std::string, Builder>> t = {
      {"ex-2-17", mrd_pair},          {"ex-3-3a", small_code},     {"ex-3-3b", unit_code},
      {"ex-3-8", linear_code_circuits}, {"ex-3-10b", auxiliary_counterexample}, {"ex-4-6a", mrd_bases},
      {"ex-4-6b", shared_bases},      {"ex-4-8", closure_property}, {"ex-5-3", minimal_spanning}};
  return t;
}

}  // namespace detail

inline std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : detail::table()) ids.push_back(id);
  return ids;
}

/// Recomputes every check of one example. Unknown id -> InputError.
inline ExampleRecord run_example(std::string_view id) {
  for (const auto& [name, fn] : detail::table())
    if (name == id) return fn();
  std::string known;
  for (const auto& k : example_ids()) known += (known.empty() ? "" : ", ") + k;
  throw InputError("unknown example '" + std::string(id) + "'; known: " + known);
}

}  // namespace registry
}  // namespace qpl
