#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qpl;
using qpl::testing::kSeed;

namespace {

const PrimeField F2(2);

QPolymatroid fixture_pm(std::string_view id) {
  const auto f = fixtures::find_code(id);
  const RankMetricCode c = fixtures::code(*f);
  return column_polymatroid(c, LatticeIndex::build(c.field(), c.n()));
}

Ordinal span(const LatticeIndex& L, std::vector<std::vector<std::int64_t>> gens) {
  return L.ordinal_of(Subspace::span(L.field(), L.ambient_dim(), gens));
}

std::map<std::size_t, std::size_t> dims(const LatticeIndex& L, const std::vector<Ordinal>& list) {
  std::map<std::size_t, std::size_t> out;
  for (Ordinal v : list) ++out[L.dim(v)];
  return out;
}

std::vector<Ordinal> stratum(const LatticeIndex& L, std::size_t k) {
  const auto s = L.stratum(k);
  return {s.begin(), s.end()};
}

std::set<Ordinal> as_set(const std::vector<Ordinal>& v) { return {v.begin(), v.end()}; }

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

}  // namespace

TEST(Classify, SmallCodeEverythingIndependent) {
  const QPolymatroid m = fixture_pm("ex-3-3a");
  const IndependenceAtlas a = classify(m, R(3));
  EXPECT_EQ(a.independents().size(), 16u);
  EXPECT_TRUE(a.dependents().empty());
  EXPECT_TRUE(a.circuits().empty());
  EXPECT_EQ(a.bases(), std::vector<Ordinal>{m.index().full()});
}

TEST(Classify, UnitCodeMixedRanks) {
  const QPolymatroid m = fixture_pm("ex-3-3b");
  const IndependenceAtlas a = classify(m, R(3));
  const LatticeIndex& L = m.index();
  const Ordinal v = span(L, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  const Ordinal w = span(L, {{1, 1, 0, 0, 0}, {0, 0, 0, 0, 1}});
  EXPECT_TRUE(a.is_independent(v));
  EXPECT_EQ(m.rho(v), R(2, 3));
  EXPECT_FALSE(a.is_independent(w));
  EXPECT_EQ(m.rho(w), R(1));
}

TEST(Classify, LinearCodeCircuitsAndNearCircuits) {
  const IndependenceAtlas a = classify(fixture_pm("ex-3-8"), R(2));
  EXPECT_EQ(a.circuits().size(), 497u);
  EXPECT_EQ(dims(a.index(), a.circuits()), (std::map<std::size_t, std::size_t>{{1, 1}, {4, 496}}));
  const NearCircuits nc = near_circuits(a);
  EXPECT_EQ(nc.deficient.size(), 169u);
  EXPECT_EQ(nc.hyperplane_tight.size(), 97u);
}

TEST(Classify, RejectsNonDenominator) {
  const QPolymatroid m = fixture_pm("ex-3-3a");
  EXPECT_THROW(classify(m, R(2)), InputError);
  EXPECT_THROW(classify(m, R(3, 2)), InputError);
  EXPECT_THROW(auxiliary_matroid(m, R(1)), InputError);
  EXPECT_NO_THROW(classify(m, R(6)));
}

TEST(Classify, AgreesWithBruteForceOracle) {
  for (const auto& m : qpl::testing::random_instances()) {
    for (std::int64_t k : {1, 2}) {
      const Rational mu = principal_denominator(m) * R(k);
      const IndependenceAtlas a = classify(m, mu);
      const auto oracle = qpl::testing::brute_force_independent(m, mu);
      for (Ordinal v : m.index().all()) EXPECT_EQ(a.is_independent(v), oracle[v] != 0);
    }
  }
}

TEST(Classify, DependentsContainCircuitsAndCircuitsAreTight) {
  for (const auto& m : qpl::testing::random_instances(20, kSeed + 60)) {
    const IndependenceAtlas a = classify(m, principal_denominator(m));
    const LatticeIndex& L = m.index();
    for (Ordinal d : a.dependents())
      EXPECT_TRUE(std::any_of(a.circuits().begin(), a.circuits().end(), [&](Ordinal c) { return L.leq(c, d); }));
    for (Ordinal c : a.circuits()) {
      EXPECT_EQ(a.tau_mu(c), static_cast<std::int64_t>(L.dim(c)) - 1);
      for (Ordinal h : L.hyperplanes(c)) EXPECT_TRUE(a.is_independent(h));
    }
    for (Ordinal b : a.bases()) {
      EXPECT_EQ(L.dim(b), L.dim(a.bases().front()));
      EXPECT_EQ(m.tau(b), m.tau(L.full()));
    }
  }
}

TEST(Classify, LoopsDoNotDependOnDenominator) {
  for (const auto& m : qpl::testing::random_instances(20, kSeed + 61)) {
    const Rational mu = principal_denominator(m);
    const auto loops = classify(m, mu).loops();
    EXPECT_EQ(classify(m, mu * R(2)).loops(), loops);
    EXPECT_EQ(classify(m, mu * R(5)).loops(), loops);
  }
}

TEST(Classify, RescalingCarriesIndependentsAlong) {
  std::mt19937_64 rng(kSeed + 62);
  for (const auto& m1 : qpl::testing::random_instances(20, kSeed + 63)) {
    // rho2(A V) = rho1(V) / 2, so mu2 = 2 mu1.
    std::vector<std::int64_t> tau(m1.tau().begin(), m1.tau().end());
    const Matrix a = qpl::testing::random_invertible(rng, F2, m1.ground_dim());
    const QPolymatroid m2 = relabel(QPolymatroid(m1.lattice(), 2 * m1.denom(), tau), a);
    const Rational mu1 = principal_denominator(m1), mu2 = principal_denominator(m2);
    if (m1.tau(m1.index().full()) != 0) EXPECT_EQ(mu2, R(2) * mu1);
    const IndependenceAtlas i1 = classify(m1, mu1), i2 = classify(m2, mu2);
    const LatticeIndex& L = m1.index();
    std::set<Ordinal> image;
    for (Ordinal v : i1.independents()) image.insert(L.ordinal_of(apply(a, L.subspace(v))));
    EXPECT_EQ(image, as_set(i2.independents()));
  }
}

TEST(BasesOf, IndependentSpaceIsItsOwnBasis) {
  const IndependenceAtlas a = classify(fixture_pm("ex-3-8"), R(2));
  for (Ordinal v : a.independents()) EXPECT_EQ(bases_of(a, v), std::vector<Ordinal>{v});
}

TEST(BasesOf, MrdCodesHaveTheWholeSpaceAsOnlyBasis) {
  for (const char* id : {"ex-2-17-c1", "ex-2-17-c2"}) {
    const QPolymatroid m = fixture_pm(id);
    const IndependenceAtlas a = classify(m, R(2));
    EXPECT_EQ(a.independents().size(), m.index().size()) << id;
    EXPECT_EQ(bases_of(a, Subspace::full(F2, 5)), std::vector<Ordinal>{m.index().full()}) << id;
    EXPECT_EQ(m.rank(), R(5, 2)) << id;
  }
}

TEST(BasesOf, SharedBasesPair) {
  for (const char* id : {"ex-4-6c", "ex-4-6cprime"}) {
    const QPolymatroid m = fixture_pm(id);
    ASSERT_EQ(principal_denominator(m), R(3)) << id;
    const IndependenceAtlas a = classify(m, R(3));
    EXPECT_EQ(a.dependents(), std::vector<Ordinal>{m.index().full()}) << id;
    EXPECT_EQ(a.bases(), stratum(m.index(), 3)) << id;
    for (Ordinal b : a.bases()) EXPECT_EQ(m.rho(b), R(1)) << id;
  }
}

TEST(BasesOf, EverySubspaceBasisKeepsRank) {
  for (const auto& [id, m] : qpl::testing::fixture_polymatroids()) {
    const IndependenceAtlas a = classify(m, principal_denominator(m));
    for (Ordinal v : m.index().all()) {
      const auto bs = bases_of(a, v);
      ASSERT_FALSE(bs.empty()) << id;
      for (Ordinal b : bs) EXPECT_EQ(m.tau(b), m.tau(v)) << id;
    }
  }
}

TEST(Spanning, MinimalSpanningSpacesOfExamples) {
  const IndependenceAtlas c1 = classify(fixture_pm("ex-2-17-c1"), R(2));
  EXPECT_EQ(dims(c1.index(), c1.minimal_spanning()), (std::map<std::size_t, std::size_t>{{3, 126}}));
  const IndependenceAtlas m = classify(fixture_pm("ex-4-6c"), R(3));
  EXPECT_EQ(dims(m.index(), m.minimal_spanning()), (std::map<std::size_t, std::size_t>{{1, 4}, {2, 10}}));
}

TEST(Spanning, UniformMinimalSpanningAreBases) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto L = LatticeIndex::build(F2, n);
    for (std::size_t k = 0; k <= n; ++k) {
      const IndependenceAtlas a = classify(uniform(k, L), R(1));
      EXPECT_EQ(a.minimal_spanning(), stratum(*L, k));
      EXPECT_EQ(a.bases(), stratum(*L, k));
    }
  }
}

TEST(Spanning, MinimalSpanningAreIndependentAndInsideBases) {
  for (const auto& m : qpl::testing::random_instances(20, kSeed + 64)) {
    const IndependenceAtlas a = classify(m, principal_denominator(m));
    const LatticeIndex& L = m.index();
    for (Ordinal s : a.minimal_spanning()) {
      EXPECT_TRUE(a.is_independent(s));
      EXPECT_TRUE(std::any_of(a.bases().begin(), a.bases().end(), [&](Ordinal b) { return L.leq(s, b); }));
    }
  }
}

TEST(Spanning, MinimalSpanningEqualsBasesOnQMatroids) {
  for (const auto& m : qpl::testing::random_q_matroids()) {
    const IndependenceAtlas a = classify(m, R(1));
    EXPECT_EQ(a.minimal_spanning(), a.bases());
  }
}

TEST(StronglyIndependent, TrivialHasOnlyZero) {
  const auto L = LatticeIndex::build(F2, 3);
  const IndependenceAtlas a = classify(uniform(0, L), R(1));
  EXPECT_EQ(a.strongly_independent(), std::vector<Ordinal>{L->zero()});
  EXPECT_EQ(a.max_strongly_independent(), std::vector<Ordinal>{L->zero()});
}

TEST(StronglyIndependent, SmallSpacesOfCodesBelowDualDistance) {
  for (const auto& f : fixtures::all_codes()) {
    const RankMetricCode c = fixtures::code(f);
    const RankMetricCode d = dual_code(c);
    if (d.dim() == 0) continue;
    const std::size_t dd = rank_distance(d);
    const auto L = LatticeIndex::build(c.field(), c.n());
    const IndependenceAtlas a = classify(column_polymatroid(c, L), R(1) * principal_denominator(column_polymatroid(c, L)));
    const auto strong = as_set(a.strongly_independent());
    for (Ordinal v : L->all())
      if (L->dim(v) < dd) EXPECT_TRUE(strong.count(v)) << f.id << " " << L->key(v);
  }
}

TEST(StronglyIndependent, DownwardClosedAndIndependentForEveryDenominator) {
  for (const auto& m : qpl::testing::random_instances(20, kSeed + 65)) {
    const LatticeIndex& L = m.index();
    const Rational mu = principal_denominator(m);
    const IndependenceAtlas a = classify(m, mu), a3 = classify(m, mu * R(3));
    const auto strong = as_set(a.strongly_independent());
    EXPECT_EQ(a3.strongly_independent(), a.strongly_independent());
    for (Ordinal v : strong) {
      EXPECT_TRUE(a.is_independent(v));
      EXPECT_TRUE(a3.is_independent(v));
      for (Ordinal h : L.hyperplanes(v)) EXPECT_TRUE(strong.count(h));
    }
  }
}

TEST(StronglyIndependent, DualityWithSpanningSpaces) {
  auto check = [](const QPolymatroid& m, const std::string& label) {
    const LatticeIndex& L = m.index();
    const QPolymatroid d = dual(m);
    const IndependenceAtlas a = classify(m, principal_denominator(m));
    const IndependenceAtlas b = classify(d, principal_denominator(d));
    const auto spanning = as_set(a.spanning()), minimal = as_set(a.minimal_spanning());
    const auto strong = as_set(b.strongly_independent()), max_strong = as_set(b.max_strongly_independent());
    for (Ordinal v : L.all()) {
      EXPECT_EQ(spanning.count(v), strong.count(L.perp(v))) << label << " " << L.key(v);
      EXPECT_EQ(minimal.count(v), max_strong.count(L.perp(v))) << label << " " << L.key(v);
    }
  };
  for (const auto& [id, m] : qpl::testing::fixture_polymatroids()) check(m, id);
  for (const auto& m : qpl::testing::random_instances(20, kSeed + 66)) check(m, "random");
}

TEST(Auxiliary, AgreesWithBruteForceOracle) {
  for (const auto& m : qpl::testing::random_instances()) {
    const Rational mu = principal_denominator(m);
    const QPolymatroid z = auxiliary_matroid(m, mu);
    const auto oracle = qpl::testing::brute_force_aux(m, mu);
    EXPECT_EQ(z.denom(), 1);
    for (Ordinal v : m.index().all()) EXPECT_EQ(z.tau(v), oracle[v]);
  }
}

TEST(Auxiliary, IsAQMatroidWithTheSameIndependents) {
  for (const auto& m : qpl::testing::random_instances(30, kSeed + 67)) {
    const Rational mu = principal_denominator(m);
    const QPolymatroid z = auxiliary_matroid(m, mu);
    EXPECT_TRUE(verify_axioms(z).ok());
    EXPECT_EQ(classify(z, R(1)).independents(), classify(m, mu).independents());
  }
}

TEST(Auxiliary, LinearCodeIndependentsMatch) {
  const QPolymatroid m = fixture_pm("ex-3-8");
  const QPolymatroid z = auxiliary_matroid(m, R(2));
  EXPECT_EQ(classify(z, R(1)).independents(), classify(m, R(2)).independents());
}

TEST(Auxiliary, QMatroidAtOneIsItself) {
  for (const auto& m : qpl::testing::random_q_matroids()) EXPECT_EQ(auxiliary_matroid(m, R(1)), m);
}

TEST(Auxiliary, PlaneDefectAtTwo) {
  for (std::size_t n : {3, 4, 5}) {
    const auto L = LatticeIndex::build(F2, n);
    std::vector<std::int64_t> e1(n, 0), e2(n, 0);
    e1[0] = 1;
    e2[1] = 1;
    const QPolymatroid m = plane_defect_matroid(L, Subspace::span(F2, n, {e1, e2}));
    EXPECT_TRUE(verify_axioms(m).ok()) << n;
    const QPolymatroid z = auxiliary_matroid(m, R(2));
    for (Ordinal v : L->all()) EXPECT_EQ(z.tau(v), static_cast<std::int64_t>(std::min<std::size_t>(L->dim(v), 4))) << n;
    EXPECT_EQ(z, auxiliary_matroid(uniform(2, L), R(2))) << n;
  }
}

TEST(Structure, FixturesPass) {
  for (const auto& [id, m] : qpl::testing::fixture_polymatroids()) {
    const AxiomReport r = verify_structure(classify(m, principal_denominator(m)));
    EXPECT_TRUE(r.ok()) << id << "\n" << r;
  }
}

TEST(Structure, RandomInstancesPass) {
  for (const auto& m : qpl::testing::random_instances()) {
    const AxiomReport r = verify_structure(classify(m, principal_denominator(m)));
    EXPECT_TRUE(r.ok()) << r;
  }
}

TEST(Structure, DetectsTamperedRanks) {
  // A table breaking submodularity lets an independent space rank below one of its members.
  const auto L = LatticeIndex::build(F2, 3);
  std::vector<std::int64_t> tau(L->size());
  for (Ordinal v : L->all()) tau[v] = static_cast<std::int64_t>(L->dim(v));
  tau[L->full()] = 1;
  const AxiomReport r = verify_structure(classify(QPolymatroid(L, 1, tau), R(1)), 100, false);
  EXPECT_FALSE(r.ok());
}

TEST(Probe, UniformHasMatroidWitness) {
  const auto L = LatticeIndex::build(F2, 4);
  for (std::size_t k = 0; k <= 4; ++k) {
    const QPolymatroid u = uniform(k, L);
    const ProbeResult p = basis_duality_probe(u, R(1));
    EXPECT_EQ(p.kind, ProbeKind::matroid_witness) << k;
    // Every basis qualifies.
    const IndependenceAtlas d = classify(dual(u), R(1));
    const auto dual_bases = as_set(d.bases());
    const IndependenceAtlas a = classify(u, R(1));
    for (Ordinal b : a.bases()) EXPECT_TRUE(dual_bases.count(L->perp(b)));
  }
}

TEST(Probe, MrdCodeHasNoSuchBasis) {
  const ProbeResult p = basis_duality_probe(fixture_pm("ex-2-17-c1"), R(2));
  EXPECT_EQ(p.kind, ProbeKind::polymatroid_witness);
  EXPECT_FALSE(p.basis.has_value());
}

TEST(Probe, TrivialUsesZeroSpace) {
  const auto L = LatticeIndex::build(F2, 3);
  const ProbeResult p = basis_duality_probe(uniform(0, L), R(1));
  EXPECT_EQ(p.kind, ProbeKind::matroid_witness);
  EXPECT_EQ(p.basis, L->zero());
}

TEST(Probe, NeverViolatesOnGenuineInstances) {
  std::mt19937_64 rng(kSeed + 68);
  for (const auto& m : qpl::testing::random_instances(30, kSeed + 69)) {
    EXPECT_NE(basis_duality_probe(m, principal_denominator(m)).kind, ProbeKind::violation);
    const Matrix g = qpl::testing::random_symmetric_invertible(rng, F2, m.ground_dim());
    EXPECT_NE(basis_duality_probe(m, principal_denominator(m), &g).kind, ProbeKind::violation);
  }
  for (const auto& m : qpl::testing::random_q_matroids()) EXPECT_EQ(basis_duality_probe(m, R(1)).kind, ProbeKind::matroid_witness);
}
