#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace qpl;

namespace {

std::string fixture_path(const std::string& name) { return std::string(QPL_FIXTURE_DIR) + "/" + name; }

std::ifstream open_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  return in;
}

}  // namespace

TEST(Registry, KnownIds) {
  EXPECT_EQ(registry::example_ids(), (std::vector<std::string>{"ex-2-17", "ex-3-3a", "ex-3-3b", "ex-3-8", "ex-3-10b",
                                                               "ex-4-6a", "ex-4-6b", "ex-4-8", "ex-5-3"}));
}

TEST(Registry, EveryExampleMatchesItsRecord) {
  for (const auto& id : registry::example_ids()) {
    const registry::ExampleRecord r = registry::run_example(id);
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(r.checks.empty()) << id;
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass()) << id << ": " << c.name << " expected " << c.expected << " got " << c.actual;
  }
}

TEST(Registry, UnknownIdListsKnownOnes) {
  try {
    registry::run_example("ex-9-9");
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    const std::string what = e.what();
    for (const auto& id : registry::example_ids()) EXPECT_NE(what.find(id), std::string::npos) << id;
  }
}

TEST(Registry, RunsAreDeterministic) {
  const auto a = registry::run_example("ex-3-8");
  const auto b = registry::run_example("ex-3-8");
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].actual, b.checks[i].actual);
}

TEST(FixtureFiles, CodesMatchEmbeddedData) {
  for (const auto& f : fixtures::all_codes()) {
    auto in = open_fixture(f.id + ".code");
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "# " + f.summary);
    in.seekg(0);
    const RankMetricCode disk = read_code(in);
    const RankMetricCode embedded = fixtures::code(f);
    EXPECT_EQ(disk.n(), embedded.n()) << f.id;
    EXPECT_EQ(disk.m(), embedded.m()) << f.id;
    EXPECT_EQ(Subspace::row_space(disk.flat()), Subspace::row_space(embedded.flat())) << f.id;
  }
}

TEST(FixtureFiles, PolymatroidsMatchColumnPolymatroids) {
  for (const auto& [id, m] : qpl::testing::fixture_polymatroids()) {
    auto in = open_fixture(id + ".qpm");
    const QPolymatroid disk = read_qpm(in, m.lattice());
    EXPECT_EQ(disk.denom(), m.denom()) << id;
    EXPECT_TRUE(std::equal(disk.tau().begin(), disk.tau().end(), m.tau().begin(), m.tau().end())) << id;
  }
}

TEST(FixtureFiles, UniformFile) {
  auto in = open_fixture("u2-4.qpm");
  const QPolymatroid disk = read_qpm(in);
  const QPolymatroid u = uniform(2, LatticeIndex::build(PrimeField(2), 4));
  EXPECT_EQ(disk.denom(), 1);
  EXPECT_EQ(disk, u);
}
