// Walks through the library on the binary 3x3 code with principal
// denominator 3: rank table, independence, dual, and the cryptomorphism.

#include "qpl/qpl.hpp"

#include <iostream>

int main() {
  using namespace qpl;
  const RankMetricCode c = fixtures::code(fixtures::ex_3_3a());
  const CodeReport rep = analyze(c);
  std::cout << "code: n=" << c.n() << " m=" << c.m() << " k=" << rep.dim << " d=" << *rep.d
            << " mrd=" << (rep.is_mrd ? "yes" : "no") << "\n";

  const auto lattice = LatticeIndex::build(c.field(), c.n());
  const QPolymatroid m = column_polymatroid(c, lattice);
  std::cout << "rank table (rho = tau/" << m.denom() << "):\n";
  for (Ordinal v : lattice->all()) std::cout << "  " << lattice->key(v) << "  " << to_string(m.rho(v)) << "\n";

  const Rational mu = principal_denominator(m);
  const IndependenceAtlas atlas = classify(m, mu);
  std::cout << "principal denominator " << to_string(mu) << "; " << atlas.independents().size() << " of "
            << lattice->size() << " subspaces are independent\n";
  std::cout << "minimal spanning: " << counts_by_dim(*lattice, atlas.minimal_spanning()) << "\n";

  const QPolymatroid d = dual(m);
  const bool trace_dual = d == column_polymatroid(dual_code(c), lattice);
  std::cout << "dual equals the polymatroid of the trace-dual code: " << (trace_dual ? "yes" : "no") << "\n";

  const CandidateCollection cand = CandidateCollection::from_atlas(atlas);
  std::cout << "independent spaces with their ranks recover the table: "
            << (extend_rank(cand) == m && roundtrip_check(cand).ok() ? "yes" : "no") << "\n";
}
