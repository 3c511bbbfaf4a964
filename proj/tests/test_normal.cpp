#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ploc/normal.hpp"
#include "ploc/zoo.hpp"

using namespace ploc;

TEST_CASE("translation subgroup is partial normal with trivial p-part") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  CHECK(V.size() == 9);
  CHECK(V.T == std::vector<int>{loc.pg.identity});
  CHECK(oracles::brute_partial_normal(loc, V.members));
}

TEST_CASE("partial normal enumeration matches the dumb checker") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  auto all = all_partial_normal_subgroups(loc);
  std::multiset<int> sizes;
  for (const auto& N : all) {
    sizes.insert(N.size());
    CHECK(oracles::brute_partial_normal(loc, N.members));
  }
  // the group normal subgroups all survive, plus two sets of order 5 that no
  // group normal matches: the single-line translation classes. Products of
  // translations from different lines have trivial joint stabilizer, so those
  // pairs are outside the domain and the 5-sets close up on their own.
  CHECK(sizes == std::multiset<int>{1, 5, 5, 9, 18, 36, 36, 36, 72});

  // and nothing outside the enumeration passes the dumb checker:
  // spot-check every singleton closure lands in the enumerated list
  std::set<std::vector<int>> enumerated;
  for (const auto& N : all) enumerated.insert(N.members);
  for (int g = 0; g < loc.n(); g += 5) {
    PartialNormal C = partial_normal_closure(loc, {g});
    CHECK(enumerated.count(C.members) == 1);
  }
}

TEST_CASE("climb-maximal elements of the translation subgroup form S") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  CHECK(up_maximal_set(V) == loc.S);
  for (int f : loc.S) CHECK(is_up_maximal(V, f));
}

TEST_CASE("maximal cosets partition the orthogonal example into 8 blocks of 9") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  CosetPartition part = maximal_cosets(V);
  CHECK(part.blocks.size() == 8);
  for (const auto& b : part.blocks) CHECK(b.size() == 9);
  CHECK(part.block_of[loc.pg.identity] == 0);
  for (size_t b = 0; b < part.blocks.size(); ++b)
    CHECK(coset_of(V, part.rep[b]) == part.blocks[b]);
}

TEST_CASE("every element splits over the translation subgroup") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  for (int f = 0; f < loc.n(); ++f) {
    auto [x, g] = frattini_decompose(V, f);
    CHECK(V.contains(x));
    CHECK(is_up_maximal(V, g));
    CHECK(loc.pg.pair_at(x, g) == f);
    CHECK(loc.sg[static_cast<size_t>(f)] == loc.s_w(std::vector<int>{x, g}));
  }
}

TEST_CASE("normal theory sweep passes on the worked examples") {
  Instance o4 = zoo_instance("O4plus2:all");
  PartialNormal V = make_partial_normal(*o4.locality, o4.marks.at("V"));
  Report r1 = verify_normal_theory(*o4.locality, V, 3);
  CHECK_FALSE(r1.failed());

  Instance d8 = zoo_instance("D8:all");
  for (const auto& N : all_partial_normal_subgroups(*d8.locality)) {
    CAPTURE(set_witness(N.members));
    Report r = verify_normal_theory(*d8.locality, N, 3);
    CHECK_FALSE(r.failed());
  }
}

TEST_CASE("quotient by the translations is the dihedral locality") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  Quotient q = quotient_locality(loc, V);
  const Locality& bar = *q.bar;
  CHECK(bar.n() == 8);
  CHECK(bar.S.size() == 8);

  std::vector<int> everyone(static_cast<size_t>(bar.n()));
  for (int i = 0; i < bar.n(); ++i) everyone[static_cast<size_t>(i)] = i;
  CHECK(all_words_in_domain(bar.pg, everyone, 4));

  FiniteGroup barg = view_section_group(bar.pg, everyone);
  CHECK(barg.n == 8);
  CHECK(center(barg).order() == 2);
  bool abelian = true;
  for (int a = 0; a < barg.n && abelian; ++a)
    for (int b = 0; b < barg.n; ++b)
      if (barg.mul(a, b) != barg.mul(b, a)) {
        abelian = false;
        break;
      }
  CHECK_FALSE(abelian);

  CHECK(projection_kernel(q.rho()) == V.members);
  CHECK_FALSE(verify_quotient(q, V, 3).failed());
  CHECK_FALSE(verify_correspondence(q, V).failed());
}

TEST_CASE("quotients of the small examples verify") {
  for (const char* name : {"D8:all", "S3:delta-C3"}) {
    Instance inst = zoo_instance(name);
    const Locality& loc = *inst.locality;
    for (const auto& N : all_partial_normal_subgroups(loc)) {
      CAPTURE(name);
      CAPTURE(set_witness(N.members));
      Quotient q = quotient_locality(loc, N);
      CHECK_FALSE(verify_quotient(q, N, 3).failed());
      CHECK_FALSE(verify_correspondence(q, N).failed());
      CHECK_FALSE(verify_objectivity(*q.bar, 3).failed());
      CHECK_FALSE(verify_locality(*q.bar).failed());
    }
  }
}

TEST_CASE("projections factor through quotients, isomorphically iff by the kernel") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  PartialNormal V = make_partial_normal(loc, inst.marks.at("V"));
  PartialNormal one = make_partial_normal(loc, {loc.pg.identity});
  Quotient q = quotient_locality(loc, V);

  FirstIso full = first_isomorphism(loc, *q.bar, q.cosets.block_of, V);
  CHECK(full.isomorphism);
  CHECK_FALSE(verify_first_isomorphism(full, q.cosets.block_of, 3).failed());

  FirstIso partial = first_isomorphism(loc, *q.bar, q.cosets.block_of, one);
  CHECK_FALSE(partial.isomorphism);
  CHECK_FALSE(verify_first_isomorphism(partial, q.cosets.block_of, 3).failed());
}

TEST_CASE("p-prime residue construction on the direct product example") {
  Instance inst = zoo_instance("C3xD8:S-only");
  const Locality& loc = *inst.locality;
  ThetaResult th = theta_quotient(loc);
  CHECK(th.hypothesis_met);
  CHECK(th.theta == inst.marks.at("C3"));
  CHECK(intersect_sorted(th.theta, loc.S) == std::vector<int>{loc.pg.identity});
  REQUIRE(th.quot.has_value());
  CHECK(th.quot->bar->n() == 8);
  CHECK_FALSE(verify_theta(loc, 3).failed());
}

TEST_CASE("residue of the orthogonal example is the translation subgroup") {
  // each reflection-type object P has N_L(P) isomorphic to S3 x C2 whose
  // 2'-core is an axis of translations; the four axes union to all of V
  Instance inst = zoo_instance("O4plus2:all");
  ThetaResult th = theta_quotient(*inst.locality);
  CHECK(th.hypothesis_met);
  CHECK(th.theta == inst.marks.at("V"));
  REQUIRE(th.quot.has_value());
  CHECK(th.quot->bar->n() == 8);
}
