#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ploc/locality.hpp"
#include "ploc/zoo.hpp"

using namespace ploc;

TEST_CASE("normalizer locality of S3 has full domain") {
  Instance inst = zoo_instance("S3:delta-C3");
  REQUIRE(inst.locality.has_value());
  const Locality& loc = *inst.locality;
  CHECK(loc.n() == 6);
  CHECK(loc.p == 3);
  CHECK(loc.S.size() == 3);

  std::vector<int> everyone(static_cast<size_t>(loc.n()));
  for (int i = 0; i < loc.n(); ++i) everyone[static_cast<size_t>(i)] = i;
  CHECK(all_words_in_domain(loc.pg, everyone, 4));
  CHECK_FALSE(find_rejected_pair(loc.pg).has_value());
}

TEST_CASE("orthogonal example is all of G with a proper domain") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  CHECK(loc.n() == 72);
  CHECK(loc.S.size() == 8);
  CHECK(find_rejected_pair(loc.pg).has_value());
}

TEST_CASE("parabolic example is the union of the two maximal overgroups") {
  Instance inst = zoo_instance("GL3_2:parabolic");
  const Locality& loc = *inst.locality;
  CHECK(loc.n() == 40);
  std::set<int> un(inst.marks.at("M1").begin(), inst.marks.at("M1").end());
  un.insert(inst.marks.at("M2").begin(), inst.marks.at("M2").end());
  CHECK(un.size() == 40);
  CHECK(loc.delta.size() == 3);  // S and the two cores
}

TEST_CASE("axioms and locality sweeps pass on every built-in locality") {
  for (const std::string& name : zoo_list()) {
    Instance inst = zoo_instance(name);
    if (!inst.locality) continue;
    CAPTURE(name);
    const Locality& loc = *inst.locality;
    Report ax = verify_partial_group(loc.pg, 3);
    CHECK_FALSE(ax.failed());
    Report ob = verify_objectivity(loc, 3);
    CHECK_FALSE(ob.failed());
    Report lc = verify_locality(loc);
    CHECK_FALSE(lc.failed());
  }
}

TEST_CASE("invariant core matches the lattice scan") {
  Instance o4 = zoo_instance("O4plus2:all");
  CHECK(op_subgroup(*o4.locality) == std::vector<int>{o4.locality->pg.identity});
  CHECK(op_subgroup(*o4.locality) == oracles::brute_op(*o4.locality));

  Instance s3 = zoo_instance("S3:delta-C3");
  CHECK(op_subgroup(*s3.locality) == s3.locality->S);
  CHECK(op_subgroup(*s3.locality) == oracles::brute_op(*s3.locality));

  Instance gl = zoo_instance("GL3_2:parabolic");
  CHECK(op_subgroup(*gl.locality) == oracles::brute_op(*gl.locality));
}

TEST_CASE("conjugation into Sylow position matches the exhaustive scan") {
  Instance inst = zoo_instance("GL3_2:parabolic");
  const Locality& loc = *inst.locality;
  // every element of a marked p-subgroup generates a cyclic p-subgroup;
  // conjugate_into_s must land it under S, and the scan must agree that
  // some conjugator exists
  for (int x : inst.marks.at("P1")) {
    std::vector<int> H = generated_partial_subgroup(loc.pg, {x}).members;
    int u = conjugate_into_s(loc, H);
    CHECK(oracles::brute_conjugator(loc, H).has_value());
    for (int h : H) {
      int y = oracles::raw_conj(loc.pg, h, u);
      CHECK(y >= 0);
      CHECK(oracles::in_sorted(loc.S, y));
    }
  }
}

TEST_CASE("word cores match the brute chain scan") {
  Instance inst = zoo_instance("D8:all");
  const Locality& loc = *inst.locality;
  for (int g = 0; g < loc.n(); ++g) {
    std::vector<int> H{g};
    CHECK(subgroup_core(loc, H) == oracles::brute_core(loc, H, 4));
  }
  Instance o4 = zoo_instance("O4plus2:all");
  for (int g = 0; g < o4.locality->n(); g += 7) {
    std::vector<int> H{g};
    CHECK(subgroup_core(*o4.locality, H) == oracles::brute_core(*o4.locality, H, 3));
  }
}

TEST_CASE("normalizer sublocality is itself a locality") {
  Instance inst = zoo_instance("O4plus2:all");
  const Locality& loc = *inst.locality;
  std::vector<int> Z = center(loc.s_group).members;
  // positions in s_group are positions in S
  std::vector<int> R;
  for (int i : Z) R.push_back(loc.S[static_cast<size_t>(i)]);
  std::sort(R.begin(), R.end());
  Locality sub = normalizer_sublocality(loc, R);
  // the sublocality renumbers its carrier, so compare by label
  CHECK(sub.n() == static_cast<int>(loc.normalizer_in_l(R).size()));
  CHECK(sub.S.size() == loc.S.size());
  std::set<std::string> sub_labels, loc_labels;
  for (int i : sub.S) sub_labels.insert(sub.pg.label(i));
  for (int i : loc.S) loc_labels.insert(loc.pg.label(i));
  CHECK(sub_labels == loc_labels);
  CHECK_FALSE(verify_objectivity(sub, 3).failed());
  CHECK_FALSE(verify_locality(sub).failed());
}

TEST_CASE("fusion maps are closed and deterministic") {
  Instance inst = zoo_instance("S3:delta-C3");
  FusionMapSet F1 = fusion_maps(*inst.locality);
  FusionMapSet F2 = fusion_maps(*zoo_instance("S3:delta-C3").locality);
  CHECK(F1 == F2);
  CHECK_FALSE(F1.maps.empty());
}
