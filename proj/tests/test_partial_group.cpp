#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "ploc/partial_group.hpp"
#include "ploc/zoo.hpp"

using namespace ploc;

TEST_CASE("free partial group on one generator") {
  PartialGroupView V = free_one_generator();
  V.validate();
  CHECK(V.n == 3);
  CHECK(V.label(0) == "1");

  int a = 1, b = 2;
  CHECK(V.inv[a] == b);
  CHECK(V.in_domain(std::vector<int>{a, b}));
  CHECK_FALSE(V.in_domain(std::vector<int>{a, a}));
  CHECK_FALSE(V.in_domain(std::vector<int>{b, b}));
  CHECK(V.product(std::vector<int>{a, b}) == 0);
  CHECK(V.product(std::vector<int>{a, 0, b}) == 0);

  Report rep = verify_partial_group(V, 4);
  CHECK_FALSE(rep.failed());
  for (const auto& c : rep.checks) CHECK(c.status != Status::Fail);
}

TEST_CASE("domain rejection carries the word") {
  PartialGroupView V = free_one_generator();
  try {
    V.product(std::vector<int>{1, 1});
    FAIL("expected a domain rejection");
  } catch (const DomainError& e) {
    CHECK(e.word == Word{1, 1});
    CHECK(std::string(e.what()).find("[1,1]") != std::string::npos);
  }
}

TEST_CASE("a full group is a partial group with full domain") {
  NamedGroup S3 = named_group("S3");
  PartialGroupView V = full_group_view(S3.group);
  V.validate();
  Report rep = verify_partial_group(V, 4);
  CHECK_FALSE(rep.failed());

  // conjugation matches the group's
  for (int x = 0; x < V.n; ++x)
    for (int g = 0; g < V.n; ++g) {
      CHECK(V.conj_defined(x, g));
      CHECK(V.conjugate(x, g) == S3.group.conj(x, g));
    }
}

TEST_CASE("generated subgroups match the word closure oracle") {
  Instance d8 = zoo_instance("D8:all");
  const PartialGroupView& V = d8.pg();
  for (int s = 0; s < V.n; ++s) {
    auto got = generated_partial_subgroup(V, {s}).members;
    auto want = oracles::word_closure(V, {s}, 4);
    CHECK(got == want);
    CHECK(is_partial_subgroup_set(V, got));
  }

  Instance s3 = zoo_instance("S3:delta-C3");
  const PartialGroupView& W = s3.pg();
  for (int a = 0; a < W.n; ++a)
    for (int b = a + 1; b < W.n; ++b) {
      auto got = generated_partial_subgroup(W, {a, b}).members;
      CHECK(got == oracles::word_closure(W, {a, b}, 4));
    }
}

TEST_CASE("table oracle semantics") {
  // free1 re-expressed through an explicit word table
  PartialGroupView F = free_one_generator();
  std::vector<Word> words;
  for (int len = 2; len <= 3; ++len) {
    std::vector<int> idx(static_cast<size_t>(len), 0);
    do {
      Word w(idx.begin(), idx.end());
      if (F.in_domain(w)) words.push_back(w);
    } while (oracles::odo_next(idx, F.n));
  }
  PartialGroupView V = F;
  V.oracle = std::make_shared<TableOracle>(V.n, 3, words);
  V.validate();
  CHECK(V.in_domain(std::vector<int>{1, 2}));
  CHECK_FALSE(V.in_domain(std::vector<int>{1, 1}));
  CHECK(V.in_domain(std::vector<int>{2}));
  // beyond the cap nothing is accepted
  CHECK_FALSE(V.in_domain(std::vector<int>{1, 2, 1, 2}));
}

TEST_CASE("identity homomorphism and kernels") {
  NamedGroup S3 = named_group("S3");
  PartialGroupView V = full_group_view(S3.group);
  std::vector<int> id(static_cast<size_t>(V.n));
  for (int i = 0; i < V.n; ++i) id[static_cast<size_t>(i)] = i;
  PartialGroupHom h{&V, &V, id};
  Report rep = verify_homomorphism(h, 3);
  CHECK_FALSE(rep.failed());
  CHECK(hom_kernel(h).members == std::vector<int>{V.identity});

  // collapse everything: kernel is the whole view
  PartialGroupHom c{&V, &V, std::vector<int>(static_cast<size_t>(V.n), V.identity)};
  Report crep = verify_homomorphism(c, 3);
  CHECK_FALSE(crep.failed());
  CHECK(hom_kernel(c).members.size() == static_cast<size_t>(V.n));
}

TEST_CASE("worker count does not change the report") {
  Instance inst = zoo_instance("D8:all");
  Report one = verify_partial_group(inst.pg(), 3, 1);
  Report four = verify_partial_group(inst.pg(), 3, 4);
  CHECK(one.text() == four.text());
}

TEST_CASE("direct products multiply componentwise") {
  PartialGroupView F = free_one_generator();
  NamedGroup S3 = named_group("S3");
  PartialGroupView G = full_group_view(S3.group);
  PartialGroupView P = direct_product(F, G);
  P.validate();
  CHECK(P.n == F.n * G.n);
  Report rep = verify_partial_group(P, 3);
  CHECK_FALSE(rep.failed());
}

TEST_CASE("bounded domain sweep reports a counterexample word") {
  PartialGroupView F = free_one_generator();
  Word bad;
  CHECK_FALSE(all_words_in_domain(F, {1, 2}, 2, &bad));
  CHECK(bad.size() == 2);
  CHECK_FALSE(F.in_domain(bad));

  Instance s3 = zoo_instance("S3:delta-C3");
  std::vector<int> everyone(static_cast<size_t>(s3.pg().n));
  for (int i = 0; i < s3.pg().n; ++i) everyone[static_cast<size_t>(i)] = i;
  CHECK(all_words_in_domain(s3.pg(), everyone, 4));
}
