#include <algorithm>
#include <cstdio>

#include "doctest.h"
#include "ploc/io.hpp"
#include "ploc/normal.hpp"
#include "ploc/suite.hpp"
#include "ploc/zoo.hpp"

using namespace ploc;

TEST_CASE("free partial group round trips byte for byte") {
  Loaded a = load("example:free1");
  std::string first = save_text(a);
  Loaded b = parse_input(first);
  REQUIRE_FALSE(b.is_locality());
  CHECK(b.pg().n == a.pg().n);
  CHECK(b.pg().identity == a.pg().identity);
  CHECK(b.pg().inv == a.pg().inv);
  CHECK(b.pg().pair == a.pg().pair);
  CHECK(save_text(b) == first);
}

TEST_CASE("localities round trip with identical charts") {
  for (const char* name : {"example:O4plus2:all", "example:GL3_2:parabolic"}) {
    CAPTURE(name);
    Loaded a = load(name);
    REQUIRE(a.is_locality());
    std::string first = save_text(a);
    Loaded b = parse_input(first);
    REQUIRE(b.is_locality());
    const Locality& la = *a.locality;
    const Locality& lb = *b.locality;
    CHECK(lb.n() == la.n());
    CHECK(lb.pg.pair == la.pg.pair);
    CHECK(lb.S == la.S);
    CHECK(lb.sg == la.sg);
    CHECK(lb.cg == la.cg);
    CHECK(lb.delta.members == la.delta.members);
    CHECK(save_text(b) == first);
    CHECK(fusion_maps(lb) == fusion_maps(la));
  }
}

TEST_CASE("a saved quotient locality still verifies") {
  Instance inst = zoo_instance("O4plus2:all");
  Loaded a;
  a.locality = std::move(inst.locality);
  PartialNormal V = make_partial_normal(*a.locality, inst.marks.at("V"));
  Quotient q = quotient_locality(*a.locality, V);
  std::string text = save_text(*q.bar);
  Loaded b = parse_input(text);
  REQUIRE(b.is_locality());
  CHECK_FALSE(verify_objectivity(*b.locality, 3).failed());
  CHECK_FALSE(verify_locality(*b.locality).failed());
  CHECK(save_text(*b.locality) == text);
}

TEST_CASE("group description builds the normalizer locality") {
  std::string text =
      "# symmetric group on three letters, localized at 3\n"
      "group\n"
      "  (1 2 3)\n"
      "  (1 2)\n"
      "end\n"
      "prime p=3\n"
      "sylow auto\n"
      "delta seed\n"
      "end\n";
  Loaded got = parse_input(text);
  REQUIRE(got.is_locality());
  CHECK(got.locality->n() == 6);
  CHECK(got.locality->p == 3);
  CHECK(got.locality->S.size() == 3);

  Loaded zoo = load("example:S3:delta-C3");
  CHECK(save_text(got) == save_text(zoo));
}

TEST_CASE("description with explicit sylow generators and seeds") {
  std::string text =
      "group\n"
      "  (1 2 3 4)\n"
      "  (2 4)\n"
      "end\n"
      "prime p=2\n"
      "sylow (1 2 3 4); (2 4)\n"
      "delta seed\n"
      "  (1 3)(2 4)\n"
      "end\n";
  Loaded got = parse_input(text);
  REQUIRE(got.is_locality());
  CHECK(got.locality->n() == 8);
  // the center seed closes to a family containing S
  CHECK(got.locality->delta.contains(got.locality->S));
}

TEST_CASE("parse errors cite line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_input(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("partialgroup n=2\nidentity 0\ninv 0 9\n") == 3);
  CHECK(line_of("partialgroup n=1\nidentity 0\ninv 0 0\nbogus 1 2\n") == 4);
  CHECK(line_of("nonsense\n") == 1);
  CHECK(line_of("group\n(1 2)\nend\nprime p=7\ndelta nope\n") == 5);

  try {
    parse_input("partialgroup n=2\nidentity 0\ninv 0 1\ninv 1 0\noracle warp\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 5:") == 0);
    CHECK(std::string(e.what()).find("unknown oracle") != std::string::npos);
  }
}

TEST_CASE("structural gaps are rejected with a message") {
  CHECK_THROWS_AS(parse_input("identity 0\n"), ParseError);
  CHECK_THROWS_AS(parse_input("partialgroup n=1\ninv 0 0\noracle full\n"), ParseError);
  CHECK_THROWS_AS(parse_input("partialgroup n=1\nidentity 0\noracle full\n"), ParseError);
  CHECK_THROWS_AS(parse_input("partialgroup n=1\nidentity 0\ninv 0 0\n"), ParseError);
  // delta oracle without its payload
  CHECK_THROWS_AS(
      parse_input("partialgroup n=1\nidentity 0\ninv 0 0\npair 0 0 0\noracle delta\n"),
      ParseError);
  // step row of the wrong width
  std::string bad =
      "partialgroup n=1\nidentity 0\ninv 0 0\npair 0 0 0\n"
      "oracle delta\nprime p=2\nsylow 0\nstep 0 0 0\ndelta 0\n";
  try {
    parse_input(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 8);
    CHECK(std::string(e.what()).find("width") != std::string::npos);
  }
}

TEST_CASE("normal subgroup specs") {
  Loaded a = load("example:O4plus2:all");
  const Locality& loc = *a.locality;

  PartialNormal whole = parse_normal_spec(loc, "all");
  CHECK(whole.size() == 72);

  // closure of one translation stays on its line: cross-line products are
  // undefined, so a single generator only yields the 5-element line class
  Instance inst = zoo_instance("O4plus2:all");
  const auto& vm = inst.marks.at("V");
  PartialNormal line = parse_normal_spec(loc, "gen:" + std::to_string(vm[1]));
  CHECK(line.size() == 5);
  CHECK(std::binary_search(line.members.begin(), line.members.end(), vm[1]));

  // two generators from different lines rebuild the full translation group
  PartialNormal V =
      parse_normal_spec(loc, "gen:" + std::to_string(vm[1]) + "," + std::to_string(vm[4]));
  CHECK(V.size() == 9);
  CHECK(V.members == vm);

  CHECK_THROWS_AS(parse_normal_spec(loc, "sub:1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_normal_spec(loc, "gen:"), std::invalid_argument);
}

TEST_CASE("suite runs are deterministic across worker counts") {
  Loaded a = load("example:D8:all");
  Report one = run_suite(a, {"example:D8:all", "axioms", 3, 1});
  Report four = run_suite(a, {"example:D8:all", "axioms", 3, 4});
  CHECK(one.text() == four.text());
  CHECK_FALSE(one.failed());
}

TEST_CASE("full suite passes on the flagship example") {
  Loaded a = load("example:S3:delta-C3");
  Report rep = run_suite(a, {"example:S3:delta-C3", "all", 3, 2});
  CHECK_FALSE(rep.failed());
  bool saw_lemma = false;
  for (const auto& c : rep.checks)
    if (!c.id.empty()) saw_lemma = true;
  CHECK(saw_lemma);
}

TEST_CASE("a corrupted product table fails the axiom suite with a witness") {
  Loaded a = load("example:D8:all");
  PartialGroupView V = a.pg();
  int row = 1, col = 1;
  int old = V.pair_at(row, col);
  REQUIRE(old >= 0);
  V.pair[static_cast<size_t>(row) * V.n + col] = old == 0 ? 1 : 0;
  Report rep = verify_partial_group(V, 3);
  CHECK(rep.failed());
  for (const auto& c : rep.checks)
    if (c.status == Status::Fail) CHECK_FALSE(c.witness.empty());
}

TEST_CASE("bare views run the axiom suite and skip the rest") {
  Loaded a = load("example:free1");
  Report rep = run_suite(a, {"example:free1", "all", 3, 1});
  CHECK_FALSE(rep.failed());
  bool saw_skip = false;
  for (const auto& c : rep.checks)
    if (c.status == Status::Skip && c.note.find("not a locality") != std::string::npos)
      saw_skip = true;
  CHECK(saw_skip);
}

TEST_CASE("save writes files that load back") {
  Loaded a = load("example:S3:delta-C3");
  std::string path = "roundtrip_tmp.ploc";
  save(a, path);
  Loaded b = load(path);
  REQUIRE(b.is_locality());
  CHECK(save_text(b) == save_text(a));
  std::remove(path.c_str());
}
