#include <doctest.h>

#include "gthom/error.hpp"
#include "gthom/morphisms.hpp"
#include "gthom/subdivision.hpp"
#include "test_util.hpp"

using namespace gthom;
using testutil::Rng;

TEST_CASE("word to subdivision") {
  CHECK(word_to_subdivision(Word(2)).is_standard());

  Subdivision d = word_to_subdivision(Word::g(2, 0));
  CHECK(d.cuts() == std::vector<Rat>{Rat(1, 2)});

  // g0 g1: split [0,1]; the interval then numbered 1 is [1/2, 1].
  Subdivision d2 = word_to_subdivision(Word::g(2, 0) * Word::g(2, 1));
  CHECK(d2.cuts() == std::vector<Rat>{Rat(1, 2), Rat(3, 4)});

  CHECK_THROWS_AS(word_to_subdivision(Word::g(2, 0, -1)), domain_error);
  CHECK_THROWS_AS(word_to_subdivision(Word::g(2, -1)), domain_error);
  CHECK_THROWS_AS(word_to_subdivision(Word::tn(3)), domain_error);
}

TEST_CASE("subdivision to word") {
  CHECK(subdivision_to_word(Subdivision::standard(3)).empty());
  Subdivision d = word_to_subdivision(Word::g(2, 0));
  CHECK(subdivision_to_word(d) == Word::g(2, 0));
  CHECK_THROWS_AS(subdivision_to_word(Subdivision::from_cuts(2, {Rat(-1, 2)})),
                  domain_error);

  Rng rng(41);
  for (int t = 0; t < 120; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word p = testutil::random_ascending_positive(rng, n, 4, 8);
    Subdivision d1 = word_to_subdivision(p);
    Word q = subdivision_to_word(d1);
    CHECK(word_to_subdivision(q) == d1);
  }
}

TEST_CASE("cut validation") {
  CHECK_THROWS_AS(Subdivision::from_cuts(3, {Rat(1, 3)}), domain_error);  // missing 2/3
  CHECK(Subdivision::from_cuts(3, {Rat(1, 3), Rat(2, 3)}).cuts().size() == 2);
  CHECK_THROWS_AS(Subdivision::from_cuts(2, {Rat(1, 4)}), domain_error);  // no parent split
  CHECK(Subdivision::from_cuts(2, {Rat(1, 2), Rat(1, 4)}).cuts().size() == 2);
  CHECK_THROWS_AS(Subdivision::from_cuts(2, {Rat(1)}), domain_error);     // integer cut
}

TEST_CASE("counting law: one modification adds n-1 intervals") {
  Rng rng(42);
  for (int n : {2, 3, 4, 5}) {
    Subdivision d = word_to_subdivision(testutil::random_ascending_positive(rng, n, 3, 5));
    long hi = d.window_hi() + 5;
    long before = d.interval_count(0, hi);
    d.split_numbered_interval(testutil::rand_int(rng, 0, before - 5));
    CHECK(d.interval_count(0, hi) == before + n - 1);
  }
}

TEST_CASE("pairs of simple maps") {
  SubdivisionPair idp = plmap_to_pair(PLMap::identity(2));
  CHECK(idp.dom().is_standard());
  CHECK(idp.ran().is_standard());
  CHECK(idp.shift() == 0);

  SubdivisionPair g0p = plmap_to_pair(PLMap::generator(2, 0));
  CHECK(g0p.dom().cuts() == std::vector<Rat>{Rat(1, 2)});
  CHECK(g0p.ran().is_standard());
  CHECK(g0p.shift() == 1);

  CHECK_THROWS_AS(plmap_to_pair(PLMap::translation(2, 1)), domain_error);
  CHECK_THROWS_AS(plmap_to_pair(PLMap::translation(4, 2)), domain_error);
}

TEST_CASE("the non-uniqueness fixture gives one reduced pair") {
  Word a = Word::parse("g0^2 g2 g0^-2", 2);
  Word b = Word::parse("g0 g1 g0^-1", 2);
  CHECK(to_plmap(a) == to_plmap(b));
  CHECK(plmap_to_pair(to_plmap(a)) == plmap_to_pair(to_plmap(b)));
}

TEST_CASE("pair round trips") {
  Rng rng(43);
  for (int t = 0; t < 150; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word w = testutil::random_word(rng, n, 5, 4);
    PLMap f = to_plmap(w);
    if (f.left_tail_offset() != 0) continue;  // keep the F_{n,-inf} flavor
    SubdivisionPair pair = plmap_to_pair(f);
    CHECK(pair_to_plmap(pair) == f);
  }
}

TEST_CASE("a word pair represents the word's map") {
  Rng rng(44);
  for (int t = 0; t < 120; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word p = testutil::random_ascending_positive(rng, n, 3, 6);
    Word q = testutil::random_ascending_positive(rng, n, 3, 6);
    SubdivisionPair pair(word_to_subdivision(p), word_to_subdivision(q));
    CHECK(pair_to_plmap(pair) == to_plmap(p * q.inverse()));
  }
}

TEST_CASE("structural reduction agrees with the canonical pair") {
  Rng rng(45);
  for (int t = 0; t < 120; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word p = testutil::random_ascending_positive(rng, n, 3, 6);
    Word q = testutil::random_ascending_positive(rng, n, 3, 6);
    SubdivisionPair pair(word_to_subdivision(p), word_to_subdivision(q));
    SubdivisionPair red = reduce(pair);
    SubdivisionPair canon = plmap_to_pair(pair_to_plmap(pair));
    CHECK(red == canon);
    CHECK(pair_to_plmap(red) == pair_to_plmap(pair));
  }
}

TEST_CASE("the canonical pair is already reduced") {
  Rng rng(46);
  for (int t = 0; t < 80; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word w = testutil::random_word(rng, n, 5, 4);
    PLMap f = to_plmap(w);
    if (f.left_tail_offset() != 0) continue;
    SubdivisionPair pair = plmap_to_pair(f);
    CHECK(reduce(pair) == pair);
  }
}

TEST_CASE("support bound inequality") {
  CHECK(support_bound_check(Word::g(2, 0) * Word::g(2, 1), 0, 2));
  CHECK_FALSE(support_bound_check(Word::g(2, 2), 0, 2));
  CHECK(support_bound_check(Word::g(5, 3, 2) * Word::g(5, 7), 0, 1000));
  CHECK(support_bound_check(Word(4), -3, -2));  // empty word
  CHECK_THROWS_AS(support_bound_check(Word::g(3, 2) * Word::g(3, 1), 0, 5), domain_error);
  CHECK_THROWS_AS(support_bound_check(Word::g(3, 1, -1), 0, 5), domain_error);

  // cross-check against the subdivision hull
  Rng rng(47);
  for (int t = 0; t < 150; ++t) {
    int n = static_cast<int>(testutil::rand_int(rng, 2, 5));
    Word p = testutil::random_ascending_positive(rng, n, 3, 6);
    long k = testutil::rand_int(rng, -2, 3);
    long l = k + testutil::rand_int(rng, 1, 8);
    Subdivision d = word_to_subdivision(p);
    CHECK(support_bound_check(p, k, l) == d.supported_in(Rat(k), Rat(l)));
  }
}

TEST_CASE("lift support bound") {
  // the image of a supported word under the base-change map is supported in
  // [k zeta, (l-1) zeta + 1]
  Rng rng(48);
  for (int t = 0; t < 60; ++t) {
    int m = static_cast<int>(testutil::rand_int(rng, 2, 4));
    int n = m + static_cast<int>(testutil::rand_int(rng, 1, 3));
    Word p = testutil::random_ascending_positive(rng, m, 3, 5);
    Subdivision d = word_to_subdivision(p);
    if (d.is_standard()) continue;
    long k = d.window_lo(), l = d.window_hi();
    REQUIRE(support_bound_check(p, k, l));
    Word lifted = tau(m, n, p);
    CHECK(support_bound_check(lifted, zeta(m, n, k), zeta(m, n, l - 1) + 1));
  }
}

TEST_CASE("split residues") {
  // g_i splits one interval whose left endpoint is congruent to i
  for (int n : {2, 3, 4}) {
    for (long i = 0; i < 2 * (n - 1); ++i) {
      auto res = word_to_subdivision(Word::g(n, i)).split_residues();
      CHECK(res == std::set<long>{i % (n - 1)});
    }
  }
}
