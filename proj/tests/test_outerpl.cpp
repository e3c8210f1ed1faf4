#include <doctest.h>

#include "gthom/error.hpp"
#include "gthom/morphisms.hpp"
#include "gthom/outerpl.hpp"
#include <functional>

#include "test_util.hpp"

using namespace gthom;

TEST_CASE("context of n") {
  OutPLContext c4 = mk(4);
  CHECK(c4.m == 2);
  CHECK(c4.k == 2);
  OutPLContext c8 = mk(8);
  CHECK(c8.m == 2);
  CHECK(c8.k == 3);
  OutPLContext c6 = mk(6);
  CHECK(c6.m == 6);
  CHECK(c6.k == 1);
  OutPLContext c36 = mk(36);
  CHECK(c36.m == 6);
  CHECK(c36.k == 2);
  CHECK(c36.primes == std::vector<long>{2, 3});
}

TEST_CASE("unit cosets") {
  OutPLContext ctx = mk(4);
  UnitCoset cn = UnitCoset::from_rational(ctx, Rat(4));
  CHECK(cn.is_identity());
  CHECK(UnitCoset::from_rational(ctx, Rat(1, 4)).is_identity());
  UnitCoset c2 = UnitCoset::from_rational(ctx, Rat(2));
  CHECK_FALSE(c2.is_identity());
  CHECK((c2 * c2).is_identity());
  CHECK(c2.inverse() == c2);  // 2 <4> = 1/2 <4>
  CHECK_THROWS_AS(UnitCoset::from_rational(ctx, Rat(3)), domain_error);
  CHECK_THROWS_AS(UnitCoset::from_rational(ctx, Rat(-2)), domain_error);

  // canonical representative is unique per coset
  OutPLContext c12 = mk(12);
  CHECK(UnitCoset::from_rational(c12, Rat(2)) ==
        UnitCoset::from_rational(c12, Rat(1, 6)));  // 2 = 12/6
}

TEST_CASE("phi on unit classes") {
  CHECK(UnitCoset::from_rational(mk(4), Rat(4)).phi_unit() == 1);
  CHECK(UnitCoset::from_rational(mk(4), Rat(2)).phi_unit() == 2);
  CHECK(UnitCoset::from_rational(mk(10), Rat(5)).phi_unit() == 5);
  CHECK(UnitCoset::from_rational(mk(10), Rat(1, 5)).phi_unit() == 2);  // 5 * 2 = 10 = 1
  // multiplicative
  OutPLContext ctx = mk(12);
  UnitCoset a = UnitCoset::from_rational(ctx, Rat(2));
  UnitCoset b = UnitCoset::from_rational(ctx, Rat(3));
  CHECK((a * b).phi_unit() == (a.phi_unit() * b.phi_unit()) % 11);
}

TEST_CASE("affine multiplication") {
  OutPLContext ctx = mk(4);
  OutPLElem x{Residue(4, 1L), UnitCoset::from_rational(ctx, Rat(2))};
  OutPLElem xx = aff_mul(x, x);
  CHECK(xx.a.value == 0);  // 1*2 + 1 = 3 = 0 mod 3
  CHECK(xx.s.is_identity());
  CHECK(is_identity(aff_pow(x, 2)));
  CHECK(is_identity(aff_mul(x, aff_pow(x, -1))));

  OutPLContext c8 = mk(8);
  OutPLElem y{Residue(8, 1L), UnitCoset::from_rational(c8, Rat(2))};
  CHECK(torsion_order(y) == 3);  // (k/d)(m^d - 1) with k = 3, d = 1
}

TEST_CASE("torsion orders match the closed form") {
  for (int n : {4, 8, 9, 16, 27}) {
    OutPLContext ctx = mk(n);
    for (long d = 1; d <= ctx.k; ++d) {
      if (ctx.k % d != 0) continue;
      long md = 1;
      for (long t = 0; t < d; ++t) md *= ctx.m;
      OutPLElem x{Residue(n, 1L), UnitCoset::from_rational(ctx, Rat(md))};
      auto order = torsion_order(x);
      REQUIRE(order.has_value());
      CHECK(*order == (ctx.k / d) * (md - 1));
    }
  }
}

TEST_CASE("infinite orders off the torsion subgroup") {
  for (int n : {6, 10, 12}) {
    OutPLContext ctx = mk(n);
    for (long p : ctx.primes) {
      OutPLElem x{Residue(n, 0L), UnitCoset::from_rational(ctx, Rat(p))};
      CHECK_FALSE(torsion_order(x).has_value());
      CHECK_FALSE(x.s.in_torsion_subgroup());
    }
  }
  // membership in <m>/<n> characterizes torsion
  OutPLContext ctx = mk(36);
  CHECK(UnitCoset::from_rational(ctx, Rat(6)).in_torsion_subgroup());
  CHECK_FALSE(UnitCoset::from_rational(ctx, Rat(2)).in_torsion_subgroup());
  CHECK(torsion_order(OutPLElem{Residue(36, 7L), UnitCoset::from_rational(ctx, Rat(6))})
            .has_value());
}

TEST_CASE("subgroup generated by the divisors") {
  CHECK(d_subgroup(4) == std::set<long>{1, 2});
  CHECK(d_subgroup(2) == std::set<long>{0});
  CHECK(d_subgroup(10) == std::set<long>{1, 2, 4, 5, 7, 8});

  // phi maps the unit cosets onto exactly this subgroup
  for (int n : {4, 6, 10, 12}) {
    OutPLContext ctx = mk(n);
    std::set<long> image;
    std::vector<std::vector<long>> stack{std::vector<long>(ctx.primes.size(), 0)};
    // products of bounded prime-exponent vectors reach every phi value
    std::function<void(std::size_t, std::vector<long>&)> enumerate =
        [&](std::size_t slot, std::vector<long>& exps) {
          if (slot == exps.size()) {
            image.insert(UnitCoset::from_exponents(ctx, exps).phi_unit());
            return;
          }
          for (long e = -n; e <= n; ++e) {
            exps[slot] = e;
            enumerate(slot + 1, exps);
          }
        };
    std::vector<long> exps(ctx.primes.size(), 0);
    enumerate(0, exps);
    CHECK(image == d_subgroup(n));
  }
}

TEST_CASE("pi of coset-normalizer products lands in the affine divisor group") {
  for (auto [n, p] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {10, 2}}) {
    PeriodicPLMap h = pl_coset_normalizer(n, p);
    PeriodicPLMap hh = compose(h, h);
    for (const auto* map : {&h, &hh}) {
      AffineResidueMap pi = pi_map(*map);
      CHECK(d_subgroup(n).count(pi.mult.value) == 1);
    }
  }
}
