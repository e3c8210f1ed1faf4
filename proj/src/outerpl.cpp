#include "gthom/outerpl.hpp"

#include <algorithm>
#include <numeric>

#include "gthom/error.hpp"

namespace gthom {

OutPLContext mk(int n) {
  require(n >= 2, "OutOfRange", "base must be at least 2");
  OutPLContext ctx;
  ctx.n = n;
  ctx.primes = prime_divisors(n);
  for (long p : ctx.primes) {
    long e = 0, v = n;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    ctx.vn.push_back(e);
  }
  ctx.k = ctx.vn[0];
  for (long e : ctx.vn) ctx.k = std::gcd(ctx.k, e);
  ctx.m = 1;
  for (std::size_t i = 0; i < ctx.primes.size(); ++i) {
    long e = ctx.vn[i] / ctx.k;
    for (long t = 0; t < e; ++t) ctx.m *= ctx.primes[i];
  }
  return ctx;
}

UnitCoset::UnitCoset(const OutPLContext& ctx, std::vector<long> exps)
    : n_(ctx.n), primes_(ctx.primes), vn_(ctx.vn), k_(ctx.k), exps_(std::move(exps)) {
  // Reduce modulo Z*v_n: bring the first coordinate into [0, vn[0]).
  long v0 = vn_[0];
  long q = exps_[0] >= 0 ? exps_[0] / v0 : -((-exps_[0] + v0 - 1) / v0);
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] -= q * vn_[i];
}

UnitCoset UnitCoset::from_exponents(const OutPLContext& ctx, std::vector<long> exps) {
  require(exps.size() == ctx.primes.size(), "OutOfRange",
          "one exponent per prime divisor required");
  return UnitCoset(ctx, std::move(exps));
}

UnitCoset UnitCoset::from_rational(const OutPLContext& ctx, const Rat& s) {
  require(s > 0, "OutOfRange", "unit must be positive");
  std::vector<long> exps(ctx.primes.size(), 0);
  mpz_class num = s.get_num(), den = s.get_den();
  for (std::size_t i = 0; i < ctx.primes.size(); ++i) {
    long p = ctx.primes[i];
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
      num /= p;
      ++exps[i];
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
      den /= p;
      --exps[i];
    }
  }
  require(num == 1 && den == 1, "OutOfRange",
          s.get_str() + " is not in <<" + std::to_string(ctx.n) + ">>");
  return UnitCoset(ctx, std::move(exps));
}

UnitCoset UnitCoset::identity(const OutPLContext& ctx) {
  return UnitCoset(ctx, std::vector<long>(ctx.primes.size(), 0));
}

bool UnitCoset::is_identity() const {
  return std::all_of(exps_.begin(), exps_.end(), [](long e) { return e == 0; });
}

UnitCoset operator*(const UnitCoset& a, const UnitCoset& b) {
  require(a.n_ == b.n_, "BaseMismatch", "unit cosets over different bases");
  std::vector<long> exps = a.exps_;
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += b.exps_[i];
  OutPLContext ctx{a.n_, a.primes_, a.vn_, 0, a.k_};
  return UnitCoset(ctx, std::move(exps));
}

UnitCoset UnitCoset::inverse() const {
  std::vector<long> exps = exps_;
  for (auto& e : exps) e = -e;
  OutPLContext ctx{n_, primes_, vn_, 0, k_};
  return UnitCoset(ctx, std::move(exps));
}

namespace {

long mod_pow_signed(long base, long exp, long mod) {
  if (mod == 1) return 0;
  long b = ((base % mod) + mod) % mod;
  if (exp < 0) {
    // Modular inverse via extended Euclid; b is coprime to mod here.
    long t = 0, newt = 1, r = mod, newr = b;
    while (newr != 0) {
      long q = r / newr;
      long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    b = ((t % mod) + mod) % mod;
    exp = -exp;
  }
  long acc = 1;
  while (exp > 0) {
    if (exp & 1) acc = (acc * b) % mod;
    b = (b * b) % mod;
    exp >>= 1;
  }
  return acc;
}

}  // namespace

long UnitCoset::phi_unit() const {
  long mod = n_ - 1;
  if (mod == 1) return 0;
  long acc = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    acc = (acc * mod_pow_signed(primes_[i], exps_[i], mod)) % mod;
  return acc;
}

bool UnitCoset::in_torsion_subgroup() const {
  // <m>/<n> membership: the exponent vector is an integer multiple of
  // v_m = v_n / k (canonical representatives compared directly).
  std::vector<long> vm(vn_.size());
  for (std::size_t i = 0; i < vn_.size(); ++i) vm[i] = vn_[i] / k_;
  if (is_identity()) return true;
  if (exps_[0] % vm[0] != 0) return false;
  long c = exps_[0] / vm[0];
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != c * vm[i]) return false;
  return true;
}

OutPLElem outpl_identity(const OutPLContext& ctx) {
  return {Residue(ctx.n, 0L), UnitCoset::identity(ctx)};
}

OutPLElem aff_mul(const OutPLElem& x, const OutPLElem& y) {
  require(x.a.base == y.a.base, "BaseMismatch", "elements over different bases");
  Residue a = x.a * Residue(x.a.base, y.s.phi_unit()) + y.a;
  return {a, x.s * y.s};
}

OutPLElem aff_pow(const OutPLElem& x, long u) {
  OutPLContext ctx = mk(x.a.base);
  OutPLElem acc = outpl_identity(ctx);
  if (u >= 0) {
    for (long i = 0; i < u; ++i) acc = aff_mul(acc, x);
    return acc;
  }
  // Inverse: (a, s)^{-1} = (-a * phi(s^{-1}), s^{-1}).
  UnitCoset sinv = x.s.inverse();
  OutPLElem inv{-(x.a * Residue(x.a.base, sinv.phi_unit())), sinv};
  for (long i = 0; i < -u; ++i) acc = aff_mul(acc, inv);
  return acc;
}

bool is_identity(const OutPLElem& x) { return x.a.value == 0 && x.s.is_identity(); }

std::optional<long> torsion_order(const OutPLElem& x) {
  if (!x.s.in_torsion_subgroup()) return std::nullopt;
  OutPLContext ctx = mk(x.a.base);
  long bound = ctx.k * (ctx.n - 1) + 1;
  OutPLElem y = x;
  long order = 1;
  while (!is_identity(y)) {
    y = aff_mul(y, x);
    ++order;
    require(order <= bound, "OutOfRange", "torsion iteration exceeded its bound");
  }
  return order;
}

std::set<long> d_subgroup(int n) {
  long mod = n - 1;
  if (mod == 1) return {0};
  std::set<long> group{1};
  std::vector<long> frontier{1};
  auto gens = prime_divisors(n);
  while (!frontier.empty()) {
    long v = frontier.back();
    frontier.pop_back();
    for (long p : gens) {
      long w = (v * (p % mod)) % mod;
      if (group.insert(w).second) frontier.push_back(w);
    }
  }
  return group;
}

}  // namespace gthom
