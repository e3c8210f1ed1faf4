#include "gthom/rat.hpp"

#include <cstdlib>

#include "gthom/error.hpp"

namespace gthom {

Rat rat_pow(long base, long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(std::labs(k)));
  Rat r = (k >= 0) ? Rat(p) : Rat(1, p);
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

mpz_class floor_rat(const Rat& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpz_class ceil_rat(const Rat& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

namespace {

// Strips from z every prime factor it shares with n; returns the remainder.
mpz_class strip_factors_of(mpz_class z, long n) {
  if (z < 0) z = -z;
  if (z == 0) return z;
  mpz_class g;
  for (;;) {
    mpz_gcd_ui(g.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(n));
    if (g == 1) break;
    do {
      z /= g;
    } while (mpz_divisible_p(z.get_mpz_t(), g.get_mpz_t()));
  }
  return z;
}

}  // namespace

bool in_z_over_n(const Rat& q, int n) {
  return strip_factors_of(q.get_den(), n) == 1;
}

std::optional<long> log_base_n(const Rat& q, int n) {
  if (q <= 0) return std::nullopt;
  if (q == 1) return 0L;
  auto count = [&](const mpz_class& z) -> std::optional<long> {
    mpz_class v = z;
    long k = 0;
    while (v > 1) {
      if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(n)))
        return std::nullopt;
      v /= n;
      ++k;
    }
    return k;
  };
  if (q.get_den() == 1) {
    auto k = count(q.get_num());
    return k;
  }
  if (q.get_num() == 1) {
    auto k = count(q.get_den());
    if (!k) return std::nullopt;
    return -*k;
  }
  return std::nullopt;
}

bool is_unit_of_z_over_n(const Rat& q, int n) {
  if (q <= 0) return false;
  return strip_factors_of(q.get_num(), n) == 1 &&
         strip_factors_of(q.get_den(), n) == 1;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) ps.push_back(m);
  return ps;
}

std::string decimal_string(const Rat& q, int significant_digits) {
  if (q == 0) return "0";
  mpz_class num = q.get_num();
  bool neg = num < 0;
  if (neg) num = -num;
  const mpz_class& den = q.get_den();

  // Scale so the integer part has exactly `significant_digits` digits, then
  // round half away from zero and place the decimal point.
  mpz_class ip = num / den;
  long int_digits = (ip == 0) ? 0 : static_cast<long>(mpz_sizeinbase(ip.get_mpz_t(), 10));
  if (int_digits > 0) {
    mpz_class probe;
    mpz_ui_pow_ui(probe.get_mpz_t(), 10, static_cast<unsigned long>(int_digits - 1));
    if (ip < probe) --int_digits;  // sizeinbase may overestimate by one
  }
  long shift;
  if (ip == 0) {
    // Count leading zeros after the point.
    mpz_class v = num;
    long zeros = 0;
    while (v * 10 < den) {
      v *= 10;
      ++zeros;
    }
    shift = zeros + significant_digits;
  } else {
    shift = significant_digits - int_digits;
  }

  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
  mpz_class scaled_num = num, scaled_den = den;
  if (shift >= 0)
    scaled_num *= pow10;
  else
    scaled_den *= pow10;
  mpz_class qq, rr;
  mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  if (rr * 2 >= scaled_den) qq += 1;

  std::string digits = qq.get_str();
  std::string out;
  long point = static_cast<long>(digits.size()) - shift;  // digits before the point
  if (point <= 0) {
    out = "0.";
    out.append(static_cast<std::size_t>(-point), '0');
    out += digits;
  } else if (point >= static_cast<long>(digits.size())) {
    out = digits;
    out.append(static_cast<std::size_t>(point - static_cast<long>(digits.size())), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(point)) + "." +
          digits.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

}  // namespace gthom
