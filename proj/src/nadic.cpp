#include "gthom/nadic.hpp"

#include <cctype>

#include "gthom/error.hpp"

namespace gthom {

namespace {
void check_base(int n) {
  require(n >= 2, "OutOfRange", "base must be at least 2");
}
void check_same_base(int a, int b) {
  require(a == b, "BaseMismatch",
          "mixed bases " + std::to_string(a) + " and " + std::to_string(b));
}
}  // namespace

Residue::Residue(int n, const mpz_class& v) : base(n) {
  check_base(n);
  long m = n - 1;
  if (m == 1) {
    value = 0;
  } else {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
    value = r.get_si();
  }
}

Residue::Residue(int n, long v) : Residue(n, mpz_class(v)) {}

Residue operator+(const Residue& x, const Residue& y) {
  check_same_base(x.base, y.base);
  return Residue(x.base, x.value + y.value);
}

Residue operator-(const Residue& x, const Residue& y) {
  check_same_base(x.base, y.base);
  return Residue(x.base, x.value - y.value);
}

Residue operator*(const Residue& x, const Residue& y) {
  check_same_base(x.base, y.base);
  return Residue(x.base, x.value * y.value);
}

Residue Residue::operator-() const { return Residue(base, -value); }

NAdic::NAdic(int base, mpz_class mantissa, long exponent)
    : base_(base), a_(std::move(mantissa)), b_(exponent) {
  check_base(base);
  if (a_ == 0) {
    b_ = 0;
    return;
  }
  while (mpz_divisible_ui_p(a_.get_mpz_t(), static_cast<unsigned long>(base_))) {
    a_ /= base_;
    ++b_;
  }
}

NAdic::NAdic(int base, long integer_value) : NAdic(base, mpz_class(integer_value), 0) {}

NAdic NAdic::from_rational(int base, const Rat& q) {
  check_base(base);
  require(in_z_over_n(q, base), "OutOfRange",
          "value " + q.get_str() + " is not in Z[1/" + std::to_string(base) + "]");
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  long e = 0;
  while (den != 1) {
    num *= base;
    --e;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num /= g;
    den /= g;
  }
  return NAdic(base, num, e);
}

Rat NAdic::to_rational() const {
  Rat r = rat_pow(base_, b_);
  r *= Rat(a_);
  r.canonicalize();
  return r;
}

Residue NAdic::phi() const { return Residue(base_, a_); }

NAdic operator+(const NAdic& x, const NAdic& y) {
  check_same_base(x.base_, y.base_);
  long b = std::min(x.b_, y.b_);
  mpz_class ax = x.a_, ay = y.a_;
  mpz_class scale;
  if (x.b_ > b) {
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(x.base_),
                  static_cast<unsigned long>(x.b_ - b));
    ax *= scale;
  }
  if (y.b_ > b) {
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(y.base_),
                  static_cast<unsigned long>(y.b_ - b));
    ay *= scale;
  }
  return NAdic(x.base_, ax + ay, b);
}

NAdic operator-(const NAdic& x, const NAdic& y) { return x + (-y); }

NAdic operator*(const NAdic& x, const NAdic& y) {
  check_same_base(x.base_, y.base_);
  return NAdic(x.base_, x.a_ * y.a_, x.b_ + y.b_);
}

NAdic NAdic::operator-() const { return NAdic(base_, -a_, b_); }

int NAdic::compare(const NAdic& other) const {
  check_same_base(base_, other.base_);
  NAdic d = *this - other;
  return sgn(d.a_);
}

std::string NAdic::str() const {
  return a_.get_str() + "*" + std::to_string(base_) + "^" + std::to_string(b_);
}

NAdic NAdic::parse(const std::string& text, int expected_base, bool canonicalize_input) {
  std::size_t pos = 0;
  auto peek = [&]() -> int { return pos < text.size() ? text[pos] : -1; };
  auto read_int = [&](const char* what) -> mpz_class {
    std::size_t start = pos;
    if (peek() == '-') ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw parse_error(std::string("expected ") + what, start);
    return mpz_class(text.substr(start, pos - start));
  };

  mpz_class mant = read_int("mantissa");
  if (peek() != '*') throw parse_error("expected '*'", pos);
  ++pos;
  mpz_class base_z = read_int("base");
  if (peek() != '^') throw parse_error("expected '^'", pos);
  ++pos;
  mpz_class exp_z = read_int("exponent");
  if (pos != text.size()) throw parse_error("trailing characters", pos);

  require(base_z == expected_base, "BaseMismatch",
          "text has base " + base_z.get_str() + ", expected " + std::to_string(expected_base));
  long e = exp_z.get_si();
  NAdic out(expected_base, mant, e);
  if (!canonicalize_input) {
    bool canonical = (out.mantissa() == mant && out.exponent() == e);
    require(canonical, "OutOfRange", "non-canonical input '" + text + "'");
  }
  return out;
}

std::vector<NAdic> mu_orbit(const NAdic& x) {
  int n = x.base();
  NAdic lo = NAdic::zero(n);
  NAdic hi(n, n - 1);
  require(x.compare(lo) >= 0 && x.compare(hi) < 0, "OutOfRange",
          "point must lie in [0, n-1)");
  std::vector<NAdic> orbit{x};
  NAdic cur = x;
  for (;;) {
    NAdic next = cur * NAdic(n, n);
    // Reduce n*x into [0, n-1) by subtracting the unique multiple of (n-1).
    Rat q = next.to_rational() / Rat(n - 1);
    mpz_class k = floor_rat(q);
    next = next - NAdic(n, k * (n - 1), 0);
    if (next == cur) break;
    orbit.push_back(next);
    cur = next;
  }
  return orbit;
}

Residue rational_phi(const Rat& q, int n) {
  return NAdic::from_rational(n, q).phi();
}

}  // namespace gthom
