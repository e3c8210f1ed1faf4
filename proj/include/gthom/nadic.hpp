#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "gthom/rat.hpp"

namespace gthom {

/// Element of Z_{n-1}. For n = 2 the group is trivial and every value is 0.
struct Residue {
  int base;
  long value;

  Residue(int n, const mpz_class& v);
  Residue(int n, long v);

  friend Residue operator+(const Residue& x, const Residue& y);
  friend Residue operator-(const Residue& x, const Residue& y);
  friend Residue operator*(const Residue& x, const Residue& y);
  Residue operator-() const;
  bool operator==(const Residue&) const = default;
};

/// Exact element of Z[1/n] in canonical mantissa * n^exponent form.
/// Invariants: mantissa == 0 implies exponent == 0; otherwise n does not
/// divide the mantissa. Values of equal base are equal iff their canonical
/// pairs are equal.
class NAdic {
public:
  NAdic() : base_(2), a_(0), b_(0) {}
  NAdic(int base, mpz_class mantissa, long exponent);  // canonicalizes
  NAdic(int base, long integer_value);

  static NAdic zero(int base) { return NAdic(base, 0, 0); }
  // Requires q in Z[1/n].
  static NAdic from_rational(int base, const Rat& q);

  int base() const { return base_; }
  const mpz_class& mantissa() const { return a_; }
  long exponent() const { return b_; }

  Rat to_rational() const;
  bool is_zero() const { return a_ == 0; }
  bool is_integer() const { return a_ == 0 || b_ >= 0; }
  // Membership in <n> = {n^k}: positive with unit mantissa.
  bool in_gen_n() const { return a_ == 1; }

  Residue phi() const;
  bool in_delta() const { return phi().value == 0; }

  friend NAdic operator+(const NAdic& x, const NAdic& y);
  friend NAdic operator-(const NAdic& x, const NAdic& y);
  friend NAdic operator*(const NAdic& x, const NAdic& y);
  NAdic operator-() const;

  // Total order consistent with real values: -1, 0, +1.
  int compare(const NAdic& other) const;
  bool operator==(const NAdic& o) const {
    return base_ == o.base_ && a_ == o.a_ && b_ == o.b_;
  }
  bool operator!=(const NAdic& o) const { return !(*this == o); }
  bool operator<(const NAdic& o) const { return compare(o) < 0; }

  // Text form "a*n^b", e.g. "5*4^-2".
  std::string str() const;
  // Rejects non-canonical input unless canonicalize_input is set.
  static NAdic parse(const std::string& text, int expected_base,
                     bool canonicalize_input = false);

private:
  int base_;
  mpz_class a_;
  long b_;
};

// Forward orbit of x in [0, n-1) under x -> n*x reduced mod (n-1)Z back
// into [0, n-1); finite, ends at the fixed integer point phi(x).
std::vector<NAdic> mu_orbit(const NAdic& x);

Residue rational_phi(const Rat& q, int n);  // requires q in Z[1/n]

}  // namespace gthom
