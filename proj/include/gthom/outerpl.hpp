#pragma once

#include <optional>
#include <set>
#include <vector>

#include "gthom/nadic.hpp"
#include "gthom/rat.hpp"

namespace gthom {

/// Prime data of n: distinct primes, their exponent vector v_n, and the
/// maximal k with n = m^k.
struct OutPLContext {
  int n;
  std::vector<long> primes;
  std::vector<long> vn;  // exponents of n over `primes`
  long m;
  long k;
};

OutPLContext mk(int n);

/// Element of <<n>>/<n> as a prime-exponent vector taken modulo Z*v_n.
/// Canonical representative: first coordinate reduced into [0, v_n[0]).
class UnitCoset {
public:
  static UnitCoset from_exponents(const OutPLContext& ctx, std::vector<long> exps);
  static UnitCoset from_rational(const OutPLContext& ctx, const Rat& s);
  static UnitCoset identity(const OutPLContext& ctx);

  int base() const { return n_; }
  const std::vector<long>& exponents() const { return exps_; }
  bool is_identity() const;

  friend UnitCoset operator*(const UnitCoset& a, const UnitCoset& b);
  UnitCoset inverse() const;
  bool operator==(const UnitCoset&) const = default;

  // Induced unit of Z_{n-1} (image under the residue epimorphism).
  long phi_unit() const;
  // Membership in <m>/<n>, the torsion subgroup of <<n>>/<n>.
  bool in_torsion_subgroup() const;

private:
  UnitCoset(const OutPLContext& ctx, std::vector<long> exps);
  int n_;
  std::vector<long> primes_, vn_;
  long k_;
  std::vector<long> exps_;
};

/// Element of Z_{n-1} x| <<n>>/<n> with the affine convention
/// (a, s)(a', s') = (a*phi(s') + a', s s').
struct OutPLElem {
  Residue a;
  UnitCoset s;
};

OutPLElem outpl_identity(const OutPLContext& ctx);
OutPLElem aff_mul(const OutPLElem& x, const OutPLElem& y);
OutPLElem aff_pow(const OutPLElem& x, long u);
bool is_identity(const OutPLElem& x);

// Finite order by direct iteration (bounded by k*(n-1)); nullopt = infinite.
std::optional<long> torsion_order(const OutPLElem& x);

// Subgroup of U_{n-1} generated by the prime divisors of n.
std::set<long> d_subgroup(int n);

}  // namespace gthom
