#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "gthom/nadic.hpp"
#include "gthom/rat.hpp"

namespace gthom {

struct BreakPt {
  Rat x, y;
  bool operator==(const BreakPt&) const = default;
};

/// Orientation-preserving, eventually-affine PL self-homeomorphism of R with
/// exact rational breakpoints and slopes. Canonical form: the slope changes
/// at every listed break; a map with no breaks is stored as slope + offset.
/// Membership in A_n / B_n is a predicate, not a type invariant: slopes may
/// be arbitrary positive rationals (PL normalizers use slopes outside <n>).
class PLMap {
public:
  static PLMap identity(int n);
  static PLMap affine(int n, const Rat& slope, const Rat& offset);
  static PLMap translation(int n, const Rat& r);
  static PLMap generator(int n, const Rat& i);  // g_i
  // Canonicalizes: drops points where the slope does not change. Points must
  // be strictly ascending in x and y.
  static PLMap from_breakpoints(int n, std::vector<BreakPt> pts, const Rat& left_slope,
                                const Rat& right_slope);

  int base() const { return base_; }
  bool is_affine() const { return breaks_.empty(); }
  bool is_identity() const;
  const std::vector<BreakPt>& breaks() const { return breaks_; }
  const Rat& left_slope() const { return left_slope_; }
  const Rat& right_slope() const { return right_slope_; }
  // Affine form x -> left_slope*x + offset; only meaningful when affine.
  const Rat& affine_offset() const { return offset_; }

  Rat eval(const Rat& x) const;
  Rat eval_inverse(const Rat& y) const;
  Rat slope_right_of(const Rat& x) const;
  Rat slope_left_of(const Rat& x) const;
  // Multiplicative break value: right slope / left slope at x (1 iff affine
  // near x).
  Rat break_jump(const Rat& x) const;
  std::optional<Rat> leftmost_break() const;
  std::optional<Rat> rightmost_break() const;
  // Translation amount of the left / right tail; meaningful when the tail
  // slope is 1 (affine maps report their offset when slope 1).
  Rat left_tail_offset() const;
  Rat right_tail_offset() const;
  // Every slope the map uses, tails included (deduplicated, in order of use).
  std::vector<Rat> slopes() const;
  // Slopes of the segments meeting the open interval (a, b).
  std::vector<Rat> slopes_in(const Rat& a, const Rat& b) const;

  PLMap inverse() const;
  friend PLMap compose(const PLMap& f, const PLMap& g);  // x(fg) = (xf)g

  bool operator==(const PLMap&) const = default;

private:
  PLMap(int n) : base_(n), left_slope_(1), right_slope_(1), offset_(0) {}

  int base_;
  std::vector<BreakPt> breaks_;
  Rat left_slope_, right_slope_;
  Rat offset_;  // affine form only
};

PLMap compose_all(std::initializer_list<PLMap> maps);
PLMap pl_pow(const PLMap& f, long k);
// Conjugate by the translation t_c: x -> ((x - c)f) + c.
PLMap translate_conj(const PLMap& f, const Rat& c);

enum class GroupClass {
  An,              // slopes in <n>, breaks in Z[1/n]
  Bn,              // A_n with rho = 0
  Fn,              // A_n, integer translations near +-inf
  FnInfinity,      // A_n, translations by multiples of n-1 near +-inf
  FnAt0,           // A_n, identity left of 0, multiple-of-(n-1) translation near +inf
  FnMinusInfinity, // A_n, identity near -inf, multiple-of-(n-1) translation near +inf
  BoundedSupport,  // identity near +-inf (no arithmetic condition)
  FnCompact        // F_n^0: A_n with bounded support
};

bool membership(const PLMap& f, GroupClass which);
bool support_in(const PLMap& f, const Rat& a, const Rat& b);

// Residue shift (xf)phi - x phi of an A_n element; checked at two sample
// points. Raises NotInAn when f is not in A_n.
Residue rho(const PLMap& f);

/// Affine action r -> r*mult + shift on the n-1 residue classes of Z[1/n].
struct AffineResidueMap {
  Residue shift;
  Residue mult;  // unit of Z_{n-1}

  long apply(long r) const { return ((r * mult.value + shift.value) % (mult.base - 1) + (mult.base - 1)) % (mult.base - 1); }
  std::vector<long> permutation() const;  // images of 0..n-2
  friend AffineResidueMap operator*(const AffineResidueMap& p, const AffineResidueMap& q);
  bool operator==(const AffineResidueMap&) const = default;
};

AffineResidueMap pi_map(const PLMap& f);

// Transitivity constructor: f in B_n with x_i f = y_i exactly, built by
// matching n-ary subdivisions of consecutive intervals.
// Preconditions: ascending lists of equal length, phi(x_i) == phi(y_i).
PLMap interpolate_points(int n, const std::vector<NAdic>& xs, const std::vector<NAdic>& ys);

struct GluePiece {
  std::optional<Rat> lo, hi;  // nullopt = unbounded on that side
  PLMap map;
};

// Extends compatible pieces to a map of the whole line, filling gaps with
// interpolation; slope-1 tails outside the outermost pieces.
PLMap glue(int n, const std::vector<GluePiece>& pieces);

/// Homeomorphism commuting with t_p and fixing 0, given by a fundamental
/// map supported in [0, p]. Covers the periodic extensions of supported maps
/// and the t_p-commuting PL normalizers.
class PeriodicPLMap {
public:
  // Requires support(w) inside [0, period]; w then fixes 0 and period.
  static PeriodicPLMap extend(const PLMap& w, int period);

  int base() const { return fundamental_.base(); }
  int period() const { return period_; }
  const PLMap& fundamental() const { return fundamental_; }

  Rat eval(const Rat& x) const;
  PeriodicPLMap inverse() const;
  friend PeriodicPLMap compose(const PeriodicPLMap& f, const PeriodicPLMap& g);
  // PLMap agreeing with the periodic map on [a, b] (identity continuation
  // outside whole pasted periods).
  PLMap window(const Rat& a, const Rat& b) const;

  bool operator==(const PeriodicPLMap&) const = default;

private:
  PeriodicPLMap(PLMap f, int p) : fundamental_(std::move(f)), period_(p) {}
  PLMap fundamental_;
  int period_;
};

// Normalizer hitting the slope coset p<n>: fundamental segments
// (0,0)-(n/p - 1, n - p) with slope p and (n/p - 1, n - p)-(n-1, n-1) with
// slope p/n, extended with period n-1. Requires p a prime divisor of n
// with p < n.
PeriodicPLMap pl_coset_normalizer(int n, int p);

AffineResidueMap pi_map(const PeriodicPLMap& h);

}  // namespace gthom
