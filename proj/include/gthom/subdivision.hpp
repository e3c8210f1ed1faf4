#pragma once

#include <set>
#include <vector>

#include "gthom/plmap.hpp"
#include "gthom/words.hpp"

namespace gthom {

/// Allowable subdivision of R: the standard unit-interval subdivision refined
/// by finitely many n-ary splits of single intervals. Stored as the set of
/// non-integer endpoints (every integer is always an endpoint).
class Subdivision {
public:
  static Subdivision standard(int n) { return Subdivision(n); }
  // Validates that the cut set is closed under "parent interval exists".
  static Subdivision from_cuts(int n, std::vector<Rat> cuts);

  int base() const { return base_; }
  const std::vector<Rat>& cuts() const { return cuts_; }
  bool is_standard() const { return cuts_.empty(); }
  bool operator==(const Subdivision&) const = default;

  // Integer hull of the non-standard part; [0, 0] when standard.
  long window_lo() const;
  long window_hi() const;
  bool supported_in(const Rat& a, const Rat& b) const;

  // All endpoints (integers and cuts) in [a, b], ascending; a, b integers.
  std::vector<Rat> endpoints(long a, long b) const;
  // Number of intervals between consecutive endpoints in [a, b].
  long interval_count(long a, long b) const;

  // Allowable modification: split the interval numbered k (interval 0 has
  // left endpoint 0; consecutive numbering left to right).
  void split_numbered_interval(long k);

  // Residue classes (mod n-1) of the left-endpoint numerators of every
  // interval this subdivision splits.
  std::set<long> split_residues() const;

  // Bracketed cut list, e.g. "[1/2, 3/4]".
  std::string str() const;

private:
  explicit Subdivision(int n) : base_(n) {}
  int base_;
  std::vector<Rat> cuts_;  // ascending, non-integer
};

/// Two allowable subdivisions plus the induced end shift. Represents the
/// unique isomorphism from `dom` to `ran` (identity near -inf, intervals
/// matched in order); the canonical reduced pair decides element equality.
class SubdivisionPair {
public:
  SubdivisionPair(Subdivision dom, Subdivision ran);

  const Subdivision& dom() const { return dom_; }
  const Subdivision& ran() const { return ran_; }
  // Translation near +inf is shift() * (n - 1).
  long shift() const { return shift_; }

  bool operator==(const SubdivisionPair& o) const {
    return dom_ == o.dom_ && ran_ == o.ran_;
  }

private:
  Subdivision dom_, ran_;
  long shift_;
};

// The subdivision a positive word (indices >= 0) builds, per the prefix
// numbering scheme.
Subdivision word_to_subdivision(const Word& positive_word);

// Greedy leftmost inverse; result is ascending-index positive.
Word subdivision_to_word(const Subdivision& d);

PLMap pair_to_plmap(const SubdivisionPair& pair);

// Canonical reduced pair of a map that is the identity near -inf and a
// translation by a multiple of n-1 near +inf. Deterministic minimal
// construction; the result contains no parallel modification.
SubdivisionPair plmap_to_pair(const PLMap& f);

// Structural reduction: repeatedly remove a split of `dom` whose image in
// `ran` is exactly a parallel split. Agrees with plmap_to_pair of the map.
SubdivisionPair reduce(const SubdivisionPair& pair);

// Index-inequality test: the subdivision of a semi-normal positive word is
// supported in [k, l] iff k <= i_1 and i_j < l + (n-1)(j-1) for all j.
bool support_bound_check(const Word& positive_word, long k, long l);

}  // namespace gthom
