#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gthom/nadic.hpp"
#include "gthom/plmap.hpp"

namespace gthom {

enum class LetterKind { T1, Tn, G };

struct Letter {
  LetterKind kind;
  long index;  // meaningful for G only
  long exp;    // nonzero
  bool operator==(const Letter&) const = default;
};

/// Group word over t_1, t_{n-1} and g_i (i in Z) with integer exponents.
/// Adjacent letters of identical kind/index are merged and zero exponents
/// dropped on construction.
class Word {
public:
  explicit Word(int base) : base_(base) {}
  Word(int base, std::vector<Letter> letters);

  static Word g(int base, long index, long exp = 1);
  static Word t1(int base, long exp = 1);
  static Word tn(int base, long exp = 1);

  int base() const { return base_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const;  // total letters counted with |exp|
  bool only_g() const;
  bool has_t1() const;

  Word inverse() const;
  Word pow(long k) const;
  friend Word operator*(const Word& a, const Word& b);

  // Grammar (bit-exact): whitespace-separated tokens `g<int>`, `t1`, `tn`,
  // each with optional `^<int>`; left-to-right composition order.
  std::string str() const;
  static Word parse(const std::string& text, int base);

  bool operator==(const Word&) const = default;  // syntactic; see equal()

private:
  int base_;
  std::vector<Letter> letters_;
};

PLMap to_plmap(const Word& w);

enum class WordFlavor { Fn, FnInfinity, FnAt0 };

// Exact word form of a map in the given flavor; to_plmap(result) == f.
Word from_plmap(const PLMap& f, WordFlavor flavor);

/// Semi-normal data: w == t^tP * P * N^{-1} * t^{-tN} as maps, where t is the
/// translation by `step` (1 or n-1) and P, N are positive words with strictly
/// ascending indices (exponents >= 1).
struct SemiNormal {
  Word P, N;
  long tP = 0, tN = 0;
  long step = 1;
};

SemiNormal seminormal(const Word& w);

// g_i -> g_{i + j*step}; t-letters unchanged. Equals t^{-j} w t^{j} for the
// matching translation.
Word shift(const Word& w, long j, long step);

// Exponent sums of the g-letters by index residue class mod n-1.
std::vector<long> exponent_sums(const Word& w);

// Leftmost break of a nontrivial g-word and its residue, computed from the
// semi-normal form (largest common prefix rule).
std::pair<Rat, Residue> leftmost_break_word(const Word& w);

// W avoids the residue class j: its reduced subdivision pair splits no
// interval whose left-endpoint numerator is congruent to j mod n-1.
bool avoids(const Word& w, long j);

bool equal(const Word& a, const Word& b);  // extensional, via maps

}  // namespace gthom
