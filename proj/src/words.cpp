#include "gthom/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "gthom/error.hpp"
#include "gthom/subdivision.hpp"

namespace gthom {

Word::Word(int base, std::vector<Letter> letters) : base_(base) {
  require(base >= 2, "OutOfRange", "base must be at least 2");
  for (const auto& l : letters) {
    if (l.exp == 0) continue;
    Letter cur = l;
    if (cur.kind != LetterKind::G) cur.index = 0;
    if (!letters_.empty() && letters_.back().kind == cur.kind &&
        letters_.back().index == cur.index) {
      letters_.back().exp += cur.exp;
      if (letters_.back().exp == 0) letters_.pop_back();
    } else {
      letters_.push_back(cur);
    }
  }
}

Word Word::g(int base, long index, long exp) {
  return Word(base, {{LetterKind::G, index, exp}});
}
Word Word::t1(int base, long exp) { return Word(base, {{LetterKind::T1, 0, exp}}); }
Word Word::tn(int base, long exp) { return Word(base, {{LetterKind::Tn, 0, exp}}); }

std::size_t Word::length() const {
  std::size_t len = 0;
  for (const auto& l : letters_) len += static_cast<std::size_t>(std::labs(l.exp));
  return len;
}

bool Word::only_g() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return l.kind == LetterKind::G; });
}

bool Word::has_t1() const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return l.kind == LetterKind::T1; });
}

Word Word::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (auto& l : rev) l.exp = -l.exp;
  return Word(base_, std::move(rev));
}

Word Word::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Word out(base_);
  for (long i = 0; i < k; ++i) out = out * *this;
  return out;
}

Word operator*(const Word& a, const Word& b) {
  require(a.base() == b.base(), "BaseMismatch", "words over different bases");
  std::vector<Letter> ls = a.letters_;
  ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
  return Word(a.base_, std::move(ls));
}

std::string Word::str() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case LetterKind::T1: out += "t1"; break;
      case LetterKind::Tn: out += "tn"; break;
      case LetterKind::G: out += "g" + std::to_string(l.index); break;
    }
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

Word Word::parse(const std::string& text, int base) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  auto read_long = [&](const char* what) -> long {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw parse_error(std::string("expected ") + what, start);
    return std::stol(text.substr(start, pos - start));
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t tok_start = pos;
    Letter l{LetterKind::G, 0, 1};
    if (text[pos] == 'g') {
      ++pos;
      l.kind = LetterKind::G;
      l.index = read_long("generator index");
    } else if (text[pos] == 't') {
      ++pos;
      if (pos < text.size() && text[pos] == '1') {
        l.kind = LetterKind::T1;
        ++pos;
      } else if (pos < text.size() && text[pos] == 'n') {
        l.kind = LetterKind::Tn;
        ++pos;
      } else {
        throw parse_error("expected t1 or tn", tok_start);
      }
    } else if (text[pos] == '1' && (pos + 1 == text.size() ||
                                    std::isspace(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;  // "1" denotes the empty word
      continue;
    } else {
      throw parse_error("unexpected character", pos);
    }
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      l.exp = read_long("exponent");
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      throw parse_error("malformed token", pos);
    letters.push_back(l);
  }
  return Word(base, std::move(letters));
}

PLMap to_plmap(const Word& w) {
  int n = w.base();
  PLMap acc = PLMap::identity(n);
  for (const auto& l : w.letters()) {
    PLMap atom = PLMap::identity(n);
    switch (l.kind) {
      case LetterKind::T1: atom = PLMap::translation(n, 1); break;
      case LetterKind::Tn: atom = PLMap::translation(n, n - 1); break;
      case LetterKind::G: atom = PLMap::generator(n, Rat(l.index)); break;
    }
    acc = compose(acc, pl_pow(atom, l.exp));
  }
  return acc;
}

namespace {

// Word of a map that is the identity near -inf and a translation by a
// multiple of n-1 near +inf, via its canonical subdivision pair.
Word pair_word(const PLMap& f) {
  SubdivisionPair pair = plmap_to_pair(f);
  Word p = subdivision_to_word(pair.dom());
  Word q = subdivision_to_word(pair.ran());
  return p * q.inverse();
}

}  // namespace

Word from_plmap(const PLMap& f, WordFlavor flavor) {
  int n = f.base();
  GroupClass cls = flavor == WordFlavor::Fn          ? GroupClass::Fn
                   : flavor == WordFlavor::FnInfinity ? GroupClass::FnInfinity
                                                      : GroupClass::FnAt0;
  require(membership(f, cls), "NotMember", "map is not in the requested flavor");

  Word prefix(n);
  PLMap u = f;
  if (flavor == WordFlavor::Fn) {
    long i = static_cast<long>(f.left_tail_offset().get_num().get_si());
    if (i != 0) {
      prefix = Word::t1(n, i);
      u = compose(PLMap::translation(n, -i), f);
    }
  } else if (flavor == WordFlavor::FnInfinity) {
    Rat steps = f.left_tail_offset() / (n - 1);
    long i = static_cast<long>(steps.get_num().get_si());
    if (i != 0) {
      prefix = Word::tn(n, i);
      u = compose(PLMap::translation(n, -Rat(i) * (n - 1)), f);
    }
  }

  long k = 0;
  if (auto lb = u.leftmost_break(); lb && *lb < 0) {
    k = static_cast<long>(ceil_rat(-*lb / (n - 1)).get_si());
    u = translate_conj(u, Rat(k) * (n - 1));
  }
  Word body = shift(pair_word(u), -k, n - 1);
  return prefix * body;
}

namespace {

struct Unit {
  long idx;
  int sign;
};

// Selection sort of a positive-word unit list into non-decreasing index
// order using g_a g_b = g_b g_{a+n-1} (b < a).
void sort_positive_units(std::vector<long>& u, int n) {
  for (std::size_t t = 0; t < u.size(); ++t) {
    std::size_t m = t;
    for (std::size_t s = t + 1; s < u.size(); ++s)
      if (u[s] < u[m]) m = s;
    for (std::size_t pos = m; pos > t; --pos) {
      long a = u[pos - 1], b = u[pos];
      u[pos - 1] = b;
      u[pos] = a + n - 1;
    }
  }
}

}  // namespace

SemiNormal seminormal(const Word& w) {
  int n = w.base();
  long r = (w.has_t1() && n > 2) ? 1 : (n - 1);

  // Slide every t-letter to the far left; a g-letter passed by t^c from its
  // right gains c*r on its index.
  std::vector<Unit> v;
  long c = 0;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    const Letter& l = *it;
    if (l.kind == LetterKind::G) {
      long j = l.index + c * r;
      int s = l.exp > 0 ? 1 : -1;
      for (long rep = 0; rep < std::labs(l.exp); ++rep) v.push_back({j, s});
    } else {
      long amount = (l.kind == LetterKind::Tn) ? (n - 1) : 1;
      c += l.exp * (amount / r);
    }
  }
  std::reverse(v.begin(), v.end());

  // Push every inverse letter right of every positive letter:
  //   g_i^{-1} g_j = g_{j+n-1} g_i^{-1}   (i < j)
  //   g_i^{-1} g_i = 1
  //   g_i^{-1} g_j = g_j g_{i+n-1}^{-1}   (i > j)
  // The number of (inverse, positive) ordered pairs drops by one per rule
  // application, which bounds the loop; assert the decrease.
  auto inversions = [&v]() {
    long neg_seen = 0, count = 0;
    for (const auto& u : v) {
      if (u.sign < 0)
        ++neg_seen;
      else
        count += neg_seen;
    }
    return count;
  };
  long measure = inversions();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].sign < 0 && v[i + 1].sign > 0) {
        long a = v[i].idx, b = v[i + 1].idx;
        if (a == b) {
          v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
        } else if (a < b) {
          v[i] = {b + n - 1, 1};
          v[i + 1] = {a, -1};
        } else {
          v[i] = {b, 1};
          v[i + 1] = {a + n - 1, -1};
        }
        long next = inversions();
        require(next < measure, "NotSeminormal",
                "rewriting measure failed to decrease");
        measure = next;
        changed = true;
        break;
      }
    }
  }

  std::vector<long> pos_units, neg_units;
  for (const auto& unit : v)
    (unit.sign > 0 ? pos_units : neg_units).push_back(unit.idx);
  std::reverse(neg_units.begin(), neg_units.end());  // letters of N, in order
  sort_positive_units(pos_units, n);
  sort_positive_units(neg_units, n);

  auto to_word = [n](const std::vector<long>& units) {
    std::vector<Letter> ls;
    for (long i : units) ls.push_back({LetterKind::G, i, 1});
    return Word(n, std::move(ls));
  };
  return SemiNormal{to_word(pos_units), to_word(neg_units), c, 0, r};
}

Word shift(const Word& w, long j, long step) {
  std::vector<Letter> ls = w.letters();
  for (auto& l : ls)
    if (l.kind == LetterKind::G) l.index += j * step;
  return Word(w.base(), std::move(ls));
}

std::vector<long> exponent_sums(const Word& w) {
  require(w.only_g(), "HasTLetters", "exponent sums need a pure g-word");
  int n = w.base();
  std::vector<long> sums(static_cast<std::size_t>(n - 1), 0);
  for (const auto& l : w.letters()) {
    long cls = ((l.index % (n - 1)) + (n - 1)) % (n - 1);
    sums[static_cast<std::size_t>(cls)] += l.exp;
  }
  return sums;
}

std::pair<Rat, Residue> leftmost_break_word(const Word& w) {
  int n = w.base();
  require(w.only_g(), "HasTLetters", "leftmost break is defined for g-words");
  require(!to_plmap(w).is_identity(), "TrivialWord", "word is trivial");
  SemiNormal sn = seminormal(w);

  auto flatten = [](const Word& word) {
    std::vector<long> u;
    for (const auto& l : word.letters())
      for (long rep = 0; rep < l.exp; ++rep) u.push_back(l.index);
    return u;
  };
  std::vector<long> pu = flatten(sn.P), nu = flatten(sn.N);
  std::size_t k = 0;
  while (k < pu.size() && k < nu.size() && pu[k] == nu[k]) ++k;
  long ik;
  if (k < pu.size() && k < nu.size())
    ik = std::min(pu[k], nu[k]);
  else if (k < pu.size())
    ik = pu[k];
  else
    ik = nu[k];

  std::vector<Letter> prefix;
  for (std::size_t t = 0; t < k; ++t) prefix.push_back({LetterKind::G, pu[t], 1});
  PLMap vmap = to_plmap(Word(n, std::move(prefix)));
  return {vmap.eval_inverse(Rat(ik)), Residue(n, ik)};
}

bool avoids(const Word& w, long j) {
  int n = w.base();
  require(!w.has_t1() || n == 2, "FlavorMismatch", "avoids needs an F_{n,inf} word");
  PLMap f = to_plmap(w);

  // Peel the -inf translation (t_{n-1} powers avoid every class) and push
  // the support right of 0 (conjugation by t_{n-1}^k fixes all residues).
  Rat off = f.left_tail_offset();
  if (off != 0) f = compose(PLMap::translation(n, -off), f);
  if (f.is_identity()) return true;
  if (auto lb = f.leftmost_break(); lb && *lb < 0) {
    long k = static_cast<long>(ceil_rat(-*lb / (n - 1)).get_si());
    f = translate_conj(f, Rat(k) * (n - 1));
  }
  SubdivisionPair pair = plmap_to_pair(f);
  long jr = ((j % (n - 1)) + (n - 1)) % (n - 1);
  return pair.dom().split_residues().count(jr) == 0 &&
         pair.ran().split_residues().count(jr) == 0;
}

bool equal(const Word& a, const Word& b) {
  require(a.base() == b.base(), "BaseMismatch", "words over different bases");
  return to_plmap(a) == to_plmap(b);
}

}  // namespace gthom
