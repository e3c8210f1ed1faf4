#include "gthom/morphisms.hpp"

#include <algorithm>
#include <numeric>

#include "gthom/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gthom {

long zeta(int m, int n, long j) {
  require(2 <= m && m < n, "BadBases", "zeta needs 2 <= m < n");
  long i = ((j % (m - 1)) + (m - 1)) % (m - 1);
  long k = (j - i) / (m - 1);
  return i + k * (n - 1);
}

Word tau(int m, int n, const Word& w) {
  require(w.base() == m, "BaseMismatch", "word base does not match m");
  require(!w.has_t1() || m == 2, "FlavorMismatch", "tau needs an F_{m,inf} word");
  std::vector<Letter> ls;
  for (const auto& l : w.letters()) {
    if (l.kind == LetterKind::G)
      ls.push_back({LetterKind::G, zeta(m, n, l.index), l.exp});
    else
      ls.push_back({LetterKind::Tn, 0, l.exp});
  }
  return Word(n, std::move(ls));
}

Word lambda_map(LambdaKind kind, int m, int n, const Word& w) {
  require(2 <= m && m < n, "BadBases", "lambda maps need 2 <= m < n");
  require((n - 1) % (m - 1) == 0, "DivisibilityFail", "(m-1) must divide (n-1)");
  long d = (n - 1) / (m - 1);
  std::vector<Letter> ls;
  switch (kind) {
    case LambdaKind::Lambda:
      require(w.base() == n && w.only_g(), "FlavorMismatch", "lambda needs an F_{n,0} word");
      for (const auto& l : w.letters()) {
        require(l.index >= 0, "FlavorMismatch", "lambda needs indices >= 0");
        ls.push_back({LetterKind::G, l.index, l.exp * d});
      }
      return Word(m, std::move(ls));
    case LambdaKind::LambdaPrime:
      require(w.base() == m && w.only_g(), "FlavorMismatch",
              "lambda' needs an F_{m,0} word");
      for (const auto& l : w.letters()) {
        require(l.index >= 0, "FlavorMismatch", "lambda' needs indices >= 0");
        ls.push_back({LetterKind::G, d * l.index, l.exp});
      }
      return Word(n, std::move(ls));
    case LambdaKind::FnEmbed:
      require(m == 2, "BadBases", "the embedding lands in F_{2,0}");
      require(w.base() == n, "BaseMismatch", "word base does not match n");
      for (const auto& l : w.letters()) {
        if (l.kind == LetterKind::T1) {
          ls.push_back({LetterKind::G, 0, l.exp});
        } else if (l.kind == LetterKind::G) {
          require(l.index >= 0, "FlavorMismatch", "embedding needs indices >= 0");
          ls.push_back({LetterKind::G, l.index + 1, l.exp * (n - 1)});
        } else {
          fail("FlavorMismatch", "t_{n-1} is not in the embedded group");
        }
      }
      return Word(2, std::move(ls));
  }
  fail("FlavorMismatch", "unknown lambda kind");
}

GenAuto::GenAuto(int n, int period, std::vector<Word> images)
    : base_(n), period_(period), images_(std::move(images)) {
  require(n >= 2, "OutOfRange", "base must be at least 2");
  require(period >= 1 && (n - 1) % period == 0, "PeriodMismatch",
          "period must divide n-1");
  require(images_.size() == static_cast<std::size_t>(period), "PeriodMismatch",
          "need one image per generator slot");
  for (const auto& w : images_) {
    require(w.base() == n, "BaseMismatch", "image word over the wrong base");
    require(!w.has_t1() || n == 2, "FlavorMismatch", "images must be F_{n,inf} words");
  }
}

GenAuto GenAuto::identity(int n) {
  std::vector<Word> images;
  for (long i = 0; i < n - 1; ++i) images.push_back(Word::g(n, i));
  GenAuto a(n, n - 1, std::move(images));
  a.verified_ = true;
  return a;
}

Word GenAuto::image_of_g(long j) const {
  long i = ((j % period_) + period_) % period_;
  long k = (j - i) / period_;
  return shift(images_[static_cast<std::size_t>(i)], k, period_);
}

GenAuto GenAuto::with_period(int new_period) const {
  require(new_period % period_ == 0 && (base_ - 1) % new_period == 0, "PeriodMismatch",
          "new period must be a multiple of the current one dividing n-1");
  std::vector<Word> images;
  for (long i = 0; i < new_period; ++i) images.push_back(image_of_g(i));
  GenAuto out(base_, new_period, std::move(images));
  out.verified_ = verified_;
  return out;
}

namespace {

struct ImageData {
  PLMap map;
  long lo, hi;  // identity left of lo, translation by n-1 right of hi
};

// Every image must look like a conjugate of its generator at the tails:
// identity near -inf, translation by exactly n-1 near +inf.
std::optional<std::vector<ImageData>> image_shapes(const GenAuto& a) {
  std::vector<ImageData> out;
  for (const auto& w : a.images()) {
    PLMap f = to_plmap(w);
    if (f.is_affine()) return std::nullopt;
    if (f.left_slope() != 1 || f.left_tail_offset() != 0) return std::nullopt;
    if (f.right_slope() != 1 || f.right_tail_offset() != a.base() - 1) return std::nullopt;
    long lo = static_cast<long>(floor_rat(f.breaks().front().x).get_si());
    long hi = static_cast<long>(ceil_rat(f.breaks().back().x).get_si());
    out.push_back({std::move(f), lo, hi});
  }
  return out;
}

bool verify_impl(const GenAuto& a, bool parallel) {
  int n = a.base();
  int p = a.period();
  auto shapes = image_shapes(a);
  bool ok = shapes.has_value();
  if (ok) {
    long lo = 0, hi = n - 1;
    for (const auto& s : *shapes) {
      lo = std::min(lo, s.lo);
      hi = std::max(hi, s.hi);
    }
    long span = (n - 1) * (1 + (hi - lo + n - 2) / (n - 1));
    auto image_map = [&](long j) {
      long i = ((j % p) + p) % p;
      long k = (j - i) / p;
      return translate_conj((*shapes)[static_cast<std::size_t>(i)].map, Rat(k) * p);
    };

    std::vector<std::pair<long, long>> cases;
    for (long i = 0; i < p; ++i)
      for (long j = i + 1; j <= i + span; ++j) cases.emplace_back(i, j);

    std::vector<char> good(cases.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(cases.size()); ++c) {
      auto [i, j] = cases[static_cast<std::size_t>(c)];
      PLMap vi = image_map(i);
      PLMap lhs = compose(compose(vi.inverse(), image_map(j)), vi);
      good[static_cast<std::size_t>(c)] = (lhs == image_map(j + n - 1)) ? 1 : 0;
    }
    ok = std::all_of(good.begin(), good.end(), [](char g) { return g != 0; });
  }
  return ok;
}

}  // namespace

bool verify(GenAuto& a) {
  a.verified_ = verify_impl(a, true);
  return a.verified_;
}

bool verify_serial(GenAuto& a) {
  a.verified_ = verify_impl(a, false);
  return a.verified_;
}

Word apply(const GenAuto& a, const Word& w, bool allow_unverified) {
  require(a.verified() || allow_unverified, "Unverified",
          "automorphism has not been verified");
  require(w.base() == a.base(), "BaseMismatch", "word over the wrong base");
  require(!w.has_t1() || a.base() == 2, "FlavorMismatch",
          "apply needs an F_{n,inf} word");
  Word out(a.base());
  for (const auto& l : w.letters()) {
    if (l.kind == LetterKind::G)
      out = out * a.image_of_g(l.index).pow(l.exp);
    else
      out = out * Word::tn(a.base(), l.exp);
  }
  return out;
}

namespace {

// Keeps image words short by passing through the canonical map form.
Word normalized(const Word& w) { return from_plmap(to_plmap(w), WordFlavor::FnInfinity); }

}  // namespace

GenAuto compose_autos(const GenAuto& a, const GenAuto& b) {
  require(a.base() == b.base(), "BaseMismatch", "autos over different bases");
  int p = std::lcm(a.period(), b.period());
  std::vector<Word> images;
  for (long i = 0; i < p; ++i)
    images.push_back(normalized(apply(b, a.image_of_g(i))));
  GenAuto out(a.base(), p, std::move(images));
  verify(out);
  return out;
}

GenAuto auto_pow(const GenAuto& a, long k) {
  require(k >= 0, "OutOfRange", "auto_pow needs k >= 0");
  GenAuto acc = GenAuto::identity(a.base());
  for (long i = 0; i < k; ++i) acc = compose_autos(acc, a);
  return acc;
}

bool check_inverse(const GenAuto& a, const GenAuto& b) {
  require(a.base() == b.base(), "BaseMismatch", "autos over different bases");
  int p = std::lcm(a.period(), b.period());
  GenAuto ab = compose_autos(a, b);
  GenAuto ba = compose_autos(b, a);
  for (long i = 0; i < p; ++i) {
    PLMap gi = to_plmap(Word::g(a.base(), i));
    if (to_plmap(ab.image_of_g(i)) != gi) return false;
    if (to_plmap(ba.image_of_g(i)) != gi) return false;
  }
  return true;
}

GenAuto theta_lift(const GenAuto& a, int n) {
  int m = a.base();
  require(a.verified(), "Unverified", "lift needs a verified automorphism");
  require(m <= n, "BadBases", "lift target base must not be smaller");
  if (m == n) return a;
  require(a.period() == m - 1, "PeriodMismatch", "lift needs a full-period source");
  std::vector<Word> images;
  for (long i = 0; i <= m - 2; ++i) images.push_back(tau(m, n, a.images()[static_cast<std::size_t>(i)]));
  for (long j = m - 1; j <= n - 2; ++j) images.push_back(Word::g(n, j));
  GenAuto out(n, n - 1, std::move(images));
  verify(out);
  return out;
}

GenAuto lambda_lift(const GenAuto& a, int n) {
  int m = a.base();
  require(a.verified(), "Unverified", "lift needs a verified automorphism");
  require(m < n, "BadBases", "lift target base must be larger");
  require((n - 1) % (m - 1) == 0, "DivisibilityFail", "(m-1) must divide (n-1)");
  require(a.period() == m - 1, "PeriodMismatch", "lift needs a full-period source");
  std::vector<Word> images;
  for (long i = 0; i <= m - 2; ++i) images.push_back(tau(m, n, a.images()[static_cast<std::size_t>(i)]));
  GenAuto out(n, m - 1, std::move(images));
  verify(out);
  return out;
}

GenAuto rotate(const GenAuto& a, long j) {
  int n = a.base();
  require(a.verified(), "Unverified", "rotation needs a verified automorphism");
  require(a.period() == n - 1, "PeriodMismatch", "rotation needs period n-1");
  long i0 = ((j % (n - 1)) + (n - 1)) % (n - 1);
  long k = (j - i0) / (n - 1);

  // jh = (leftmost break of g_{i0}'s image) + k(n-1), h the realizer.
  auto lb = to_plmap(a.image_of_g(i0)).leftmost_break();
  require(lb.has_value(), "NonIntegerImage", "image of the rotation slot is affine");
  Rat r_rat = *lb + Rat(k) * (n - 1);
  require(is_integer(r_rat), "NonIntegerImage",
          "rotation step maps to the non-integer point " + r_rat.get_str());
  long r = static_cast<long>(r_rat.get_num().get_si());

  std::vector<Word> images;
  for (long i = 0; i <= n - 2; ++i)
    images.push_back(shift(a.image_of_g(i + j), -r, 1));
  GenAuto out(n, n - 1, std::move(images));
  verify(out);
  return out;
}

std::vector<long> pi_of_auto(const GenAuto& a) {
  int n = a.base();
  require(a.verified(), "Unverified", "pi needs a verified automorphism");
  std::vector<long> perm;
  for (long i = 0; i <= n - 2; ++i) {
    auto lb = to_plmap(a.image_of_g(i)).leftmost_break();
    require(lb.has_value(), "DegenerateActiveInterval", "image of g_i is affine");
    perm.push_back(rational_phi(*lb, n).value);
  }
  std::vector<long> seen = perm;
  std::sort(seen.begin(), seen.end());
  for (long i = 0; i <= n - 2; ++i)
    require(seen[static_cast<std::size_t>(i)] == i, "NotResiduePreserving",
            "leftmost-break residues do not form a permutation");
  require(perm[0] == 0, "NotResiduePreserving", "permutation must fix 0");
  return perm;
}

GenAuto auto_from_periodic(const PeriodicPLMap& h) {
  int n = h.base();
  require(h.period() == n - 1, "PeriodMismatch", "normalizer must commute with t_{n-1}");
  const PLMap& w = h.fundamental();
  if (!w.is_affine()) {
    for (const auto& b : w.breaks())
      require(in_z_over_n(b.x, n) && in_z_over_n(b.y, n), "NotNormalizer",
              "normalizer breaks must lie in Z[1/n]");
  }
  std::vector<Rat> slopes = w.slopes_in(0, n - 1);
  for (const auto& s : slopes)
    require(is_unit_of_z_over_n(s, n), "NotNormalizer",
            "normalizer slopes must be units of Z[1/n]");
  for (const auto& s : slopes)
    require(log_base_n(s / slopes.front(), n).has_value(), "NotNormalizer",
            "normalizer slopes must lie in a single coset of <n>");

  std::vector<Word> images;
  for (long i = 0; i <= n - 2; ++i) {
    Rat ih = h.eval(Rat(i)), i1h = h.eval(Rat(i + 1));
    // Conjugate g_i by h over a window wide enough that the middle is exact,
    // then keep the active part: the conjugate is the identity left of ih and
    // the translation t_{n-1} right of (i+1)h.
    Rat lo = std::min({Rat(0), Rat(i), ih}) - 2 * (n - 1);
    Rat hi = std::max({Rat(n - 1), Rat(i + 1), i1h}) + 2 * (n - 1);
    PLMap H = h.window(lo, hi);
    PLMap conj = compose(compose(H.inverse(), PLMap::generator(n, Rat(i))), H);
    std::vector<BreakPt> active;
    for (const auto& b : conj.breaks())
      if (b.x >= ih && b.x <= i1h) active.push_back(b);
    require(!active.empty(), "NotNormalizer", "conjugate lost its active part");
    PLMap trimmed = PLMap::from_breakpoints(n, std::move(active), 1, 1);
    require(trimmed.left_tail_offset() == 0 && trimmed.right_tail_offset() == n - 1,
            "NotNormalizer", "conjugate has the wrong tail behavior");
    images.push_back(from_plmap(trimmed, WordFlavor::FnInfinity));
  }
  GenAuto out(n, n - 1, std::move(images));
  require(verify(out), "NotNormalizer", "conjugated generators violate the relations");
  return out;
}

Word conj_by_periodic_word(int n, long j, const Word& W) {
  require(0 <= j && j < n - 1, "OutOfRange", "generator slot must be in [0, n-1)");
  require(W.base() == n, "BaseMismatch", "witness over the wrong base");
  require(support_in(to_plmap(W), 0, Rat(n - 1)), "SupportTooWide",
          "witness must have support in [0, n-1]");
  Word W1 = shift(W, 1, n - 1);
  return W.inverse() * Word::g(n, j) * W * W1;
}

InnerResult inner_check(const GenAuto& a, const std::vector<Word>& witnesses) {
  int n = a.base();
  require(a.verified(), "Unverified", "inner check needs a verified automorphism");
  require(witnesses.size() == 1 || witnesses.size() == static_cast<std::size_t>(n - 1),
          "OutOfRange", "need one witness or one per generator slot");
  InnerResult out;
  out.at.resize(static_cast<std::size_t>(n - 1));
  bool all = true;
  for (long i = 0; i <= n - 2; ++i) {
    const Word& Wi = witnesses.size() == 1 ? witnesses[0]
                                           : witnesses[static_cast<std::size_t>(i)];
    bool ok = to_plmap(apply(a, Word::g(n, i))) == to_plmap(conj_by_periodic_word(n, i, Wi));
    out.at[static_cast<std::size_t>(i)] = ok;
    all = all && ok;
  }
  if (!all) {
    out.status = InnerStatus::Fail;
    return out;
  }
  bool diagonal = true;
  if (witnesses.size() > 1) {
    PLMap w0 = to_plmap(witnesses[0]);
    for (std::size_t i = 1; i < witnesses.size(); ++i)
      diagonal = diagonal && (to_plmap(witnesses[i]) == w0);
  }
  out.status = diagonal ? InnerStatus::Inner : InnerStatus::InnerAtList;
  return out;
}

bool is_unbent_at(const GenAuto& a, long i) {
  int n = a.base();
  require(a.verified(), "Unverified", "unbent test needs a verified automorphism");
  PLMap fi = to_plmap(a.image_of_g(i));
  PLMap fi1 = to_plmap(a.image_of_g(i + 1));
  auto lo = fi.leftmost_break();
  auto hi = fi1.leftmost_break();
  require(lo && hi && *lo < *hi, "DegenerateActiveInterval",
          "images do not bound an active interval");
  for (const auto& b : fi.breaks())
    if (b.x > *lo && b.x < *hi) return false;
  return true;
}

TorsionExample torsion_example(int n) {
  require(n >= 4, "OutOfRange", "the construction needs n >= 4");
  std::vector<Word> alpha_images{
      Word::parse("g0 g4 g2^-1", 4),
      Word::parse("g2 g3 g5^-1", 4),
      Word::parse("g2 g4 g2^-1", 4),
  };
  GenAuto alpha(4, 3, std::move(alpha_images));
  require(verify(alpha), "OutOfRange", "base automorphism failed verification");
  GenAuto beta = theta_lift(alpha, n);
  GenAuto gamma = rotate(beta, 1);
  Word P = Word::g(n, n - 2) * Word::g(n, 0, -1);
  return {std::move(alpha), std::move(beta), std::move(gamma), std::move(P)};
}

}  // namespace gthom
