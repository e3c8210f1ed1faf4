#include "gthom/subdivision.hpp"

#include <algorithm>
#include <functional>

#include "gthom/error.hpp"

namespace gthom {

namespace {

// Smallest e >= 0 with c * n^e integral.
long depth_of(const Rat& c, int n) {
  Rat v = c;
  long e = 0;
  while (!is_integer(v)) {
    v *= n;
    ++e;
  }
  return e;
}

}  // namespace

Subdivision Subdivision::from_cuts(int n, std::vector<Rat> cuts) {
  Subdivision d(n);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    require(!is_integer(cuts[i]), "OutOfRange", "cuts must be non-integers");
    require(i == 0 || cuts[i - 1] < cuts[i], "OutOfRange", "duplicate cut");
  }
  std::set<Rat> have(cuts.begin(), cuts.end());
  auto present = [&](const Rat& p) { return is_integer(p) || have.count(p) > 0; };
  for (const auto& c : cuts) {
    long e = depth_of(c, n);
    Rat parent_width = rat_pow(n, -(e - 1));
    Rat parent_lo = Rat(floor_rat(c / parent_width)) * parent_width;
    Rat step = parent_width / n;
    require(present(parent_lo) && present(parent_lo + parent_width), "OutOfRange",
            "cut " + c.get_str() + " has no enclosing allowable interval");
    for (long t = 1; t < n; ++t)
      require(present(parent_lo + step * t), "OutOfRange",
              "cut " + c.get_str() + " is not part of a full n-ary split");
  }
  d.cuts_ = std::move(cuts);
  return d;
}

long Subdivision::window_lo() const {
  if (cuts_.empty()) return 0;
  return static_cast<long>(floor_rat(cuts_.front()).get_si());
}

long Subdivision::window_hi() const {
  if (cuts_.empty()) return 0;
  return static_cast<long>(ceil_rat(cuts_.back()).get_si());
}

bool Subdivision::supported_in(const Rat& a, const Rat& b) const {
  if (cuts_.empty()) return true;
  return Rat(window_lo()) >= a && Rat(window_hi()) <= b;
}

std::vector<Rat> Subdivision::endpoints(long a, long b) const {
  std::vector<Rat> out;
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), Rat(a));
  for (long i = a; i < b; ++i) {
    out.emplace_back(i);
    while (it != cuts_.end() && *it < Rat(i + 1)) out.push_back(*it++);
  }
  out.emplace_back(b);
  return out;
}

long Subdivision::interval_count(long a, long b) const {
  return static_cast<long>(endpoints(a, b).size()) - 1;
}

void Subdivision::split_numbered_interval(long k) {
  require(k >= 0, "NotPositive", "interval numbers below 0 are not supported");
  long hi = std::max(window_hi(), 1L);
  while (interval_count(0, hi) <= k) ++hi;
  std::vector<Rat> eps = endpoints(0, hi);
  Rat lo = eps[static_cast<std::size_t>(k)];
  Rat step = (eps[static_cast<std::size_t>(k) + 1] - lo) / base_;
  for (long t = 1; t < base_; ++t) {
    Rat c = lo + step * t;
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), c);
    cuts_.insert(it, c);
  }
}

std::set<long> Subdivision::split_residues() const {
  std::set<long> out;
  // Walk the split forest: an allowable interval with cuts strictly inside
  // was subdivided; its left-endpoint numerator mod n-1 equals phi of the
  // left endpoint.
  std::function<void(const Rat&, const Rat&, std::vector<Rat>)> walk =
      [&](const Rat& lo, const Rat& width, std::vector<Rat> inside) {
        if (inside.empty()) return;
        out.insert(rational_phi(lo, base_).value);
        Rat step = width / base_;
        std::size_t idx = 0;
        for (long t = 0; t < base_; ++t) {
          Rat clo = lo + step * t, chi = lo + step * (t + 1);
          std::vector<Rat> sub;
          while (idx < inside.size() && inside[idx] < chi) {
            if (inside[idx] > clo) sub.push_back(inside[idx]);
            ++idx;
          }
          walk(clo, step, std::move(sub));
        }
      };
  for (long i = window_lo(); i < window_hi(); ++i) {
    std::vector<Rat> inside;
    for (const auto& c : cuts_)
      if (c > Rat(i) && c < Rat(i + 1)) inside.push_back(c);
    walk(Rat(i), Rat(1), std::move(inside));
  }
  return out;
}

std::string Subdivision::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (i) out += ", ";
    out += cuts_[i].get_str();
  }
  return out + "]";
}

SubdivisionPair::SubdivisionPair(Subdivision dom, Subdivision ran)
    : dom_(std::move(dom)), ran_(std::move(ran)) {
  require(dom_.base() == ran_.base(), "BaseMismatch",
          "pair sides built over different bases");
  int n = dom_.base();
  long sd = static_cast<long>(dom_.cuts().size()) / (n - 1);
  long sr = static_cast<long>(ran_.cuts().size()) / (n - 1);
  shift_ = sd - sr;
}

Subdivision word_to_subdivision(const Word& w) {
  int n = w.base();
  Subdivision d = Subdivision::standard(n);
  for (const auto& l : w.letters()) {
    require(l.kind == LetterKind::G, "NotPositive", "word must use g-letters only");
    require(l.exp > 0, "NotPositive", "word must be positive");
    require(l.index >= 0, "NotPositive", "indices must be non-negative");
    for (long rep = 0; rep < l.exp; ++rep) d.split_numbered_interval(l.index);
  }
  return d;
}

Word subdivision_to_word(const Subdivision& d) {
  int n = d.base();
  require(d.cuts().empty() || d.cuts().front() > 0, "UnsupportedLeftOfZero",
          "subdivision has cuts left of 0");
  long hi = std::max(d.window_hi(), 1L);
  // Current subdivision as an explicit endpoint list over [0, hi].
  std::vector<Rat> cur;
  for (long i = 0; i <= hi; ++i) cur.emplace_back(i);
  std::vector<Letter> letters;
  std::size_t next_missing = 0;
  const auto& target = d.cuts();
  while (next_missing < target.size()) {
    const Rat& c = target[next_missing];
    if (std::binary_search(cur.begin(), cur.end(), c)) {
      ++next_missing;
      continue;
    }
    auto it = std::upper_bound(cur.begin(), cur.end(), c);
    long idx = static_cast<long>(it - cur.begin()) - 1;
    Rat lo = cur[static_cast<std::size_t>(idx)];
    Rat step = (cur[static_cast<std::size_t>(idx) + 1] - lo) / n;
    std::vector<Rat> ins;
    for (long t = 1; t < n; ++t) ins.push_back(lo + step * t);
    cur.insert(it, ins.begin(), ins.end());
    letters.push_back({LetterKind::G, idx, 1});
  }
  return Word(n, std::move(letters));
}

namespace {

// Matched endpoint lists over a common anchor window, padded with standard
// intervals so both sides have equal length.
std::pair<std::vector<Rat>, std::vector<Rat>> matched_endpoints(const SubdivisionPair& pair) {
  long a = std::min({pair.dom().window_lo(), pair.ran().window_lo(), 0L});
  std::vector<Rat> d = pair.dom().endpoints(a, std::max(pair.dom().window_hi(), a + 1));
  std::vector<Rat> r = pair.ran().endpoints(a, std::max(pair.ran().window_hi(), a + 1));
  while (d.size() < r.size()) d.push_back(d.back() + 1);
  while (r.size() < d.size()) r.push_back(r.back() + 1);
  return {std::move(d), std::move(r)};
}

}  // namespace

PLMap pair_to_plmap(const SubdivisionPair& pair) {
  int n = pair.dom().base();
  auto [d, r] = matched_endpoints(pair);
  std::vector<BreakPt> pts;
  pts.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) pts.push_back({d[i], r[i]});
  return PLMap::from_breakpoints(n, std::move(pts), 1, 1);
}

SubdivisionPair plmap_to_pair(const PLMap& f) {
  int n = f.base();
  require(membership(f, GroupClass::FnMinusInfinity), "NotEventuallyStandard",
          "map must be the identity near -inf and a translation by a multiple "
          "of n-1 near +inf");
  if (f.is_identity())
    return SubdivisionPair(Subdivision::standard(n), Subdivision::standard(n));

  const auto& bks = f.breaks();
  long a = static_cast<long>(floor_rat(bks.front().x).get_si());
  long b = static_cast<long>(ceil_rat(bks.back().x).get_si());
  if (b <= a) b = a + 1;

  std::vector<Rat> dom_cuts, ran_cuts;
  auto has_break_inside = [&](const Rat& lo, const Rat& hi) {
    auto it = std::upper_bound(bks.begin(), bks.end(), lo,
                               [](const Rat& v, const BreakPt& p) { return v < p.x; });
    return it != bks.end() && it->x < hi;
  };
  std::function<void(const Rat&, long)> descend = [&](const Rat& lo, long e) {
    Rat width = rat_pow(n, -e);
    Rat hi = lo + width;
    if (has_break_inside(lo, hi)) {
      Rat step = width / n;
      for (long t = 0; t < n; ++t) descend(lo + step * t, e + 1);
      return;
    }
    // f is affine on [lo, hi]; the leaf is matched when the image is an
    // allowable interval.
    long k = *log_base_n(f.slope_right_of(lo), n);
    Rat y = f.eval(lo);
    bool allowable = e - k >= 0 && is_integer(y * rat_pow(n, e - k));
    if (!allowable) {
      Rat step = width / n;
      for (long t = 0; t < n; ++t) descend(lo + step * t, e + 1);
      return;
    }
    if (!is_integer(lo)) dom_cuts.push_back(lo);
    if (!is_integer(y)) ran_cuts.push_back(y);
  };
  for (long i = a; i < b; ++i) descend(Rat(i), 0);

  return SubdivisionPair(Subdivision::from_cuts(n, std::move(dom_cuts)),
                         Subdivision::from_cuts(n, std::move(ran_cuts)));
}

SubdivisionPair reduce(const SubdivisionPair& pair) {
  int n = pair.dom().base();
  std::vector<Rat> d, r;
  std::tie(d, r) = matched_endpoints(pair);

  auto is_uniform_allowable = [&](const std::vector<Rat>& e, std::size_t t) {
    Rat width = e[t + static_cast<std::size_t>(n)] - e[t];
    auto l = log_base_n(width, n);
    if (!l || *l > 0) return false;
    if (!is_integer(e[t] / width)) return false;
    Rat step = width / n;
    for (long u = 1; u < n; ++u)
      if (e[t + static_cast<std::size_t>(u)] != e[t] + step * u) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    if (d.size() < static_cast<std::size_t>(n) + 1) break;
    for (std::size_t t = 0; t + static_cast<std::size_t>(n) < d.size(); ++t) {
      if (is_uniform_allowable(d, t) && is_uniform_allowable(r, t)) {
        d.erase(d.begin() + static_cast<long>(t) + 1, d.begin() + static_cast<long>(t) + n);
        r.erase(r.begin() + static_cast<long>(t) + 1, r.begin() + static_cast<long>(t) + n);
        changed = true;
        break;
      }
    }
  }

  std::vector<Rat> dc, rc;
  for (const auto& x : d)
    if (!is_integer(x)) dc.push_back(x);
  for (const auto& y : r)
    if (!is_integer(y)) rc.push_back(y);
  return SubdivisionPair(Subdivision::from_cuts(n, std::move(dc)),
                         Subdivision::from_cuts(n, std::move(rc)));
}

bool support_bound_check(const Word& P, long k, long l) {
  int n = P.base();
  std::vector<long> idx;
  long prev = 0;
  bool first = true;
  for (const auto& let : P.letters()) {
    require(let.kind == LetterKind::G && let.exp > 0, "NotSeminormal",
            "word must be a positive g-word");
    require(first || let.index >= prev, "NotSeminormal",
            "indices must be ascending");
    first = false;
    prev = let.index;
    for (long rep = 0; rep < let.exp; ++rep) idx.push_back(let.index);
  }
  if (idx.empty()) return true;
  if (idx.front() < k) return false;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (idx[j] >= l + static_cast<long>(n - 1) * static_cast<long>(j)) return false;
  return true;
}

}  // namespace gthom
