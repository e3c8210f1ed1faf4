#include "gthom/plmap.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "gthom/error.hpp"

namespace gthom {

namespace {

void check_same_base(int a, int b) {
  require(a == b, "BaseMismatch",
          "mixed bases " + std::to_string(a) + " and " + std::to_string(b));
}

bool divisible_by(const Rat& q, long m) {
  return is_integer(q) && mpz_divisible_ui_p(q.get_num().get_mpz_t(),
                                             static_cast<unsigned long>(m));
}

}  // namespace

PLMap PLMap::identity(int n) { return affine(n, 1, 0); }

PLMap PLMap::affine(int n, const Rat& slope, const Rat& offset) {
  require(n >= 2, "OutOfRange", "base must be at least 2");
  require(slope > 0, "OutOfRange", "slope must be positive");
  PLMap f(n);
  f.left_slope_ = slope;
  f.right_slope_ = slope;
  f.offset_ = offset;
  return f;
}

PLMap PLMap::translation(int n, const Rat& r) { return affine(n, 1, r); }

PLMap PLMap::generator(int n, const Rat& i) {
  return from_breakpoints(n, {{i, i}, {i + 1, i + n}}, 1, 1);
}

PLMap PLMap::from_breakpoints(int n, std::vector<BreakPt> pts, const Rat& ls, const Rat& rs) {
  require(n >= 2, "OutOfRange", "base must be at least 2");
  require(!pts.empty(), "OutOfRange", "breakpoint list must not be empty");
  require(ls > 0 && rs > 0, "OutOfRange", "tail slopes must be positive");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    require(pts[i - 1].x < pts[i].x && pts[i - 1].y < pts[i].y, "OutOfRange",
            "breakpoints must be strictly ascending");
  }
  // Slope of the segment left of point i; slopes[pts.size()] is the right tail.
  std::vector<Rat> slopes(pts.size() + 1);
  slopes[0] = ls;
  for (std::size_t i = 1; i < pts.size(); ++i)
    slopes[i] = (pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x);
  slopes[pts.size()] = rs;

  PLMap f(n);
  f.left_slope_ = ls;
  f.right_slope_ = rs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (slopes[i] != slopes[i + 1]) f.breaks_.push_back(pts[i]);
  if (f.breaks_.empty()) {
    require(ls == rs, "OutOfRange", "inconsistent affine tails");
    return affine(n, ls, pts[0].y - ls * pts[0].x);
  }
  return f;
}

bool PLMap::is_identity() const {
  return breaks_.empty() && left_slope_ == 1 && offset_ == 0;
}

Rat PLMap::eval(const Rat& x) const {
  if (breaks_.empty()) return left_slope_ * x + offset_;
  if (x <= breaks_.front().x)
    return breaks_.front().y + left_slope_ * (x - breaks_.front().x);
  if (x >= breaks_.back().x)
    return breaks_.back().y + right_slope_ * (x - breaks_.back().x);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x,
                             [](const Rat& v, const BreakPt& p) { return v < p.x; });
  const BreakPt& hi = *it;
  const BreakPt& lo = *(it - 1);
  return lo.y + (x - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
}

Rat PLMap::eval_inverse(const Rat& y) const {
  if (breaks_.empty()) return (y - offset_) / left_slope_;
  if (y <= breaks_.front().y)
    return breaks_.front().x + (y - breaks_.front().y) / left_slope_;
  if (y >= breaks_.back().y)
    return breaks_.back().x + (y - breaks_.back().y) / right_slope_;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), y,
                             [](const Rat& v, const BreakPt& p) { return v < p.y; });
  const BreakPt& hi = *it;
  const BreakPt& lo = *(it - 1);
  return lo.x + (y - lo.y) * (hi.x - lo.x) / (hi.y - lo.y);
}

Rat PLMap::slope_right_of(const Rat& x) const {
  if (breaks_.empty()) return left_slope_;
  if (x >= breaks_.back().x) return right_slope_;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x,
                             [](const Rat& v, const BreakPt& p) { return v < p.x; });
  if (it == breaks_.begin()) return left_slope_;
  const BreakPt& hi = *it;
  const BreakPt& lo = *(it - 1);
  return (hi.y - lo.y) / (hi.x - lo.x);
}

Rat PLMap::slope_left_of(const Rat& x) const {
  if (breaks_.empty()) return left_slope_;
  if (x <= breaks_.front().x) return left_slope_;
  if (x > breaks_.back().x) return right_slope_;
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x,
                             [](const BreakPt& p, const Rat& v) { return p.x < v; });
  if (it == breaks_.begin()) return left_slope_;
  if (it == breaks_.end()) return right_slope_;
  const BreakPt& hi = *it;
  const BreakPt& lo = *(it - 1);
  return (hi.y - lo.y) / (hi.x - lo.x);
}

Rat PLMap::break_jump(const Rat& x) const {
  return slope_right_of(x) / slope_left_of(x);
}

std::optional<Rat> PLMap::leftmost_break() const {
  if (breaks_.empty()) return std::nullopt;
  return breaks_.front().x;
}

std::optional<Rat> PLMap::rightmost_break() const {
  if (breaks_.empty()) return std::nullopt;
  return breaks_.back().x;
}

Rat PLMap::left_tail_offset() const {
  if (breaks_.empty()) return offset_;
  return breaks_.front().y - breaks_.front().x;
}

Rat PLMap::right_tail_offset() const {
  if (breaks_.empty()) return offset_;
  return breaks_.back().y - breaks_.back().x;
}

std::vector<Rat> PLMap::slopes() const {
  std::vector<Rat> out;
  auto add = [&out](const Rat& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  add(left_slope_);
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    add((breaks_[i].y - breaks_[i - 1].y) / (breaks_[i].x - breaks_[i - 1].x));
  add(right_slope_);
  return out;
}

std::vector<Rat> PLMap::slopes_in(const Rat& a, const Rat& b) const {
  std::vector<Rat> out;
  auto add = [&out](const Rat& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  if (breaks_.empty()) {
    add(left_slope_);
    return out;
  }
  if (a < breaks_.front().x) add(left_slope_);
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (a < breaks_[i].x && breaks_[i - 1].x < b)
      add((breaks_[i].y - breaks_[i - 1].y) / (breaks_[i].x - breaks_[i - 1].x));
  if (breaks_.back().x < b) add(right_slope_);
  return out;
}

PLMap PLMap::inverse() const {
  if (breaks_.empty())
    return affine(base_, Rat(1) / left_slope_, -offset_ / left_slope_);
  std::vector<BreakPt> pts;
  pts.reserve(breaks_.size());
  for (const auto& b : breaks_) pts.push_back({b.y, b.x});
  return from_breakpoints(base_, std::move(pts), Rat(1) / left_slope_,
                          Rat(1) / right_slope_);
}

PLMap compose(const PLMap& f, const PLMap& g) {
  check_same_base(f.base(), g.base());
  if (f.is_affine() && g.is_affine()) {
    return PLMap::affine(f.base(), f.left_slope_ * g.left_slope_,
                         g.left_slope_ * f.offset_ + g.offset_);
  }
  std::vector<Rat> xs;
  for (const auto& b : f.breaks_) xs.push_back(b.x);
  for (const auto& b : g.breaks_) xs.push_back(f.eval_inverse(b.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<BreakPt> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.push_back({x, g.eval(f.eval(x))});
  return PLMap::from_breakpoints(f.base(), std::move(pts),
                                 f.left_slope_ * g.left_slope_,
                                 f.right_slope_ * g.right_slope_);
}

PLMap compose_all(std::initializer_list<PLMap> maps) {
  PLMap acc = PLMap::identity(maps.size() ? maps.begin()->base() : 2);
  for (const auto& m : maps) acc = compose(acc, m);
  return acc;
}

PLMap pl_pow(const PLMap& f, long k) {
  if (k < 0) return pl_pow(f.inverse(), -k);
  PLMap acc = PLMap::identity(f.base());
  PLMap sq = f;
  long e = k;
  while (e > 0) {
    if (e & 1) acc = compose(acc, sq);
    e >>= 1;
    if (e) sq = compose(sq, sq);
  }
  return acc;
}

PLMap translate_conj(const PLMap& f, const Rat& c) {
  if (f.is_affine())
    return PLMap::affine(f.base(), f.left_slope(),
                         f.affine_offset() + c * (1 - f.left_slope()));
  std::vector<BreakPt> pts;
  pts.reserve(f.breaks().size());
  for (const auto& b : f.breaks()) pts.push_back({b.x + c, b.y + c});
  return PLMap::from_breakpoints(f.base(), std::move(pts), f.left_slope(),
                                 f.right_slope());
}

namespace {

bool slopes_in_gen_n(const PLMap& f) {
  for (const auto& s : f.slopes())
    if (!log_base_n(s, f.base())) return false;
  return true;
}

bool data_in_z_over_n(const PLMap& f) {
  int n = f.base();
  if (f.is_affine()) return in_z_over_n(f.affine_offset(), n);
  for (const auto& b : f.breaks())
    if (!in_z_over_n(b.x, n) || !in_z_over_n(b.y, n)) return false;
  return true;
}

bool in_an(const PLMap& f) { return slopes_in_gen_n(f) && data_in_z_over_n(f); }

bool tails_translate(const PLMap& f) {
  return f.left_slope() == 1 && f.right_slope() == 1;
}

}  // namespace

bool membership(const PLMap& f, GroupClass which) {
  int n = f.base();
  switch (which) {
    case GroupClass::An:
      return in_an(f);
    case GroupClass::Bn:
      return in_an(f) && rho(f).value == 0;
    case GroupClass::Fn:
      return in_an(f) && tails_translate(f) && is_integer(f.left_tail_offset()) &&
             is_integer(f.right_tail_offset());
    case GroupClass::FnInfinity:
      return in_an(f) && tails_translate(f) &&
             divisible_by(f.left_tail_offset(), n - 1) &&
             divisible_by(f.right_tail_offset(), n - 1);
    case GroupClass::FnMinusInfinity:
      return in_an(f) && tails_translate(f) && f.left_tail_offset() == 0 &&
             divisible_by(f.right_tail_offset(), n - 1);
    case GroupClass::FnAt0:
      return membership(f, GroupClass::FnMinusInfinity) &&
             (f.is_affine() || f.breaks().front().x >= 0);
    case GroupClass::BoundedSupport:
      return tails_translate(f) && f.left_tail_offset() == 0 &&
             f.right_tail_offset() == 0;
    case GroupClass::FnCompact:
      return in_an(f) && membership(f, GroupClass::BoundedSupport);
  }
  return false;
}

bool support_in(const PLMap& f, const Rat& a, const Rat& b) {
  if (!membership(f, GroupClass::BoundedSupport)) return false;
  if (f.is_affine()) return true;  // identity
  return f.breaks().front().x >= a && f.breaks().back().x <= b;
}

Residue rho(const PLMap& f) {
  require(in_an(f), "NotInAn", "rho needs an A_n element");
  int n = f.base();
  if (n == 2) return Residue(2, 0L);
  Residue r0 = rational_phi(f.eval(0), n);
  Residue r1 = rational_phi(f.eval(1), n) - Residue(n, 1L);
  require(r0 == r1, "NotInAn", "residue shift disagreed at two sample points");
  return r0;
}

std::vector<long> AffineResidueMap::permutation() const {
  std::vector<long> p(static_cast<std::size_t>(mult.base - 1));
  for (long r = 0; r < mult.base - 1; ++r) p[static_cast<std::size_t>(r)] = apply(r);
  return p;
}

AffineResidueMap operator*(const AffineResidueMap& p, const AffineResidueMap& q) {
  // r -> (r*p.mult + p.shift)*q.mult + q.shift, left to right.
  return AffineResidueMap{p.shift * q.mult + q.shift, p.mult * q.mult};
}

namespace {

AffineResidueMap residue_action(int n, const std::vector<Rat>& slopes, const Rat& image_of_0,
                                const std::function<Rat(const Rat&)>& eval) {
  require(!slopes.empty(), "SlopeCosetMixed", "map has no slopes");
  for (const auto& s : slopes)
    require(is_unit_of_z_over_n(s, n), "SlopeCosetMixed",
            "slope " + s.get_str() + " is not a unit of Z[1/" + std::to_string(n) + "]");
  for (const auto& s : slopes)
    require(log_base_n(s / slopes.front(), n).has_value(), "SlopeCosetMixed",
            "slopes lie in more than one coset of <" + std::to_string(n) + ">");
  require(in_z_over_n(image_of_0, n), "NotResiduePreserving",
          "image of 0 lies outside Z[1/n]");
  AffineResidueMap out{rational_phi(image_of_0, n), rational_phi(slopes.front(), n)};
  if (n > 2)
    require(std::gcd(out.mult.value, static_cast<long>(n - 1)) == 1,
            "NotResiduePreserving", "slope residue is not a unit of Z_{n-1}");
  // Spot-check the affine action at integer and fractional sample points.
  std::vector<Rat> samples;
  for (long i = 0; i < n - 1; ++i) {
    samples.emplace_back(i);
    samples.push_back(Rat(i * n + 1, n));
  }
  for (const auto& x : samples) {
    Rat y = eval(x);
    require(in_z_over_n(y, n), "NotResiduePreserving",
            "image of a Z[1/n] point lies outside Z[1/n]");
    long want = out.apply(rational_phi(x, n).value);
    require(want == rational_phi(y, n).value, "NotResiduePreserving",
            "residue action disagrees with the map at x = " + x.get_str());
  }
  return out;
}

}  // namespace

AffineResidueMap pi_map(const PLMap& f) {
  if (!f.is_affine()) {
    for (const auto& b : f.breaks())
      require(in_z_over_n(b.x, f.base()) && in_z_over_n(b.y, f.base()),
              "NotResiduePreserving", "break outside Z[1/n]");
  }
  return residue_action(f.base(), f.slopes(), f.eval(0),
                        [&f](const Rat& x) { return f.eval(x); });
}

namespace {

// Uniform endpoints of [a, b] where b - a has canonical form m * n^e: m
// intervals of width n^e.
std::vector<Rat> uniform_endpoints(int n, const Rat& a, const Rat& b) {
  NAdic width = NAdic::from_rational(n, b - a);
  require(width.mantissa() > 0, "NotAscending", "interval endpoints out of order");
  require(width.mantissa() < 100000, "OutOfRange", "interval too wide to subdivide");
  long count = width.mantissa().get_si();
  Rat step = rat_pow(n, width.exponent());
  std::vector<Rat> pts;
  pts.reserve(static_cast<std::size_t>(count) + 1);
  for (long t = 0; t <= count; ++t) pts.push_back(a + step * t);
  pts.back() = b;
  return pts;
}

void split_front_interval(int n, std::vector<Rat>& pts) {
  Rat step = (pts[1] - pts[0]) / n;
  std::vector<Rat> ins;
  for (long t = 1; t < n; ++t) ins.push_back(pts[0] + step * t);
  pts.insert(pts.begin() + 1, ins.begin(), ins.end());
}

// Matched endpoint lists for a B_n-style affine-by-pieces bijection
// [xa, xb] -> [ya, yb]; first entries are (xa, ya).
std::pair<std::vector<Rat>, std::vector<Rat>> segment_grid(int n, const Rat& xa, const Rat& xb,
                                                           const Rat& ya, const Rat& yb) {
  std::vector<Rat> ex = uniform_endpoints(n, xa, xb);
  std::vector<Rat> ey = uniform_endpoints(n, ya, yb);
  while (ex.size() < ey.size()) split_front_interval(n, ex);
  while (ey.size() < ex.size()) split_front_interval(n, ey);
  return {std::move(ex), std::move(ey)};
}

}  // namespace

PLMap interpolate_points(int n, const std::vector<NAdic>& xs, const std::vector<NAdic>& ys) {
  require(xs.size() == ys.size() && !xs.empty(), "OutOfRange",
          "point lists must be non-empty and of equal length");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    require(xs[i].compare(xs[i + 1]) < 0 && ys[i].compare(ys[i + 1]) < 0, "NotAscending",
            "points must be strictly ascending");
  for (std::size_t i = 0; i < xs.size(); ++i)
    require(xs[i].phi() == ys[i].phi(), "ResidueMismatch",
            "phi(x_" + std::to_string(i) + ") != phi(y_" + std::to_string(i) + ")");
  if (xs.size() == 1)
    return PLMap::translation(n, ys[0].to_rational() - xs[0].to_rational());

  std::vector<BreakPt> pts{{xs[0].to_rational(), ys[0].to_rational()}};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    auto [ex, ey] = segment_grid(n, xs[i].to_rational(), xs[i + 1].to_rational(),
                                 ys[i].to_rational(), ys[i + 1].to_rational());
    for (std::size_t t = 1; t < ex.size(); ++t) pts.push_back({ex[t], ey[t]});
  }
  return PLMap::from_breakpoints(n, std::move(pts), 1, 1);
}

PLMap glue(int n, const std::vector<GluePiece>& pieces) {
  if (pieces.empty()) return PLMap::identity(n);
  for (const auto& p : pieces) check_same_base(n, p.map.base());
  if (pieces.size() == 1 && !pieces[0].lo && !pieces[0].hi) return pieces[0].map;

  std::vector<GluePiece> ps = pieces;
  std::sort(ps.begin(), ps.end(), [](const GluePiece& a, const GluePiece& b) {
    if (!a.lo) return true;
    if (!b.lo) return false;
    return *a.lo < *b.lo;
  });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    require(ps[i].lo || i == 0, "OutOfRange", "only the first piece may be unbounded below");
    require(ps[i].hi || i + 1 == ps.size(), "OutOfRange",
            "only the last piece may be unbounded above");
    if (i > 0) {
      require(ps[i - 1].hi && ps[i].lo && *ps[i - 1].hi <= *ps[i].lo, "OutOfRange",
              "piece intervals must be disjoint and ordered");
    }
  }

  std::vector<BreakPt> pts;
  auto push = [&pts](const Rat& x, const Rat& y) {
    if (!pts.empty() && pts.back().x == x) {
      require(pts.back().y == y, "IncompatibleResidues", "pieces disagree at a shared endpoint");
      return;
    }
    pts.push_back({x, y});
  };

  Rat ls = 1, rs = 1;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& p = ps[i];
    if (p.lo) push(*p.lo, p.map.eval(*p.lo));
    if (!p.lo) ls = p.map.left_slope();
    for (const auto& b : p.map.breaks()) {
      if (p.lo && b.x <= *p.lo) continue;
      if (p.hi && b.x >= *p.hi) continue;
      push(b.x, b.y);
    }
    if (p.hi) push(*p.hi, p.map.eval(*p.hi));
    if (!p.hi) rs = p.map.right_slope();

    if (i + 1 < ps.size()) {
      Rat xa = *p.hi, xb = *ps[i + 1].lo;
      Rat ya = p.map.eval(xa), yb = ps[i + 1].map.eval(xb);
      if (xa == xb) {
        require(ya == yb, "IncompatibleResidues", "adjacent pieces disagree at the seam");
        continue;
      }
      require(ya < yb, "OutOfRange", "pieces are not jointly orientation preserving");
      NAdic da = NAdic::from_rational(n, ya - xa);
      NAdic db = NAdic::from_rational(n, yb - xb);
      require(da.phi() == db.phi(), "IncompatibleResidues",
              "gap endpoints have mismatched residues");
      auto [ex, ey] = segment_grid(n, xa, xb, ya, yb);
      for (std::size_t t = 1; t + 1 < ex.size(); ++t) push(ex[t], ey[t]);
      // The gap's right endpoint is pushed by the next piece.
    }
  }
  if (pts.empty()) return PLMap::identity(n);
  return PLMap::from_breakpoints(n, std::move(pts), ls, rs);
}

PeriodicPLMap PeriodicPLMap::extend(const PLMap& w, int period) {
  require(period >= 1, "OutOfRange", "period must be positive");
  require(support_in(w, 0, period), "SupportTooWide",
          "fundamental map must have support inside [0, period]");
  return PeriodicPLMap(w, period);
}

Rat PeriodicPLMap::eval(const Rat& x) const {
  mpz_class k = floor_rat(x / period_);
  Rat shift = Rat(k) * period_;
  return fundamental_.eval(x - shift) + shift;
}

PeriodicPLMap PeriodicPLMap::inverse() const {
  return extend(fundamental_.inverse(), period_);
}

PeriodicPLMap compose(const PeriodicPLMap& f, const PeriodicPLMap& g) {
  check_same_base(f.base(), g.base());
  require(f.period() == g.period(), "PeriodMismatch",
          "periodic maps have different periods");
  return PeriodicPLMap::extend(compose(f.fundamental(), g.fundamental()), f.period());
}

PLMap PeriodicPLMap::window(const Rat& a, const Rat& b) const {
  require(a <= b, "OutOfRange", "window endpoints out of order");
  if (fundamental_.is_affine()) return PLMap::identity(base());
  long k_lo = static_cast<long>(floor_rat(a / period_).get_si());
  long k_hi = static_cast<long>(ceil_rat(b / period_).get_si());
  if (k_hi <= k_lo) k_hi = k_lo + 1;
  std::vector<BreakPt> pts;
  for (long k = k_lo; k < k_hi; ++k) {
    Rat shift = Rat(k) * period_;
    for (const auto& bp : fundamental_.breaks()) {
      BreakPt p{bp.x + shift, bp.y + shift};
      if (!pts.empty() && pts.back().x == p.x) continue;
      pts.push_back(p);
    }
  }
  return PLMap::from_breakpoints(base(), std::move(pts), 1, 1);
}

PeriodicPLMap pl_coset_normalizer(int n, int p) {
  auto is_prime = [](int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  require(is_prime(p) && p < n && n % p == 0, "BadDivisor",
          "need a prime divisor p of n with p < n");
  PLMap fundamental = PLMap::from_breakpoints(
      n, {{0, 0}, {Rat(n / p - 1), Rat(n - p)}, {Rat(n - 1), Rat(n - 1)}}, 1, 1);
  return PeriodicPLMap::extend(fundamental, n - 1);
}

AffineResidueMap pi_map(const PeriodicPLMap& h) {
  int n = h.base();
  if (!h.fundamental().is_affine()) {
    for (const auto& b : h.fundamental().breaks())
      require(in_z_over_n(b.x, n) && in_z_over_n(b.y, n), "NotResiduePreserving",
              "break outside Z[1/n]");
  }
  return residue_action(n, h.fundamental().slopes_in(0, h.period()), h.eval(0),
                        [&h](const Rat& x) { return h.eval(x); });
}

}  // namespace gthom
