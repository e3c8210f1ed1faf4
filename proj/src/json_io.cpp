#include "gthom/json_io.hpp"

#include "gthom/error.hpp"

namespace gthom {

namespace {
const mpz_class kJsonIntMax = mpz_class(1) << 53;
}

Json to_json(const mpz_class& z) {
  if (abs(z) < kJsonIntMax) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class mpz_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  fail("OutOfRange", "expected an integer or decimal string");
}

Json to_json(const Rat& q) {
  return Json{{"num", to_json(q.get_num())}, {"den", to_json(q.get_den())}};
}

Rat rat_from_json(const Json& j) {
  require(j.is_object() && j.contains("num") && j.contains("den"), "OutOfRange",
          "expected {\"num\":..., \"den\":...}");
  Rat q(mpz_from_json(j.at("num")), mpz_from_json(j.at("den")));
  require(q.get_den() != 0, "OutOfRange", "zero denominator");
  q.canonicalize();
  return q;
}

Json to_json(const NAdic& x) {
  return Json{{"n", x.base()}, {"m", to_json(x.mantissa())}, {"e", x.exponent()}};
}

NAdic nadic_from_json(const Json& j, bool canonicalize_input) {
  require(j.is_object() && j.contains("n") && j.contains("m") && j.contains("e"),
          "OutOfRange", "expected {\"n\":..., \"m\":..., \"e\":...}");
  int n = j.at("n").get<int>();
  mpz_class m = mpz_from_json(j.at("m"));
  long e = j.at("e").get<long>();
  NAdic out(n, m, e);
  if (!canonicalize_input)
    require(out.mantissa() == m && out.exponent() == e, "OutOfRange",
            "non-canonical n-adic input");
  return out;
}

Json to_json(const PLMap& f) {
  Json breaks = Json::array();
  for (const auto& b : f.breaks())
    breaks.push_back(Json{{"x", to_json(b.x)}, {"y", to_json(b.y)}});
  return Json{{"n", f.base()},
              {"breaks", std::move(breaks)},
              {"ls", to_json(f.left_slope())},
              {"rs", to_json(f.right_slope())},
              {"offset", to_json(f.is_affine() ? f.affine_offset() : Rat(0))}};
}

PLMap plmap_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("breaks") && j.contains("ls") &&
              j.contains("rs") && j.contains("offset"),
          "OutOfRange", "malformed map object");
  int n = j.at("n").get<int>();
  Rat ls = rat_from_json(j.at("ls"));
  Rat rs = rat_from_json(j.at("rs"));
  std::vector<BreakPt> pts;
  for (const auto& b : j.at("breaks"))
    pts.push_back({rat_from_json(b.at("x")), rat_from_json(b.at("y"))});
  if (pts.empty()) {
    require(ls == rs, "OutOfRange", "affine map with unequal tail slopes");
    return PLMap::affine(n, ls, rat_from_json(j.at("offset")));
  }
  return PLMap::from_breakpoints(n, std::move(pts), ls, rs);
}

Json to_json(const GenAuto& a) {
  Json images = Json::array();
  for (const auto& w : a.images()) images.push_back(w.str());
  return Json{{"n", a.base()},
              {"period", a.period()},
              {"images", std::move(images)},
              {"verified", a.verified()}};
}

GenAuto genauto_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("period") && j.contains("images"),
          "OutOfRange", "malformed automorphism object");
  int n = j.at("n").get<int>();
  int period = j.at("period").get<int>();
  std::vector<Word> images;
  for (const auto& s : j.at("images")) images.push_back(Word::parse(s.get<std::string>(), n));
  GenAuto a(n, period, std::move(images));
  if (j.value("verified", false)) verify(a);
  return a;
}

Json to_json(const SubdivisionPair& p) {
  auto cuts = [](const Subdivision& s) {
    Json arr = Json::array();
    for (const auto& c : s.cuts()) arr.push_back(to_json(c));
    return arr;
  };
  return Json{{"n", p.dom().base()},
              {"dom", cuts(p.dom())},
              {"ran", cuts(p.ran())},
              {"shift", p.shift()}};
}

}  // namespace gthom
