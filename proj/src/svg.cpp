#include "gthom/svg.hpp"

#include <sstream>

#include "gthom/error.hpp"

namespace gthom {

std::string svg_plot(const PLMap& f, const Rat& a, const Rat& b, int pixels_per_unit) {
  require(a < b, "OutOfRange", "window endpoints out of order");
  Rat ya = f.eval(a), yb = f.eval(b);
  Rat ylo = ya, yhi = yb;
  for (const auto& bp : f.breaks()) {
    if (bp.x < a || bp.x > b) continue;
    ylo = std::min(ylo, bp.y);
    yhi = std::max(yhi, bp.y);
  }
  if (ylo == yhi) yhi = ylo + 1;

  const int s = pixels_per_unit;
  const int margin = 10;
  auto px = [&](const Rat& x) { return decimal_string((x - a) * s + margin, 12); };
  auto py = [&](const Rat& y) { return decimal_string((yhi - y) * s + margin, 12); };
  Rat w = (b - a) * s + 2 * margin;
  Rat h = (yhi - ylo) * s + 2 * margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << decimal_string(w, 12)
      << "\" height=\"" << decimal_string(h, 12) << "\">\n";
  // Integer grid.
  for (mpz_class i = ceil_rat(a); Rat(i) <= b; ++i)
    out << "  <line x1=\"" << px(Rat(i)) << "\" y1=\"" << py(ylo) << "\" x2=\"" << px(Rat(i))
        << "\" y2=\"" << py(yhi) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  for (mpz_class j = ceil_rat(ylo); Rat(j) <= yhi; ++j)
    out << "  <line x1=\"" << px(a) << "\" y1=\"" << py(Rat(j)) << "\" x2=\"" << px(b)
        << "\" y2=\"" << py(Rat(j)) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";

  out << "  <polyline fill=\"none\" stroke=\"#1b5faa\" stroke-width=\"2\" points=\"";
  out << px(a) << "," << py(ya);
  for (const auto& bp : f.breaks())
    if (bp.x > a && bp.x < b) out << " " << px(bp.x) << "," << py(bp.y);
  out << " " << px(b) << "," << py(yb);
  out << "\"/>\n";
  // Breakpoint markers.
  for (const auto& bp : f.breaks())
    if (bp.x >= a && bp.x <= b)
      out << "  <circle cx=\"" << px(bp.x) << "\" cy=\"" << py(bp.y)
          << "\" r=\"3\" fill=\"#1b5faa\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace gthom
