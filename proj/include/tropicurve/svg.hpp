#pragma once

// Minimal SVG rendering of a planar tropical curve: one segment per ray
// out of the origin, stroke width scaled by multiplicity.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tropicurve/tropfan.hpp"

namespace trop {

inline std::string curve_to_svg(const TropicalCurve& c) {
  if (c.n != 2)
    throw std::invalid_argument("curve_to_svg: need a planar curve");
  std::ostringstream os;
  os.precision(4);
  os << std::fixed;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-120 -120 240 240\">\n";
  os << "  <rect x=\"-120\" y=\"-120\" width=\"240\" height=\"240\" fill=\"white\"/>\n";
  os << "  <circle cx=\"0\" cy=\"0\" r=\"1.6\" fill=\"black\"/>\n";
  for (const auto& r : c.rays) {
    const double dx = static_cast<double>(r.direction[0]);
    const double dy = static_cast<double>(r.direction[1]);
    const double len = std::sqrt(dx * dx + dy * dy);
    // svg y axis points down
    const double ex = 95.0 * dx / len;
    const double ey = -95.0 * dy / len;
    const double width = 0.8 + 0.9 * static_cast<double>(r.multiplicity);
    os << "  <line x1=\"0\" y1=\"0\" x2=\"" << ex << "\" y2=\"" << ey
       << "\" stroke=\"black\" stroke-width=\"" << width << "\"/>\n";
    os << "  <text x=\"" << 1.13 * ex << "\" y=\"" << 1.13 * ey
       << "\" font-size=\"9\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
       << r.multiplicity << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace trop
