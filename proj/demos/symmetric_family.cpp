// A composite g = g2(x^2): symmetric columns and their pushforward kernels.

#include <iostream>

#include "vancycle/classify.hpp"

using namespace vancycle;

int main() {
  RealPoly g = parse_poly("(x^2-2)^3-3*(x^2-2)");
  RealPoly h = parse_poly("y^5-5*y^3+4*y");
  for (std::size_t j = 1; j <= 5; ++j) {
    auto r = classify_cycle(g, h, {1, j});
    std::cout << "v_{1," << j << "}: " << verdict_name(r.verdict) << ", orbit rank " << r.orbit_rank << " of "
              << r.ambient_rank;
    if (r.decomposition)
      std::cout << ", g = (" << r.decomposition->outer.to_string('z') << ") o (" << r.decomposition->inner.to_string('x')
                << ")";
    if (r.pushforward) std::cout << ", kernel = orbit: " << (r.pushforward->holds ? "yes" : "no");
    std::cout << "\n";
  }
}
