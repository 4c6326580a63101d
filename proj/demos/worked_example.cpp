// Chain labels, intersection matrix and one orbit for a sextic plus a quartic.

#include <iostream>

#include "vancycle/classify.hpp"
#include "vancycle/matrix_io.hpp"

using namespace vancycle;

int main() {
  RealPoly g = parse_poly("(x+3)*(x+2)*(x+1)*(x-1)*(x-2)*(x-4)");
  RealPoly h = parse_poly("(3-y)*(y-1)*(y+1)*(y+2)");
  DynkinData dd = dynkin_data(g, h);
  std::cout << "g labels:";
  for (auto l : dd.gchain.labels) std::cout << " " << l;
  std::cout << "\nh labels:";
  for (auto l : dd.hchain.labels) std::cout << " " << l;
  std::cout << "\n" << format_matrix(dd.psi.entries);

  IndexMap idx = dd.grid.index();
  SubspaceBasis span = krylov_span(model_matrix(6, 4).entries, CycleVector::unit(15, idx.linear({2, 2})));
  std::cout << "Krylov span of v_{2,2} for x^6 + y^4 has rank " << span.rank() << " of 15\n";

  auto r = classify_cycle(g, h, {2, 3});
  std::cout << "v_{2,3}: " << verdict_name(r.verdict) << ", orbit rank " << r.orbit_rank << "\n";
}
