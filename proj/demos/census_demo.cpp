// Lattice polygon census for k = 1..8 and the named k = 7 catalog.

#include <iostream>

#include "toriclass/catalog.hpp"
#include "toriclass/lattice.hpp"

using namespace toriclass;

int main() {
  for (int k = 1; k <= 8; ++k) std::cout << "k=" << k << ": " << enumerate_classes(k).size() << " classes\n";
  for (const auto& e : Catalog::instance().entries())
    if (e.id.k == 7) std::cout << format_record({e.id.k, e.id.index, e.polytope}) << "\n";
}
