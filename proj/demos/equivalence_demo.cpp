// Monomial equivalence of two catalog codes: equivalence_demo P7_22 P7_15 7

#include <iostream>
#include <string>

#include "toriclass/catalog.hpp"
#include "toriclass/equiv.hpp"

using namespace toriclass;

int main(int argc, char** argv) {
  const ClassId a = parse_class_id(argc > 1 ? argv[1] : "P7_22");
  const ClassId b = parse_class_id(argc > 2 ? argv[2] : "P7_15");
  const auto F = build_field(argc > 3 ? std::stoll(argv[3]) : 7);
  const auto C1 = build_code(get_polygon(a), F), C2 = build_code(get_polygon(b), F);
  const auto v = find_monomial_equivalence(C1, C2);
  std::cout << to_string(a) << " vs " << to_string(b) << ": " << to_string(v.kind) << " (" << v.certificate << ")\n";
  if (v.witness) std::cout << "witness verifies: " << (verify_witness(C1, C2, *v.witness) ? "yes" : "no") << "\n";
}
