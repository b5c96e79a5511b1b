// Weight enumerators and distance of a catalog code: enumerator_demo [id] [q]

#include <iostream>
#include <string>

#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"

using namespace toriclass;

int main(int argc, char** argv) {
  const ClassId id = parse_class_id(argc > 1 ? argv[1] : "P7_5");
  const std::int64_t q = argc > 2 ? std::stoll(argv[2]) : 7;
  const auto C = build_code(get_polygon(id), build_field(q));
  const auto W = weight_distribution(C);
  const auto s = special_weight_counts(W, q);
  std::cout << format_enumerator(W, padded_label(id), q) << "\n";
  std::cout << "d=" << W.min_distance() << " expected " << to_string(expected_min_distance(id, q)) << "\n";
  std::cout << "n1=" << s.n1 << " n2=" << s.n2 << " n3=" << s.n3 << "\n";
}
