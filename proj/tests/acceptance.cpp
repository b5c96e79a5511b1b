// Acceptance runner: `acceptance` runs C1..C9, `acceptance --criterion C5`
// runs one. Prints one PASS/FAIL line per criterion; exit 1 on any failure.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "toriclass/reproduce.hpp"

using namespace toriclass;

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion C1..C9]\n";
      return 2;
    }
  }
  ReproduceOptions o;
  o.data_dir = resolve_data_dir();
  o.threads = detail::resolve_threads(0);
  detail::DistributionCache cache(o.budget, o.threads);
  std::vector<CriterionResult> rs;
  auto want = [&](const char* id) { return only.empty() || only == id; };
  if (want("C1")) rs.push_back(check_census(o));
  if (want("C2")) rs.push_back(check_table1(o));
  if (want("C3")) rs.push_back(check_golden(o));
  if (want("C4")) rs.push_back(check_table2(o, cache));
  if (want("C5")) rs.push_back(check_exceptional_pairs(o));
  if (want("C6")) rs.push_back(check_k6_pairs(o));
  if (want("C7")) rs.push_back(check_family_audits(o));
  if (want("C8")) rs.push_back(check_properties(o));
  if (want("C9")) rs.push_back(check_bounds(o, cache));
  if (rs.empty()) {
    std::cerr << "unknown criterion " << only << "\n";
    return 2;
  }
  bool ok = true;
  for (const auto& r : rs) {
    std::cout << format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
