// A short walk through the library: build a group, fold B_2 into A_3,
// compare the unfolding polynomial with its product formula, then do the
// same for an affine folding where only a truncation can be compared.

#include <iostream>

#include "coxfold/coxfold.hpp"

int main() {
  using namespace coxfold;

  const auto a3 = build_system("A3");
  const auto w = a3.parse("s2 s1 s3 s2");
  std::cout << "l(s2s1s3s2) = " << w.length() << ", normal form " << a3.format(w) << '\n';
  std::cout << "Poincare polynomial of A3: " << poincare_polynomial(a3) << '\n';

  const auto fold = standard_folding({"Bn-A2n-1", 2, 0});
  const auto u = unfolding_series_bruteforce(fold, std::nullopt);
  std::cout << "B2 in A3, enumerated:  " << u << '\n';
  std::cout << "B2 in A3, formula:     " << unfolding_closed_form(fold.family) << '\n';

  const FamilyId affine{"affC-affA2n", 2, 0};
  const auto bf = unfolding_series_bruteforce(standard_folding(affine), 12);
  std::cout << "C~2 in A~4, enumerated: " << bf << '\n';
  std::cout << "C~2 in A~4, formula:    " << unfolding_closed_form(affine, 12) << '\n';
  std::cout << "C~2 in A~4, Reiner:     " << reiner_route(affine, 12) << '\n';
}
