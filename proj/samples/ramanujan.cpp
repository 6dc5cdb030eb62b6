// The cubic t^3 + t^2 - 2t - 1 with roots 2cos(2k pi/7): c-ratio, limits and
// one reproduced benchmark table.
#include <iostream>

#include "regapprox/regapprox.hpp"

int main() {
  using namespace regapprox;
  const auto f = parse_polynomial("c:1,1,-2,-1");
  for (const auto& r : all_roots(f).roots) std::cout << "root " << r.index + 1 << ": " << r.center.re.to_sci(15) << "\n";

  const Weights x({Rational(0), Rational(-1), Rational(1)});
  const auto report = analyze(f, x);
  std::cout << "x = (" << x.to_string() << "): c = " << report.c_value.to_sci(8) << "\n";

  for (IndexPair num : {IndexPair{2, 2}, IndexPair{3, 3}}) {
    const auto lim = cubic_limit_matrix(report, num);
    std::cout << "limit of M^n / M^n(" << num.row << "," << num.col << "):\n";
    for (std::size_t i = 0; i < 3; ++i)
      std::cout << "  " << lim(i, 0).to_sci(8) << "  " << lim(i, 1).to_sci(8) << "  " << lim(i, 2).to_sci(8) << "\n";
  }

  const auto table = reproduce_table(1);
  std::cout << "table 1: " << table.report.count(MatchStatus::Exact) << " exact, " << table.report.mismatches()
            << " mismatched of " << table.report.cells.size() << "\n";
}
