// Approximates 2^(1/3) with M^n(2,1)/M^n(3,1) for M = M(x, u), f(t) = t^3 - 2.
#include <iostream>

#include "regapprox/regapprox.hpp"

int main() {
  using namespace regapprox;
  const auto f = parse_polynomial("u:0,0,2");
  const Weights x({Rational(1), Rational(1), Rational(0)});

  const auto report = analyze(f, x);
  std::cout << "dominant root index " << report.dominant + 1 << ", c = " << report.c_value.to_sci(6) << "\n";

  const auto pred = limit_ratio(report, {2, 1}, {3, 1});
  std::cout << "predicted limit " << pred.limit.re.to_sci(12) << ", rate constant " << pred.rate_constant.to_sci(4)
            << "\n";

  auto root = refiner_for(f, report.roots.roots[report.dominant]);
  const auto m = build(f, x);
  for (const auto& r : ratio_sequence(m, {{2, 1}, {3, 1}, Rational(0)}, {5, 10, 20, 40}, &root))
    std::cout << "n=" << r.n << "  " << r.value << "  error " << r.abs_error->to_sci(3) << "\n";
}
