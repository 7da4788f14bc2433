// Expands a few cluster variables, checks one exchange relation by hand and
// decomposes a product in the basis.

#include <iostream>

#include "qca/basis.hpp"

int main() {
  using namespace qca;
  Registry reg;

  for (int n : {-1, 4, 5}) std::cout << "X" << n << " = " << reg.x(n).to_string() << "\n";
  std::cout << "u1 = " << reg.u(1).to_string() << "\n";

  // X_0 X_3 = q^{1/2} X_1 X_2 y_3 + 1
  const Expr lhs = X(0) * X(3);
  const Expr rhs = qpow(1, 2) * X(1) * X(2) * y(3) + Expr(1);
  std::cout << lhs.to_string() << " = " << rhs.to_string() << ": "
            << (reg.eval(lhs) == reg.eval(rhs) ? "holds" : "fails") << "\n";

  const Decomposition d = product_decompose(ElementName::u(2), ElementName::u(1), reg);
  std::cout << d.formula << "\n";
  for (const auto& t : d.terms)
    std::cout << "  " << t.coeff.to_string() << " * y^(" << t.frozen[0] << "," << t.frozen[1] << "," << t.frozen[2]
              << ") * [" << t.label.to_string() << "]\n";
}
