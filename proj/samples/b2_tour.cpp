// Walks through the library on the two-dimensional system B2:
// [xyz] = <y,z> a(x) - <z,x> a(y) with <,> the standard form and a = diag(1, -1).

#include <iostream>

#include "homlts/homlts.hpp"

using namespace homlts;
using Q = Rational;

int main() {
  const FieldSpec q = FieldSpec::rationals();
  Matrix<Q> alpha = Matrix<Q>::identity(q, 2);
  alpha(1, 1) = Q::from_int(q, -1);
  const auto t = gen_bilinear(Matrix<Q>::identity(q, 2), alpha, Q::from_int(q, 1));
  std::cout << "axioms hold: " << std::boolalpha << check_axioms(t).passed() << "\n";

  const auto trivial = trivial_rep(t, 1, Matrix<Q>::identity(q, 1));
  const auto adjoint = adjoint_rep(t);
  for (std::size_t n : {1u, 3u, 5u}) {
    std::cout << "H^" << n << ": trivial " << cohomology(trivial, n).dim << ", adjoint " << cohomology(adjoint, n).dim
              << "\n";
  }

  // The only 3-cochain with values in the trivial module is a coboundary, so
  // the extension it defines splits.
  const auto g = cochain_space(trivial, 3).basis.at(0);
  const auto e = build_extension(t, trivial, g);
  const auto eq = are_equivalent(t, trivial, g, Cochain<Q>(q, 3, 2, 1));
  std::cout << "extension of dim " << e.total.dim() << " checks out: " << check_extension(e).passed()
            << ", equivalent to the split one: " << eq.equivalent << "\n";

  // Rescaling the bracket, d_t = (1 + t) d_0, is a trivial deformation.
  const TruncatedDeformation<Q> scaling(t, {t.bracket()});
  const auto null = TruncatedDeformation<Q>::null(t, 1);
  if (const auto w = infinitesimals_cohomologous(scaling, null)) {
    const auto phi = cochain_matrix(*w);
    std::cout << "phi_1 for scaling vs null:\n";
    for (std::size_t i = 0; i < phi.rows(); ++i) std::cout << "  " << phi(i, 0) << " " << phi(i, 1) << "\n";
    std::cout << "equivalence verifies: " << check_equivalence(scaling, null, FormalIsomorphism<Q>{{phi}}).passed()
              << "\n";
  }

  const auto res = integrate(t, t.bracket(), 4);
  std::cout << "integrated the bracket direction to order " << res.deformation.order()
            << (res.obstructed() ? " (obstructed)" : "") << "\n";
}
