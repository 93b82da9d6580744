#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homlts/cohomology.hpp"

namespace homlts {

/// A central extension 0 -> V -> total -> T -> 0 in T + V coordinates, with
/// inclusion iota, projection pi and a section s of pi.
template <FieldScalar K>
struct CentralExtension {
  HomTripleSystem<K> total;
  HomTripleSystem<K> base;
  Representation<K> fiber;
  Matrix<K> iota;     // (d+m) x m
  Matrix<K> pi;       // d x (d+m)
  Matrix<K> section;  // (d+m) x d
};

struct ExtensionReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

namespace detail {

template <FieldScalar K>
void require_trivial_fiber(const HomTripleSystem<K>& t, const Representation<K>& fiber) {
  if (!(fiber.base() == t)) throw precondition_error("fiber is a module over a different algebra");
  if (!fiber.is_trivial()) throw precondition_error("fiber must be a trivial module (theta = 0)");
}

template <FieldScalar K>
void require_cocycle(const Representation<K>& fiber, const Cochain<K>& g, const std::string& name) {
  if (g.arity() != 3) throw dimension_error(name + " must have degree 3");
  detail::require_cochain_shape(fiber, g);
  if (!check_cochain(fiber, g).passed()) throw precondition_error(name + " is not a 3-cochain");
  if (!detail::apply_coboundary(fiber, g).is_zero()) throw precondition_error(name + " is not a 3-cocycle");
}

template <FieldScalar K>
Matrix<K> block_twist(const Matrix<K>& a, const Matrix<K>& b) {
  const std::size_t d = a.rows(), m = b.rows();
  Matrix<K> out(a.field(), d + m, d + m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(d + i, d + j) = b(i, j);
  return out;
}

}  // namespace detail

/// Checks the structure and every exactness, twist and centrality condition.
template <FieldScalar K>
ExtensionReport check_extension(const CentralExtension<K>& e) {
  ExtensionReport rep;
  const std::size_t d = e.base.dim(), m = e.fiber.mdim(), n = e.total.dim();
  const auto& f = e.base.field();
  if (n != d + m || e.iota.rows() != n || e.iota.cols() != m || e.pi.rows() != d || e.pi.cols() != n ||
      e.section.rows() != n || e.section.cols() != d) {
    rep.failures.push_back("matrix shapes do not match dim(total) = dim(base) + dim(fiber)");
    return rep;
  }
  const auto& ac = e.total.alpha();
  const auto& a = e.base.alpha();
  const auto& av = e.fiber.twist();
  if (!check_axioms(e.total).passed()) rep.failures.push_back("total algebra fails the axiom check");
  if (!e.total.multiplicative()) rep.failures.push_back("total algebra is not multiplicative");
  if (!e.fiber.is_trivial()) rep.failures.push_back("fiber is not a trivial module");
  if (!(e.fiber.base() == e.base)) rep.failures.push_back("fiber is a module over a different algebra");
  if (rank(e.iota) != m) rep.failures.push_back("iota is not injective");
  if (rank(e.pi) != d) rep.failures.push_back("pi is not surjective");
  // With iota injective, pi surjective and n = d + m, pi iota = 0 gives exactness.
  if (!(e.pi * e.iota).is_zero()) rep.failures.push_back("pi iota != 0");
  if (!(e.pi * e.section == Matrix<K>::identity(f, d))) rep.failures.push_back("pi s != id");
  if (!(ac * e.iota == e.iota * av)) rep.failures.push_back("alpha_C iota != iota alpha_V");
  if (!(a * e.pi == e.pi * ac)) rep.failures.push_back("alpha pi != pi alpha_C");
  if (!(ac * e.section == e.section * a)) rep.failures.push_back("alpha_C s != s alpha");
  {
    // pi [u v w]_C = [pi u, pi v, pi w] on basis triples of the total space.
    bool ok = true;
    MultiIndex t(3, 0);
    do {
      const auto lhs = e.pi * Vector<K>(e.total.bracket().at(t).begin(), e.total.bracket().at(t).end());
      const auto rhs = bracket_eval(e.base, e.pi.column(t[0]), e.pi.column(t[1]), e.pi.column(t[2]));
      ok = ok && lhs == rhs;
    } while (ok && next_index(t, n));
    if (!ok) rep.failures.push_back("pi is not a bracket morphism");
  }
  {
    bool central = true;
    for (std::size_t p = 0; p < m && central; ++p) {
      const auto v = e.iota.column(p);
      for (std::size_t j = 0; j < n && central; ++j)
        for (std::size_t k = 0; k < n && central; ++k) {
          const auto ej = unit_vector<K>(f, n, j), ek = unit_vector<K>(f, n, k);
          central = is_zero(bracket_eval(e.total, v, ej, ek)) && is_zero(bracket_eval(e.total, ej, v, ek)) &&
                    is_zero(bracket_eval(e.total, ej, ek, v));
        }
    }
    if (!central) rep.failures.push_back("iota(V) is not central");
  }
  return rep;
}

/// Total space T + V with [(x,a),(y,b),(z,c)] = ([xyz], g(x,y,z)) and twist
/// alpha + alpha_V, with the canonical iota, pi and s(x) = (x, 0).
template <FieldScalar K>
CentralExtension<K> build_extension(const HomTripleSystem<K>& t, const Representation<K>& fiber, const Cochain<K>& g) {
  detail::require_trivial_fiber(t, fiber);
  detail::require_cocycle(fiber, g, "g");
  const std::size_t d = t.dim(), m = fiber.mdim(), n = d + m;
  const auto& f = t.field();
  MultilinearMap<K> br(f, 3, n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        auto out = br.at({i, j, k});
        const auto b = t.basis_bracket(i, j, k);
        const auto gv = g.at({i, j, k});
        for (std::size_t l = 0; l < d; ++l) out[l] = b[l];
        for (std::size_t p = 0; p < m; ++p) out[d + p] = gv[p];
      }
  CentralExtension<K> e{HomTripleSystem<K>(f, std::move(br), detail::block_twist(t.alpha(), fiber.twist()), true),
                        t,
                        fiber,
                        Matrix<K>(f, n, m),
                        Matrix<K>(f, d, n),
                        Matrix<K>(f, n, d)};
  for (std::size_t p = 0; p < m; ++p) e.iota(d + p, p) = K::from_int(f, 1);
  for (std::size_t i = 0; i < d; ++i) {
    e.pi(i, i) = K::from_int(f, 1);
    e.section(i, i) = K::from_int(f, 1);
  }
  const auto report = check_extension(e);
  if (!report.passed()) throw invariant_violation("built extension is invalid: " + report.failures.front());
  return e;
}

/// The cocycle g with iota g(x,y,z) = [s x, s y, s z]_C - s [x y z].
template <FieldScalar K>
Cochain<K> extract_cocycle(const CentralExtension<K>& e) {
  const auto report = check_extension(e);
  if (!report.passed()) throw precondition_error("malformed extension: " + report.failures.front());
  const std::size_t d = e.base.dim(), m = e.fiber.mdim();
  const auto& f = e.base.field();
  std::vector<Vector<K>> sx(d);
  for (std::size_t i = 0; i < d; ++i) sx[i] = e.section.column(i);
  Cochain<K> g(f, 3, d, m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        auto defect = bracket_eval(e.total, sx[i], sx[j], sx[k]);
        const auto b = e.base.basis_bracket(i, j, k);
        const auto sb = e.section * Vector<K>(b.begin(), b.end());
        axpy<K>(defect, K::from_int(f, -1), sb);
        const auto a = solve(e.iota, defect);
        if (!a) throw precondition_error("defect vector is not in the image of iota");
        std::copy(a->begin(), a->end(), g.at({i, j, k}).begin());
      }
  if (!check_cochain(e.fiber, g).passed()) throw invariant_violation("extracted cocycle is not a 3-cochain");
  if (!detail::apply_coboundary(e.fiber, g).is_zero()) throw invariant_violation("extracted cocycle is not closed");
  return g;
}

/// Replaces the section by s'(x) = s(x) + iota f(x) for a 1-cochain f.
template <FieldScalar K>
CentralExtension<K> shift_section(CentralExtension<K> e, const Cochain<K>& f) {
  if (f.arity() != 1) throw dimension_error("section shift must be a 1-cochain");
  detail::require_cochain_shape(e.fiber, f);
  if (!check_cochain(e.fiber, f).passed()) throw precondition_error("section shift is not a 1-cochain");
  e.section = e.section + e.iota * cochain_matrix(f);
  return e;
}

/// phi(x, a) = (x, a - f(x)) between the extensions built from g and g2.
template <FieldScalar K>
struct EquivalenceWitness {
  Cochain<K> f;
  Matrix<K> phi;
};

template <FieldScalar K>
struct EquivalenceResult {
  bool equivalent = false;
  std::optional<EquivalenceWitness<K>> witness;
  /// H^3 coordinates of the class of g2 - g when inequivalent.
  Vector<K> class_difference;
};

/// Checks that phi is an isomorphism of the two total algebras over the
/// identities of T and V.
template <FieldScalar K>
bool verify_witness(const CentralExtension<K>& from, const CentralExtension<K>& to, const Matrix<K>& phi) {
  const std::size_t n = from.total.dim();
  if (to.total.dim() != n || phi.rows() != n || phi.cols() != n || !inverse(phi)) return false;
  if (!(phi * from.iota == to.iota)) return false;
  if (!(to.pi * phi == from.pi)) return false;
  if (!(phi * from.total.alpha() == to.total.alpha() * phi)) return false;
  return from.total.bracket().twist_output(phi) == to.total.bracket().twist_all_inputs(phi);
}

/// Decides whether the extensions built from cocycles g and g2 are equivalent.
/// On success returns f with delta f = g2 - g and phi(x, a) = (x, a - f(x)).
template <FieldScalar K>
EquivalenceResult<K> are_equivalent(const HomTripleSystem<K>& t, const Representation<K>& fiber, const Cochain<K>& g,
                                    const Cochain<K>& g2, const Limits& limits = {}) {
  detail::require_trivial_fiber(t, fiber);
  detail::require_cocycle(fiber, g, "g");
  detail::require_cocycle(fiber, g2, "g2");
  const auto& f = t.field();
  const std::size_t d = t.dim(), m = fiber.mdim();
  const auto diff = g2 - g;
  const auto c1 = cochain_space(fiber, 1, limits);
  std::vector<Vector<K>> images;
  for (const auto& b : c1.basis) images.push_back(detail::apply_coboundary(fiber, b).flat());
  EquivalenceResult<K> out;
  const auto coeffs = in_span(f, diff.flat(), images);
  if (!coeffs) {
    const auto h = cohomology(fiber, 3, limits);
    const auto c = class_coordinates(h, diff);
    if (!c) throw invariant_violation("difference of cocycles is not a cocycle");
    out.class_difference = *c;
    return out;
  }
  Cochain<K> fc(f, 1, d, m);
  for (std::size_t i = 0; i < c1.dim(); ++i) fc.add_scaled((*coeffs)[i], c1.basis[i]);
  Matrix<K> phi = Matrix<K>::identity(f, d + m);
  const auto fm = cochain_matrix(fc);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t i = 0; i < d; ++i) phi(d + p, i) = -fm(p, i);
  const auto e1 = build_extension(t, fiber, g);
  const auto e2 = build_extension(t, fiber, g2);
  if (!verify_witness(e1, e2, phi)) throw invariant_violation("equivalence witness failed verification");
  out.equivalent = true;
  out.witness = EquivalenceWitness<K>{std::move(fc), std::move(phi)};
  return out;
}

template <FieldScalar K>
struct Classification {
  std::size_t h3dim = 0;
  std::vector<Cochain<K>> representatives;
};

/// Extension classes by a trivial module correspond to H^3.
template <FieldScalar K>
Classification<K> classify(const HomTripleSystem<K>& t, const Representation<K>& fiber, const Limits& limits = {}) {
  detail::require_trivial_fiber(t, fiber);
  auto h = cohomology(fiber, 3, limits);
  return {h.dim, std::move(h.representatives)};
}

}  // namespace homlts
