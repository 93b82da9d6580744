#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "homlts/errors.hpp"
#include "homlts/field.hpp"
#include "homlts/linalg.hpp"
#include "homlts/multilinear.hpp"

namespace homlts {

/// A Hom-Lie triple system (T, [.,.,.], alpha) given by structure constants
/// [e_i e_j e_k] = sum_l c[i][j][k][l] e_l and a twist matrix alpha.
///
/// The `multiplicative` flag is a claim that alpha is a bracket morphism;
/// check_axioms() verifies it. Construction validates shapes only.
template <FieldScalar K>
class HomTripleSystem {
 public:
  HomTripleSystem() = default;

  HomTripleSystem(const FieldSpec& field, MultilinearMap<K> bracket, Matrix<K> alpha, bool multiplicative)
      : field_(field), bracket_(std::move(bracket)), alpha_(std::move(alpha)), multiplicative_(multiplicative) {
    const std::size_t d = bracket_.dim();
    if (!scalar_matches<K>(field_)) throw field_mismatch("scalar type does not match " + field_.name());
    if (bracket_.arity() != 3 || bracket_.codim() != d)
      throw dimension_error("bracket must be a trilinear map T^3 -> T");
    if (alpha_.rows() != d || alpha_.cols() != d)
      throw dimension_error("alpha must be " + std::to_string(d) + "x" + std::to_string(d) + ", got " +
                            alpha_.shape());
    if (bracket_.field() != field_ || alpha_.field() != field_) throw field_mismatch();
  }

  /// Zero bracket of the given dimension with the given twist.
  static HomTripleSystem abelian(const FieldSpec& field, const Matrix<K>& alpha) {
    return HomTripleSystem(field, MultilinearMap<K>(field, 3, alpha.rows(), alpha.rows()), alpha, true);
  }

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return bracket_.dim(); }
  const MultilinearMap<K>& bracket() const { return bracket_; }
  const Matrix<K>& alpha() const { return alpha_; }
  bool multiplicative() const { return multiplicative_; }

  const K& constant(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return bracket_.at({i, j, k})[l];
  }

  /// [e_i e_j e_k] as a coordinate span.
  std::span<const K> basis_bracket(std::size_t i, std::size_t j, std::size_t k) const { return bracket_.at({i, j, k}); }

  friend bool operator==(const HomTripleSystem&, const HomTripleSystem&) = default;

 private:
  FieldSpec field_;
  MultilinearMap<K> bracket_;
  Matrix<K> alpha_;
  bool multiplicative_ = false;
};

/// Hom-LTS with a pair of twists (alpha1, alpha2) entering the Nambu identity.
template <FieldScalar K>
struct GeneralHomTripleSystem {
  FieldSpec field;
  MultilinearMap<K> bracket;
  Matrix<K> alpha1;
  Matrix<K> alpha2;

  std::size_t dim() const { return bracket.dim(); }
};

enum class Axiom { alternating, ternary_cyclic, hom_nambu, multiplicativity };

inline std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::alternating: return "alternation [xxz]=0";
    case Axiom::ternary_cyclic: return "ternary cyclic identity";
    case Axiom::hom_nambu: return "hom-Nambu identity";
    case Axiom::multiplicativity: return "multiplicativity";
  }
  return "?";
}

template <FieldScalar K>
struct AxiomViolation {
  Axiom axiom;
  MultiIndex where;
  Vector<K> residual;
};

template <FieldScalar K>
struct AxiomReport {
  static constexpr std::size_t max_recorded = 256;

  bool alternating = true;
  bool ternary_cyclic = true;
  bool hom_nambu = true;
  bool multiplicativity = true;
  bool multiplicativity_checked = false;
  /// First max_recorded violations in check order; violation_count counts all.
  std::vector<AxiomViolation<K>> violations;
  std::size_t violation_count = 0;

  bool passed() const { return alternating && ternary_cyclic && hom_nambu && multiplicativity; }

  void record(Axiom a, MultiIndex where, Vector<K> residual) {
    switch (a) {
      case Axiom::alternating: alternating = false; break;
      case Axiom::ternary_cyclic: ternary_cyclic = false; break;
      case Axiom::hom_nambu: hom_nambu = false; break;
      case Axiom::multiplicativity: multiplicativity = false; break;
    }
    ++violation_count;
    if (violations.size() < max_recorded) violations.push_back({a, std::move(where), std::move(residual)});
  }
};

/// Trilinear extension of the structure constants.
template <FieldScalar K>
Vector<K> bracket_eval(const HomTripleSystem<K>& t, const Vector<K>& x, const Vector<K>& y, const Vector<K>& z) {
  return t.bracket().evaluate({x, y, z});
}

namespace detail {

template <FieldScalar K>
AxiomReport<K> check_axioms_impl(const FieldSpec& field, const MultilinearMap<K>& br, const Matrix<K>& a1,
                                 const Matrix<K>& a2, bool check_multiplicative) {
  const std::size_t d = br.dim();
  AxiomReport<K> report;
  const auto zero = zero_vector<K>(field, d);

  // Alternation, polarized: [e_i e_i e_k] = 0 and [e_i e_j e_k] + [e_j e_i e_k] = 0.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const auto v = br.at({i, i, k});
      if (!is_zero(v)) report.record(Axiom::alternating, {i, i, k}, Vector<K>(v.begin(), v.end()));
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vector<K> r(br.at({i, j, k}).begin(), br.at({i, j, k}).end());
        axpy<K>(r, K::from_int(field, 1), br.at({j, i, k}));
        if (!is_zero(r)) report.record(Axiom::alternating, {i, j, k}, std::move(r));
      }

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vector<K> r = zero;
        const K one = K::from_int(field, 1);
        axpy<K>(r, one, br.at({i, j, k}));
        axpy<K>(r, one, br.at({j, k, i}));
        axpy<K>(r, one, br.at({k, i, j}));
        if (!is_zero(r)) report.record(Axiom::ternary_cyclic, {i, j, k}, std::move(r));
      }

  // [a1 u, a2 v, [x y z]] = [[u v x], a1 y, a2 z] + [a1 x, [u v y], a2 z] + [a1 x, a2 y, [u v z]]
  const auto p = br.twist_input(0, a1).twist_input(1, a2);   // [a1 ., a2 ., .]
  const auto q1 = br.twist_input(1, a1).twist_input(2, a2);  // [., a1 ., a2 .]
  const auto q2 = br.twist_input(0, a1).twist_input(2, a2);  // [a1 ., ., a2 .]
  MultiIndex t(5, 0);
  do {
    const std::size_t u = t[0], v = t[1], x = t[2], y = t[3], z = t[4];
    Vector<K> r = zero;
    const auto xyz = br.at({x, y, z});
    const auto uvx = br.at({u, v, x});
    const auto uvy = br.at({u, v, y});
    const auto uvz = br.at({u, v, z});
    for (std::size_t l = 0; l < d; ++l) {
      if (!xyz[l].is_zero()) axpy<K>(r, xyz[l], p.at({u, v, l}));
      if (!uvx[l].is_zero()) axpy<K>(r, -uvx[l], q1.at({l, y, z}));
      if (!uvy[l].is_zero()) axpy<K>(r, -uvy[l], q2.at({x, l, z}));
      if (!uvz[l].is_zero()) axpy<K>(r, -uvz[l], p.at({x, y, l}));
    }
    if (!is_zero(r)) report.record(Axiom::hom_nambu, t, std::move(r));
  } while (next_index(t, d));

  if (check_multiplicative) {
    report.multiplicativity_checked = true;
    if (!(a1 == a2)) {
      report.record(Axiom::multiplicativity, {}, {});
    } else {
      const auto twisted = br.twist_all_inputs(a1);  // [a x, a y, a z]
      for (std::size_t s = 0; s < br.tuple_count(); ++s) {
        const auto v = br.value(s);
        Vector<K> r = a1 * Vector<K>(v.begin(), v.end());
        axpy<K>(r, K::from_int(field, -1), twisted.value(s));
        if (!is_zero(r)) report.record(Axiom::multiplicativity, br.decode(s), std::move(r));
      }
    }
  }
  return report;
}

}  // namespace detail

/// Exhaustive check of the Hom-LTS axioms on basis tuples (complete by
/// multilinearity), plus multiplicativity when the system claims it.
template <FieldScalar K>
AxiomReport<K> check_axioms(const HomTripleSystem<K>& t) {
  return detail::check_axioms_impl(t.field(), t.bracket(), t.alpha(), t.alpha(), t.multiplicative());
}

template <FieldScalar K>
AxiomReport<K> check_axioms(const GeneralHomTripleSystem<K>& t) {
  if (t.bracket.arity() != 3 || t.bracket.codim() != t.bracket.dim())
    throw dimension_error("bracket must be a trilinear map T^3 -> T");
  const std::size_t d = t.bracket.dim();
  if (t.alpha1.rows() != d || t.alpha1.cols() != d || t.alpha2.rows() != d || t.alpha2.cols() != d)
    throw dimension_error("twist maps must be square of the algebra dimension");
  return detail::check_axioms_impl(t.field, t.bracket, t.alpha1, t.alpha2, false);
}

/// Basis of Z(T) = {x : [x, T, T] = 0}.
template <FieldScalar K>
std::vector<Vector<K>> center(const HomTripleSystem<K>& t) {
  const std::size_t d = t.dim();
  Matrix<K> m(t.field(), d * d * d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto v = t.basis_bracket(i, j, k);
        for (std::size_t l = 0; l < d; ++l) m((j * d + k) * d + l, i) = v[l];
      }
  return kernel_basis(m);
}

/// Block direct sum: brackets mixing the two summands vanish, alpha is block diagonal.
template <FieldScalar K>
HomTripleSystem<K> direct_sum(const HomTripleSystem<K>& a, const HomTripleSystem<K>& b) {
  if (a.field() != b.field()) throw field_mismatch();
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  MultilinearMap<K> br(a.field(), 3, d, d);
  for (std::size_t s = 0; s < a.bracket().tuple_count(); ++s) {
    const auto idx = a.bracket().decode(s);
    const auto v = a.bracket().value(s);
    auto out = br.at({idx[0], idx[1], idx[2]});
    for (std::size_t l = 0; l < da; ++l) out[l] = v[l];
  }
  for (std::size_t s = 0; s < b.bracket().tuple_count(); ++s) {
    const auto idx = b.bracket().decode(s);
    const auto v = b.bracket().value(s);
    auto out = br.at({idx[0] + da, idx[1] + da, idx[2] + da});
    for (std::size_t l = 0; l < db; ++l) out[da + l] = v[l];
  }
  Matrix<K> alpha(a.field(), d, d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) alpha(i, j) = a.alpha()(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) alpha(da + i, da + j) = b.alpha()(i, j);
  return HomTripleSystem<K>(a.field(), std::move(br), std::move(alpha), a.multiplicative() && b.multiplicative());
}

/// The isomorphic copy transported along an invertible change of basis P:
/// bracket'(x, y, z) = P^-1 [Px, Py, Pz], alpha' = P^-1 alpha P.
template <FieldScalar K>
HomTripleSystem<K> change_basis(const HomTripleSystem<K>& t, const Matrix<K>& p) {
  const auto pinv = inverse(p);
  if (!pinv) throw precondition_error("change_basis: matrix is singular");
  auto br = t.bracket().twist_all_inputs(p).twist_output(*pinv);
  return HomTripleSystem<K>(t.field(), std::move(br), (*pinv) * t.alpha() * p, t.multiplicative());
}

}  // namespace homlts
