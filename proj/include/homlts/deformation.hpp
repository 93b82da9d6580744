#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homlts/cohomology.hpp"

namespace homlts {

/// Jet d_1..d_N of a one-parameter deformation d_t = d_0 + d_1 t + ... of the
/// bracket d_0, truncated at t^{N+1}. Every d_i is a 3-cochain of the adjoint
/// representation; this is checked on construction.
template <FieldScalar K>
class TruncatedDeformation {
 public:
  TruncatedDeformation(HomTripleSystem<K> base, std::vector<Cochain<K>> jets)
      : base_(std::move(base)), jets_(std::move(jets)) {
    const auto ad = adjoint_rep(base_);
    for (std::size_t i = 0; i < jets_.size(); ++i) {
      const auto& j = jets_[i];
      const std::string name = "jet d_" + std::to_string(i + 1);
      if (j.arity() != 3) throw dimension_error(name + " must have degree 3");
      if (j.dim() != base_.dim() || j.codim() != base_.dim())
        throw dimension_error(name + " does not match the algebra dimension");
      if (j.field() != base_.field()) throw field_mismatch();
      const auto check = check_cochain(ad, j);
      if (!check.passed())
        throw precondition_error(name + " is not a 3-cochain: " + cochain_condition_name(*check.first_failure) + " fails");
    }
  }

  /// The null deformation of the given order.
  static TruncatedDeformation null(const HomTripleSystem<K>& base, std::size_t order) {
    return {base, std::vector<Cochain<K>>(order, Cochain<K>(base.field(), 3, base.dim(), base.dim()))};
  }

  const HomTripleSystem<K>& base() const { return base_; }
  std::size_t order() const { return jets_.size(); }
  const std::vector<Cochain<K>>& jets() const { return jets_; }

  /// d_i for 0 <= i <= N, with d_0 the bracket.
  const Cochain<K>& jet(std::size_t i) const {
    if (i == 0) return base_.bracket();
    if (i > jets_.size()) throw precondition_error("jet index " + std::to_string(i) + " beyond the order");
    return jets_[i - 1];
  }

  TruncatedDeformation truncated(std::size_t n) const {
    if (n > order()) throw precondition_error("cannot truncate to a higher order");
    return {base_, std::vector<Cochain<K>>(jets_.begin(), jets_.begin() + static_cast<std::ptrdiff_t>(n))};
  }

  TruncatedDeformation extended(Cochain<K> next) const {
    auto jets = jets_;
    jets.push_back(std::move(next));
    return {base_, std::move(jets)};
  }

  friend bool operator==(const TruncatedDeformation&, const TruncatedDeformation&) = default;

 private:
  HomTripleSystem<K> base_;
  std::vector<Cochain<K>> jets_;
};

/// phi_t = id + phi_1 t + ... + phi_N t^N.
template <FieldScalar K>
struct FormalIsomorphism {
  std::vector<Matrix<K>> phis;

  std::size_t order() const { return phis.size(); }

  Matrix<K> component(std::size_t i, const FieldSpec& field, std::size_t dim) const {
    if (i == 0) return Matrix<K>::identity(field, dim);
    if (i > phis.size()) throw precondition_error("isomorphism component beyond the order");
    return phis[i - 1];
  }
};

namespace detail {

template <FieldScalar K>
void require_degree(const Cochain<K>& f, std::size_t n, const HomTripleSystem<K>& t, const char* name) {
  if (f.arity() != n) throw dimension_error(std::string(name) + " must have degree " + std::to_string(n));
  if (f.dim() != t.dim() || f.codim() != t.dim())
    throw dimension_error(std::string(name) + " does not match the algebra dimension");
  if (f.field() != t.field()) throw field_mismatch();
}

// dst += s * F(args), with args[slot] replaced by the vector v.
template <FieldScalar K>
void add_substituted(std::span<K> dst, const K& s, const MultilinearMap<K>& F, MultiIndex& args, std::size_t slot,
                     std::span<const K> v) {
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l].is_zero()) continue;
    args[slot] = l;
    const auto w = F.at(args);
    const K c = s * v[l];
    for (std::size_t i = 0; i < dst.size(); ++i)
      if (!w[i].is_zero()) dst[i].add_product(c, w[i]);
  }
}

// F with m applied to every input slot except q, for each q.
template <FieldScalar K>
std::vector<MultilinearMap<K>> twisted_except(const MultilinearMap<K>& f, const Matrix<K>& m) {
  std::vector<MultilinearMap<K>> out(f.arity());
  for (std::size_t q = 0; q < f.arity(); ++q) {
    MultiIndex slots;
    for (std::size_t s = 0; s < f.arity(); ++s)
      if (s != q) slots.push_back(s);
    out[q] = f.twist_inputs(slots, m);
  }
  return out;
}

}  // namespace detail

/// f o g (u,v,x,y,z) = f(g(u,v,x), ay, az) + f(ax, g(u,v,y), az)
///                   + f(ax, ay, g(u,v,z)) - f(au, av, g(x,y,z)).
template <FieldScalar K>
MultilinearMap<K> circ_alpha(const HomTripleSystem<K>& t, const Cochain<K>& f, const Cochain<K>& g) {
  detail::require_degree(f, 3, t, "f");
  detail::require_degree(g, 3, t, "g");
  const std::size_t d = t.dim();
  const auto fq = detail::twisted_except(f, t.alpha());
  const K one = K::from_int(t.field(), 1);
  MultilinearMap<K> out(t.field(), 5, d, d);
  if (f.is_zero() || g.is_zero()) return out;
  MultiIndex x(5, 0), args(3);
  std::size_t tuple = 0;
  do {
    auto dst = out.value(tuple++);
    args = {0, x[3], x[4]};
    detail::add_substituted(dst, one, fq[0], args, 0, g.at({x[0], x[1], x[2]}));
    args = {x[2], 0, x[4]};
    detail::add_substituted(dst, one, fq[1], args, 1, g.at({x[0], x[1], x[3]}));
    args = {x[2], x[3], 0};
    detail::add_substituted(dst, one, fq[2], args, 2, g.at({x[0], x[1], x[4]}));
    args = {x[0], x[1], 0};
    detail::add_substituted(dst, -one, fq[2], args, 2, g.at({x[2], x[3], x[4]}));
  } while (next_index(x, d));
  return out;
}

/// Residual of the deformation equation at each order n = 1..N:
/// sum_{i+j=n} d_i o d_j.
template <FieldScalar K>
struct DeformationReport {
  std::vector<MultilinearMap<K>> residuals;

  std::optional<std::size_t> first_failure() const {
    for (std::size_t n = 0; n < residuals.size(); ++n)
      if (!residuals[n].is_zero()) return n + 1;
    return std::nullopt;
  }
  bool passed() const { return !first_failure(); }
  bool passed_through(std::size_t n) const {
    for (std::size_t i = 0; i < n && i < residuals.size(); ++i)
      if (!residuals[i].is_zero()) return false;
    return true;
  }
};

template <FieldScalar K>
MultilinearMap<K> deformation_residual(const TruncatedDeformation<K>& D, std::size_t n) {
  const auto& t = D.base();
  MultilinearMap<K> r(t.field(), 5, t.dim(), t.dim());
  for (std::size_t i = 0; i <= n; ++i) r += circ_alpha(t, D.jet(i), D.jet(n - i));
  return r;
}

template <FieldScalar K>
DeformationReport<K> check_deformation(const TruncatedDeformation<K>& D) {
  DeformationReport<K> out;
  for (std::size_t n = 1; n <= D.order(); ++n) out.residuals.push_back(deformation_residual(D, n));
  return out;
}

/// delta d_1 = 0.
template <FieldScalar K>
bool infinitesimal_is_cocycle(const TruncatedDeformation<K>& D) {
  if (D.order() == 0) throw precondition_error("deformation has no infinitesimal (order 0)");
  return detail::apply_coboundary(adjoint_rep(D.base()), D.jet(1)).is_zero();
}

namespace detail {

template <FieldScalar K>
MultilinearMap<K> obstruction_sum(const TruncatedDeformation<K>& D, std::size_t n) {
  const auto& t = D.base();
  MultilinearMap<K> out(t.field(), 5, t.dim(), t.dim());
  for (std::size_t i = 1; i <= n; ++i) out += circ_alpha(t, D.jet(i), D.jet(n + 1 - i));
  return out;
}

}  // namespace detail

/// d~ = sum_{i+j=n+1, i,j>=1} d_i o d_j, the obstruction to extending a
/// deformation that solves its equations through order n. The result is
/// checked to be a 5-cochain with delta d~ = 0.
template <FieldScalar K>
Cochain<K> obstruction(const TruncatedDeformation<K>& D, std::size_t n, const Limits& limits = {}) {
  if (n == 0 || n > D.order()) throw precondition_error("obstruction order must be in 1.." + std::to_string(D.order()));
  limits.require(D.base().dim(), D.base().dim(), 7, "obstruction check");
  for (std::size_t k = 1; k <= n; ++k)
    if (!deformation_residual(D, k).is_zero())
      throw precondition_error("deformation equation fails at order " + std::to_string(k));
  const auto ad = adjoint_rep(D.base());
  auto dt = detail::obstruction_sum(D, n);
  const auto c = check_cochain(ad, dt);
  if (!c.passed()) throw invariant_violation("obstruction is not a 5-cochain: " + cochain_condition_name(*c.first_failure));
  if (!detail::apply_coboundary(ad, dt).is_zero()) throw invariant_violation("obstruction is not a 5-cocycle");
  return dt;
}

/// Outcome of one extension step: the next jet, or the H^5 class of the
/// obstruction.
template <FieldScalar K>
struct StepResult {
  std::optional<Cochain<K>> jet;
  Vector<K> obstruction_class;

  bool obstructed() const { return !jet; }
};

namespace detail {

// Solves delta x = -d~ over the C^3 basis of the adjoint representation.
// The basis and its coboundaries are computed once and reused.
template <FieldScalar K>
class StepSolver {
 public:
  StepSolver(const HomTripleSystem<K>& t, const Limits& limits)
      : rep_(adjoint_rep(t)), limits_(limits), c3_(cochain_space(rep_, 3, limits)) {
    std::vector<Vector<K>> images;
    for (const auto& b : c3_.basis) images.push_back(apply_coboundary(rep_, b).flat());
    images_ = Matrix<K>::from_columns(t.field(), images, checked_power(t.dim(), 5) * t.dim());
  }

  StepResult<K> solve_for(const Cochain<K>& dt) {
    const auto& f = rep_.field();
    Vector<K> rhs = dt.flat();
    for (auto& x : rhs) x = -x;
    StepResult<K> out;
    if (const auto c = solve(images_, rhs)) {
      Cochain<K> x(f, 3, rep_.dim(), rep_.dim());
      for (std::size_t i = 0; i < c3_.dim(); ++i)
        if (!(*c)[i].is_zero()) x.add_scaled((*c)[i], c3_.basis[i]);
      out.jet = std::move(x);
      return out;
    }
    if (!h5_) h5_ = cohomology(rep_, 5, limits_);
    const auto coords = class_coordinates(*h5_, dt);
    if (!coords) throw invariant_violation("obstruction is not a 5-cocycle");
    out.obstruction_class = *coords;
    return out;
  }

 private:
  Representation<K> rep_;
  Limits limits_;
  CochainSpace<K> c3_;
  Matrix<K> images_;
  std::optional<CohomologyResult<K>> h5_;
};

}  // namespace detail

/// Finds d_{N+1} with delta d_{N+1} = -d~, zeroing free coordinates on the
/// C^3 basis. When no such jet exists the H^5 coordinates of d~ are reported.
template <FieldScalar K>
StepResult<K> integrate_step(const TruncatedDeformation<K>& D, const Limits& limits = {}) {
  if (D.order() == 0) throw precondition_error("integrate_step needs an infinitesimal (order >= 1)");
  const auto dt = obstruction(D, D.order(), limits);
  detail::StepSolver<K> solver(D.base(), limits);
  return solver.solve_for(dt);
}

template <FieldScalar K>
struct IntegrationResult {
  TruncatedDeformation<K> deformation;  // the longest prefix reached
  std::optional<std::size_t> obstructed_at;
  Vector<K> obstruction_class;

  bool obstructed() const { return obstructed_at.has_value(); }
};

/// Extends the cocycle d1 to a deformation of order N, one step at a time.
template <FieldScalar K>
IntegrationResult<K> integrate(const HomTripleSystem<K>& t, const Cochain<K>& d1, std::size_t order,
                               const Limits& limits = {}) {
  if (order == 0) throw precondition_error("integration order must be at least 1");
  TruncatedDeformation<K> D(t, {d1});
  if (!infinitesimal_is_cocycle(D)) throw precondition_error("d1 is not a 3-cocycle of the adjoint representation");
  detail::StepSolver<K> solver(t, limits);
  while (D.order() < order) {
    auto step = solver.solve_for(obstruction(D, D.order(), limits));
    if (step.obstructed()) {
      const std::size_t at = D.order() + 1;
      return {std::move(D), at, std::move(step.obstruction_class)};
    }
    D = D.extended(std::move(*step.jet));
  }
  if (!check_deformation(D).passed()) throw invariant_violation("integrated deformation fails its equations");
  return {std::move(D), std::nullopt, {}};
}

/// Per-order residuals of phi_t o d_t = d'_t(phi_t, phi_t, phi_t) on basis
/// triples, and of phi_i alpha = alpha phi_i.
template <FieldScalar K>
struct EquivalenceReport {
  std::vector<MultilinearMap<K>> residuals;
  std::vector<Matrix<K>> commutators;

  bool passed() const {
    for (const auto& r : residuals)
      if (!r.is_zero()) return false;
    for (const auto& c : commutators)
      if (!c.is_zero()) return false;
    return true;
  }
};

namespace detail {

// sum over k + l + m = s of f(phi_k x, phi_l y, phi_m z).
template <FieldScalar K>
MultilinearMap<K> composed_inputs(const Cochain<K>& f, const std::vector<Matrix<K>>& phi, std::size_t s) {
  MultilinearMap<K> out(f.field(), 3, f.dim(), f.codim());
  for (std::size_t k = 0; k <= s; ++k)
    for (std::size_t l = 0; k + l <= s; ++l) {
      const std::size_t m = s - k - l;
      out += f.twist_input(0, phi[k]).twist_input(1, phi[l]).twist_input(2, phi[m]);
    }
  return out;
}

template <FieldScalar K>
std::vector<Matrix<K>> phi_components(const FormalIsomorphism<K>& phi, const HomTripleSystem<K>& t) {
  std::vector<Matrix<K>> out;
  for (std::size_t i = 0; i <= phi.order(); ++i) {
    out.push_back(phi.component(i, t.field(), t.dim()));
    if (out.back().rows() != t.dim() || out.back().cols() != t.dim())
      throw dimension_error("isomorphism component phi_" + std::to_string(i) + " must be " + std::to_string(t.dim()) +
                            "x" + std::to_string(t.dim()));
  }
  return out;
}

}  // namespace detail

template <FieldScalar K>
EquivalenceReport<K> check_equivalence(const TruncatedDeformation<K>& D, const TruncatedDeformation<K>& D2,
                                       const FormalIsomorphism<K>& phi) {
  if (!(D.base() == D2.base())) throw precondition_error("deformations of different algebras");
  if (D.order() != D2.order() || phi.order() != D.order())
    throw precondition_error("orders differ: " + std::to_string(D.order()) + ", " + std::to_string(D2.order()) +
                             " and isomorphism " + std::to_string(phi.order()));
  const auto& t = D.base();
  const auto ph = detail::phi_components(phi, t);
  EquivalenceReport<K> out;
  for (std::size_t i = 1; i <= phi.order(); ++i) out.commutators.push_back(ph[i] * t.alpha() - t.alpha() * ph[i]);
  for (std::size_t n = 1; n <= D.order(); ++n) {
    MultilinearMap<K> r(t.field(), 3, t.dim(), t.dim());
    for (std::size_t i = 0; i <= n; ++i) r += D.jet(n - i).twist_output(ph[i]);
    for (std::size_t i = 0; i <= n; ++i) r -= detail::composed_inputs(D2.jet(i), ph, n - i);
    out.residuals.push_back(std::move(r));
  }
  return out;
}

/// The deformation d'_t making phi_t an equivalence d_t ~ d'_t, solved order
/// by order: d'_n = sum_{i+j=n} phi_i d_j - sum_{i<n} d'_i(phi_k, phi_l, phi_m).
template <FieldScalar K>
TruncatedDeformation<K> push_forward(const TruncatedDeformation<K>& D, const FormalIsomorphism<K>& phi) {
  const auto& t = D.base();
  if (phi.order() != D.order()) throw precondition_error("isomorphism order does not match the deformation");
  const auto ph = detail::phi_components(phi, t);
  for (std::size_t i = 1; i < ph.size(); ++i)
    if (!(ph[i] * t.alpha() == t.alpha() * ph[i]))
      throw precondition_error("phi_" + std::to_string(i) + " does not commute with alpha");
  std::vector<Cochain<K>> out;
  const auto prime = [&](std::size_t i) -> const Cochain<K>& { return i == 0 ? t.bracket() : out[i - 1]; };
  for (std::size_t n = 1; n <= D.order(); ++n) {
    Cochain<K> dn(t.field(), 3, t.dim(), t.dim());
    for (std::size_t i = 0; i <= n; ++i) dn += D.jet(n - i).twist_output(ph[i]);
    for (std::size_t i = 0; i < n; ++i) dn -= detail::composed_inputs(prime(i), ph, n - i);
    out.push_back(std::move(dn));
  }
  return TruncatedDeformation<K>(t, std::move(out));
}

/// A 1-cochain phi_1 of the adjoint representation with
/// d_1 - d'_1 = delta phi_1, or nullopt when the infinitesimals lie in
/// different classes. Free coordinates on the C^1 basis are zeroed.
template <FieldScalar K>
std::optional<Cochain<K>> infinitesimals_cohomologous(const TruncatedDeformation<K>& D,
                                                       const TruncatedDeformation<K>& D2, const Limits& limits = {}) {
  if (!(D.base() == D2.base())) throw precondition_error("deformations of different algebras");
  if (D.order() == 0 || D2.order() == 0) throw precondition_error("both deformations need order >= 1");
  const auto& t = D.base();
  const auto ad = adjoint_rep(t);
  const auto c1 = cochain_space(ad, 1, limits);
  std::vector<Vector<K>> images;
  for (const auto& b : c1.basis) images.push_back(detail::apply_coboundary(ad, b).flat());
  const auto diff = D.jet(1) - D2.jet(1);
  const auto c = solve(Matrix<K>::from_columns(t.field(), images, diff.flat().size()), diff.flat());
  if (!c) return std::nullopt;
  Cochain<K> w(t.field(), 1, t.dim(), t.dim());
  for (std::size_t i = 0; i < c1.dim(); ++i) w.add_scaled((*c)[i], c1.basis[i]);
  return w;
}

/// h . g (x_1..x_7) = sum_{k=1}^{3} sum_{j=2k+1}^{7} (-1)^{k+1}
///   h(a x_1, .., ^x_{2k-1}, ^x_{2k}, .., g(x_{2k-1}, x_{2k}, x_j), .., a x_7)
/// with g in the place of x_j and every other argument twisted once.
template <FieldScalar K>
MultilinearMap<K> bullet_h_g(const HomTripleSystem<K>& t, const Cochain<K>& h, const Cochain<K>& g) {
  detail::require_degree(h, 5, t, "h");
  detail::require_degree(g, 3, t, "g");
  const std::size_t d = t.dim();
  const auto hq = detail::twisted_except(h, t.alpha());
  const K one = K::from_int(t.field(), 1);
  MultilinearMap<K> out(t.field(), 7, d, d);
  MultiIndex x(7, 0), args(5);
  std::size_t tuple = 0;
  do {
    auto dst = out.value(tuple++);
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t j = 2 * k + 1; j <= 7; ++j) {
        std::size_t s = 0;
        for (std::size_t i = 1; i <= 7; ++i)
          if (i != 2 * k - 1 && i != 2 * k) args[s++] = x[i - 1];
        const std::size_t slot = j - 3;
        detail::add_substituted(dst, k % 2 == 1 ? one : -one, hq[slot], args, slot,
                                g.at({x[2 * k - 2], x[2 * k - 1], x[j - 1]}));
      }
  } while (next_index(x, d));
  return out;
}

/// f . h (x_1..x_7) = sum_{k<l<=3} sum_{j=2l+1}^{7} (-1)^{k+l}
///   f(a^2 x_1, .., h(x_{2k-1}, x_{2k}, x_{2l-1}, x_{2l}, x_j), .., a^2 x_7)
/// with h in the place of x_j and the two remaining arguments twisted twice.
template <FieldScalar K>
MultilinearMap<K> bullet_f_h(const HomTripleSystem<K>& t, const Cochain<K>& f, const Cochain<K>& h) {
  detail::require_degree(f, 3, t, "f");
  detail::require_degree(h, 5, t, "h");
  const std::size_t d = t.dim();
  const auto fq = detail::twisted_except(f, t.alpha().pow(2));
  const K one = K::from_int(t.field(), 1);
  MultilinearMap<K> out(t.field(), 7, d, d);
  MultiIndex x(7, 0), args(3);
  std::size_t tuple = 0;
  do {
    auto dst = out.value(tuple++);
    for (std::size_t k = 1; k <= 2; ++k)
      for (std::size_t l = k + 1; l <= 3; ++l)
        for (std::size_t j = 2 * l + 1; j <= 7; ++j) {
          std::size_t s = 0;
          for (std::size_t i = 1; i <= 7; ++i)
            if (i != 2 * k - 1 && i != 2 * k && i != 2 * l - 1 && i != 2 * l) args[s++] = x[i - 1];
          const std::size_t slot = j - 5;
          const auto hv = h.at({x[2 * k - 2], x[2 * k - 1], x[2 * l - 2], x[2 * l - 1], x[j - 1]});
          detail::add_substituted(dst, (k + l) % 2 == 0 ? one : -one, fq[slot], args, slot, hv);
        }
  } while (next_index(x, d));
  return out;
}

/// Both sides of the expansion
///   delta(f o g) = (delta f) . g + f . (delta g) + sum of sixteen a[...] terms
/// for f, g in C^3 of the adjoint representation, evaluated on basis 7-tuples.
template <FieldScalar K>
struct BulletExpansion {
  MultilinearMap<K> lhs;          // delta(f o g)
  MultilinearMap<K> h_g;          // (delta f) . g
  MultilinearMap<K> f_h;          // f . (delta g)
  MultilinearMap<K> corrections;  // the a[...] terms
  MultilinearMap<K> residual;     // lhs - h_g - f_h - corrections
};

template <FieldScalar K>
BulletExpansion<K> bullet_compositions(const HomTripleSystem<K>& t, const Cochain<K>& f, const Cochain<K>& g,
                                       const Limits& limits = {}) {
  detail::require_degree(f, 3, t, "f");
  detail::require_degree(g, 3, t, "g");
  limits.require(t.dim(), t.dim(), 7, "bullet expansion");
  const auto ad = adjoint_rep(t);
  const std::size_t d = t.dim();
  const auto& field = t.field();
  const auto& al = t.alpha();

  BulletExpansion<K> out;
  out.lhs = detail::apply_coboundary(ad, circ_alpha(t, f, g));
  out.h_g = bullet_h_g(t, detail::apply_coboundary(ad, f), g);
  out.f_h = bullet_f_h(t, f, detail::apply_coboundary(ad, g));

  // Each term is sign * a[P Q R] with P, Q, R one of: a x_i, F(x_a, x_b, x_c),
  // G(x_a, x_b, x_c); the partner term swaps F and G with the opposite sign.
  enum Kind { Twist, First, Second };
  struct Arg {
    Kind kind;
    std::size_t a, b = 0, c = 0;
  };
  struct Term {
    int sign;
    Arg p, q, r;
  };
  const std::vector<Term> terms = {
      {-1, {First, 1, 2, 3}, {Twist, 4}, {Second, 5, 6, 7}},
      {-1, {Twist, 3}, {First, 1, 2, 4}, {Second, 5, 6, 7}},
      {+1, {First, 1, 2, 5}, {Twist, 6}, {Second, 3, 4, 7}},
      {+1, {First, 1, 2, 5}, {Second, 3, 4, 6}, {Twist, 7}},
      {-1, {First, 1, 2, 6}, {Twist, 5}, {Second, 3, 4, 7}},
      {-1, {First, 1, 2, 6}, {Second, 3, 4, 5}, {Twist, 7}},
      {-1, {First, 3, 4, 5}, {Twist, 6}, {Second, 1, 2, 7}},
      {-1, {Twist, 5}, {First, 3, 4, 6}, {Second, 1, 2, 7}},
  };
  out.corrections = MultilinearMap<K>(field, 7, d, d);
  MultiIndex x(7, 0);
  std::size_t tuple = 0;
  do {
    const auto eval = [&](const Arg& a, bool swapped) -> Vector<K> {
      if (a.kind == Twist) return al.column(x[a.a - 1]);
      const auto& m = (a.kind == First) != swapped ? f : g;
      const auto v = m.at({x[a.a - 1], x[a.b - 1], x[a.c - 1]});
      return Vector<K>(v.begin(), v.end());
    };
    Vector<K> acc = zero_vector<K>(field, d);
    for (const auto& term : terms) {
      const K s = K::from_int(field, term.sign);
      axpy<K>(acc, s, bracket_eval(t, eval(term.p, false), eval(term.q, false), eval(term.r, false)));
      axpy<K>(acc, -s, bracket_eval(t, eval(term.p, true), eval(term.q, true), eval(term.r, true)));
    }
    const auto v = al * acc;
    auto dst = out.corrections.value(tuple++);
    std::copy(v.begin(), v.end(), dst.begin());
  } while (next_index(x, d));

  out.residual = out.lhs - out.h_g - out.f_h - out.corrections;
  return out;
}

}  // namespace homlts
