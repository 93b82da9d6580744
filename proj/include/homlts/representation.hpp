#pragma once

#include <string>
#include <vector>

#include "homlts/algebra.hpp"
#include "homlts/errors.hpp"
#include "homlts/linalg.hpp"

namespace homlts {

/// A module V (dim m) over a multiplicative Hom-LTS: theta(e_a, e_b) for basis
/// pairs plus the module twist A. D(a, b) = theta(b, a) - theta(a, b) is derived.
template <FieldScalar K>
class Representation {
 public:
  Representation() = default;

  /// theta is the d*d grid of m x m blocks, block (a, b) at index a*d + b.
  Representation(HomTripleSystem<K> base, std::size_t mdim, std::vector<Matrix<K>> theta, Matrix<K> twist)
      : base_(std::move(base)), mdim_(mdim), theta_(std::move(theta)), twist_(std::move(twist)) {
    const std::size_t d = base_.dim();
    const auto& f = base_.field();
    if (theta_.size() != d * d)
      throw dimension_error("theta grid must have " + std::to_string(d * d) + " blocks, got " +
                            std::to_string(theta_.size()));
    for (const auto& blk : theta_) {
      if (blk.rows() != mdim_ || blk.cols() != mdim_)
        throw dimension_error("theta block must be " + std::to_string(mdim_) + "x" + std::to_string(mdim_) +
                              ", got " + blk.shape());
      if (blk.field() != f) throw field_mismatch();
    }
    if (twist_.rows() != mdim_ || twist_.cols() != mdim_)
      throw dimension_error("module twist A must be " + std::to_string(mdim_) + "x" + std::to_string(mdim_));
    if (twist_.field() != f) throw field_mismatch();
  }

  const HomTripleSystem<K>& base() const { return base_; }
  const FieldSpec& field() const { return base_.field(); }
  std::size_t dim() const { return base_.dim(); }
  std::size_t mdim() const { return mdim_; }
  const Matrix<K>& twist() const { return twist_; }
  const std::vector<Matrix<K>>& theta_grid() const { return theta_; }

  const Matrix<K>& theta(std::size_t a, std::size_t b) const {
    const std::size_t d = dim();
    if (a >= d || b >= d) throw dimension_error("theta: basis index out of range");
    return theta_[a * d + b];
  }

  /// theta(x, y) for arbitrary vectors.
  Matrix<K> theta(const Vector<K>& x, const Vector<K>& y) const {
    const std::size_t d = dim();
    Matrix<K> out(field(), mdim_, mdim_);
    for (std::size_t a = 0; a < d; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < d; ++b) {
        if (y[b].is_zero()) continue;
        out += (x[a] * y[b]) * theta_[a * d + b];
      }
    }
    return out;
  }

  Matrix<K> d_operator(const Vector<K>& x, const Vector<K>& y) const { return theta(y, x) - theta(x, y); }

  bool is_trivial() const {
    for (const auto& blk : theta_)
      if (!blk.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  HomTripleSystem<K> base_;
  std::size_t mdim_ = 0;
  std::vector<Matrix<K>> theta_;
  Matrix<K> twist_;
};

/// D(e_a, e_b) = theta(e_b, e_a) - theta(e_a, e_b).
template <FieldScalar K>
Matrix<K> d_operator(const Representation<K>& r, std::size_t a, std::size_t b) {
  return r.theta(b, a) - r.theta(a, b);
}

enum class RepIdentity { twist_compatibility, theta_theta, theta_d, d_d };

inline std::string rep_identity_name(RepIdentity id) {
  switch (id) {
    case RepIdentity::twist_compatibility: return "theta(a a, a b) A = A theta(a, b)";
    case RepIdentity::theta_theta: return "theta-theta module identity";
    case RepIdentity::theta_d: return "theta-D module identity";
    case RepIdentity::d_d: return "D-D module identity";
  }
  return "?";
}

struct RepViolation {
  RepIdentity identity;
  MultiIndex where;
};

struct RepReport {
  static constexpr std::size_t max_recorded = 256;
  bool twist_compatibility = true;
  bool theta_theta = true;
  bool theta_d = true;
  bool d_d = true;
  std::vector<RepViolation> violations;
  std::size_t violation_count = 0;

  bool passed() const { return violation_count == 0; }

  void record(RepIdentity id, MultiIndex where) {
    switch (id) {
      case RepIdentity::twist_compatibility: twist_compatibility = false; break;
      case RepIdentity::theta_theta: theta_theta = false; break;
      case RepIdentity::theta_d: theta_d = false; break;
      case RepIdentity::d_d: d_d = false; break;
    }
    ++violation_count;
    if (violations.size() < max_recorded) violations.push_back({id, std::move(where)});
  }
};

/// Checks the module identities on all basis tuples (a, b, c, d):
///   theta(aa, ab) A = A theta(a, b)
///   theta(ac, ad) theta(a, b) - theta(ab, ad) theta(a, c) - theta(aa, [bcd]) A + D(ab, ac) theta(a, d) = 0
///   theta(ac, ad) D(a, b) - D(aa, ab) theta(c, d) + theta([abc], ad) A + theta(ac, [abd]) A = 0
/// and the same with D in place of every theta in the last one.
template <FieldScalar K>
RepReport check_representation(const Representation<K>& r) {
  const std::size_t d = r.dim();
  const auto& t = r.base();
  const auto& al = t.alpha();
  const auto& A = r.twist();
  RepReport report;

  std::vector<Vector<K>> ae(d);
  for (std::size_t i = 0; i < d; ++i) ae[i] = al.column(i);
  // Twisted blocks theta(alpha e_a, alpha e_b) and D(alpha e_a, alpha e_b).
  std::vector<Matrix<K>> ta(d * d), da(d * d), th(d * d), dd(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      ta[a * d + b] = r.theta(ae[a], ae[b]);
      th[a * d + b] = r.theta(a, b);
    }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      da[a * d + b] = ta[b * d + a] - ta[a * d + b];
      dd[a * d + b] = th[b * d + a] - th[a * d + b];
    }
  const auto br = [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto v = t.basis_bracket(i, j, k);
    return Vector<K>(v.begin(), v.end());
  };

  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (!(ta[a * d + b] * A == A * th[a * d + b])) report.record(RepIdentity::twist_compatibility, {a, b});

  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          const auto bcd = br(b, c, e);
          const auto abc = br(a, b, c);
          const auto abd = br(a, b, e);
          const auto two = ta[c * d + e] * th[a * d + b] - ta[b * d + e] * th[a * d + c] -
                           r.theta(ae[a], bcd) * A + da[b * d + c] * th[a * d + e];
          if (!two.is_zero()) report.record(RepIdentity::theta_theta, {a, b, c, e});
          const auto three = ta[c * d + e] * dd[a * d + b] - da[a * d + b] * th[c * d + e] +
                             r.theta(abc, ae[e]) * A + r.theta(ae[c], abd) * A;
          if (!three.is_zero()) report.record(RepIdentity::theta_d, {a, b, c, e});
          const auto four = da[c * d + e] * dd[a * d + b] - da[a * d + b] * dd[c * d + e] +
                            r.d_operator(abc, ae[e]) * A + r.d_operator(ae[c], abd) * A;
          if (!four.is_zero()) report.record(RepIdentity::d_d, {a, b, c, e});
        }
  return report;
}

/// V = T, A = alpha, theta(x, y) z = [z x y]; then D(x, y) z = [x y z].
template <FieldScalar K>
Representation<K> adjoint_rep(const HomTripleSystem<K>& t) {
  if (!t.multiplicative()) throw precondition_error("adjoint representation needs a multiplicative system");
  const std::size_t d = t.dim();
  std::vector<Matrix<K>> theta;
  theta.reserve(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Matrix<K> m(t.field(), d, d);
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t l = 0; l < d; ++l) m(l, z) = t.constant(z, a, b, l);
      theta.push_back(std::move(m));
    }
  return Representation<K>(t, d, std::move(theta), t.alpha());
}

/// theta = 0 with module twist A.
template <FieldScalar K>
Representation<K> trivial_rep(const HomTripleSystem<K>& t, std::size_t mdim, const Matrix<K>& twist) {
  const std::size_t d = t.dim();
  return Representation<K>(t, mdim, std::vector<Matrix<K>>(d * d, Matrix<K>(t.field(), mdim, mdim)), twist);
}

/// T + V with [(x,a),(y,b),(z,c)] = ([xyz], theta(y,z)a - theta(x,z)b + D(x,y)c)
/// and twist alpha + A.
template <FieldScalar K>
HomTripleSystem<K> semidirect_product(const Representation<K>& r) {
  if (!check_representation(r).passed()) throw precondition_error("representation check failed");
  const auto& t = r.base();
  const std::size_t d = t.dim(), m = r.mdim(), n = d + m;
  const auto& f = t.field();
  MultilinearMap<K> br(f, 3, n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto src = t.basis_bracket(i, j, k);
        std::copy(src.begin(), src.end(), br.at({i, j, k}).begin());
      }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t p = 0; p < m; ++p) {
        const auto& th_xy = r.theta(x, y);
        const auto dxy = d_operator(r, x, y);
        auto first = br.at({d + p, x, y});   // theta(y, z) a with y = e_x, z = e_y
        auto second = br.at({x, d + p, y});  // -theta(x, z) b
        auto third = br.at({x, y, d + p});   // D(x, y) c
        for (std::size_t q = 0; q < m; ++q) {
          first[d + q] = th_xy(q, p);
          second[d + q] = -th_xy(q, p);
          third[d + q] = dxy(q, p);
        }
      }
  Matrix<K> tw(f, n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tw(i, j) = t.alpha()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) tw(d + i, d + j) = r.twist()(i, j);
  HomTripleSystem<K> out(f, std::move(br), std::move(tw), true);
  if (!check_axioms(out).passed()) throw invariant_violation("semidirect product failed the axiom check");
  return out;
}

}  // namespace homlts
