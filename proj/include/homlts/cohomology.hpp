#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "homlts/errors.hpp"
#include "homlts/linalg.hpp"
#include "homlts/multilinear.hpp"
#include "homlts/representation.hpp"

namespace homlts {

/// Coefficient budget for dense tensors built by the cohomology routines.
struct Limits {
  std::size_t max_coeffs = 1'000'000;

  /// Default limits, overridden by HOMLTS_MAX_COEFFS when it parses as a
  /// positive integer.
  static Limits from_env() {
    Limits l;
    if (const char* s = std::getenv("HOMLTS_MAX_COEFFS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && *end == '\0' && v > 0) l.max_coeffs = static_cast<std::size_t>(v);
    }
    return l;
  }

  void require(std::size_t m, std::size_t d, std::size_t arity, const std::string& what) const {
    const std::size_t need = checked_power(d, arity) * m;
    if (need > max_coeffs)
      throw budget_error(what + " needs " + std::to_string(need) + " coefficients, over the limit of " +
                         std::to_string(max_coeffs) + " (raise HOMLTS_MAX_COEFFS)");
  }
};

/// An n-cochain T^n -> V, stored densely. Which representation it belongs to
/// is passed alongside rather than stored.
template <FieldScalar K>
using Cochain = MultilinearMap<K>;

template <FieldScalar K>
struct CochainSpace {
  std::size_t degree = 0;
  std::vector<Cochain<K>> basis;

  std::size_t dim() const { return basis.size(); }
  std::vector<Vector<K>> vectors() const {
    std::vector<Vector<K>> out;
    out.reserve(basis.size());
    for (const auto& c : basis) out.push_back(c.flat());
    return out;
  }
};

/// Matrix of a 1-cochain: column i is f(e_i).
template <FieldScalar K>
Matrix<K> cochain_matrix(const Cochain<K>& f) {
  if (f.arity() != 1) throw dimension_error("cochain_matrix expects a 1-cochain");
  Matrix<K> out(f.field(), f.codim(), f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const auto v = f.value(i);
    for (std::size_t r = 0; r < f.codim(); ++r) out(r, i) = v[r];
  }
  return out;
}

/// The 1-cochain x -> m x.
template <FieldScalar K>
Cochain<K> matrix_cochain(const Matrix<K>& m) {
  Cochain<K> out(m.field(), 1, m.cols(), m.rows());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t r = 0; r < m.rows(); ++r) out.value(i)[r] = m(r, i);
  return out;
}

enum class CochainCondition { equivariance, alternation, cyclic };

inline std::string cochain_condition_name(CochainCondition c) {
  switch (c) {
    case CochainCondition::equivariance: return "A f = f(alpha, ..., alpha)";
    case CochainCondition::alternation: return "alternation in the two slots before the last";
    case CochainCondition::cyclic: return "cyclic sum over the last three slots";
  }
  return "?";
}

struct CochainCheck {
  bool equivariant = true;
  bool alternating = true;
  bool cyclic = true;
  std::optional<CochainCondition> first_failure;
  MultiIndex where;

  bool passed() const { return equivariant && alternating && cyclic; }

  void fail(CochainCondition c, MultiIndex at) {
    switch (c) {
      case CochainCondition::equivariance: equivariant = false; break;
      case CochainCondition::alternation: alternating = false; break;
      case CochainCondition::cyclic: cyclic = false; break;
    }
    if (!first_failure) {
      first_failure = c;
      where = std::move(at);
    }
  }
};

namespace detail {

template <FieldScalar K>
void require_cochain_shape(const Representation<K>& r, const Cochain<K>& f) {
  if (f.arity() == 0) throw dimension_error("cochains have degree at least 1");
  if (f.dim() != r.dim() || f.codim() != r.mdim())
    throw dimension_error("cochain shape does not match the representation (dim " + std::to_string(r.dim()) +
                          ", module dim " + std::to_string(r.mdim()) + ")");
  if (f.field() != r.field()) throw field_mismatch();
}

template <FieldScalar K>
void require_multiplicative(const Representation<K>& r) {
  if (!r.base().multiplicative())
    throw precondition_error("cohomology is defined only for multiplicative systems");
}

}  // namespace detail

/// Checks equivariance on all basis tuples and, for degree >= 3, alternation in
/// the two slots before the last and the cyclic sum over the last three.
template <FieldScalar K>
CochainCheck check_cochain(const Representation<K>& r, const Cochain<K>& f) {
  detail::require_cochain_shape(r, f);
  CochainCheck out;
  const std::size_t n = f.arity(), d = f.dim(), m = f.codim();
  const auto lhs = f.twist_output(r.twist());
  const auto rhs = f.twist_all_inputs(r.base().alpha());
  if (!(lhs == rhs)) {
    for (std::size_t t = 0; t < f.tuple_count(); ++t) {
      const auto a = lhs.value(t), b = rhs.value(t);
      if (!std::equal(a.begin(), a.end(), b.begin())) {
        out.fail(CochainCondition::equivariance, f.decode(t));
        break;
      }
    }
  }
  if (n < 3) return out;
  const std::size_t s1 = n - 3, s2 = n - 2, s3 = n - 1;
  MultiIndex idx(n, 0), other(n);
  do {
    const auto v = f.at(idx);
    // Alternation: f(.., i, i, ..) = 0 and f(.., i, j, ..) + f(.., j, i, ..) = 0.
    if (out.alternating) {
      other = idx;
      std::swap(other[s1], other[s2]);
      const auto w = f.at(other);
      for (std::size_t c = 0; c < m; ++c) {
        if (!(v[c] + w[c]).is_zero() || (idx[s1] == idx[s2] && !v[c].is_zero())) {
          out.fail(CochainCondition::alternation, idx);
          break;
        }
      }
    }
    if (out.cyclic) {
      MultiIndex c1 = idx, c2 = idx;
      c1[s1] = idx[s2], c1[s2] = idx[s3], c1[s3] = idx[s1];
      c2[s1] = idx[s3], c2[s2] = idx[s1], c2[s3] = idx[s2];
      const auto w1 = f.at(c1), w2 = f.at(c2);
      for (std::size_t c = 0; c < m; ++c)
        if (!(v[c] + w1[c] + w2[c]).is_zero()) {
          out.fail(CochainCondition::cyclic, idx);
          break;
        }
    }
  } while ((out.alternating || out.cyclic) && next_index(idx, d));
  return out;
}

/// Basis of C^n: multilinear maps satisfying the cochain conditions.
///
/// Alternation and the cyclic sum only involve the last three slots, so C^n
/// lives inside lead (x) W (x) V where W is the space of trilinear forms obeying
/// both. Equivariance is then a square system on that much smaller space. The
/// kernel is returned in canonical (reduced echelon) form over the flat
/// coefficient vector, so bases are deterministic.
template <FieldScalar K>
CochainSpace<K> cochain_space(const Representation<K>& r, std::size_t n, const Limits& limits = {}) {
  if (n == 0) throw precondition_error("cochain degree must be at least 1");
  detail::require_multiplicative(r);
  limits.require(r.mdim(), r.dim(), n, "C^" + std::to_string(n));
  const auto& field = r.field();
  const std::size_t d = r.dim(), m = r.mdim();
  const auto& al = r.base().alpha();
  const auto& A = r.twist();
  const K zero = K::from_int(field, 0), one = K::from_int(field, 1);

  const std::size_t lead = n >= 3 ? n - 3 : n;
  // Trailing forms W, each with its free slot (the slot where it equals 1).
  std::vector<MultilinearMap<K>> w;
  std::vector<std::size_t> free_slot;
  std::size_t trail_tuples = 1;
  if (n >= 3) {
    trail_tuples = d * d * d;
    Matrix<K> cons(field, 2 * trail_tuples, trail_tuples);
    std::size_t row = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const auto t = [d](std::size_t a, std::size_t b, std::size_t c) { return (a * d + b) * d + c; };
          cons(row, t(i, j, k)) += one;
          cons(row, t(j, i, k)) += one;
          ++row;
          cons(row, t(i, j, k)) += one;
          cons(row, t(j, k, i)) += one;
          cons(row, t(k, i, j)) += one;
          ++row;
        }
    // kernel_basis emits one vector per non-pivot column, in column order.
    const auto red = rref(cons);
    std::vector<bool> pivot(trail_tuples, false);
    for (auto p : red.pivots) pivot[p] = true;
    for (std::size_t c = 0; c < trail_tuples; ++c)
      if (!pivot[c]) free_slot.push_back(c);
    for (auto& v : kernel_basis(cons)) w.push_back(MultilinearMap<K>::from_flat(field, 3, d, 1, std::move(v)));
  } else {
    w.push_back(MultilinearMap<K>::from_flat(field, 0, d, 1, {one}));
    free_slot.push_back(0);
  }
  const std::size_t nw = w.size();
  const std::size_t lead_tuples = checked_power(d, lead);
  const std::size_t s_count = lead_tuples * nw * m;
  if (s_count == 0) return {n, {}};

  // Wa(r, q) = (w_q o alpha^3)(free slot r).
  Matrix<K> wa(field, nw, nw);
  for (std::size_t q = 0; q < nw; ++q) {
    const auto tw = n >= 3 ? w[q].twist_all_inputs(al) : w[q];
    for (std::size_t rr = 0; rr < nw; ++rr) wa(rr, q) = tw.flat()[free_slot[rr]];
  }
  // P(L', L) = prod_i alpha(L_i, L'_i).
  Matrix<K> pl(field, lead_tuples, lead_tuples);
  {
    MultiIndex lp(lead, 0);
    for (std::size_t a = 0; a < lead_tuples; ++a, next_index(lp, d)) {
      MultiIndex l(lead, 0);
      for (std::size_t b = 0; b < lead_tuples; ++b, next_index(l, d)) {
        K prod = one;
        for (std::size_t i = 0; i < lead && !prod.is_zero(); ++i) prod *= al(l[i], lp[i]);
        pl(a, b) = prod;
      }
    }
  }
  const auto sidx = [&](std::size_t l, std::size_t q, std::size_t v) { return (l * nw + q) * m + v; };
  Matrix<K> e(field, s_count, s_count);
  for (std::size_t l = 0; l < lead_tuples; ++l)
    for (std::size_t q = 0; q < nw; ++q)
      for (std::size_t v = 0; v < m; ++v) {
        const std::size_t col = sidx(l, q, v);
        for (std::size_t v2 = 0; v2 < m; ++v2) e(sidx(l, q, v2), col) += A(v2, v);
        for (std::size_t l2 = 0; l2 < lead_tuples; ++l2) {
          if (pl(l2, l).is_zero()) continue;
          for (std::size_t r2 = 0; r2 < nw; ++r2)
            if (!wa(r2, q).is_zero()) e(sidx(l2, r2, v), col) -= pl(l2, l) * wa(r2, q);
        }
      }

  const auto ker = kernel_basis(e);
  std::vector<Vector<K>> flat;
  flat.reserve(ker.size());
  const std::size_t length = lead_tuples * trail_tuples * m;
  for (const auto& c : ker) {
    Vector<K> f(length, zero);
    for (std::size_t l = 0; l < lead_tuples; ++l)
      for (std::size_t q = 0; q < nw; ++q)
        for (std::size_t v = 0; v < m; ++v) {
          const K& coeff = c[sidx(l, q, v)];
          if (coeff.is_zero()) continue;
          const auto& wf = w[q].flat();
          for (std::size_t t = 0; t < trail_tuples; ++t)
            if (!wf[t].is_zero()) f[(l * trail_tuples + t) * m + v].add_product(coeff, wf[t]);
        }
    flat.push_back(std::move(f));
  }
  CochainSpace<K> out{n, {}};
  for (auto& v : canonical_basis(field, flat, length))
    out.basis.push_back(Cochain<K>::from_flat(field, n, d, m, std::move(v)));
  return out;
}

namespace detail {

// The coboundary formula, without input or output checks.
//
// Arity p = 2N-1 has no leading argument and twist power N-1; arity p = 2N
// has a leading argument y and twist power N. Output arguments are
// (y?, x_1, ..., x_{2N+1}).
template <FieldScalar K>
Cochain<K> apply_coboundary(const Representation<K>& r, const Cochain<K>& f) {
  const auto& field = r.field();
  const std::size_t p = f.arity(), d = r.dim(), m = r.mdim();
  const std::size_t lead = p % 2 == 0 ? 1 : 0;
  const std::size_t big_n = (p + 1) / 2;
  const std::size_t tpow = lead ? big_n : big_n - 1;
  const auto& al = r.base().alpha();
  const auto at = al.pow(tpow);

  std::vector<Matrix<K>> tp(d * d), dp(d * d);
  {
    std::vector<Vector<K>> ae(d);
    for (std::size_t i = 0; i < d; ++i) ae[i] = at.column(i);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) tp[a * d + b] = r.theta(ae[a], ae[b]);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) dp[a * d + b] = tp[b * d + a] - tp[a * d + b];
  }
  // fq[q]: f with alpha on every slot except q.
  std::vector<Cochain<K>> fq(p);
  for (std::size_t q = 0; q < p; ++q) {
    MultiIndex slots;
    for (std::size_t s = 0; s < p; ++s)
      if (s != q) slots.push_back(s);
    fq[q] = f.twist_inputs(slots, al);
  }
  const K one = K::from_int(field, 1);
  const auto sign = [&](std::size_t e) { return e % 2 == 0 ? one : -one; };

  Cochain<K> out(field, p + 2, d, m);
  MultiIndex idx(p + 2, 0);
  MultiIndex args(p);
  const auto offset = [&]() {
    std::size_t t = 0;
    for (auto i : args) t = t * d + i;
    return t;
  };
  const auto add_matvec = [&](std::span<K> dst, const K& s, const Matrix<K>& mat, std::span<const K> v) {
    for (std::size_t j = 0; j < m; ++j) {
      if (v[j].is_zero()) continue;
      const K sv = s * v[j];
      for (std::size_t i = 0; i < m; ++i)
        if (!mat(i, j).is_zero()) dst[i].add_product(mat(i, j), sv);
    }
  };
  std::size_t t = 0;
  do {
    auto dst = out.value(t++);
    const auto x = [&](std::size_t i) { return idx[lead + i - 1]; };  // 1-based x_i
    // Fills args with (y?, x_1..x_{2N+1}) minus the listed 1-based positions.
    const auto fill = [&](std::initializer_list<std::size_t> skip) {
      std::size_t s = 0;
      if (lead) args[s++] = idx[0];
      for (std::size_t i = 1; i <= 2 * big_n + 1; ++i) {
        bool skipped = false;
        for (auto k : skip) skipped = skipped || k == i;
        if (!skipped) args[s++] = x(i);
      }
    };
    fill({2 * big_n, 2 * big_n + 1});
    add_matvec(dst, one, tp[x(2 * big_n) * d + x(2 * big_n + 1)], f.value(offset()));
    fill({2 * big_n - 1, 2 * big_n + 1});
    add_matvec(dst, -one, tp[x(2 * big_n - 1) * d + x(2 * big_n + 1)], f.value(offset()));
    for (std::size_t k = 1; k <= big_n; ++k) {
      fill({2 * k - 1, 2 * k});
      add_matvec(dst, sign(big_n + k), dp[x(2 * k - 1) * d + x(2 * k)], f.value(offset()));
    }
    for (std::size_t k = 1; k <= big_n; ++k)
      for (std::size_t j = 2 * k + 1; j <= 2 * big_n + 1; ++j) {
        const auto br = r.base().basis_bracket(x(2 * k - 1), x(2 * k), x(j));
        fill({2 * k - 1, 2 * k});
        const std::size_t q = lead + j - 3;
        const K s = sign(big_n + k + 1);
        for (std::size_t l = 0; l < d; ++l) {
          if (br[l].is_zero()) continue;
          args[q] = l;
          const auto v = fq[q].value(offset());
          const K c = s * br[l];
          for (std::size_t i = 0; i < m; ++i)
            if (!v[i].is_zero()) dst[i].add_product(c, v[i]);
        }
      }
  } while (next_index(idx, d));
  return out;
}

}  // namespace detail

/// Coboundary of an n-cochain; the result is an (n+2)-cochain. Both the input
/// and the output are checked against the cochain conditions.
template <FieldScalar K>
Cochain<K> coboundary(const Representation<K>& r, const Cochain<K>& f, const Limits& limits = {}) {
  detail::require_multiplicative(r);
  detail::require_cochain_shape(r, f);
  limits.require(r.mdim(), r.dim(), f.arity() + 2, "coboundary of degree " + std::to_string(f.arity()));
  const auto in = check_cochain(r, f);
  if (!in.passed())
    throw precondition_error("input is not a cochain: " + cochain_condition_name(*in.first_failure) + " fails");
  auto out = detail::apply_coboundary(r, f);
  const auto res = check_cochain(r, out);
  if (!res.passed())
    throw invariant_violation("coboundary output violates " + cochain_condition_name(*res.first_failure));
  return out;
}

/// Cocycle space Z^n = ker(delta) on C^n, in canonical form.
template <FieldScalar K>
CochainSpace<K> cocycles(const Representation<K>& r, std::size_t n, const Limits& limits = {}) {
  limits.require(r.mdim(), r.dim(), n + 2, "Z^" + std::to_string(n));
  const auto c = cochain_space(r, n, limits);
  const auto& field = r.field();
  const std::size_t d = r.dim(), m = r.mdim();
  if (c.basis.empty()) return {n, {}};
  std::vector<Vector<K>> images;
  images.reserve(c.dim());
  for (const auto& b : c.basis) images.push_back(detail::apply_coboundary(r, b).flat());
  const std::size_t out_len = checked_power(d, n + 2) * m;
  const auto ker = kernel_basis(Matrix<K>::from_columns(field, images, out_len));
  const std::size_t len = checked_power(d, n) * m;
  std::vector<Vector<K>> z;
  for (const auto& k : ker) {
    Vector<K> v(len, K::from_int(field, 0));
    for (std::size_t i = 0; i < k.size(); ++i)
      if (!k[i].is_zero()) axpy<K>(v, k[i], c.basis[i].flat());
    z.push_back(std::move(v));
  }
  CochainSpace<K> out{n, {}};
  for (auto& v : canonical_basis(field, z, len)) out.basis.push_back(Cochain<K>::from_flat(field, n, d, m, std::move(v)));
  return out;
}

/// Coboundary space B^n = delta(C^{n-2}); zero for n = 1, 2.
template <FieldScalar K>
CochainSpace<K> coboundaries(const Representation<K>& r, std::size_t n, const Limits& limits = {}) {
  if (n == 0) throw precondition_error("cochain degree must be at least 1");
  detail::require_multiplicative(r);
  if (n < 3) return {n, {}};
  limits.require(r.mdim(), r.dim(), n, "B^" + std::to_string(n));
  const auto c = cochain_space(r, n - 2, limits);
  const auto& field = r.field();
  const std::size_t d = r.dim(), m = r.mdim();
  std::vector<Vector<K>> images;
  for (const auto& b : c.basis) images.push_back(detail::apply_coboundary(r, b).flat());
  CochainSpace<K> out{n, {}};
  for (auto& v : canonical_basis(field, images, checked_power(d, n) * m))
    out.basis.push_back(Cochain<K>::from_flat(field, n, d, m, std::move(v)));
  return out;
}

template <FieldScalar K>
struct CohomologyResult {
  std::size_t degree = 0;
  std::size_t dim = 0;
  std::size_t cochain_dim = 0;
  CochainSpace<K> cocycles;
  CochainSpace<K> coboundaries;
  /// Cocycle basis vectors completing B^n to Z^n, in cocycle-basis order.
  std::vector<Cochain<K>> representatives;
};

template <FieldScalar K>
CohomologyResult<K> cohomology(const Representation<K>& r, std::size_t n, const Limits& limits = {}) {
  CohomologyResult<K> out;
  out.degree = n;
  out.cochain_dim = cochain_space(r, n, limits).dim();
  out.cocycles = cocycles(r, n, limits);
  out.coboundaries = coboundaries(r, n, limits);
  const auto& field = r.field();
  const std::size_t len = checked_power(r.dim(), n) * r.mdim();
  const auto z = out.cocycles.vectors();
  const auto b = out.coboundaries.vectors();
  for (const auto& v : b)
    if (!in_span(field, v, z)) throw invariant_violation("B^" + std::to_string(n) + " is not inside Z^" + std::to_string(n));
  out.dim = z.size() - b.size();
  for (auto i : complete_basis(field, b, z, len)) out.representatives.push_back(out.cocycles.basis[i]);
  if (out.representatives.size() != out.dim) throw invariant_violation("cohomology basis completion is inconsistent");
  return out;
}

/// Coordinates of the class of a cocycle g in terms of the representatives,
/// or nullopt when g is not a cocycle.
template <FieldScalar K>
std::optional<Vector<K>> class_coordinates(const CohomologyResult<K>& h, const Cochain<K>& g) {
  auto basis = h.coboundaries.vectors();
  for (const auto& rep : h.representatives) basis.push_back(rep.flat());
  const auto field = g.field();
  const auto c = in_span(field, g.flat(), basis);
  if (!c) return std::nullopt;
  return Vector<K>(c->begin() + static_cast<std::ptrdiff_t>(h.coboundaries.dim()), c->end());
}

/// True iff delta(delta f) = 0 for every basis cochain f of C^n.
template <FieldScalar K>
bool verify_complex(const Representation<K>& r, std::size_t n, const Limits& limits = {}) {
  limits.require(r.mdim(), r.dim(), n + 4, "delta o delta from degree " + std::to_string(n));
  for (const auto& f : cochain_space(r, n, limits).basis)
    if (!detail::apply_coboundary(r, detail::apply_coboundary(r, f)).is_zero()) return false;
  return true;
}

}  // namespace homlts
