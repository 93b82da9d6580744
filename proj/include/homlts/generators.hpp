#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "homlts/algebra.hpp"
#include "homlts/errors.hpp"
#include "homlts/field.hpp"
#include "homlts/linalg.hpp"

namespace homlts {

/// [xyz] = lambda (<y,z> alpha(x) - <z,x> alpha(y)) for a symmetric form
/// preserved by alpha.
template <FieldScalar K>
HomTripleSystem<K> gen_bilinear(const Matrix<K>& form, const Matrix<K>& alpha, const K& lambda) {
  const FieldSpec field = form.field();
  const std::size_t d = form.rows();
  if (!form.square()) throw dimension_error("bilinear form must be square, got " + form.shape());
  if (alpha.rows() != d || alpha.cols() != d) throw dimension_error("alpha does not match the form dimension");
  if (!(form == form.transpose())) throw precondition_error("bilinear form is not symmetric");
  if (!(alpha.transpose() * form * alpha == form))
    throw precondition_error("form not preserved: alpha^T * form * alpha != form");
  MultilinearMap<K> br(field, 3, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        auto out = br.at({i, j, k});
        for (std::size_t l = 0; l < d; ++l) {
          K c = form(j, k) * alpha(l, i) - form(k, i) * alpha(l, j);
          out[l] = lambda * c;
        }
      }
  return HomTripleSystem<K>(field, std::move(br), alpha, true);
}

namespace detail {

template <FieldScalar K>
bool is_orthogonal(const Matrix<K>& g) {
  return g.square() && g.transpose() * g == Matrix<K>::identity(g.field(), g.rows());
}

// Matrix LTS on m x n matrices twisted by alpha(A) = g A h^T with g, h orthogonal:
// [ABC] = U(aA, aB, aC), U(X, Y, Z) = X Y^T Z + Z Y^T X - Y X^T Z - Z X^T Y.
template <FieldScalar K>
HomTripleSystem<K> matrix_lts(const FieldSpec& field, std::size_t m, std::size_t n, const Matrix<K>& g,
                              const Matrix<K>& h) {
  const std::size_t d = m * n;
  if (d == 0) throw precondition_error("matrix triple system needs m, n >= 1");
  Matrix<K> alpha(field, d, d);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t e = 0; e < n; ++e) alpha(c * n + e, a * n + b) = g(c, a) * h(e, b);

  const auto unit = [&](std::size_t idx) {
    Matrix<K> u(field, m, n);
    u(idx / n, idx % n) = K::from_int(field, 1);
    return u;
  };
  MultilinearMap<K> untwisted(field, 3, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto x = unit(i), y = unit(j), z = unit(k);
        const auto r = x * y.transpose() * z + z * y.transpose() * x - y * x.transpose() * z - z * x.transpose() * y;
        auto out = untwisted.at({i, j, k});
        for (std::size_t l = 0; l < d; ++l) out[l] = r(l / n, l % n);
      }
  auto bracket = untwisted.twist_all_inputs(alpha);
  return HomTripleSystem<K>(field, std::move(bracket), std::move(alpha), true);
}

}  // namespace detail

/// Triple system on m x n matrices, [ABC] = a(A)a(B)^T a(C) + a(C)a(B)^T a(A)
/// - a(B)a(A)^T a(C) - a(C)a(A)^T a(B), with a(A) = g A g^-1 for an optional
/// orthogonal g (square case only) and a = id otherwise.
template <FieldScalar K>
HomTripleSystem<K> gen_matrix(const FieldSpec& field, std::size_t m, std::size_t n,
                              const std::optional<Matrix<K>>& conjugator = std::nullopt) {
  if (!conjugator) {
    return detail::matrix_lts<K>(field, m, n, Matrix<K>::identity(field, m), Matrix<K>::identity(field, n));
  }
  const auto& g = *conjugator;
  if (m != n) throw precondition_error("a conjugation twist needs square matrices (m == n)");
  if (g.rows() != m || g.cols() != m) throw dimension_error("conjugator must be " + std::to_string(m) + "x" + std::to_string(m));
  if (!detail::is_orthogonal(g)) throw precondition_error("non-orthogonal conjugator: g^T g != I");
  return detail::matrix_lts<K>(field, m, n, g, g);
}

/// Twists an untwisted LTS (alpha = id) by an algebra morphism sigma:
/// bracket' = sigma o bracket, alpha' = sigma. The result is re-verified.
template <FieldScalar K>
HomTripleSystem<K> twist_by_morphism(const HomTripleSystem<K>& t, const Matrix<K>& sigma) {
  const std::size_t d = t.dim();
  if (!(t.alpha() == Matrix<K>::identity(t.field(), d)))
    throw precondition_error("twist_by_morphism expects an untwisted system (alpha = id)");
  if (sigma.rows() != d || sigma.cols() != d) throw dimension_error("sigma must be " + std::to_string(d) + "x" + std::to_string(d));
  const auto image = t.bracket().twist_output(sigma);
  const auto pulled = t.bracket().twist_all_inputs(sigma);
  if (!(image == pulled)) throw precondition_error("not a morphism: sigma[xyz] != [sigma x, sigma y, sigma z]");
  HomTripleSystem<K> out(t.field(), image, sigma, true);
  if (!check_axioms(out).passed()) throw precondition_error("twist failed axioms");
  return out;
}

namespace detail {

template <FieldScalar K>
Matrix<K> random_matrix(const FieldSpec& field, std::size_t r, std::size_t c, Rng& rng) {
  Matrix<K> m(field, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar<K>(field, rng, 2);
  return m;
}

template <FieldScalar K>
Matrix<K> random_invertible(const FieldSpec& field, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix<K>(field, n, n, rng);
    if (rank(m) == n) return m;
  }
}

// Uniform random permutation by Fisher-Yates on a hand-reduced draw.
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw_below(rng, i)]);
  return p;
}

// Signed permutation matrix; orthogonal over every field.
template <FieldScalar K>
Matrix<K> random_signed_permutation(const FieldSpec& field, std::size_t n, Rng& rng) {
  const auto p = random_permutation(n, rng);
  Matrix<K> m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(p[i], i) = K::from_int(field, draw_below(rng, 2) ? 1 : -1);
  return m;
}

template <FieldScalar K>
K random_nonzero(const FieldSpec& field, Rng& rng) {
  for (;;) {
    auto x = random_scalar<K>(field, rng, 3);
    if (!x.is_zero()) return x;
  }
}

// Diagonal form with values from a small pool so that repeats occur, and a
// signed permutation preserving it (it may only permute equal diagonal entries).
template <FieldScalar K>
HomTripleSystem<K> random_bilinear(const FieldSpec& field, std::size_t d, Rng& rng) {
  std::vector<long> diag(d);
  for (auto& v : diag) v = static_cast<long>(draw_below(rng, 3));  // 0, 1 or 2
  Matrix<K> form(field, d, d);
  for (std::size_t i = 0; i < d; ++i) form(i, i) = K::from_int(field, diag[i]);
  std::map<long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < d; ++i) groups[diag[i]].push_back(i);
  Matrix<K> alpha(field, d, d);
  for (const auto& [value, members] : groups) {
    const auto p = random_permutation(members.size(), rng);
    for (std::size_t s = 0; s < members.size(); ++s)
      alpha(members[p[s]], members[s]) = K::from_int(field, draw_below(rng, 2) ? 1 : -1);
  }
  return gen_bilinear(form, alpha, random_nonzero<K>(field, rng));
}

template <FieldScalar K>
HomTripleSystem<K> random_matrix_type(const FieldSpec& field, std::size_t d, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t m = 1; m <= d; ++m)
    if (d % m == 0) shapes.emplace_back(m, d / m);
  const auto [m, n] = shapes[draw_below(rng, shapes.size())];
  const auto g = random_signed_permutation<K>(field, m, rng);
  const auto h = random_signed_permutation<K>(field, n, rng);
  return matrix_lts<K>(field, m, n, g, h);
}

template <FieldScalar K>
HomTripleSystem<K> random_candidate(const FieldSpec& field, std::size_t d, Rng& rng) {
  switch (draw_below(rng, 4)) {
    case 0: return HomTripleSystem<K>::abelian(field, random_matrix<K>(field, d, d, rng));
    case 1: return random_bilinear<K>(field, d, rng);
    case 2: return random_matrix_type<K>(field, d, rng);
    default: {
      if (d == 1) return random_bilinear<K>(field, d, rng);
      const std::size_t split = 1 + draw_below(rng, d - 1);
      auto left = draw_below(rng, 2) ? random_bilinear<K>(field, split, rng) : random_matrix_type<K>(field, split, rng);
      auto right = HomTripleSystem<K>::abelian(field, random_matrix<K>(field, d - split, d - split, rng));
      return direct_sum(left, right);
    }
  }
}

}  // namespace detail

/// Seeded generator of small multiplicative Hom-LTS: abelian, bilinear-form and
/// matrix families, direct sums, with signed-permutation twists and a random
/// change of basis. Every returned system passes check_axioms.
template <FieldScalar K>
HomTripleSystem<K> random_homlts(std::size_t dim, const FieldSpec& field, std::uint64_t seed) {
  constexpr int budget = 64;
  if (dim == 0 || dim > 4) throw precondition_error("random_homlts supports dimensions 1..4");
  Rng rng(seed);
  for (int attempt = 0; attempt < budget; ++attempt) {
    auto candidate = detail::random_candidate<K>(field, dim, rng);
    candidate = change_basis(candidate, detail::random_invertible<K>(field, dim, rng));
    if (check_axioms(candidate).passed()) return candidate;
  }
  throw budget_error("random_homlts: budget exhausted");
}

}  // namespace homlts
