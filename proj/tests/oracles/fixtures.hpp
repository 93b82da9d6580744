#pragma once

// Shared fixtures: the two-dimensional bilinear-form system used throughout
// (form = I, alpha = diag(1, -1), lambda = 1), spelled out by hand rather than
// produced by the generator, plus the seeded random corpus.

#include <vector>

#include "homlts/homlts.hpp"

namespace fixtures {

using Q = homlts::Rational;
using F = homlts::ModP;

inline homlts::FieldSpec gf101() { return homlts::FieldSpec::prime_field(101); }

template <class K>
K num(const homlts::FieldSpec& f, long n) {
  return K::from_int(f, n);
}

template <class K>
homlts::Matrix<K> mat(const homlts::FieldSpec& f, std::vector<std::vector<long>> rows) {
  homlts::Matrix<K> m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = K::from_int(f, rows[i][j]);
  return m;
}

// [e0 e1 e0] = e1, [e0 e1 e1] = e0, [e1 e0 e0] = -e1, [e1 e0 e1] = -e0.
template <class K>
homlts::HomTripleSystem<K> b2(const homlts::FieldSpec& f = homlts::FieldSpec::rationals()) {
  homlts::MultilinearMap<K> br(f, 3, 2, 2);
  br.at({0, 1, 0})[1] = num<K>(f, 1);
  br.at({0, 1, 1})[0] = num<K>(f, 1);
  br.at({1, 0, 0})[1] = num<K>(f, -1);
  br.at({1, 0, 1})[0] = num<K>(f, -1);
  return homlts::HomTripleSystem<K>(f, br, mat<K>(f, {{1, 0}, {0, -1}}), true);
}

template <class K>
homlts::Representation<K> trivial1(const homlts::HomTripleSystem<K>& t) {
  return homlts::trivial_rep(t, 1, homlts::Matrix<K>::identity(t.field(), 1));
}

// Seeded corpus of random multiplicative systems over GF(101), dims 1..max_dim.
inline std::vector<homlts::HomTripleSystem<F>> corpus(std::size_t count, std::size_t max_dim, std::uint64_t base_seed = 1000) {
  std::vector<homlts::HomTripleSystem<F>> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(homlts::random_homlts<F>(1 + i % max_dim, gf101(), base_seed + i));
  return out;
}

// Systems whose adjoint Z^3 is nonzero and whose order-one obstructions are
// nonzero for generic infinitesimals; integration stops at order 2.
inline std::vector<homlts::HomTripleSystem<F>> obstructed() {
  std::vector<homlts::HomTripleSystem<F>> out;
  for (auto [d, seed] : {std::pair<std::size_t, std::uint64_t>{2, 10132}, {2, 10216}, {3, 10015}, {3, 10078}, {3, 10056}})
    out.push_back(homlts::random_homlts<F>(d, gf101(), seed));
  return out;
}

// Adjoint Z^3 of dimension 1 and H^5 = 0.
inline homlts::HomTripleSystem<F> unobstructed() { return homlts::random_homlts<F>(3, gf101(), 10298); }

}  // namespace fixtures
