#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "homlts/errors.hpp"
#include "homlts/field.hpp"
#include "homlts/linalg.hpp"

namespace homlts {

/// Index tuple into a multilinear map: one basis index per argument slot.
using MultiIndex = std::vector<std::size_t>;

inline std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > static_cast<std::size_t>(-1) / base)
      throw budget_error("tensor size overflows size_t");
    r *= base;
  }
  return r;
}

/// Advances a multi-index over {0..dim-1}^n in lexicographic order; returns
/// false after the last tuple.
inline bool next_index(MultiIndex& idx, std::size_t dim) {
  for (std::size_t s = idx.size(); s-- > 0;) {
    if (++idx[s] < dim) return true;
    idx[s] = 0;
  }
  return false;
}

/// A multilinear map T^n -> V between finite-dimensional spaces, stored as
/// its values on basis tuples.
///
/// Layout is dense and lexicographic: the value on (i_0, ..., i_{n-1}) is the
/// codim-long block starting at ((i_0 * dim + i_1) * dim + ...) * codim.
/// Brackets (n = 3, V = T), cochains and the 5- and 7-linear maps of the
/// deformation complex all share this representation.
template <FieldScalar K>
class MultilinearMap {
 public:
  MultilinearMap() = default;

  MultilinearMap(const FieldSpec& field, std::size_t arity, std::size_t dim, std::size_t codim)
      : field_(field),
        arity_(arity),
        dim_(dim),
        codim_(codim),
        tuples_(checked_power(dim, arity)),
        data_(tuples_ * codim, K::from_int(field, 0)) {}

  const FieldSpec& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  std::size_t degree() const { return arity_; }
  std::size_t dim() const { return dim_; }
  std::size_t codim() const { return codim_; }
  std::size_t tuple_count() const { return tuples_; }
  std::size_t size() const { return data_.size(); }

  std::size_t tuple_offset(std::span<const std::size_t> idx) const {
    if (idx.size() != arity_) throw dimension_error("multi-index of wrong arity");
    std::size_t t = 0;
    for (auto i : idx) {
      if (i >= dim_) throw dimension_error("basis index " + std::to_string(i) + " out of range");
      t = t * dim_ + i;
    }
    return t;
  }

  MultiIndex decode(std::size_t tuple) const {
    MultiIndex idx(arity_);
    for (std::size_t s = arity_; s-- > 0;) {
      idx[s] = tuple % dim_;
      tuple /= dim_;
    }
    return idx;
  }

  std::span<K> value(std::size_t tuple) { return {data_.data() + tuple * codim_, codim_}; }
  std::span<const K> value(std::size_t tuple) const { return {data_.data() + tuple * codim_, codim_}; }
  std::span<K> at(std::span<const std::size_t> idx) { return value(tuple_offset(idx)); }
  std::span<const K> at(std::span<const std::size_t> idx) const { return value(tuple_offset(idx)); }
  std::span<K> at(std::initializer_list<std::size_t> idx) { return at(std::span<const std::size_t>(idx.begin(), idx.size())); }
  std::span<const K> at(std::initializer_list<std::size_t> idx) const {
    return at(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  const std::vector<K>& flat() const { return data_; }
  std::vector<K>& flat() { return data_; }

  static MultilinearMap from_flat(const FieldSpec& field, std::size_t arity, std::size_t dim, std::size_t codim,
                                  std::vector<K> values) {
    MultilinearMap f(field, arity, dim, codim);
    if (values.size() != f.data_.size()) throw dimension_error("from_flat: wrong coefficient count");
    f.data_ = std::move(values);
    return f;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }

  bool same_shape(const MultilinearMap& o) const {
    return arity_ == o.arity_ && dim_ == o.dim_ && codim_ == o.codim_;
  }

  MultilinearMap& operator+=(const MultilinearMap& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  MultilinearMap& operator-=(const MultilinearMap& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  MultilinearMap& operator*=(const K& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  /// this += s * o
  void add_scaled(const K& s, const MultilinearMap& o) {
    require_same_shape(o);
    axpy<K>(data_, s, o.data_);
  }

  friend MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
  friend MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
  friend MultilinearMap operator*(const K& s, MultilinearMap a) { return a *= s; }
  friend MultilinearMap operator-(MultilinearMap a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const MultilinearMap& a, const MultilinearMap& b) {
    return a.same_shape(b) && a.data_ == b.data_;
  }

  /// Precomposes one argument slot with a linear map:
  /// result(..., e_i, ...) = f(..., m e_i, ...).
  MultilinearMap twist_input(std::size_t slot, const Matrix<K>& m) const {
    if (slot >= arity_) throw dimension_error("twist_input: slot out of range");
    if (m.rows() != dim_ || m.cols() != dim_) throw dimension_error("twist_input: matrix " + m.shape());
    MultilinearMap out(field_, arity_, dim_, codim_);
    const std::size_t inner = checked_power(dim_, arity_ - 1 - slot) * codim_;
    const std::size_t outer = checked_power(dim_, slot);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t k = 0; k < dim_; ++k) {
        const std::size_t src = (o * dim_ + k) * inner;
        for (std::size_t i = 0; i < dim_; ++i) {
          const K& coeff = m(k, i);
          if (coeff.is_zero()) continue;
          const std::size_t dst = (o * dim_ + i) * inner;
          for (std::size_t t = 0; t < inner; ++t)
            if (!data_[src + t].is_zero()) out.data_[dst + t].add_product(coeff, data_[src + t]);
        }
      }
    return out;
  }

  /// Precomposes every slot listed in `slots` with m.
  MultilinearMap twist_inputs(std::span<const std::size_t> slots, const Matrix<K>& m) const {
    MultilinearMap out = *this;
    for (auto s : slots) out = out.twist_input(s, m);
    return out;
  }

  MultilinearMap twist_all_inputs(const Matrix<K>& m) const {
    MultiIndex slots(arity_);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    return twist_inputs(slots, m);
  }

  /// Postcomposes with a linear map V -> W given as a codim' x codim matrix.
  MultilinearMap twist_output(const Matrix<K>& m) const {
    if (m.cols() != codim_) throw dimension_error("twist_output: matrix " + m.shape());
    MultilinearMap out(field_, arity_, dim_, m.rows());
    for (std::size_t t = 0; t < tuples_; ++t) {
      const auto v = value(t);
      auto w = out.value(t);
      for (std::size_t j = 0; j < codim_; ++j) {
        if (v[j].is_zero()) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) w[i].add_product(m(i, j), v[j]);
      }
    }
    return out;
  }

  /// Value on arbitrary argument vectors, by full multilinear expansion.
  Vector<K> evaluate(const std::vector<Vector<K>>& args) const {
    if (args.size() != arity_) throw dimension_error("evaluate: wrong number of arguments");
    for (const auto& a : args)
      if (a.size() != dim_) throw dimension_error("evaluate: argument of wrong dimension");
    // Contract slot by slot from the front.
    std::vector<K> cur = data_;
    std::size_t block = tuples_ * codim_;
    for (std::size_t s = 0; s < arity_; ++s) {
      block /= dim_;
      std::vector<K> next(block, K::from_int(field_, 0));
      for (std::size_t i = 0; i < dim_; ++i) {
        if (args[s][i].is_zero()) continue;
        axpy<K>(next, args[s][i], std::span<const K>(cur.data() + i * block, block));
      }
      cur = std::move(next);
    }
    return cur;
  }

  /// Returns g with g(y_0, ..., y_{n-1}) = f(y_{order[0]}, ..., y_{order[n-1]}).
  MultilinearMap reorder_inputs(std::span<const std::size_t> order) const {
    if (order.size() != arity_) throw dimension_error("reorder_inputs: wrong permutation length");
    MultilinearMap out(field_, arity_, dim_, codim_);
    MultiIndex y(arity_, 0), x(arity_);
    std::size_t t = 0;
    do {
      for (std::size_t s = 0; s < arity_; ++s) x[s] = y[order[s]];
      const auto src = value(tuple_offset(x));
      std::copy(src.begin(), src.end(), out.value(t).begin());
      ++t;
    } while (next_index(y, dim_));
    return out;
  }

 private:
  void require_same_shape(const MultilinearMap& o) const {
    if (!same_shape(o)) throw dimension_error("multilinear maps of different shape");
  }

  FieldSpec field_;
  std::size_t arity_ = 0;
  std::size_t dim_ = 0;
  std::size_t codim_ = 0;
  std::size_t tuples_ = 0;
  std::vector<K> data_;
};

}  // namespace homlts
