// Copyright 2026 The sgpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sgpd/rng.hpp"

namespace sgpd {

/// Field elements are canonical representatives in [0, p).
using Element = std::uint64_t;

/// Exact arithmetic modulo a prime p < 2^62. The modulus is checked with a
/// deterministic Miller-Rabin test at construction.
class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultModulus = 2147483647ULL;  // 2^31 - 1
  static constexpr std::uint64_t kMaxModulus = (1ULL << 62);

  explicit PrimeField(std::uint64_t modulus = kDefaultModulus);

  std::uint64_t modulus() const noexcept { return p_; }

  Element reduce(std::uint64_t x) const noexcept { return x % p_; }
  Element from_int(std::int64_t x) const noexcept;

  Element add(Element a, Element b) const noexcept {
    const Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(
        (static_cast<unsigned __int128>(a) * b) % p_);
  }
  /// a * b + c
  Element mul_add(Element a, Element b, Element c) const noexcept {
    return static_cast<Element>(
        (static_cast<unsigned __int128>(a) * b + c) % p_);
  }
  Element pow(Element base, std::uint64_t exponent) const noexcept;
  /// Throws DivisionByZero for a == 0.
  Element inv(Element a) const;

  bool contains(Element a) const noexcept { return a < p_; }

  Element random(CounterRng& rng) const noexcept {
    return rng.uniform_below(p_);
  }
  Element random_nonzero(CounterRng& rng) const noexcept {
    return 1 + rng.uniform_below(p_ - 1);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Deterministic primality test valid for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Dense row-major matrix over a prime field.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  /// Validates entries.size() == rows * cols and that every entry is < p.
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
              std::vector<Element> entries);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  static FieldMatrix random(PrimeField field, std::size_t rows,
                            std::size_t cols, CounterRng& rng);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }

  Element operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }
  Element& operator()(std::size_t r, std::size_t c) noexcept {
    return entries_[r * cols_ + c];
  }

  std::span<const Element> entries() const noexcept { return entries_; }
  std::span<Element> entries() noexcept { return entries_; }

  bool is_zero() const noexcept;

  FieldMatrix& operator+=(const FieldMatrix& other);
  FieldMatrix& operator-=(const FieldMatrix& other);
  /// this += scale * other
  FieldMatrix& add_scaled(const FieldMatrix& other, Element scale);

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

FieldMatrix operator+(FieldMatrix lhs, const FieldMatrix& rhs);
FieldMatrix operator-(FieldMatrix lhs, const FieldMatrix& rhs);
/// Exact field product; throws DimensionMismatch / FieldMismatch.
FieldMatrix multiply(const FieldMatrix& lhs, const FieldMatrix& rhs);
/// Writes rows [row_begin, row_end) of lhs * rhs into `out`, which must
/// already have the product's shape.
void multiply_rows(const FieldMatrix& lhs, const FieldMatrix& rhs,
                   FieldMatrix& out, std::size_t row_begin,
                   std::size_t row_end);

/// Distinct nonzero evaluation points; element i belongs to worker i + 1.
class EvalPointSet {
 public:
  EvalPointSet() = default;
  /// Throws InvalidArgument when a point is zero, out of range or repeated.
  EvalPointSet(const PrimeField& field, std::vector<Element> points);

  std::size_t size() const noexcept { return points_.size(); }
  Element operator[](std::size_t i) const noexcept { return points_[i]; }
  /// Point of a 1-based worker id.
  Element for_worker(std::size_t worker_id) const;
  const std::vector<Element>& points() const noexcept { return points_; }

 private:
  std::vector<Element> points_;
};

/// `count` distinct nonzero elements, deterministic under `seed`.
/// Throws InvalidArgument when count >= p.
EvalPointSet sample_distinct_points(const PrimeField& field, std::size_t count,
                                    std::uint64_t seed);

struct MatrixTerm {
  std::size_t exponent;
  FieldMatrix value;
};

using MatrixPolynomial = std::vector<MatrixTerm>;

/// Sum of value * z^exponent over all terms. Throws DimensionMismatch when
/// coefficient shapes differ and InvalidArgument for an empty list.
FieldMatrix poly_eval_matrix(std::span<const MatrixTerm> coeffs, Element z);

struct EvalSample {
  Element z;
  FieldMatrix value;
};

/// Coefficients 0..degree_bound of the unique matrix polynomial of degree at
/// most degree_bound through the first degree_bound + 1 samples (entrywise
/// Lagrange interpolation).
///
/// Throws InsufficientShares with fewer than degree_bound + 1 samples and
/// DuplicatePoint when two samples share an abscissa.
MatrixPolynomial interpolate(std::span<const EvalSample> samples,
                             std::size_t degree_bound);

/// Scalar Lagrange basis: row i holds the coefficients of the polynomial
/// that is 1 at xs[i] and 0 at every other abscissa.
std::vector<std::vector<Element>> lagrange_basis(const PrimeField& field,
                                                 std::span<const Element> xs);

}  // namespace sgpd
