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


#include "sgpd/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "sgpd/error.hpp"

namespace sgpd {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

void require_same_shape(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("matrices live in different fields");
  }
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus >= kMaxModulus) {
    throw InvalidArgument("modulus must be below 2^62");
  }
  if (!is_prime(modulus)) {
    throw InvalidArgument("modulus " + std::to_string(modulus) +
                          " is not prime");
  }
}

Element PrimeField::from_int(std::int64_t x) const noexcept {
  if (x >= 0) return static_cast<Element>(x) % p_;
  const Element r = static_cast<Element>(-(x + 1)) % p_;  // avoids INT64_MIN
  return sub(p_ - 1, r);
}

Element PrimeField::pow(Element base, std::uint64_t exponent) const noexcept {
  return powmod64(base, exponent, p_);
}

Element PrimeField::inv(Element a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of zero");
  return pow(a, p_ - 2);
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                         std::vector<Element> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionMismatch("expected " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  for (Element e : entries_) {
    if (!field_.contains(e)) {
      throw InvalidArgument("entry " + std::to_string(e) +
                            " is not reduced modulo " +
                            std::to_string(field_.modulus()));
    }
  }
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::random(PrimeField field, std::size_t rows,
                                std::size_t cols, CounterRng& rng) {
  FieldMatrix m(field, rows, cols);
  for (Element& e : m.entries_) e = field.random(rng);
  return m;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Element e) { return e == 0; });
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.add(entries_[i], other.entries_[i]);
  }
  return *this;
}

FieldMatrix& FieldMatrix::operator-=(const FieldMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.sub(entries_[i], other.entries_[i]);
  }
  return *this;
}

FieldMatrix& FieldMatrix::add_scaled(const FieldMatrix& other, Element scale) {
  require_same_shape(*this, other);
  if (scale == 0) return *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.mul_add(other.entries_[i], scale, entries_[i]);
  }
  return *this;
}

FieldMatrix operator+(FieldMatrix lhs, const FieldMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

FieldMatrix operator-(FieldMatrix lhs, const FieldMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

namespace {

void check_product_shapes(const FieldMatrix& lhs, const FieldMatrix& rhs) {
  if (!(lhs.field() == rhs.field())) {
    throw FieldMismatch("matrices live in different fields");
  }
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("cannot multiply " + std::to_string(lhs.rows()) +
                            "x" + std::to_string(lhs.cols()) + " by " +
                            std::to_string(rhs.rows()) + "x" +
                            std::to_string(rhs.cols()));
  }
}

}  // namespace

void multiply_rows(const FieldMatrix& lhs, const FieldMatrix& rhs,
                   FieldMatrix& out, std::size_t row_begin,
                   std::size_t row_end) {
  check_product_shapes(lhs, rhs);
  if (out.rows() != lhs.rows() || out.cols() != rhs.cols() ||
      !(out.field() == lhs.field()) || row_end > lhs.rows()) {
    throw DimensionMismatch("output does not have the product's shape");
  }
  const std::uint64_t p = lhs.field().modulus();
  std::vector<u128> acc(rhs.cols());
  // Each product is below 2^124, so reduce the accumulator every 8 terms.
  for (std::size_t i = row_begin; i < row_end; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const u128 a = lhs(i, k);
      if (a != 0) {
        for (std::size_t j = 0; j < rhs.cols(); ++j) acc[j] += a * rhs(k, j);
      }
      if ((k & 7) == 7) {
        for (auto& v : acc) v %= p;
      }
    }
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      out(i, j) = static_cast<Element>(acc[j] % p);
    }
  }
}

FieldMatrix multiply(const FieldMatrix& lhs, const FieldMatrix& rhs) {
  check_product_shapes(lhs, rhs);
  FieldMatrix out(lhs.field(), lhs.rows(), rhs.cols());
  multiply_rows(lhs, rhs, out, 0, lhs.rows());
  return out;
}

EvalPointSet::EvalPointSet(const PrimeField& field, std::vector<Element> points)
    : points_(std::move(points)) {
  std::unordered_set<Element> seen;
  for (Element z : points_) {
    if (z == 0 || !field.contains(z)) {
      throw InvalidArgument("evaluation point " + std::to_string(z) +
                            " must be a nonzero field element");
    }
    if (!seen.insert(z).second) {
      throw InvalidArgument("evaluation point " + std::to_string(z) +
                            " is repeated");
    }
  }
}

Element EvalPointSet::for_worker(std::size_t worker_id) const {
  if (worker_id == 0 || worker_id > points_.size()) {
    throw InvalidArgument("worker id " + std::to_string(worker_id) +
                          " outside [1, " + std::to_string(points_.size()) +
                          "]");
  }
  return points_[worker_id - 1];
}

EvalPointSet sample_distinct_points(const PrimeField& field, std::size_t count,
                                    std::uint64_t seed) {
  const std::uint64_t p = field.modulus();
  if (count >= p) {
    throw InvalidArgument("cannot draw " + std::to_string(count) +
                          " distinct nonzero points from a field of size " +
                          std::to_string(p));
  }
  CounterRng rng(seed, 0x7a);
  std::vector<Element> out;
  out.reserve(count);
  if (2 * count >= p - 1) {
    // Dense request: partial Fisher-Yates over all nonzero elements.
    std::vector<Element> pool(p - 1);
    std::iota(pool.begin(), pool.end(), Element{1});
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.uniform_below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
  } else {
    std::unordered_set<Element> seen;
    while (out.size() < count) {
      const Element z = field.random_nonzero(rng);
      if (seen.insert(z).second) out.push_back(z);
    }
  }
  return EvalPointSet(field, std::move(out));
}

FieldMatrix poly_eval_matrix(std::span<const MatrixTerm> coeffs, Element z) {
  if (coeffs.empty()) {
    throw InvalidArgument("polynomial has no coefficients");
  }
  const FieldMatrix& first = coeffs.front().value;
  const PrimeField& f = first.field();
  FieldMatrix out(f, first.rows(), first.cols());
  for (const MatrixTerm& term : coeffs) {
    out.add_scaled(term.value, f.pow(z, term.exponent));
  }
  return out;
}

std::vector<std::vector<Element>> lagrange_basis(const PrimeField& f,
                                                 std::span<const Element> xs) {
  const std::size_t n = xs.size();
  // master(z) = prod (z - x_j), coefficients low to high.
  std::vector<Element> master{1};
  for (Element x : xs) {
    std::vector<Element> next(master.size() + 1, 0);
    for (std::size_t k = 0; k < master.size(); ++k) {
      next[k + 1] = f.add(next[k + 1], master[k]);
      next[k] = f.sub(next[k], f.mul(master[k], x));
    }
    master = std::move(next);
  }
  std::vector<std::vector<Element>> basis(n, std::vector<Element>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Element denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom = f.mul(denom, f.sub(xs[i], xs[j]));
    }
    const Element weight = f.inv(denom);
    // Synthetic division of master by (z - x_i).
    std::vector<Element>& q = basis[i];
    q[n - 1] = master[n];
    for (std::size_t k = n - 1; k > 0; --k) {
      q[k - 1] = f.mul_add(xs[i], q[k], master[k]);
    }
    for (Element& c : q) c = f.mul(c, weight);
  }
  return basis;
}

MatrixPolynomial interpolate(std::span<const EvalSample> samples,
                             std::size_t degree_bound) {
  const std::size_t n = degree_bound + 1;
  if (samples.size() < n) {
    throw InsufficientShares("interpolating degree " +
                             std::to_string(degree_bound) + " needs " +
                             std::to_string(n) + " samples, got " +
                             std::to_string(samples.size()));
  }
  const FieldMatrix& first = samples.front().value;
  const PrimeField& f = first.field();
  std::unordered_set<Element> seen;
  for (const EvalSample& s : samples) {
    if (!seen.insert(s.z).second) {
      throw DuplicatePoint("abscissa " + std::to_string(s.z) +
                           " appears more than once");
    }
    if (!(s.value.field() == f)) {
      throw FieldMismatch("samples live in different fields");
    }
    if (s.value.rows() != first.rows() || s.value.cols() != first.cols()) {
      throw DimensionMismatch("sample values differ in shape");
    }
  }

  std::vector<Element> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = samples[i].z;
  const auto basis = lagrange_basis(f, xs);

  MatrixPolynomial out;
  out.reserve(n);
  for (std::size_t e = 0; e < n; ++e) {
    out.push_back({e, FieldMatrix(f, first.rows(), first.cols())});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < n; ++e) {
      out[e].value.add_scaled(samples[i].value, basis[i][e]);
    }
  }
  return out;
}

}  // namespace sgpd
