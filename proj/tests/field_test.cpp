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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sgpd/error.hpp"

namespace sgpd {
namespace {

FieldMatrix scalar(const PrimeField& f, Element v) {
  return FieldMatrix(f, 1, 1, {v});
}

TEST(PrimeFieldTest, SmallFieldOps) {
  const PrimeField f(7);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.add(6, 6), 5u);
  EXPECT_EQ(f.sub(2, 5), 4u);
  EXPECT_EQ(f.neg(0), 0u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.from_int(-14), 0u);
  // Brute force: 3 * 5 = 15 = 1 (mod 7).
  ASSERT_EQ(oracle::brute_inverse(3, 7), 5u);
  EXPECT_EQ(f.inv(3), 5u);
}

TEST(PrimeFieldTest, InverseOfZeroThrows) {
  const PrimeField f(7);
  EXPECT_THROW(f.inv(0), DivisionByZero);
}

TEST(PrimeFieldTest, RejectsCompositeModulus) {
  EXPECT_THROW(PrimeField(9), InvalidArgument);
  EXPECT_THROW(PrimeField(1), InvalidArgument);
  EXPECT_THROW(PrimeField(4294967297ULL), InvalidArgument);  // 641 * 6700417
  EXPECT_NO_THROW(PrimeField(2305843009213693951ULL));        // 2^61 - 1
  EXPECT_EQ(PrimeField().modulus(), 2147483647u);
}

TEST(PrimeFieldTest, PrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
      if (n % q == 0) prime = false;
    }
    ASSERT_EQ(is_prime(n), prime) << n;
  }
}

TEST(PrimeFieldTest, InverseIsInvolutionExhaustively) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u, 61u, 97u, 101u}) {
    const PrimeField f(p);
    for (Element a = 1; a < p; ++a) {
      const Element ia = f.inv(a);
      ASSERT_EQ(f.mul(a, ia), 1u);
      ASSERT_EQ(ia, *oracle::brute_inverse(a, p));
      ASSERT_EQ(f.inv(ia), a);
    }
  }
}

TEST(PrimeFieldTest, LargeModulusMulMatchesWideArithmetic) {
  const PrimeField f;
  CounterRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Element a = f.random(rng), b = f.random(rng);
    ASSERT_EQ(f.mul(a, b), oracle::mulmod(a, b, f.modulus()));
  }
}

TEST(FieldMatrixTest, ValidatesEntries) {
  const PrimeField f(7);
  EXPECT_THROW(FieldMatrix(f, 2, 2, {1, 2, 3}), DimensionMismatch);
  EXPECT_THROW(FieldMatrix(f, 1, 2, {1, 7}), InvalidArgument);
}

TEST(FieldMatrixTest, ProductMatchesSchoolbook) {
  const PrimeField f(7);
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldMatrix a = FieldMatrix::random(f, 2, 2, rng);
    const FieldMatrix b = FieldMatrix::random(f, 2, 2, rng);
    ASSERT_EQ(multiply(a, b), oracle::schoolbook(a, b));
  }
  const PrimeField big;
  const FieldMatrix a = FieldMatrix::random(big, 5, 37, rng);
  const FieldMatrix b = FieldMatrix::random(big, 37, 4, rng);
  EXPECT_EQ(multiply(a, b), oracle::schoolbook(a, b));
  EXPECT_EQ(multiply(a, FieldMatrix::identity(big, 37)), a);
  EXPECT_THROW(multiply(a, a), DimensionMismatch);
  EXPECT_THROW(multiply(FieldMatrix(f, 1, 1), FieldMatrix(big, 1, 1)),
               FieldMismatch);
}

TEST(PolyEvalTest, Examples) {
  const PrimeField f7(7);
  const MatrixPolynomial linear{{0, scalar(f7, 3)}, {1, scalar(f7, 2)}};
  // 3 + 2*2 = 7 = 0.
  EXPECT_EQ(poly_eval_matrix(linear, 2), scalar(f7, 0));

  CounterRng rng(5);
  const FieldMatrix m = FieldMatrix::random(f7, 3, 2, rng);
  const MatrixPolynomial constant{{0, m}};
  for (Element z = 0; z < 7; ++z) EXPECT_EQ(poly_eval_matrix(constant, z), m);

  const PrimeField f11(11);
  const MatrixPolynomial quad{{0, scalar(f11, 1)}, {2, scalar(f11, 1)}};
  EXPECT_EQ(poly_eval_matrix(quad, 3), scalar(f11, 10));
}

TEST(PolyEvalTest, MatchesDirectSumEntrywise) {
  const PrimeField f(101);
  CounterRng rng(9);
  MatrixPolynomial poly;
  for (std::size_t e : {0u, 3u, 4u, 9u}) {
    poly.push_back({e, FieldMatrix::random(f, 2, 3, rng)});
  }
  for (Element z = 0; z < 101; z += 7) {
    const FieldMatrix got = poly_eval_matrix(poly, z);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        std::map<std::size_t, std::uint64_t> coeffs;
        for (const auto& term : poly) coeffs[term.exponent] = term.value(r, c);
        ASSERT_EQ(got(r, c), oracle::eval_scalar(coeffs, z, 101));
      }
    }
  }
}

TEST(PolyEvalTest, ShapeMismatchThrows) {
  const PrimeField f(7);
  const MatrixPolynomial bad{{0, FieldMatrix(f, 1, 1)}, {1, FieldMatrix(f, 2, 1)}};
  EXPECT_THROW(poly_eval_matrix(bad, 1), DimensionMismatch);
  EXPECT_THROW(poly_eval_matrix(MatrixPolynomial{}, 1), InvalidArgument);
}

TEST(InterpolateTest, LinearOverF7) {
  const PrimeField f(7);
  const std::vector<EvalSample> pts{{1, scalar(f, 5)}, {2, scalar(f, 0)}};
  // Oracle: hand-solvable 2x2 Vandermonde system.
  const auto expect = oracle::vandermonde_solve({1, 2}, {5, 0}, 7);
  ASSERT_EQ(expect, (std::vector<std::uint64_t>{3, 2}));
  const MatrixPolynomial got = interpolate(pts, 1);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].exponent, 0u);
  EXPECT_EQ(got[0].value, scalar(f, 3));
  EXPECT_EQ(got[1].value, scalar(f, 2));
}

TEST(InterpolateTest, DegreeZeroReturnsTheSample) {
  const PrimeField f(7);
  CounterRng rng(1);
  const FieldMatrix m = FieldMatrix::random(f, 2, 2, rng);
  const std::vector<EvalSample> pts{{4, m}};
  const MatrixPolynomial got = interpolate(pts, 0);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].value, m);
}

TEST(InterpolateTest, QuadraticOverF5) {
  const PrimeField f(5);
  std::vector<EvalSample> pts;
  std::vector<std::uint64_t> xs, ys;
  for (Element z : {1u, 2u, 4u}) {
    const std::uint64_t y = oracle::eval_scalar({{0, 1}, {1, 1}, {2, 1}}, z, 5);
    pts.push_back({z, scalar(f, y)});
    xs.push_back(z);
    ys.push_back(y);
  }
  ASSERT_EQ(oracle::vandermonde_solve(xs, ys, 5),
            (std::vector<std::uint64_t>{1, 1, 1}));
  const MatrixPolynomial got = interpolate(pts, 2);
  for (const auto& term : got) EXPECT_EQ(term.value, scalar(f, 1));
}

TEST(InterpolateTest, ErrorPaths) {
  const PrimeField f(7);
  const std::vector<EvalSample> one{{1, scalar(f, 1)}};
  EXPECT_THROW(interpolate(one, 1), InsufficientShares);
  const std::vector<EvalSample> dup{{1, scalar(f, 1)}, {1, scalar(f, 2)}};
  EXPECT_THROW(interpolate(dup, 1), DuplicatePoint);
  const std::vector<EvalSample> shapes{{1, scalar(f, 1)},
                                       {2, FieldMatrix(f, 2, 1)}};
  EXPECT_THROW(interpolate(shapes, 1), DimensionMismatch);
}

// Property: evaluate a random matrix polynomial at deg+1 points and recover
// it exactly; also entrywise linearity of interpolation.
TEST(InterpolateTest, RoundTripAndLinearityProperty) {
  for (std::uint64_t p : {101u, 257u, 2147483647u}) {
    const PrimeField f(p);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      CounterRng rng(seed, p);
      const std::size_t deg = rng.uniform_below(std::min<std::uint64_t>(p - 2, 30));
      MatrixPolynomial poly_m, poly_n;
      for (std::size_t e = 0; e <= deg; ++e) {
        poly_m.push_back({e, FieldMatrix::random(f, 2, 3, rng)});
        poly_n.push_back({e, FieldMatrix::random(f, 2, 3, rng)});
      }
      const EvalPointSet pts = sample_distinct_points(f, deg + 1, seed);
      std::vector<EvalSample> sm, sn, ssum;
      for (Element z : pts.points()) {
        const FieldMatrix vm = poly_eval_matrix(poly_m, z);
        const FieldMatrix vn = poly_eval_matrix(poly_n, z);
        sm.push_back({z, vm});
        sn.push_back({z, vn});
        ssum.push_back({z, vm + vn});
      }
      const auto rm = interpolate(sm, deg);
      const auto rn = interpolate(sn, deg);
      const auto rs = interpolate(ssum, deg);
      for (std::size_t e = 0; e <= deg; ++e) {
        ASSERT_EQ(rm[e].value, poly_m[e].value);
        ASSERT_EQ(rs[e].value, rm[e].value + rn[e].value);
      }
    }
  }
}

TEST(InterpolateTest, AgreesWithVandermondeOracle) {
  const PrimeField f(257);
  CounterRng rng(21);
  const EvalPointSet pts = sample_distinct_points(f, 12, 4);
  std::vector<EvalSample> samples;
  std::vector<std::uint64_t> xs, ys;
  for (Element z : pts.points()) {
    const Element y = f.random(rng);
    samples.push_back({z, scalar(f, y)});
    xs.push_back(z);
    ys.push_back(y);
  }
  const auto expect = oracle::vandermonde_solve(xs, ys, 257);
  const auto got = interpolate(samples, 11);
  for (std::size_t e = 0; e < 12; ++e) EXPECT_EQ(got[e].value(0, 0), expect[e]);
}

TEST(SamplePointsTest, AllNonzeroOfF7) {
  const PrimeField f(7);
  const EvalPointSet pts = sample_distinct_points(f, 6, 42);
  std::set<Element> got(pts.points().begin(), pts.points().end());
  EXPECT_EQ(got, (std::set<Element>{1, 2, 3, 4, 5, 6}));
}

TEST(SamplePointsTest, DeterministicAndSeedSensitive) {
  const PrimeField f(101);
  const EvalPointSet a = sample_distinct_points(f, 50, 1);
  const EvalPointSet b = sample_distinct_points(f, 50, 1);
  const EvalPointSet c = sample_distinct_points(f, 50, 2);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_NE(a.points(), c.points());
  for (const auto* s : {&a, &c}) {
    std::set<Element> uniq(s->points().begin(), s->points().end());
    EXPECT_EQ(uniq.size(), 50u);
    EXPECT_EQ(uniq.count(0), 0u);
  }
  const PrimeField big;
  const EvalPointSet sparse = sample_distinct_points(big, 300, 9);
  EXPECT_EQ(std::set<Element>(sparse.points().begin(), sparse.points().end()).size(),
            300u);
}

TEST(SamplePointsTest, TooManyPointsThrows) {
  EXPECT_THROW(sample_distinct_points(PrimeField(7), 7, 0), InvalidArgument);
}

TEST(EvalPointSetTest, RejectsZeroAndRepeats) {
  const PrimeField f(7);
  EXPECT_THROW(EvalPointSet(f, {1, 0}), InvalidArgument);
  EXPECT_THROW(EvalPointSet(f, {2, 2}), InvalidArgument);
  EXPECT_THROW(EvalPointSet(f, {9}), InvalidArgument);
  const EvalPointSet ok(f, {3, 5});
  EXPECT_EQ(ok.for_worker(2), 5u);
  EXPECT_THROW(ok.for_worker(0), InvalidArgument);
}

}  // namespace
}  // namespace sgpd
