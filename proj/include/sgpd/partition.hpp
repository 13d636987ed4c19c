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
#include <string>
#include <utility>
#include <vector>

#include "sgpd/field.hpp"

namespace sgpd {

/// Block split counts: A is cut into t x s blocks and B into s x d blocks,
/// so each worker sees 1/m of A and 1/n of B with m = ts and n = sd.
struct BlockSplit {
  std::size_t t = 1;
  std::size_t s = 1;
  std::size_t d = 1;

  std::size_t m() const noexcept { return t * s; }
  std::size_t n() const noexcept { return s * d; }

  friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

/// Matrix dimensions (A is T x S, B is S x D) together with a block split.
/// Divisibility t | T, s | S, d | D is enforced at construction.
class PartitionSpec {
 public:
  /// Throws PartitionError on zero sizes or non-divisible dimensions.
  PartitionSpec(std::size_t T, std::size_t S, std::size_t D, BlockSplit split);

  std::size_t T() const noexcept { return T_; }
  std::size_t S() const noexcept { return S_; }
  std::size_t D() const noexcept { return D_; }
  const BlockSplit& split() const noexcept { return split_; }
  std::size_t t() const noexcept { return split_.t; }
  std::size_t s() const noexcept { return split_.s; }
  std::size_t d() const noexcept { return split_.d; }
  std::size_t m() const noexcept { return split_.m(); }
  std::size_t n() const noexcept { return split_.n(); }

  // Block shapes: A blocks are a_rows x inner, B blocks inner x b_cols.
  std::size_t a_block_rows() const noexcept { return T_ / split_.t; }
  std::size_t inner_block() const noexcept { return S_ / split_.s; }
  std::size_t b_block_cols() const noexcept { return D_ / split_.d; }

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  std::size_t T_;
  std::size_t S_;
  std::size_t D_;
  BlockSplit split_;
};

/// Row-major grid of equally sized blocks.
class BlockGrid {
 public:
  BlockGrid() = default;
  BlockGrid(std::size_t rows, std::size_t cols, std::vector<FieldMatrix> blocks);
  /// Grid of zero blocks of the given shape.
  static BlockGrid zeros(const PrimeField& field, std::size_t rows,
                         std::size_t cols, std::size_t block_rows,
                         std::size_t block_cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return blocks_.empty(); }
  const FieldMatrix& at(std::size_t r, std::size_t c) const;
  FieldMatrix& at(std::size_t r, std::size_t c);
  const std::vector<FieldMatrix>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldMatrix> blocks_;
};

/// Cuts M into row_parts x col_parts equal blocks. Throws PartitionError when
/// the dimensions are not divisible.
BlockGrid split_blocks(const FieldMatrix& m, std::size_t row_parts,
                       std::size_t col_parts);
/// Inverse of split_blocks.
FieldMatrix join_blocks(const BlockGrid& grid);
/// Explicit zero padding up to the next multiples; never applied implicitly.
FieldMatrix pad_to_multiple(const FieldMatrix& m, std::size_t row_multiple,
                            std::size_t col_multiple);

enum class CodeFamily { kGpd, kSgpd, kPsgpd };
enum class Regime { kSLessT, kSGeqT };

std::string to_string(CodeFamily family);
std::string to_string(Regime regime);

/// Sizes of the secure augmentation for colluding-set size p_c.
///
/// s < t appends delta = ceil(p_c / s) random block rows to A and block
/// columns to B; s >= t appends delta = ceil(p_c / min(t, d)) random block
/// columns to A and block rows to B. Random blocks beyond the p_c that are
/// needed are all-zero. `zero_block_count` is the shared count s*delta - p_c
/// (resp. min(t,d)*delta - p_c); the per-key counts below are what the
/// encoder actually zeroes so each key carries exactly p_c random blocks.
struct AugmentationPlan {
  Regime regime = Regime::kSLessT;
  std::size_t p_c = 0;
  std::size_t delta = 0;
  std::size_t t_star = 1;
  std::size_t s_star = 1;
  std::size_t d_star = 1;
  std::size_t zero_block_count = 0;
  std::size_t key_a_zero_blocks = 0;
  std::size_t key_b_zero_blocks = 0;
  // Shapes of the key block grids R (next to A) and R' (next to B).
  std::size_t key_a_rows = 0;
  std::size_t key_a_cols = 0;
  std::size_t key_b_rows = 0;
  std::size_t key_b_cols = 0;

  bool strict_ceiling() const noexcept { return zero_block_count > 0; }
  friend bool operator==(const AugmentationPlan&,
                         const AugmentationPlan&) = default;
};

AugmentationPlan plan_augmentation(const BlockSplit& split, std::size_t p_c);

enum class TermSource { kData, kRandom, kZero };

/// One block of a* or b*. (row, col) index the data block grid for kData
/// and the key grid (R or R') otherwise.
struct MapTerm {
  std::size_t row;
  std::size_t col;
  std::size_t exponent;
  TermSource source;

  friend bool operator==(const MapTerm&, const MapTerm&) = default;
};

struct ExponentMap {
  std::vector<MapTerm> terms;

  /// Largest exponent carried by a non-Zero term.
  std::size_t max_exponent() const;
  friend bool operator==(const ExponentMap&, const ExponentMap&) = default;
};

/// Exponent of C(i, l) in the product polynomial, 0-based (i, l).
class ReadoutMap {
 public:
  ReadoutMap() = default;
  ReadoutMap(std::size_t t, std::size_t d, std::vector<std::size_t> positions);

  std::size_t t() const noexcept { return t_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t at(std::size_t i, std::size_t l) const {
    return positions_.at(i * d_ + l);
  }
  const std::vector<std::size_t>& positions() const noexcept {
    return positions_;
  }
  friend bool operator==(const ReadoutMap&, const ReadoutMap&) = default;

 private:
  std::size_t t_ = 0;
  std::size_t d_ = 0;
  std::vector<std::size_t> positions_;
};

struct CodeMaps {
  ExponentMap a;
  ExponentMap b;
  ReadoutMap readout;
  /// Disagreements between the symbolic readout and the closed form.
  std::vector<std::string> diagnostics;
};

/// Exponent maps for the family. kGpd needs p_c = 0, kPsgpd needs p_c = 1
/// (its b-map keeps only the data terms: the library is public). With
/// p_c = 0 every family reduces to the plain GPD maps.
///
/// The readout map comes from the symbolic product of the two maps; the
/// closed-form position is only a cross-check and any mismatch is recorded
/// in `diagnostics`.
CodeMaps build_exponent_maps(const AugmentationPlan& plan,
                             const BlockSplit& split,
                             CodeFamily family = CodeFamily::kSgpd);

/// Closed-form readout exponent of C(i, l), 0-based indices.
std::size_t closed_form_readout(const AugmentationPlan& plan,
                                const BlockSplit& split, CodeFamily family,
                                std::size_t i, std::size_t l);

/// Degree of F_a* F_b*, counting only non-Zero terms.
std::size_t max_degree(const ExponentMap& a, const ExponentMap& b);

/// Pair of term indices (into a.terms and b.terms) landing on one exponent.
struct Contribution {
  std::size_t a_term;
  std::size_t b_term;
};

/// contributions[e] lists every non-Zero pair whose exponents sum to e.
std::vector<std::vector<Contribution>> symbolic_product(const ExponentMap& a,
                                                        const ExponentMap& b);

/// Interference-free position of every C(i, l): the exponent whose
/// contributions are exactly A(i, j) B(j, l) for j in [0, s). Throws
/// InvalidArgument when some block has no such position.
ReadoutMap derive_readout(const ExponentMap& a, const ExponentMap& b,
                          const BlockSplit& split);

/// Key blocks R and R'; blocks not referenced as kRandom stay zero.
struct KeyMaterial {
  BlockGrid r;
  BlockGrid r_prime;
};

/// Draws every kRandom block of the maps i.i.d. uniform (a-map terms first).
KeyMaterial draw_key_material(const PrimeField& field,
                              const AugmentationPlan& plan,
                              const CodeMaps& maps, const PartitionSpec& spec,
                              CounterRng& rng);

/// All-zero key material with the plan's grid shapes.
KeyMaterial zero_key_material(const PrimeField& field,
                              const AugmentationPlan& plan,
                              const PartitionSpec& spec);

std::pair<AugmentationPlan, KeyMaterial> build_augmentation(
    const PrimeField& field, const PartitionSpec& spec, std::size_t p_c,
    std::uint64_t seed);

}  // namespace sgpd
