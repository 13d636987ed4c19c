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


#include "sgpd/partition.hpp"

#include <algorithm>
#include <map>

#include "sgpd/error.hpp"

namespace sgpd {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

PartitionSpec::PartitionSpec(std::size_t T, std::size_t S, std::size_t D,
                             BlockSplit split)
    : T_(T), S_(S), D_(D), split_(split) {
  if (T == 0 || S == 0 || D == 0) {
    throw PartitionError("matrix dimensions must be positive");
  }
  if (split.t == 0 || split.s == 0 || split.d == 0) {
    throw PartitionError("split counts must be positive");
  }
  if (T % split.t != 0 || S % split.s != 0 || D % split.d != 0) {
    throw PartitionError("split (t,s,d)=(" + std::to_string(split.t) + "," +
                         std::to_string(split.s) + "," +
                         std::to_string(split.d) +
                         ") does not divide dims " + std::to_string(T) + "x" +
                         std::to_string(S) + "x" + std::to_string(D));
  }
}

BlockGrid::BlockGrid(std::size_t rows, std::size_t cols,
                     std::vector<FieldMatrix> blocks)
    : rows_(rows), cols_(cols), blocks_(std::move(blocks)) {
  if (blocks_.size() != rows * cols) {
    throw DimensionMismatch("block grid " + dims(rows, cols) + " holds " +
                            std::to_string(blocks_.size()) + " blocks");
  }
}

BlockGrid BlockGrid::zeros(const PrimeField& field, std::size_t rows,
                           std::size_t cols, std::size_t block_rows,
                           std::size_t block_cols) {
  std::vector<FieldMatrix> blocks(rows * cols,
                                  FieldMatrix(field, block_rows, block_cols));
  return BlockGrid(rows, cols, std::move(blocks));
}

const FieldMatrix& BlockGrid::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw InvalidArgument("block (" + std::to_string(r) + "," +
                          std::to_string(c) + ") outside grid " +
                          dims(rows_, cols_));
  }
  return blocks_[r * cols_ + c];
}

FieldMatrix& BlockGrid::at(std::size_t r, std::size_t c) {
  return const_cast<FieldMatrix&>(std::as_const(*this).at(r, c));
}

BlockGrid split_blocks(const FieldMatrix& m, std::size_t row_parts,
                       std::size_t col_parts) {
  if (row_parts == 0 || col_parts == 0 || m.rows() % row_parts != 0 ||
      m.cols() % col_parts != 0) {
    throw PartitionError("cannot split " + dims(m.rows(), m.cols()) +
                         " into " + dims(row_parts, col_parts) + " blocks");
  }
  const std::size_t br = m.rows() / row_parts;
  const std::size_t bc = m.cols() / col_parts;
  std::vector<FieldMatrix> blocks;
  blocks.reserve(row_parts * col_parts);
  for (std::size_t i = 0; i < row_parts; ++i) {
    for (std::size_t j = 0; j < col_parts; ++j) {
      FieldMatrix b(m.field(), br, bc);
      for (std::size_t r = 0; r < br; ++r) {
        for (std::size_t c = 0; c < bc; ++c) b(r, c) = m(i * br + r, j * bc + c);
      }
      blocks.push_back(std::move(b));
    }
  }
  return BlockGrid(row_parts, col_parts, std::move(blocks));
}

FieldMatrix join_blocks(const BlockGrid& grid) {
  if (grid.empty()) throw InvalidArgument("cannot join an empty block grid");
  const FieldMatrix& first = grid.at(0, 0);
  const std::size_t br = first.rows();
  const std::size_t bc = first.cols();
  FieldMatrix out(first.field(), br * grid.rows(), bc * grid.cols());
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      const FieldMatrix& b = grid.at(i, j);
      if (b.rows() != br || b.cols() != bc) {
        throw DimensionMismatch("blocks of a grid must share one shape");
      }
      for (std::size_t r = 0; r < br; ++r) {
        for (std::size_t c = 0; c < bc; ++c) out(i * br + r, j * bc + c) = b(r, c);
      }
    }
  }
  return out;
}

FieldMatrix pad_to_multiple(const FieldMatrix& m, std::size_t row_multiple,
                            std::size_t col_multiple) {
  if (row_multiple == 0 || col_multiple == 0) {
    throw InvalidArgument("padding multiples must be positive");
  }
  const std::size_t rows = ceil_div(m.rows(), row_multiple) * row_multiple;
  const std::size_t cols = ceil_div(m.cols(), col_multiple) * col_multiple;
  FieldMatrix out(m.field(), rows, cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

std::string to_string(CodeFamily family) {
  switch (family) {
    case CodeFamily::kGpd: return "GPD";
    case CodeFamily::kSgpd: return "SGPD";
    case CodeFamily::kPsgpd: return "PSGPD";
  }
  return "?";
}

std::string to_string(Regime regime) {
  return regime == Regime::kSLessT ? "s<t" : "s>=t";
}

AugmentationPlan plan_augmentation(const BlockSplit& split, std::size_t p_c) {
  const auto [t, s, d] = split;
  if (t == 0 || s == 0 || d == 0) {
    throw PartitionError("split counts must be positive");
  }
  AugmentationPlan plan;
  plan.regime = s < t ? Regime::kSLessT : Regime::kSGeqT;
  plan.p_c = p_c;
  plan.t_star = t;
  plan.s_star = s;
  plan.d_star = d;
  if (p_c == 0) return plan;

  if (plan.regime == Regime::kSLessT) {
    plan.delta = ceil_div(p_c, s);
    plan.t_star = t + plan.delta;
    plan.d_star = d + plan.delta;
    plan.zero_block_count = s * plan.delta - p_c;
    plan.key_a_zero_blocks = plan.zero_block_count;
    plan.key_b_zero_blocks = plan.zero_block_count;
    plan.key_a_rows = plan.delta;  // extra block rows of A*
    plan.key_a_cols = s;
    plan.key_b_rows = s;           // extra block columns of B*
    plan.key_b_cols = plan.delta;
  } else {
    const std::size_t narrow = std::min(t, d);
    plan.delta = ceil_div(p_c, narrow);
    plan.s_star = s + plan.delta;
    plan.zero_block_count = narrow * plan.delta - p_c;
    // R has t*delta blocks and R' has delta*d; each keeps exactly p_c.
    plan.key_a_zero_blocks = t * plan.delta - p_c;
    plan.key_b_zero_blocks = d * plan.delta - p_c;
    plan.key_a_rows = t;           // extra block columns of A*
    plan.key_a_cols = plan.delta;
    plan.key_b_rows = plan.delta;  // extra block rows of B* (on top)
    plan.key_b_cols = d;
  }
  return plan;
}

std::size_t ExponentMap::max_exponent() const {
  std::size_t best = 0;
  bool any = false;
  for (const MapTerm& term : terms) {
    if (term.source == TermSource::kZero) continue;
    best = any ? std::max(best, term.exponent) : term.exponent;
    any = true;
  }
  if (!any) throw InvalidArgument("exponent map has no nonzero term");
  return best;
}

ReadoutMap::ReadoutMap(std::size_t t, std::size_t d,
                       std::vector<std::size_t> positions)
    : t_(t), d_(d), positions_(std::move(positions)) {
  if (positions_.size() != t * d) {
    throw DimensionMismatch("readout map needs t*d positions");
  }
}

namespace {

// Plain GPD maps: A(i,j) at s*i + j, B(k,l) at (s-1-k) + t*s*l.
void gpd_maps(const BlockSplit& split, ExponentMap& a, ExponentMap& b) {
  const auto [t, s, d] = split;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      a.terms.push_back({i, j, s * i + j, TermSource::kData});
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      b.terms.push_back({k, l, (s - 1 - k) + t * s * l, TermSource::kData});
    }
  }
}

// s < t: a* = [a, rows of R], b* = [b with zero gaps, columns of R'].
// Zero blocks: right-to-left along the last row of R and top-to-bottom along
// the last column of R'.
void s_less_t_maps(const AugmentationPlan& plan, const BlockSplit& split,
                   ExponentMap& a, ExponentMap& b) {
  const auto [t, s, d] = split;
  const std::size_t ts = plan.t_star;
  const std::size_t delta = plan.delta;
  const std::size_t zeros = plan.key_a_zero_blocks;

  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      a.terms.push_back({i, j, s * i + j, TermSource::kData});
    }
  }
  for (std::size_t r = 0; r < delta; ++r) {
    for (std::size_t j = 0; j < s; ++j) {
      const bool zero = r + 1 == delta && j + zeros >= s;
      a.terms.push_back({r, j, s * (t + r) + j,
                         zero ? TermSource::kZero : TermSource::kRandom});
    }
  }

  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      b.terms.push_back({k, l, (s - 1 - k) + ts * s * l, TermSource::kData});
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t c = 0; c < delta; ++c) {
      const bool zero = c + 1 == delta && k < plan.key_b_zero_blocks;
      b.terms.push_back({k, c, ts * s * d + s * (c + 1) - (k + 1),
                         zero ? TermSource::kZero : TermSource::kRandom});
    }
  }
}

// s >= t: A* = [A R] read column-wise, B* = [R'; B]. Zero blocks:
// bottom-to-top right-to-left in R, right-to-left top-to-bottom in R'.
void s_geq_t_maps(const AugmentationPlan& plan, const BlockSplit& split,
                  ExponentMap& a, ExponentMap& b) {
  const auto [t, s, d] = split;
  const std::size_t ss = plan.s_star;
  const std::size_t delta = plan.delta;

  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      a.terms.push_back({i, j, i + t * j, TermSource::kData});
    }
  }
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t c = 0; c < delta; ++c) {
      // Rank in bottom-to-top, right-to-left order.
      const std::size_t rank = (delta - 1 - c) * t + (t - 1 - i);
      const bool zero = rank < plan.key_a_zero_blocks;
      a.terms.push_back({i, c, i + t * (s + c),
                         zero ? TermSource::kZero : TermSource::kRandom});
    }
  }

  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      b.terms.push_back(
          {k, l, (s - 1 - k) * t + t * ss * l, TermSource::kData});
    }
  }
  for (std::size_t r = 0; r < delta; ++r) {
    for (std::size_t l = 0; l < d; ++l) {
      // Rank in right-to-left, top-to-bottom order.
      const std::size_t rank = r * d + (d - 1 - l);
      const bool zero = rank < plan.key_b_zero_blocks;
      b.terms.push_back({r, l, t * (ss * d - delta) + d * (delta - 1 - r) + l,
                         zero ? TermSource::kZero : TermSource::kRandom});
    }
  }
}

}  // namespace

std::size_t closed_form_readout(const AugmentationPlan& plan,
                                const BlockSplit& split, CodeFamily family,
                                std::size_t i, std::size_t l) {
  const auto [t, s, d] = split;
  if (plan.p_c == 0 || family == CodeFamily::kGpd) {
    return s * (i + 1) - 1 + l * t * s;
  }
  if (plan.regime == Regime::kSLessT) {
    return s * (i + 1) - 1 + l * plan.t_star * s;
  }
  // i - 1 + t(s* l - 1) with 1-based (i, l).
  return i + t * (plan.s_star * (l + 1) - 1);
}

std::vector<std::vector<Contribution>> symbolic_product(const ExponentMap& a,
                                                        const ExponentMap& b) {
  const std::size_t top = max_degree(a, b);
  std::vector<std::vector<Contribution>> out(top + 1);
  for (std::size_t x = 0; x < a.terms.size(); ++x) {
    if (a.terms[x].source == TermSource::kZero) continue;
    for (std::size_t y = 0; y < b.terms.size(); ++y) {
      if (b.terms[y].source == TermSource::kZero) continue;
      out[a.terms[x].exponent + b.terms[y].exponent].push_back({x, y});
    }
  }
  return out;
}

ReadoutMap derive_readout(const ExponentMap& a, const ExponentMap& b,
                          const BlockSplit& split) {
  const auto [t, s, d] = split;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> a_data, b_data;
  for (std::size_t x = 0; x < a.terms.size(); ++x) {
    if (a.terms[x].source == TermSource::kData) {
      a_data[{a.terms[x].row, a.terms[x].col}] = x;
    }
  }
  for (std::size_t y = 0; y < b.terms.size(); ++y) {
    if (b.terms[y].source == TermSource::kData) {
      b_data[{b.terms[y].row, b.terms[y].col}] = y;
    }
  }
  const auto product = symbolic_product(a, b);

  std::vector<std::size_t> positions;
  positions.reserve(t * d);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t l = 0; l < d; ++l) {
      const auto fail = [&](const std::string& why) {
        return InvalidArgument("no interference-free readout for C(" +
                               std::to_string(i + 1) + "," +
                               std::to_string(l + 1) + "): " + why);
      };
      std::vector<std::pair<std::size_t, std::size_t>> wanted;
      std::size_t exponent = 0;
      for (std::size_t j = 0; j < s; ++j) {
        const auto ai = a_data.find({i, j});
        const auto bi = b_data.find({j, l});
        if (ai == a_data.end() || bi == b_data.end()) {
          throw fail("missing data term");
        }
        const std::size_t e =
            a.terms[ai->second].exponent + b.terms[bi->second].exponent;
        if (j > 0 && e != exponent) throw fail("inner products are spread");
        exponent = e;
        wanted.emplace_back(ai->second, bi->second);
      }
      std::vector<std::pair<std::size_t, std::size_t>> got;
      for (const Contribution& c : product[exponent]) {
        got.emplace_back(c.a_term, c.b_term);
      }
      std::sort(wanted.begin(), wanted.end());
      std::sort(got.begin(), got.end());
      if (got != wanted) {
        throw fail("exponent " + std::to_string(exponent) + " carries " +
                   std::to_string(got.size() - wanted.size()) +
                   " interfering products");
      }
      positions.push_back(exponent);
    }
  }
  return ReadoutMap(t, d, std::move(positions));
}

CodeMaps build_exponent_maps(const AugmentationPlan& plan,
                             const BlockSplit& split, CodeFamily family) {
  if (family == CodeFamily::kGpd && plan.p_c != 0) {
    throw InvalidArgument("GPD codes have no colluding-worker protection");
  }
  if (family == CodeFamily::kPsgpd && plan.p_c != 1) {
    throw Unsupported(
        "PSGPD is defined for non-colluding workers only (P_C = 1); larger "
        "colluding sets are future work");
  }
  CodeMaps maps;
  if (plan.p_c == 0) {
    gpd_maps(split, maps.a, maps.b);
  } else if (plan.regime == Regime::kSLessT) {
    s_less_t_maps(plan, split, maps.a, maps.b);
  } else {
    s_geq_t_maps(plan, split, maps.a, maps.b);
  }
  if (family == CodeFamily::kPsgpd) {
    std::erase_if(maps.b.terms, [](const MapTerm& term) {
      return term.source != TermSource::kData;
    });
  }

  maps.readout = derive_readout(maps.a, maps.b, split);
  for (std::size_t i = 0; i < split.t; ++i) {
    for (std::size_t l = 0; l < split.d; ++l) {
      const std::size_t closed = closed_form_readout(plan, split, family, i, l);
      const std::size_t symbolic = maps.readout.at(i, l);
      if (closed != symbolic) {
        maps.diagnostics.push_back(
            to_string(family) + " " + to_string(plan.regime) + " (t,s,d)=(" +
            std::to_string(split.t) + "," + std::to_string(split.s) + "," +
            std::to_string(split.d) + ") P_C=" + std::to_string(plan.p_c) +
            ": C(" + std::to_string(i + 1) + "," + std::to_string(l + 1) +
            ") read at exponent " + std::to_string(symbolic) +
            ", closed form gives " + std::to_string(closed));
      }
    }
  }
  return maps;
}

std::size_t max_degree(const ExponentMap& a, const ExponentMap& b) {
  return a.max_exponent() + b.max_exponent();
}

KeyMaterial zero_key_material(const PrimeField& field,
                              const AugmentationPlan& plan,
                              const PartitionSpec& spec) {
  return KeyMaterial{
      BlockGrid::zeros(field, plan.key_a_rows, plan.key_a_cols,
                       spec.a_block_rows(), spec.inner_block()),
      BlockGrid::zeros(field, plan.key_b_rows, plan.key_b_cols,
                       spec.inner_block(), spec.b_block_cols())};
}

KeyMaterial draw_key_material(const PrimeField& field,
                              const AugmentationPlan& plan,
                              const CodeMaps& maps, const PartitionSpec& spec,
                              CounterRng& rng) {
  KeyMaterial key = zero_key_material(field, plan, spec);
  for (const MapTerm& term : maps.a.terms) {
    if (term.source != TermSource::kRandom) continue;
    key.r.at(term.row, term.col) = FieldMatrix::random(
        field, spec.a_block_rows(), spec.inner_block(), rng);
  }
  for (const MapTerm& term : maps.b.terms) {
    if (term.source != TermSource::kRandom) continue;
    key.r_prime.at(term.row, term.col) = FieldMatrix::random(
        field, spec.inner_block(), spec.b_block_cols(), rng);
  }
  return key;
}

std::pair<AugmentationPlan, KeyMaterial> build_augmentation(
    const PrimeField& field, const PartitionSpec& spec, std::size_t p_c,
    std::uint64_t seed) {
  AugmentationPlan plan = plan_augmentation(spec.split(), p_c);
  const CodeMaps maps = build_exponent_maps(plan, spec.split());
  CounterRng rng(seed, 0x6b6579);
  KeyMaterial key = draw_key_material(field, plan, maps, spec, rng);
  return {plan, std::move(key)};
}

}  // namespace sgpd
