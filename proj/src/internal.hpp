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

#include <string>

#include "sgpd/error.hpp"
#include "sgpd/field.hpp"
#include "sgpd/partition.hpp"

namespace sgpd::detail {

// Coefficient list of F_a* (or F_b*) with data blocks and key blocks bound.
inline MatrixPolynomial bind_terms(const ExponentMap& map,
                                   const BlockGrid& data,
                                   const BlockGrid& key) {
  MatrixPolynomial poly;
  poly.reserve(map.terms.size());
  for (const MapTerm& term : map.terms) {
    switch (term.source) {
      case TermSource::kData:
        poly.push_back({term.exponent, data.at(term.row, term.col)});
        break;
      case TermSource::kRandom:
        poly.push_back({term.exponent, key.at(term.row, term.col)});
        break;
      case TermSource::kZero:
        break;
    }
  }
  return poly;
}

inline void check_input(const FieldMatrix& m, const PrimeField& field,
                        std::size_t rows, std::size_t cols,
                        const char* name) {
  if (!(m.field() == field)) {
    throw FieldMismatch(std::string(name) + " is not over the code's field");
  }
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(std::string(name) + " must be " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

}  // namespace sgpd::detail
