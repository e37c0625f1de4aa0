// Copyright 2026 The codedpir Authors.
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

#ifndef PIR_PIR_CODE_HPP_
#define PIR_PIR_CODE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pir/matrix.hpp"

namespace pir {

/// One recovery set: coefficient-weighted code positions whose combination
/// equals a target message coordinate. Columns strictly increasing, all
/// coefficients nonzero (over GF(2) they are all 1).
struct RecoverySet {
    std::vector<std::pair<std::uint32_t, Elem>> members;

    std::vector<std::uint32_t> columns() const;
    std::uint64_t column_mask() const;  // positions as bits (m <= 64)
};

RecoverySet make_set(std::initializer_list<std::uint32_t> cols);

/// A k-server PIR code: generator matrix plus, for every message position,
/// k pairwise-disjoint recovery sets. The witnesses are the certificate;
/// a PirCode is never constructed unverified.
struct PirCode {
    Field field;
    size_t s = 0, m = 0, k = 0;
    Matrix g;
    std::vector<std::vector<RecoverySet>> witnesses;  // [s][k]

    PirCode() : field(Field::gf2()), g(Field::gf2(), 0, 0) {}
    double overhead() const { return double(m) / double(s); }
};

struct VerifyReport {
    bool ok = true;
    std::string reason;
    size_t msg_index = 0, set_index = 0;
};

/// Checks every PirCode invariant except the min-distance bound (which is
/// implied by the witnesses and enumerated separately where the guard
/// admits). On failure pinpoints the first violated (i, set, reason).
VerifyReport verify(const PirCode& code);

/// verify() or throw, with context.
void require_verified(const PirCode& code, const std::string& what);

/// Assembles and verifies; k is taken from the witness lists.
PirCode make_pir_code(const Field& f, const Matrix& g,
                      std::vector<std::vector<RecoverySet>> witnesses,
                      const std::string& what);

/// [s, s] identity code, k = 1.
PirCode identity_code(const Field& f, size_t s);

/// Side-by-side generator matrices; adds server counts (same s).
PirCode concat(const PirCode& a, const PirCode& b);

/// Block-diagonal generators; keeps the common k (same k).
PirCode direct_sum(const PirCode& a, const PirCode& b);

/// Drops one code position; at most one recovery set per message bit dies.
PirCode puncture(const PirCode& c, size_t pos);

/// Odd k only (GF(2)): appends the column that makes all columns sum to
/// zero; the complement of each bit's witness union becomes set k+1.
PirCode even_extend(const PirCode& c);

/// The generator with every nonzero vector of GF(2)^s as a column with
/// multiplicity k / 2^(s-1); meets the lower bound with equality.
/// Requires 2^(s-1) | k.
PirCode balanced_multiplicity_code(size_t s, size_t k);

/// The [8,4,3] code of the emulation walkthrough, with its canonical
/// recovery sets ({1},{2,5},{4,8} for the first bit, cyclically shifted
/// for the rest; 0-indexed in code).
PirCode example2_code();

/// The [5,2] code (x1, x2, x1+x2, x1+a*x2, x1+a^2*x2) over GF(4); a
/// 3-server PIR code with coefficient-weighted recovery sets.
PirCode gf4_five_two_code();

/// JSON: {q, s, m, G (row-major digits), witnesses: [[[ [col,coef], ...]...]...]}
std::string pir_code_to_json(const PirCode& code);
PirCode pir_code_from_json(const std::string& text);

}  // namespace pir

#endif  // PIR_PIR_CODE_HPP_
