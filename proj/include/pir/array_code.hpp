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

#ifndef PIR_ARRAY_CODE_HPP_
#define PIR_ARRAY_CODE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pir/emulate.hpp"
#include "pir/protocol.hpp"

namespace pir {

/// One stored cell: the XOR of the listed message bits.
struct ArrayCell {
    std::vector<std::uint32_t> bits;
};

/// A recovery witness at column granularity: which columns are read and
/// which of their cells combine to the target bit.
struct ArrayWitness {
    std::vector<std::uint32_t> columns;  // pairwise disjoint across a bit's witnesses
    std::vector<std::pair<std::uint32_t, std::uint32_t>> recipe;  // (column, cell)
};

/// A binary [m1 x m2, s_total] PIR array code: every server (column) stores
/// m1 cells; every bit has k witnesses whose column sets are pairwise
/// disjoint.
struct ArrayCode {
    size_t m1 = 0, m2 = 0, s_total = 0, k = 0;
    std::vector<std::vector<ArrayCell>> cells;           // [m2][m1]
    std::vector<std::vector<ArrayWitness>> witnesses;    // [s_total][k]
    double overhead() const { return double(m1 * m2) / double(s_total); }
};

/// The general construction: t(t+1) bits; all t-subsets as single-bit
/// columns, then all (t+1)-subset sums packed t per column so that each
/// sum column partitions the bit set. t = 2 pairs complementary triples;
/// t = 3 resolves the 4-subsets of 12 points into 165 partitions by
/// integral-flow augmentation. k = C(t(t+1), t).
ArrayCode apir(unsigned t);

/// The [2 x 25, 6] 15-server layout (apir(2), which reproduces it).
ArrayCode example_2x25();

struct ArrayVerifyReport {
    bool ok = true;
    std::string reason;
    size_t bit = 0, witness = 0;
};
ArrayVerifyReport array_verify(const ArrayCode& code);

/// Exhaustive maximum number of disjoint column subsets whose cell span
/// contains e_i. Guarded at m2 <= 30.
size_t array_max_k(const ArrayCode& code, size_t i);

/// Cell data for a database split into s_total parts.
struct ArrayStore {
    ArrayCode code;
    size_t part_len = 0;
    std::vector<std::vector<std::vector<Elem>>> cells;  // [m2][m1][part_len]
};
ArrayStore array_distribute(const Database& db, const ArrayCode& code);

/// Coded retrieval over the array store: each contacted column answers
/// once per stored cell; the client combines the witness recipe.
struct ArraySession {
    size_t uploaded_bits = 0, downloaded_bits = 0, servers_contacted = 0;
};
std::pair<Elem, ArraySession> array_retrieve(const ArrayStore& store,
                                             const LinearPirProtocol& p, size_t i,
                                             RandomTape& tape,
                                             std::mt19937_64& session_rng);

/// JSON: {m1, m2, s_total, cells, witnesses}
std::string array_code_to_json(const ArrayCode& code);
ArrayCode array_code_from_json(const std::string& text);

}  // namespace pir

#endif  // PIR_ARRAY_CODE_HPP_
