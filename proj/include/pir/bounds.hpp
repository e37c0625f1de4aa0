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

#ifndef PIR_BOUNDS_HPP_
#define PIR_BOUNDS_HPP_

#include <string>
#include <vector>

#include "pir/pir_code.hpp"

namespace pir {

/// ceil((2^s - 1) k / 2^(s-1)): the column-multiplicity averaging bound,
/// taken to the next integer.
long long averaging_bound(size_t s, size_t k);

/// Best implemented lower bound on A(s, k) over GF(2): the averaging bound,
/// the Singleton consequence s + k - 1 of d >= k, and for odd k the exact
/// parity-extension identity A(s,k) = A(s,k+1) - 1 applied to the averaging
/// bound. Monotone in both arguments.
long long lower_bound(size_t s, size_t k);

/// s + (k-1) * ceil(s^(1/(k-1)))^(k-2); k = 1 degenerates to s.
long long cubic_bound(size_t s, size_t k);

/// s + s(k-1)^2/(s+k-2); requires the divisibilities behind
/// S(2, (s-1)/(k-1)+1, s) to hold, else DomainError.
long long steiner_bound(size_t s, size_t k);

/// r + r(r-1)/((k-1)(k-2)) (the transposed-system route); divisibility
/// required.
long long steiner_row_bound(size_t r, size_t k);

/// Parameter formulas of the Type-1 DTI code families (no code is
/// constructed): case I covers k = 2^ell + 2, case II covers k = 2^ell.
struct DtiParams {
    unsigned long long s = 0, m = 0;
    size_t k = 0;
};
DtiParams dti_case1(unsigned theta, unsigned ell);
DtiParams dti_case2(unsigned lambda, unsigned ell);

/// Greedy-lexicode instance of the constant-weight route: returns
/// {rows, rows + r} for weight k-1 and distance 2k-4 at length r.
struct ConstantWeightBound {
    size_t s = 0;
    long long m = 0;
};
ConstantWeightBound constant_weight_bound(unsigned r, size_t k);

/// Feasibility of a 4-cycle-free incidence: r(r-1) >= s * deg * (deg - 1).
bool girth_bound_check(size_t s, size_t r, size_t degree);

/// Reference table of published upper bounds for s <= 32 and the printed
/// k columns {2,3,4,6,8,10,12,14,16}; other odd k are derived through the
/// odd/even rule A(s,k) = A(s,k+1) - 1. starred marks entries the authors
/// proved optimal.
struct ReferenceCell {
    long long value = -1;
    bool starred = false;
    bool derived = false;  // not printed; filled in by the odd/even rule
};
ReferenceCell table2_reference(size_t s, size_t k);

struct CellRef {
    size_t s = 0, k = 0;
};

struct Provenance {
    std::string op;                 // construction or combinator name
    std::vector<long long> params;  // op-specific
    std::vector<CellRef> parents;
};

struct BoundsCell {
    size_t s = 0, k = 0;
    long long lower = 0;
    long long upper = -1;  // -1: no constructible chain
    Provenance prov;
    size_t chain = 0;  // total ops in the derivation
};

/// Dynamic-programming closure: seeds every cell from the implemented
/// constructions, then iterates the concatenation / direct-sum / puncturing
/// / parity-extension rules to a fixpoint. Every upper bound carries a
/// provenance chain that replay() turns into a verified PirCode.
/// Ties prefer shorter chains, then lexicographically smaller names.
class BoundsTable {
public:
    BoundsTable(size_t s_max, size_t k_max);

    size_t s_max() const { return s_max_; }
    size_t k_max() const { return k_max_; }
    const BoundsCell& cell(size_t s, size_t k) const;

    PirCode replay(size_t s, size_t k) const;
    std::string provenance_string(size_t s, size_t k) const;

    /// CSV: s,k,lower,upper,provenance,reference_value,status with
    /// status in {match, better, worse, reference-only}.
    std::string to_csv() const;

private:
    size_t s_max_, k_max_;
    size_t s_pad_, k_pad_;
    std::vector<BoundsCell> cells_;  // padded grid, row-major
    BoundsCell& at(size_t s, size_t k);
    const BoundsCell& at(size_t s, size_t k) const;
    bool improve(size_t s, size_t k, long long upper, Provenance prov);
    mutable std::vector<PirCode> replay_cache_;
    mutable std::vector<char> replay_done_;
    PirCode replay_padded(size_t s, size_t k) const;
};

/// Deterministic report of reference-data entries that exact arithmetic
/// corrects (printed by `ledger`).
std::string discrepancy_report();

}  // namespace pir

#endif  // PIR_BOUNDS_HPP_
