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

#ifndef PIR_GF_HPP_
#define PIR_GF_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pir/errors.hpp"

namespace pir {

/// A field element. All supported fields have q <= 256, so one byte is enough.
/// For GF(2^w) the byte is the polynomial bit pattern; for GF(p) it is the
/// residue; for GF(p^w), p odd, it is the base-p digit encoding of the
/// coefficient vector (value = sum coeff_i * p^i).
using Elem = std::uint8_t;

/// GF(p^w) with q = p^w <= 256. Characteristic 2 is the workhorse
/// (addition is XOR, rows can be bit-packed); odd characteristic is
/// supported for arithmetic only.
class Field {
public:
    /// GF(2).
    static Field gf2();

    /// GF(2^w) for 1 <= w <= 8, with the modulus fixed per w from the
    /// built-in table so encodings are reproducible across runs.
    static Field gf2ext(unsigned w);

    /// GF(p) for prime p <= 251.
    static Field prime(unsigned p);

    /// Field of order q = p^w. Dispatches to one of the above; for odd p
    /// and w > 1 the modulus is the lexicographically smallest monic
    /// irreducible polynomial of degree w over GF(p).
    static Field of_order(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned w() const { return w_; }

    /// Modulus polynomial, encoded base p including the leading monic term
    /// (so GF(4) returns 0b111 = x^2 + x + 1). Meaningful for w > 1.
    unsigned modulus() const { return modulus_; }

    /// The designated primitive element alpha: smallest element (by
    /// encoding) of multiplicative order q - 1.
    Elem alpha() const { return alpha_; }

    bool is_valid(Elem a) const { return a < q_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Multiplicative inverse; inverting zero is a DomainError.
    Elem inv(Elem a) const;
    Elem pow(Elem a, unsigned long long e) const;

    bool operator==(const Field& o) const {
        return p_ == o.p_ && w_ == o.w_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    /// "2", "4", "256", ... (used in text formats and error messages).
    std::string name() const;

private:
    Field(unsigned p, unsigned w, unsigned modulus);

    void build_tables();
    Elem mul_raw(Elem a, Elem b) const;  // table-free multiply

    unsigned p_ = 2, w_ = 1, q_ = 2;
    unsigned modulus_ = 0;
    Elem alpha_ = 1;
    // Dense q*q multiply table plus inverse table; at q <= 256 this tops out
    // at 64 KiB and makes every caller branch-free.
    std::vector<Elem> mul_table_;
    std::vector<Elem> inv_table_;
};

/// Digit used by the matrix text format: decimal below 11, hex otherwise.
std::string elem_to_token(const Field& f, Elem a);
Elem elem_from_token(const Field& f, const std::string& tok);

}  // namespace pir

#endif  // PIR_GF_HPP_
