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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pir/constructions.hpp"
#include "pir/oracle.hpp"

using namespace pir;

namespace {

Matrix parity_generator(size_t s) {
    Field f = Field::gf2();
    Matrix g(f, s, s + 1);
    for (size_t i = 0; i < s; ++i) {
        g.set(i, i, 1);
        g.set(i, s, 1);
    }
    return g;
}

}  // namespace

TEST_CASE("max_disjoint_packing on hand instances") {
    CHECK(max_disjoint_packing({0b001, 0b010, 0b100}).count == 3);
    CHECK(max_disjoint_packing({0b011, 0b110, 0b101}).count == 1);
    CHECK(max_disjoint_packing({0b0011, 0b1100, 0b0110}).count == 2);
    CHECK(max_disjoint_packing({}).count == 0);
}

TEST_CASE("single-parity generator yields k = 2 for every index") {
    for (size_t s = 1; s <= 10; ++s) {
        Matrix g = parity_generator(s);
        for (size_t i = 0; i < s; ++i) {
            OracleResult res = max_pir_k(g, i);
            CHECK(res.k_max == 2);
        }
    }
}

TEST_CASE("example-2 generator certifies exactly 3") {
    PirCode ex2 = example2_code();
    for (size_t i = 0; i < 4; ++i) {
        OracleResult res = max_pir_k(ex2.g, i);
        CHECK(res.k_max == 3);
        // the returned witnesses re-verify
        PirCode probe = ex2;
        probe.witnesses[i] = res.witnesses;
        for (size_t j = 0; j < 4; ++j)
            if (j != i) probe.witnesses[j].resize(3);
        probe.k = 3;
        CHECK(verify(probe).ok);
    }
}

TEST_CASE("majority-logic (15,7) certifies exactly 5 on every message bit") {
    PirCode ml = majority_logic_15_7();
    for (size_t i = 0; i < ml.s; ++i) CHECK(max_pir_k(ml.g, i).k_max == 5);
}

TEST_CASE("oracle never undercuts a certificate (m <= 20)") {
    for (const PirCode& code :
         {example2_code(), balanced_multiplicity_code(3, 4),
          balanced_multiplicity_code(2, 4), constant_weight_code(5, 3),
          majority_logic_15_7()}) {
        if (code.m > 20) continue;
        for (size_t i = 0; i < code.s; ++i)
            CHECK(max_pir_k(code.g, i).k_max >= code.k);
    }
}

TEST_CASE("oracle over GF(4): the [5,2] code reaches 3") {
    PirCode code = gf4_five_two_code();
    for (size_t i = 0; i < 2; ++i) CHECK(max_pir_k(code.g, i).k_max == 3);
}

TEST_CASE("oracle guards") {
    Field f = Field::gf2();
    Matrix too_wide(f, 2, 25);
    CHECK_THROWS_AS(max_pir_k(too_wide, 0), GuardError);
    Field f4 = Field::gf2ext(2);
    Matrix too_wide4(f4, 2, 13);
    CHECK_THROWS_AS(max_pir_k(too_wide4, 0), GuardError);
}

TEST_CASE("unreachable target gives k = 0") {
    Field f = Field::gf2();
    Matrix g(f, 2, 3);
    g.set(0, 0, 1);
    g.set(0, 1, 1);  // row 1 never produces e_2
    CHECK(max_pir_k(g, 1).k_max == 0);
}

TEST_CASE("optimal codes are column-minimal") {
    // deleting any column of a length-optimal code must cost some bit a
    // recovery set, otherwise a shorter code would exist
    for (const PirCode& code :
         {balanced_multiplicity_code(2, 2), balanced_multiplicity_code(3, 4),
          concat(balanced_multiplicity_code(2, 2), identity_code(Field::gf2(), 2))}) {
        for (size_t pos = 0; pos < code.m; ++pos) {
            Matrix cut(code.field, code.s, code.m - 1);
            for (size_t r = 0; r < code.s; ++r)
                for (size_t c = 0; c < code.m; ++c) {
                    if (c == pos) continue;
                    cut.set(r, c < pos ? c : c - 1, code.g.at(r, c));
                }
            bool dropped = false;
            for (size_t i = 0; i < code.s && !dropped; ++i)
                dropped = max_pir_k(cut, i).k_max < code.k;
            CHECK(dropped);
        }
    }
}
