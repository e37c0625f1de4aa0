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
#include "pir/coset.hpp"
#include "pir/matrix.hpp"
#include "pir/oracle.hpp"
#include "pir/pir_code.hpp"

using namespace pir;

TEST_CASE("example-2 certificate verifies at k = 3") {
    PirCode code = example2_code();
    CHECK(verify(code).ok);
    CHECK(code.k == 3);
    CHECK(code.overhead() == doctest::Approx(2.0));
}

TEST_CASE("identity code verifies at k = 1") {
    PirCode code = identity_code(Field::gf2(), 5);
    CHECK(verify(code).ok);
    CHECK(code.k == 1);
    CHECK(code.m == 5);
}

TEST_CASE("corrupting a witnessed column is pinpointed") {
    PirCode code = example2_code();
    // zero out column 4 (1-based column 5): the set {2,5} for x_1 breaks
    for (size_t r = 0; r < code.s; ++r) code.g.set(r, 4, 0);
    VerifyReport rep = verify(code);
    CHECK_FALSE(rep.ok);
    CHECK(rep.msg_index == 0);
    CHECK(rep.set_index == 1);
}

TEST_CASE("verify rejects structural damage") {
    PirCode code = example2_code();
    SUBCASE("overlapping sets") {
        code.witnesses[0][2] = code.witnesses[0][1];
        CHECK_FALSE(verify(code).ok);
    }
    SUBCASE("column out of range") {
        code.witnesses[0][0].members[0].first = 99;
        CHECK_FALSE(verify(code).ok);
    }
    SUBCASE("zero coefficient") {
        code.witnesses[0][0].members[0].second = 0;
        CHECK_FALSE(verify(code).ok);
    }
    SUBCASE("missing set") {
        code.witnesses[2].pop_back();
        CHECK_FALSE(verify(code).ok);
    }
}

TEST_CASE("gf4 [5,2] code verifies with weighted recovery sets") {
    PirCode code = gf4_five_two_code();
    CHECK(verify(code).ok);
    CHECK(code.k == 3);
    CHECK(min_distance(code.g) == 4);
}

TEST_CASE("balanced multiplicity construction") {
    // (2,2): the [3,2] single-parity code
    PirCode c22 = balanced_multiplicity_code(2, 2);
    CHECK(c22.m == 3);
    CHECK(c22.k == 2);
    CHECK(min_distance(c22.g) == 2);

    // (3,4): all 7 nonzero columns once
    PirCode c34 = balanced_multiplicity_code(3, 4);
    CHECK(c34.m == 7);
    CHECK(c34.k == 4);
    CHECK(verify(c34).ok);

    // (3,8): the oracle confirms 8 on the doubled simplex
    PirCode c38 = balanced_multiplicity_code(3, 8);
    CHECK(c38.m == 14);
    for (size_t i = 0; i < 3; ++i) CHECK(max_pir_k(c38.g, i).k_max >= 8);

    CHECK_THROWS_AS(balanced_multiplicity_code(3, 6), DomainError);

    // m = (2^s - 1) k / 2^(s-1) exactly when 2^(s-1) | k
    for (size_t s = 1; s <= 4; ++s) {
        size_t half = size_t(1) << (s - 1);
        for (size_t k = half; k <= 16; k += half) {
            PirCode c = balanced_multiplicity_code(s, k);
            CHECK(c.m == ((size_t(1) << s) - 1) * k / half);
        }
    }
}

TEST_CASE("concat: [3,2]+[2,2] identity gives the optimal [5,2] 3-server code") {
    PirCode parity = balanced_multiplicity_code(2, 2);
    PirCode ident = identity_code(Field::gf2(), 2);
    PirCode five = concat(parity, ident);
    CHECK(five.m == 5);
    CHECK(five.k == 3);
    CHECK(verify(five).ok);

    // even_extend: k 3 -> 4 at length 6, matching A(2,4) = 6
    PirCode six = even_extend(five);
    CHECK(six.m == 6);
    CHECK(six.k == 4);
    CHECK(verify(six).ok);
    CHECK_THROWS_AS(even_extend(six), DomainError);  // k already even

    // puncturing the appended column undoes the extension
    PirCode back = puncture(six, six.m - 1);
    CHECK(back.m == 5);
    CHECK(back.k == 3);
}

TEST_CASE("direct_sum keeps k and stacks messages") {
    PirCode a = balanced_multiplicity_code(2, 2);
    PirCode b = balanced_multiplicity_code(1, 2);
    PirCode d = direct_sum(a, b);
    CHECK(d.s == 3);
    CHECK(d.m == 5);
    CHECK(d.k == 2);
    CHECK(verify(d).ok);
    CHECK_THROWS_AS(direct_sum(a, identity_code(Field::gf2(), 2)), ShapeError);
}

TEST_CASE("puncture drops at most one set per bit") {
    PirCode ex2 = example2_code();
    for (size_t pos = 0; pos < ex2.m; ++pos) {
        PirCode p = puncture(ex2, pos);
        CHECK(p.m == 7);
        CHECK(p.k >= 2);
        CHECK(verify(p).ok);
    }
    PirCode ident = identity_code(Field::gf2(), 3);
    CHECK_THROWS_AS(puncture(ident, 0), DomainError);  // k = 1 dies
}

TEST_CASE("json round trip") {
    for (const PirCode& code : {example2_code(), gf4_five_two_code()}) {
        PirCode back = pir_code_from_json(pir_code_to_json(code));
        CHECK(back.s == code.s);
        CHECK(back.m == code.m);
        CHECK(back.k == code.k);
        CHECK(back.g == code.g);
    }
    CHECK_THROWS_AS(pir_code_from_json("{"), ParseError);
    CHECK_THROWS_AS(pir_code_from_json("{\"q\":2}"), ParseError);
}

TEST_CASE("coset view: [3,2] parity code round trip") {
    PirCode parity = balanced_multiplicity_code(2, 2);
    CosetFamily fam = to_coset_family(parity);
    CHECK(bk_check(fam));
    PirCode back = bk_to_generator(fam);
    CHECK(back.s == parity.s);
    CHECK(back.m == parity.m);
    CHECK(back.k == parity.k);
}

TEST_CASE("coset view: example-2 round trip preserves the recovery structure") {
    PirCode ex2 = example2_code();
    CosetFamily fam = to_coset_family(ex2);
    CHECK(bk_check(fam));
    PirCode back = bk_to_generator(fam);
    CHECK(back.s == ex2.s);
    CHECK(back.m == ex2.m);
    CHECK(back.k == ex2.k);
    // same witness index sets
    for (size_t i = 0; i < ex2.s; ++i)
        for (size_t j = 0; j < ex2.k; ++j)
            CHECK(back.witnesses[i][j].columns() == ex2.witnesses[i][j].columns());
}

TEST_CASE("puncturing a B_k family keeps independent cosets") {
    PirCode ex2 = example2_code();
    CosetFamily fam = to_coset_family(ex2);
    CosetFamily punct = puncture_family(fam, ex2.m - 1);
    CHECK(bk_check(punct));
    CHECK(punct.coset_count() == ex2.s - 1);
    PirCode smaller = bk_to_generator(punct);
    CHECK(smaller.s == 3);
    CHECK(smaller.m == 7);
    CHECK(smaller.k == 3);
}

TEST_CASE("bk_check rejects broken families") {
    PirCode ex2 = example2_code();
    CosetFamily fam = to_coset_family(ex2);
    SUBCASE("dependent syndromes") {
        fam.syndromes[1] = fam.syndromes[0];
        std::string why;
        CHECK_FALSE(bk_check(fam, &why));
    }
    SUBCASE("non-disjoint members") {
        fam.members[0][1] = fam.members[0][0];
        CHECK_FALSE(bk_check(fam));
    }
}
