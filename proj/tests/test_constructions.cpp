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
#include <set>

#include "doctest.h"
#include "pir/bounds.hpp"
#include "pir/constructions.hpp"
#include "pir/oracle.hpp"

using namespace pir;

TEST_CASE("steiner triple systems") {
    SUBCASE("n = 7: the Fano plane parameters") {
        SteinerSystem s = steiner_triple(7);
        CHECK(s.blocks.size() == 7);
        CHECK(replication_number(s) == 3);
    }
    SUBCASE("n = 9") {
        SteinerSystem s = steiner_triple(9);
        CHECK(s.blocks.size() == 12);
        CHECK(replication_number(s) == 4);
    }
    SUBCASE("n = 13") {
        SteinerSystem s = steiner_triple(13);
        CHECK(s.blocks.size() == 26);
        CHECK(replication_number(s) == 6);
    }
    SUBCASE("larger admissible orders validate too") {
        for (unsigned n : {15u, 19u, 21u, 25u, 27u, 31u, 33u}) {
            SteinerSystem s = steiner_triple(n);  // validate_design runs inside
            CHECK(s.blocks.size() == size_t(n) * (n - 1) / 6);
        }
    }
    CHECK_THROWS_AS(steiner_triple(8), DomainError);
    CHECK_THROWS_AS(steiner_triple(11), DomainError);
}

TEST_CASE("projective planes") {
    SteinerSystem pg2 = projective_plane(2);
    CHECK(pg2.n == 7);
    CHECK(pg2.ell == 3);
    CHECK(pg2.blocks.size() == 7);

    SteinerSystem pg3 = projective_plane(3);
    CHECK(pg3.n == 13);
    CHECK(pg3.blocks.size() == 13);
    CHECK(replication_number(pg3) == 4);

    SteinerSystem pg4 = projective_plane(4);  // prime power via the field layer
    CHECK(pg4.n == 21);

    SteinerSystem pg5 = projective_plane(5);
    CHECK(pg5.n == 31);
    CHECK(replication_number(pg5) == 6);
}

TEST_CASE("steiner text round trip") {
    SteinerSystem s = steiner_triple(9);
    SteinerSystem back = steiner_from_text(to_text(s));
    CHECK(back.blocks == s.blocks);
}

TEST_CASE("steiner codes, column orientation") {
    // Fano plane: [14,7] 4-server, overhead 2
    PirCode fano = steiner_code(projective_plane(2), SteinerOrientation::kColumn);
    CHECK(fano.s == 7);
    CHECK(fano.m == 14);
    CHECK(fano.k == 4);
    CHECK(fano.overhead() == doctest::Approx(2.0));

    // STS(9): [21,9] with replication 4, so k = 5
    PirCode c9 = steiner_code(steiner_triple(9), SteinerOrientation::kColumn);
    CHECK(c9.s == 9);
    CHECK(c9.m == 21);
    CHECK(c9.k == 5);
    for (size_t i = 0; i < 3; ++i) CHECK(max_pir_k(c9.g, i).k_max >= 5);
}

TEST_CASE("steiner codes, row orientation") {
    // the Fano plane is self-dual: the row route gives [14,7] again
    PirCode fano_row = steiner_code(projective_plane(2), SteinerOrientation::kRow);
    CHECK(fano_row.s == 7);
    CHECK(fano_row.m == 14);
    CHECK(fano_row.k == 4);

    // STS(9) transposed: 12 blocks over 9 points, block size 3 -> k = 4
    PirCode dual9 = steiner_code(steiner_triple(9), SteinerOrientation::kRow);
    CHECK(dual9.s == 12);
    CHECK(dual9.m == 21);
    CHECK(dual9.k == 4);
}

TEST_CASE("cubic construction") {
    // sigma=3, k=3: [15,9], overhead 1 + 2/3
    PirCode c33 = cubic_code(3, 3);
    CHECK(c33.s == 9);
    CHECK(c33.m == 15);
    CHECK(c33.k == 3);
    CHECK(c33.overhead() == doctest::Approx(1.0 + 2.0 / 3));

    // sigma=2, k=3: the [8,4] 3-server parameters of the walkthrough code
    PirCode c23 = cubic_code(2, 3);
    CHECK(c23.s == 4);
    CHECK(c23.m == 8);
    CHECK(c23.k == 3);
    CHECK(min_distance(c23.g) == 3);

    // sigma=2, k=4: [20,8]
    PirCode c24 = cubic_code(2, 4);
    CHECK(c24.s == 8);
    CHECK(c24.m == 20);
    CHECK(c24.k == 4);
    CHECK(max_pir_k(c24.g, 0).k_max >= 4);

    // storage overhead is exactly 1 + (k-1)/sigma at full size
    for (unsigned sigma = 2; sigma <= 4; ++sigma)
        for (unsigned k = 2; k <= 4; ++k) {
            PirCode c = cubic_code(sigma, k);
            CHECK(c.overhead() == doctest::Approx(1.0 + double(k - 1) / sigma));
        }

    // truncation keeps the parity budget and the certificate
    PirCode trunc = cubic_code(3, 3, 5);
    CHECK(trunc.s == 5);
    CHECK(trunc.m == 5 + 2 * 3);
    CHECK(trunc.k == 3);
}

TEST_CASE("greedy lexicode rows") {
    // (5,3): all 10 weight-2 rows
    auto rows53 = lexicode_rows(5, 3);
    CHECK(rows53.size() == 10);

    // (n,3) gives C(n,2) rows
    for (unsigned r = 3; r <= 9; ++r)
        CHECK(lexicode_rows(r, 3).size() == size_t(r) * (r - 1) / 2);

    // (7,4): weight-3 distance-4 greedy reaches 7 rows (a Fano triple set)
    auto rows74 = lexicode_rows(7, 4);
    CHECK(rows74.size() == 7);
    CHECK(rows74.size() == constant_weight_optimal_rows(7, 4));

    // greedy rows have exact weight and pairwise intersection <= 1
    for (auto [r, k] : std::vector<std::pair<unsigned, unsigned>>{
             {6, 4}, {8, 4}, {9, 5}, {10, 6}}) {
        auto rows = lexicode_rows(r, k);
        for (const auto& row : rows) CHECK(row.size() == k - 1);
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = a + 1; b < rows.size(); ++b) {
                size_t common = 0;
                for (auto x : rows[a])
                    common += std::count(rows[b].begin(), rows[b].end(), x);
                CHECK(common <= 1);
            }
        CHECK(girth_bound_check(rows.size(), r, k - 1));
    }
}

TEST_CASE("constant-weight codes") {
    // (5,3): the [15,10] 3-server example
    PirCode c = constant_weight_code(5, 3);
    CHECK(c.s == 10);
    CHECK(c.m == 15);
    CHECK(c.k == 3);

    PirCode c74 = constant_weight_code(7, 4);
    CHECK(c74.s == 7);
    CHECK(c74.m == 14);
    CHECK(c74.k == 4);
}

TEST_CASE("incidence certification rejects 4-cycles") {
    // two bits sharing two parities
    std::vector<std::vector<std::uint32_t>> sets = {{0, 1}, {0, 1}};
    CHECK_THROWS_AS(certify_incidence(2, sets), DomainError);
}

TEST_CASE("cyclic orthogonal search on the (15,7) code") {
    const std::uint32_t g = 0b111010001;
    OrthogonalSet orth = cyclic_orthogonal_search(g, 15, 14);
    CHECK(orth.j == 4);
    std::set<std::vector<std::uint32_t>> got(orth.sets.begin(), orth.sets.end());
    std::set<std::vector<std::uint32_t>> want = {
        {3, 11, 12}, {1, 5, 13}, {0, 2, 6}, {7, 8, 10}};
    CHECK(got == want);

    // a non-divisor of x^15 - 1 is rejected (x^2 + 1 has a double root at 1)
    CHECK_THROWS_AS(cyclic_orthogonal_search(0b101, 15, 0), DomainError);
}

TEST_CASE("tiny cyclic instance: n = 3, g = 1 + x") {
    // the [3,2] parity code; its dual is the repetition code
    OrthogonalSet orth = cyclic_orthogonal_search(0b11, 3, 1);
    CHECK(orth.j == 1);
    CHECK(orth.sets[0] == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("majority_logic_15_7 is a verified 5-server code") {
    PirCode ml = majority_logic_15_7();
    CHECK(ml.s == 7);
    CHECK(ml.m == 15);
    CHECK(ml.k == 5);
    CHECK(verify(ml).ok);
    CHECK(min_distance(ml.g) == 5);
    CHECK(ml.overhead() == doctest::Approx(15.0 / 7));

    // the known systematic parity-check matrix spans the same dual space
    Matrix h = dual(ml.g);
    Matrix want(Field::gf2(), 8, 15);
    const int rows[8][15] = {
        {1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0},
        {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1},
        {0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0},
        {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1},
        {0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1},
        {0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1},
    };
    for (size_t r = 0; r < 8; ++r)
        for (size_t c = 0; c < 15; ++c) want.set(r, c, Elem(rows[r][c]));
    CHECK(same_row_space(h, want));
}

TEST_CASE("closed-form bound helpers") {
    CHECK(cubic_bound(4, 3) == 8);
    for (size_t s : {2u, 5u, 9u, 17u}) CHECK(cubic_bound(s, 2) == (long long)s + 1);
    CHECK(steiner_bound(7, 4) == 14);  // projective plane of order 2
    CHECK(steiner_row_bound(7, 4) == 14);
    CHECK(constant_weight_bound(5, 3).m == 15);

    DtiParams c1 = dti_case1(1, 2);
    CHECK(c1.m == 15);
    CHECK(c1.s == 7);
    CHECK(c1.k == 6);
    DtiParams c2 = dti_case2(2, 2);
    CHECK(c2.m == 15);
    CHECK(c2.s == 8);
    CHECK(c2.k == 4);

    CHECK(girth_bound_check(10, 5, 2));
    CHECK_FALSE(girth_bound_check(100, 5, 3));
}
