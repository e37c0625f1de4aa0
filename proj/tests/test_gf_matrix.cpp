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
#include <algorithm>
#include <random>

#include "doctest.h"
#include "pir/matrix.hpp"
#include "pir/pir_code.hpp"

using namespace pir;

namespace {

Matrix random_matrix(const Field& f, size_t r, size_t c, std::mt19937_64& rng) {
    Matrix m(f, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.set(i, j, Elem(rng() % f.q()));
    return m;
}

}  // namespace

TEST_CASE("GF(2) arithmetic") {
    Field f = Field::gf2();
    CHECK(f.add(1, 1) == 0);
    CHECK(f.mul(1, 1) == 1);
    CHECK(f.inv(1) == 1);
    CHECK_THROWS_AS(f.inv(0), DomainError);
}

TEST_CASE("GF(4): alpha + alpha^2 = 1 and alpha * alpha = alpha^2") {
    Field f = Field::gf2ext(2);
    Elem a = f.alpha();
    Elem a2 = f.mul(a, a);
    CHECK(f.add(a, a2) == 1);

    // cross-check the whole multiplication table against a brute-force
    // polynomial multiply-then-reduce
    auto slow_mul = [&](Elem x, Elem y) {
        unsigned acc = 0, xx = x;
        for (unsigned yy = y; yy; yy >>= 1, xx <<= 1)
            if (yy & 1) acc ^= xx;
        // reduce by x^2 + x + 1
        for (int bit = 3; bit >= 2; --bit)
            if (acc & (1u << bit)) acc ^= 0b111u << (bit - 2);
        return Elem(acc);
    };
    for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y)
            CHECK(f.mul(Elem(x), Elem(y)) == slow_mul(Elem(x), Elem(y)));
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        Field f = Field::of_order(q);
        for (unsigned a = 0; a < q; ++a) {
            CHECK(f.add(Elem(a), 0) == a);
            CHECK(f.mul(Elem(a), 1) == a);
            CHECK(f.add(Elem(a), f.neg(Elem(a))) == 0);
            if (a) CHECK(f.mul(Elem(a), f.inv(Elem(a))) == 1);
            for (unsigned b = 0; b < q; ++b) {
                CHECK(f.add(Elem(a), Elem(b)) == f.add(Elem(b), Elem(a)));
                CHECK(f.mul(Elem(a), Elem(b)) == f.mul(Elem(b), Elem(a)));
                for (unsigned c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(Elem(a), Elem(b)), Elem(c)) ==
                          f.add(Elem(a), f.add(Elem(b), Elem(c))));
                    CHECK(f.mul(f.mul(Elem(a), Elem(b)), Elem(c)) ==
                          f.mul(Elem(a), f.mul(Elem(b), Elem(c))));
                    CHECK(f.mul(Elem(a), f.add(Elem(b), Elem(c))) ==
                          f.add(f.mul(Elem(a), Elem(b)), f.mul(Elem(a), Elem(c))));
                }
            }
        }
        // alpha generates the multiplicative group
        Elem x = f.alpha();
        unsigned ord = 1;
        while (x != 1) {
            x = f.mul(x, f.alpha());
            ++ord;
        }
        CHECK(ord == q - 1);
    }
}

TEST_CASE("GF(256) inverses") {
    Field f = Field::gf2ext(8);
    for (unsigned a = 1; a < 256; ++a) CHECK(f.mul(Elem(a), f.inv(Elem(a))) == 1);
}

TEST_CASE("encode matches the naive double loop and is linear") {
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 4u}) {
        Field f = Field::of_order(q);
        Matrix g = random_matrix(f, 5, 9, rng);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Elem> u(5), v(5), uv(5);
            for (size_t i = 0; i < 5; ++i) {
                u[i] = Elem(rng() % q);
                v[i] = Elem(rng() % q);
                uv[i] = f.add(u[i], v[i]);
            }
            std::vector<Elem> naive(9, 0);
            for (size_t j = 0; j < 9; ++j)
                for (size_t i = 0; i < 5; ++i)
                    naive[j] = f.add(naive[j], f.mul(u[i], g.at(i, j)));
            CHECK(encode(u, g) == naive);
            std::vector<Elem> lhs = encode(uv, g);
            std::vector<Elem> rhs = encode(u, g);
            std::vector<Elem> rv = encode(v, g);
            for (size_t j = 0; j < 9; ++j) rhs[j] = f.add(rhs[j], rv[j]);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("encode: example-2 generator row and the zero message") {
    PirCode ex2 = example2_code();
    std::vector<Elem> u = {1, 0, 0, 0};
    CHECK(encode(u, ex2.g) == std::vector<Elem>{1, 0, 0, 0, 1, 0, 0, 1});
    CHECK(encode({0, 0, 0, 0}, ex2.g) == std::vector<Elem>(8, 0));
}

TEST_CASE("rank and rref") {
    Field f = Field::gf2();
    CHECK(rank(Matrix::identity(f, 6)) == 6);
    CHECK(rank(example2_code().g) == 4);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_matrix(f, 6, 10, rng);
        // rank is invariant under column permutation
        std::vector<size_t> perm(10);
        for (size_t i = 0; i < 10; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix shuffled(f, 6, 10);
        for (size_t r = 0; r < 6; ++r)
            for (size_t c = 0; c < 10; ++c) shuffled.set(r, perm[c], m.at(r, c));
        CHECK(rank(m) == rank(shuffled));
        CHECK(rank(m) == rank(m.transposed()));

        Rref rr = rref(m);
        CHECK(apply_ops(m, rr.ops) == rr.reduced);        // the op record replays
        CHECK(rref(rr.reduced).reduced == rr.reduced);    // idempotent
    }

    // and over GF(4)
    Field f4 = Field::gf2ext(2);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_matrix(f4, 4, 7, rng);
        Rref rr = rref(m);
        CHECK(apply_ops(m, rr.ops) == rr.reduced);
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("min_distance") {
    CHECK(min_distance(example2_code().g) == 3);

    // [k,1] repetition code has distance k
    Field f = Field::gf2();
    for (size_t k : {1u, 3u, 7u}) {
        Matrix g(f, 1, k);
        for (size_t j = 0; j < k; ++j) g.set(0, j, 1);
        CHECK(min_distance(g) == k);
    }

    // the GF(4) [5,2] code has distance 4 (enumerates all 15 nonzero words)
    CHECK(min_distance(gf4_five_two_code().g) == 4);

    // oracle: distance equals min weight of encode over all messages
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix g = random_matrix(f, 5, 9, rng);
        if (rank(g) != 5) continue;
        size_t best = 10;
        for (unsigned msg = 1; msg < 32; ++msg) {
            std::vector<Elem> u(5);
            for (size_t i = 0; i < 5; ++i) u[i] = (msg >> i) & 1;
            auto cw = encode(u, g);
            size_t w = 0;
            for (Elem e : cw) w += e != 0;
            best = std::min(best, w);
        }
        CHECK(min_distance(g) == best);
    }

    Matrix big(f, 25, 30);
    CHECK_THROWS_AS(min_distance(big), GuardError);
}

TEST_CASE("dual") {
    Field f = Field::gf2();
    // [s+1, s] parity code: H is the all-ones row
    Matrix g(f, 3, 4);
    for (size_t i = 0; i < 3; ++i) {
        g.set(i, i, 1);
        g.set(i, 3, 1);
    }
    Matrix h = dual(g);
    CHECK(h.rows() == 1);
    for (size_t j = 0; j < 4; ++j) CHECK(h.at(0, j) == 1);

    // G * H^T = 0 and dual(dual(G)) spans the same row space
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(f, 4, 9, rng);
        if (rank(m) != 4) continue;
        Matrix hh = dual(m);
        CHECK(rank(hh) == 5);
        Matrix prod = mat_mul(m, hh.transposed());
        for (size_t r = 0; r < prod.rows(); ++r)
            for (size_t c = 0; c < prod.cols(); ++c) CHECK(prod.at(r, c) == 0);
        CHECK(same_row_space(dual(hh), m));
    }

    Matrix deficient(f, 2, 4);
    deficient.set(0, 0, 1);
    deficient.set(1, 0, 1);
    CHECK_THROWS_AS(dual(deficient), DomainError);
}

TEST_CASE("matrix text round trip") {
    std::mt19937_64 rng(21);
    for (unsigned q : {2u, 4u, 16u}) {
        Field f = Field::of_order(q);
        Matrix m = random_matrix(f, 3, 5, rng);
        Matrix back = matrix_from_text(to_text(m));
        CHECK(back == m);
    }
    CHECK_THROWS_AS(matrix_from_text("2 2"), ParseError);
    CHECK_THROWS_AS(matrix_from_text("2 1 2\n1"), ParseError);
}
