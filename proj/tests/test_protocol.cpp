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
#include <map>

#include "doctest.h"
#include "pir/protocol.hpp"

using namespace pir;

namespace {

// q . x plus a constant: breaks the linearity identity
class AffineProtocol final : public LinearPirProtocol {
public:
    AffineProtocol() : f_(Field::gf2()), inner_(f_, 2) {}
    const Field& field() const override { return f_; }
    size_t servers() const override { return 2; }
    std::string name() const override { return "affine"; }
    size_t tape_draws(size_t n) const override { return inner_.tape_draws(n); }
    std::vector<std::vector<Elem>> make_queries(size_t n, size_t i,
                                                RandomTape& tape) const override {
        return inner_.make_queries(n, i, tape);
    }
    Elem answer(size_t j, std::span<const Elem> data,
                std::span<const Elem> query) const override {
        return f_.add(LinearPirProtocol::answer(j, data, query), 1);
    }
    Elem reconstruct(size_t n, size_t i, std::span<const Elem> a) const override {
        return inner_.reconstruct(n, i, a);
    }

private:
    Field f_;
    XorProtocol inner_;
};

}  // namespace

TEST_CASE("xor2 on the zero tape sends e_i in the clear") {
    XorProtocol p = xor2();
    RandomTape tape(p.field(), std::vector<Elem>(4, 0));
    auto qs = p.make_queries(4, 2, tape);
    CHECK(qs[0] == std::vector<Elem>{0, 0, 0, 0});
    CHECK(qs[1] == std::vector<Elem>{0, 0, 1, 0});
    std::vector<Elem> x = {1, 0, 1, 1};
    Elem a1 = p.answer(0, x, qs[0]);
    Elem a2 = p.answer(1, x, qs[1]);
    CHECK(a1 == 0);
    CHECK(a2 == 1);
    std::vector<Elem> answers = {a1, a2};
    CHECK(p.reconstruct(4, 2, answers) == 1);
}

TEST_CASE("xor2 worked example: x=(1,0,1,1), i=3, a=(1,1,0,0)") {
    XorProtocol p = xor2();
    RandomTape tape(p.field(), std::vector<Elem>{1, 1, 0, 0});
    auto qs = p.make_queries(4, 2, tape);
    std::vector<Elem> x = {1, 0, 1, 1};
    Elem a1 = p.answer(0, x, qs[0]);
    Elem a2 = p.answer(1, x, qs[1]);
    CHECK(a1 == 1);
    CHECK(qs[1] == std::vector<Elem>{1, 1, 1, 0});
    CHECK(a2 == 0);
    std::vector<Elem> answers = {a1, a2};
    CHECK(p.reconstruct(4, 2, answers) == x[2]);
}

TEST_CASE("communication: 2n + 2 bits for one uncoded 2-server retrieval") {
    XorProtocol p = xor2();
    size_t n = 10;
    CHECK(2 * p.upload_bits(n) + 2 * p.download_bits() == 2 * n + 2);
}

TEST_CASE("xork(k) reduces to xor2 at k=2 and reconstructs everywhere") {
    XorProtocol p2 = xor2();
    XorProtocol pk = xork(2);
    RandomTape t1(p2.field(), std::vector<Elem>{1, 0, 1});
    RandomTape t2(p2.field(), std::vector<Elem>{1, 0, 1});
    CHECK(p2.make_queries(3, 1, t1) == pk.make_queries(3, 1, t2));

    // k=3, all-zero tape: q1 = q2 = 0, q3 = e_i
    XorProtocol p3 = xork(3);
    RandomTape zero(p3.field(), std::vector<Elem>(8, 0));
    auto qs = p3.make_queries(4, 1, zero);
    CHECK(qs[0] == std::vector<Elem>(4, 0));
    CHECK(qs[1] == std::vector<Elem>(4, 0));
    CHECK(qs[2] == std::vector<Elem>{0, 1, 0, 0});
}

TEST_CASE("xork(3) exhaustive correctness over every tape, database and index") {
    XorProtocol p = xork(3);
    size_t n = 4;
    TapeSpace space(p.field(), p.tape_draws(n));
    CHECK(space.size() == 256);
    for (unsigned xbits = 0; xbits < 16; ++xbits) {
        std::vector<Elem> x(n);
        for (size_t t = 0; t < n; ++t) x[t] = (xbits >> t) & 1;
        for (size_t i = 0; i < n; ++i)
            for (std::uint64_t tp = 0; tp < space.size(); ++tp) {
                RandomTape tape = space.at(tp);
                auto qs = p.make_queries(n, i, tape);
                std::vector<Elem> answers(3);
                for (size_t j = 0; j < 3; ++j) answers[j] = p.answer(j, x, qs[j]);
                CHECK(p.reconstruct(n, i, answers) == x[i]);
            }
    }
}

TEST_CASE("linearity selftest") {
    CHECK(linearity_selftest(xor2(), 16, 500).pass);
    CHECK(linearity_selftest(xork(4), 12, 10000).pass);
    SelfTestReport bad = linearity_selftest(AffineProtocol(), 8, 100);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("privacy audit, exact mode") {
    // xor2 at n=8: both marginals uniform over 2^8 tapes
    for (size_t j : {0u, 1u}) {
        AuditVerdict v = privacy_audit(xor2(), j, 8, 1, 6, AuditMode::kExact);
        CHECK(v.identical);
    }
    // xork(3), n=6, last server
    AuditVerdict v3 = privacy_audit(xork(3), 2, 6, 0, 5, AuditMode::kExact);
    CHECK(v3.identical);
    // i1 = i2 trivially identical
    CHECK(privacy_audit(xork(3), 0, 6, 2, 2, AuditMode::kExact).identical);
    // space guard
    CHECK_THROWS_AS(privacy_audit(xor2(), 0, 32, 0, 1, AuditMode::kExact), GuardError);
}

TEST_CASE("privacy audit, sampled mode") {
    AuditVerdict v = privacy_audit(xor2(), 1, 4, 0, 3, AuditMode::kSampled, 20000);
    CHECK(v.identical);
}

TEST_CASE("every single query is marginally uniform at small n") {
    // exact check: each query vector of xork(3) appears equally often
    XorProtocol p = xork(3);
    size_t n = 3;
    TapeSpace space(p.field(), p.tape_draws(n));
    for (size_t j = 0; j < 3; ++j) {
        std::map<std::vector<Elem>, size_t> counts;
        for (std::uint64_t t = 0; t < space.size(); ++t) {
            RandomTape tape = space.at(t);
            counts[p.make_queries(n, 0, tape)[j]]++;
        }
        CHECK(counts.size() == 8);
        for (auto& [q, c] : counts) CHECK(c == space.size() / 8);
    }
}

TEST_CASE("exact tape exhaustion throws") {
    RandomTape tape(Field::gf2(), std::vector<Elem>{1});
    tape.draw();
    CHECK_THROWS_AS(tape.draw(), DomainError);
}
