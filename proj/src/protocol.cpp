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

#include "pir/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pir {

RandomTape::RandomTape(const Field& f, std::uint64_t seed)
    : field_(f), exact_(false), rng_(seed) {}

RandomTape::RandomTape(const Field& f, std::vector<Elem> draws)
    : field_(f), exact_(true), fixed_(std::move(draws)) {
    log_.reserve(fixed_.size());
}

Elem RandomTape::draw() {
    Elem v;
    if (exact_) {
        if (cursor_ >= fixed_.size())
            throw DomainError("RandomTape: exact tape exhausted");
        v = fixed_[cursor_++];
    } else {
        v = Elem(rng_() % field_.q());
    }
    log_.push_back(v);
    return v;
}

TapeSpace::TapeSpace(const Field& f, size_t draws) : field_(f), draws_(draws) {
    double total = 1;
    for (size_t i = 0; i < draws; ++i) {
        total *= f.q();
        if (total > double(std::uint64_t(1) << 20))
            throw GuardError("TapeSpace: randomness space exceeds 2^20");
    }
    size_ = std::uint64_t(total);
}

RandomTape TapeSpace::at(std::uint64_t index) const {
    std::vector<Elem> draws(draws_);
    for (size_t d = 0; d < draws_; ++d) {
        draws[d] = Elem(index % field_.q());
        index /= field_.q();
    }
    return RandomTape(field_, std::move(draws));
}

Elem LinearPirProtocol::answer(size_t, std::span<const Elem> data,
                               std::span<const Elem> query) const {
    if (data.size() != query.size())
        throw ShapeError("answer: query length differs from chunk length");
    const Field& f = field();
    if (f.q() == 2) {
        unsigned acc = 0;
        for (size_t t = 0; t < data.size(); ++t) acc ^= data[t] & query[t];
        return Elem(acc & 1);
    }
    Elem acc = 0;
    for (size_t t = 0; t < data.size(); ++t) acc = f.add(acc, f.mul(data[t], query[t]));
    return acc;
}

size_t LinearPirProtocol::elem_bits() const {
    unsigned q = field().q();
    size_t bits = 0;
    while ((1u << bits) < q) ++bits;
    return bits;
}

size_t LinearPirProtocol::upload_bits(size_t n) const { return n * elem_bits(); }
size_t LinearPirProtocol::download_bits() const { return elem_bits(); }

XorProtocol::XorProtocol(const Field& f, size_t k) : field_(f), k_(k) {
    if (k < 2) throw DomainError("XorProtocol: k >= 2");
}

std::string XorProtocol::name() const {
    return k_ == 2 ? "xor2" : "xork(" + std::to_string(k_) + ")";
}

std::vector<std::vector<Elem>> XorProtocol::make_queries(size_t n, size_t i,
                                                         RandomTape& tape) const {
    if (i >= n) throw DomainError("make_queries: index out of range");
    std::vector<std::vector<Elem>> qs(k_, std::vector<Elem>(n, 0));
    for (size_t j = 0; j + 1 < k_; ++j)
        for (size_t t = 0; t < n; ++t) qs[j][t] = tape.draw();
    // last query: e_i minus the sum of the others, so the queries add to e_i
    std::vector<Elem>& last = qs[k_ - 1];
    last[i] = 1;
    for (size_t j = 0; j + 1 < k_; ++j)
        for (size_t t = 0; t < n; ++t) last[t] = field_.sub(last[t], qs[j][t]);
    return qs;
}

Elem XorProtocol::reconstruct(size_t, size_t, std::span<const Elem> answers) const {
    if (answers.size() != k_) throw ShapeError("reconstruct: expected k answers");
    Elem acc = 0;
    for (Elem a : answers) acc = field_.add(acc, a);
    return acc;
}

XorProtocol xor2() { return XorProtocol(Field::gf2(), 2); }
XorProtocol xork(size_t k) { return XorProtocol(Field::gf2(), k); }

SelfTestReport linearity_selftest(const LinearPirProtocol& p, size_t n, size_t trials,
                                  std::uint64_t seed) {
    const Field& f = p.field();
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < trials; ++t) {
        std::vector<Elem> x1(n), x2(n), xsum(n);
        for (size_t c = 0; c < n; ++c) {
            x1[c] = Elem(rng() % f.q());
            x2[c] = Elem(rng() % f.q());
            xsum[c] = f.add(x1[c], x2[c]);
        }
        size_t i = rng() % n;
        RandomTape tape(f, rng());
        auto qs = p.make_queries(n, i, tape);
        for (size_t j = 0; j < p.servers(); ++j) {
            Elem lhs = p.answer(j, xsum, qs[j]);
            Elem rhs = f.add(p.answer(j, x1, qs[j]), p.answer(j, x2, qs[j]));
            if (lhs != rhs)
                return SelfTestReport{false, j,
                                      "linearity identity violated on trial " +
                                          std::to_string(t)};
        }
    }
    return SelfTestReport{};
}

namespace {

std::string key_of(const std::vector<Elem>& v) {
    return std::string(v.begin(), v.end());
}

}  // namespace

AuditVerdict privacy_audit(const LinearPirProtocol& p, size_t server_j, size_t n,
                           size_t i1, size_t i2, AuditMode mode, size_t samples,
                           std::uint64_t seed) {
    if (server_j >= p.servers()) throw DomainError("privacy_audit: bad server index");
    const Field& f = p.field();
    if (mode == AuditMode::kExact) {
        TapeSpace space(f, p.tape_draws(n));
        std::map<std::string, long long> count1, count2;
        for (std::uint64_t t = 0; t < space.size(); ++t) {
            RandomTape tape1 = space.at(t), tape2 = space.at(t);
            count1[key_of(p.make_queries(n, i1, tape1)[server_j])]++;
            count2[key_of(p.make_queries(n, i2, tape2)[server_j])]++;
        }
        if (count1 == count2) return AuditVerdict{true, "exact multiset equality", 0.0};
        return AuditVerdict{false, "query multisets differ between the two indices", 1.0};
    }
    std::map<std::string, long long> count1, count2;
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < samples; ++t) {
        RandomTape tape1(f, rng()), tape2(f, rng());
        count1[key_of(p.make_queries(n, i1, tape1)[server_j])]++;
        count2[key_of(p.make_queries(n, i2, tape2)[server_j])]++;
    }
    double tv = 0;
    std::map<std::string, long long> all = count1;
    for (auto& [k, v] : count2) all[k] += 0;
    for (auto& [k, v] : all) {
        double p1 = double(count1.count(k) ? count1[k] : 0) / double(samples);
        double p2 = double(count2.count(k) ? count2[k] : 0) / double(samples);
        tv += std::abs(p1 - p2);
    }
    tv /= 2;
    constexpr double kThreshold = 0.1;
    if (tv <= kThreshold)
        return AuditVerdict{true, "empirical total variation below threshold", tv};
    return AuditVerdict{false, "empirical total variation above threshold", tv};
}

}  // namespace pir
