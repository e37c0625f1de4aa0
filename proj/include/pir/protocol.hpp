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

#ifndef PIR_PROTOCOL_HPP_
#define PIR_PROTOCOL_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pir/gf.hpp"

namespace pir {

/// Replayable randomness for query generation. Sampled mode wraps a seeded
/// PRNG; exact mode replays an explicit list of field-element draws so a
/// privacy audit can walk the whole randomness space exactly once.
class RandomTape {
public:
    RandomTape(const Field& f, std::uint64_t seed);
    RandomTape(const Field& f, std::vector<Elem> draws);

    Elem draw();
    const std::vector<Elem>& log() const { return log_; }
    const Field& field() const { return field_; }

private:
    Field field_;
    bool exact_;
    std::vector<Elem> fixed_;
    size_t cursor_ = 0;
    std::mt19937_64 rng_;
    std::vector<Elem> log_;
};

/// Mixed-radix counter over all q^draws tapes.
class TapeSpace {
public:
    TapeSpace(const Field& f, size_t draws);
    std::uint64_t size() const { return size_; }
    RandomTape at(std::uint64_t index) const;

private:
    Field field_;
    size_t draws_;
    std::uint64_t size_;
};

/// The (Q, A, C) contract of a linear k-server PIR protocol. Queries are
/// length-n vectors over the field; answers are single field elements,
/// additive in the stored data.
class LinearPirProtocol {
public:
    virtual ~LinearPirProtocol() = default;
    virtual const Field& field() const = 0;
    virtual size_t servers() const = 0;
    virtual std::string name() const = 0;

    /// Tape draws consumed by make_queries for database length n.
    virtual size_t tape_draws(size_t n) const = 0;
    virtual std::vector<std::vector<Elem>> make_queries(size_t n, size_t i,
                                                        RandomTape& tape) const = 0;
    /// Server j's answer. Linear in `data` for every honest protocol here.
    virtual Elem answer(size_t j, std::span<const Elem> data,
                        std::span<const Elem> query) const;
    virtual Elem reconstruct(size_t n, size_t i,
                             std::span<const Elem> answers) const = 0;

    /// Per-server communication in bits (information content).
    size_t upload_bits(size_t n) const;
    size_t download_bits() const;
    size_t elem_bits() const;
};

/// The additive XOR scheme generalized to k servers: k-1 queries uniform,
/// the last one offset by e_i; the answers are inner products and their sum
/// reconstructs x_i. k = 2 is exactly the classic two-server scheme.
class XorProtocol final : public LinearPirProtocol {
public:
    XorProtocol(const Field& f, size_t k);
    const Field& field() const override { return field_; }
    size_t servers() const override { return k_; }
    std::string name() const override;
    size_t tape_draws(size_t n) const override { return (k_ - 1) * n; }
    std::vector<std::vector<Elem>> make_queries(size_t n, size_t i,
                                                RandomTape& tape) const override;
    Elem reconstruct(size_t n, size_t i, std::span<const Elem> answers) const override;

private:
    Field field_;
    size_t k_;
};

/// GF(2) two-server instance (Example-1 scheme).
XorProtocol xor2();
/// k-server additive generalization over GF(2).
XorProtocol xork(size_t k);

struct SelfTestReport {
    bool pass = true;
    size_t failing_server = 0;
    std::string detail;
};

/// Samples messages, indices and tapes and checks the linearity identity
/// A(j, x1+x2, q) = A(j, x1, q) + A(j, x2, q) on every server.
SelfTestReport linearity_selftest(const LinearPirProtocol& p, size_t n, size_t trials,
                                  std::uint64_t seed = 17);

enum class AuditMode { kExact, kSampled };

struct AuditVerdict {
    bool identical = true;
    std::string detail;
    double statistic = 0.0;  // sampled mode: total-variation estimate
};

/// Per-server privacy: the distribution of query j must not depend on the
/// retrieved index. Exact mode enumerates the full tape space (guarded at
/// 2^20) and compares the two query multisets; sampled mode compares
/// empirical distributions against a fixed total-variation threshold.
AuditVerdict privacy_audit(const LinearPirProtocol& p, size_t server_j, size_t n,
                           size_t i1, size_t i2, AuditMode mode,
                           size_t samples = 20000, std::uint64_t seed = 23);

}  // namespace pir

#endif  // PIR_PROTOCOL_HPP_
