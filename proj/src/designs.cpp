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

#include "pir/designs.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pir {

namespace {

unsigned long long binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned long long r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

void validate_design(const SteinerSystem& s) {
    if (s.t != 2) throw DomainError("validate_design: only t = 2 is supported");
    if (s.n < s.ell) throw DomainError("validate_design: n < block size");
    unsigned long long want_blocks = binom(s.n, 2) / binom(s.ell, 2);
    if (s.blocks.size() != want_blocks)
        throw DomainError("validate_design: wrong block count");
    std::vector<std::uint8_t> pair_count(size_t(s.n) * s.n, 0);
    for (const auto& b : s.blocks) {
        if (b.size() != s.ell) throw DomainError("validate_design: wrong block size");
        for (size_t i = 0; i < b.size(); ++i) {
            if (b[i] >= s.n) throw DomainError("validate_design: point out of range");
            for (size_t j = i + 1; j < b.size(); ++j) {
                std::uint32_t lo = std::min(b[i], b[j]), hi = std::max(b[i], b[j]);
                if (lo == hi) throw DomainError("validate_design: repeated point in block");
                if (++pair_count[size_t(lo) * s.n + hi] > 1)
                    throw DomainError("validate_design: pair covered twice");
            }
        }
    }
    for (std::uint32_t i = 0; i < s.n; ++i)
        for (std::uint32_t j = i + 1; j < s.n; ++j)
            if (pair_count[size_t(i) * s.n + j] != 1)
                throw DomainError("validate_design: uncovered pair");
}

size_t replication_number(const SteinerSystem& s) {
    return size_t(binom(s.n - 1, s.t - 1) / binom(s.ell - 1, s.t - 1));
}

namespace {

// Bose, n = 6u + 3: points Z_{2u+1} x {0,1,2}, idempotent commutative
// quasigroup x*y = (x+y)(u+1) mod (2u+1).
SteinerSystem bose(unsigned n) {
    unsigned u = (n - 3) / 6;
    unsigned g = 2 * u + 1;
    auto idx = [](unsigned x, unsigned c) { return std::uint32_t(3 * x + c); };
    auto q = [u, g](unsigned x, unsigned y) { return ((x + y) * (u + 1)) % g; };
    SteinerSystem s{2, 3, n, {}};
    for (unsigned x = 0; x < g; ++x)
        s.blocks.push_back({idx(x, 0), idx(x, 1), idx(x, 2)});
    for (unsigned x = 0; x < g; ++x)
        for (unsigned y = x + 1; y < g; ++y)
            for (unsigned c = 0; c < 3; ++c)
                s.blocks.push_back({idx(x, c), idx(y, c), idx(q(x, y), (c + 1) % 3)});
    return s;
}

// Skolem, n = 6u + 1: points (Z_{2u} x {0,1,2}) plus an infinity point,
// half-idempotent commutative quasigroup built by relabeling x+y mod 2u.
SteinerSystem skolem(unsigned n) {
    unsigned u = (n - 1) / 6;
    unsigned g = 2 * u;
    std::uint32_t inf = n - 1;
    auto idx = [](unsigned x, unsigned c) { return std::uint32_t(3 * x + c); };
    auto relab = [u](unsigned e) { return e % 2 == 0 ? e / 2 : u + (e - 1) / 2; };
    auto q = [g, relab](unsigned x, unsigned y) { return relab((x + y) % g); };
    SteinerSystem s{2, 3, n, {}};
    for (unsigned x = 0; x < u; ++x)
        s.blocks.push_back({idx(x, 0), idx(x, 1), idx(x, 2)});
    for (unsigned x = 0; x < u; ++x)
        for (unsigned c = 0; c < 3; ++c)
            s.blocks.push_back({inf, idx(u + x, c), idx(x, (c + 1) % 3)});
    for (unsigned x = 0; x < g; ++x)
        for (unsigned y = x + 1; y < g; ++y)
            for (unsigned c = 0; c < 3; ++c)
                s.blocks.push_back({idx(x, c), idx(y, c), idx(q(x, y), (c + 1) % 3)});
    return s;
}

}  // namespace

SteinerSystem steiner_triple(unsigned n) {
    if (n < 7 || (n % 6 != 1 && n % 6 != 3))
        throw DomainError("steiner_triple: need n = 1 or 3 (mod 6), n >= 7");
    SteinerSystem s = (n % 6 == 3) ? bose(n) : skolem(n);
    for (auto& b : s.blocks) std::sort(b.begin(), b.end());
    validate_design(s);
    return s;
}

SteinerSystem projective_plane(unsigned q) {
    Field f = Field::of_order(q);
    // normalized homogeneous triples: first nonzero coordinate is 1
    std::vector<std::array<Elem, 3>> pts;
    for (unsigned y = 0; y < q; ++y)
        for (unsigned z = 0; z < q; ++z) pts.push_back({1, Elem(y), Elem(z)});
    for (unsigned z = 0; z < q; ++z) pts.push_back({0, 1, Elem(z)});
    pts.push_back({0, 0, 1});

    SteinerSystem s{2, q + 1, q * q + q + 1, {}};
    for (const auto& line : pts) {
        std::vector<std::uint32_t> b;
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            Elem dot = 0;
            for (int c = 0; c < 3; ++c) dot = f.add(dot, f.mul(line[c], pts[i][c]));
            if (dot == 0) b.push_back(i);
        }
        std::sort(b.begin(), b.end());
        s.blocks.push_back(std::move(b));
    }
    validate_design(s);
    return s;
}

std::string to_text(const SteinerSystem& s) {
    std::ostringstream os;
    os << s.t << ' ' << s.ell << ' ' << s.n << '\n';
    for (const auto& b : s.blocks) {
        for (size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
        os << '\n';
    }
    return os.str();
}

SteinerSystem steiner_from_text(const std::string& text) {
    std::istringstream is(text);
    SteinerSystem s;
    if (!(is >> s.t >> s.ell >> s.n)) throw ParseError("steiner text: bad header");
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::uint32_t> b;
        std::uint32_t x;
        while (ls >> x) b.push_back(x);
        if (b.size() != s.ell) throw ParseError("steiner text: wrong block size");
        s.blocks.push_back(std::move(b));
    }
    validate_design(s);
    return s;
}

}  // namespace pir
