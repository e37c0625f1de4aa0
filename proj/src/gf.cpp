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

#include "pir/gf.hpp"

#include <array>
#include <sstream>

namespace pir {
namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed moduli for GF(2^w), w = 1..8. Low-weight irreducible polynomials;
// w = 8 is the AES polynomial x^8 + x^4 + x^3 + x + 1.
constexpr std::array<unsigned, 9> kGf2Moduli = {
    0,
    0b11,         // x + 1
    0b111,        // x^2 + x + 1
    0b1011,       // x^3 + x + 1
    0b10011,      // x^4 + x + 1
    0b100101,     // x^5 + x^2 + 1
    0b1000011,    // x^6 + x + 1
    0b10001001,   // x^7 + x^3 + 1
    0b100011011,  // x^8 + x^4 + x^3 + x + 1
};

// Polynomials over GF(p) encoded as base-p digit vectors (value = sum d_i p^i).

std::vector<unsigned> poly_digits(unsigned v, unsigned p) {
    std::vector<unsigned> d;
    while (v) {
        d.push_back(v % p);
        v /= p;
    }
    return d;
}

unsigned poly_encode(const std::vector<unsigned>& d, unsigned p) {
    unsigned v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

unsigned poly_mul_mod_p(unsigned a, unsigned b, unsigned p) {
    auto da = poly_digits(a, p), db = poly_digits(b, p);
    std::vector<unsigned> out(da.size() + db.size(), 0);
    for (size_t i = 0; i < da.size(); ++i)
        for (size_t j = 0; j < db.size(); ++j)
            out[i + j] = (out[i + j] + da[i] * db[j]) % p;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return poly_encode(out, p);
}

// Remainder of a modulo the monic polynomial m, over GF(p).
unsigned poly_rem(unsigned a, unsigned m, unsigned p) {
    auto da = poly_digits(a, p);
    auto dm = poly_digits(m, p);
    size_t degm = dm.size() - 1;
    while (da.size() > degm) {
        unsigned lead = da.back();
        if (lead != 0) {
            size_t shift = da.size() - 1 - degm;
            for (size_t i = 0; i <= degm; ++i) {
                unsigned sub = (lead * dm[i]) % p;
                da[i + shift] = (da[i + shift] + p * p - sub) % p;
            }
        }
        da.pop_back();
    }
    return poly_encode(da, p);
}

bool poly_is_irreducible(unsigned m, unsigned p, unsigned deg) {
    // Trial division by all monic polynomials of degree 1..deg/2
    // (encodings p^d .. 2*p^d - 1 are exactly the monic degree-d polys).
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned lo = 1;
        for (unsigned i = 0; i < d; ++i) lo *= p;
        for (unsigned f = lo; f < 2 * lo; ++f)
            if (poly_rem(m, f, p) == 0) return false;
    }
    return true;
}

unsigned find_irreducible(unsigned p, unsigned w) {
    unsigned lo = 1;
    for (unsigned i = 0; i < w; ++i) lo *= p;
    for (unsigned m = lo; m < 2 * lo; ++m)
        if (poly_is_irreducible(m, p, w)) return m;
    throw DomainError("no irreducible polynomial found (p=" + std::to_string(p) +
                      ", w=" + std::to_string(w) + ")");
}

}  // namespace

Field Field::gf2() { return Field(2, 1, kGf2Moduli[1]); }

Field Field::gf2ext(unsigned w) {
    if (w < 1 || w > 8) throw DomainError("GF(2^w) supported for 1 <= w <= 8");
    return Field(2, w, kGf2Moduli[w]);
}

Field Field::prime(unsigned p) {
    if (!is_prime(p) || p > 251) throw DomainError("p must be prime and <= 251");
    return Field(p, 1, 0);
}

Field Field::of_order(unsigned q) {
    if (q < 2 || q > 256) throw DomainError("field order must be in [2, 256]");
    unsigned p = 2;
    while (q % p != 0) {
        ++p;
        if (p * p > q) {
            p = q;
            break;
        }
    }
    unsigned w = 0, v = 1;
    while (v < q) v *= p, ++w;
    if (v != q || !is_prime(p)) throw DomainError("field order must be a prime power");
    if (p == 2) return gf2ext(w);
    if (w == 1) return prime(p);
    return Field(p, w, find_irreducible(p, w));
}

Field::Field(unsigned p, unsigned w, unsigned modulus)
    : p_(p), w_(w), modulus_(modulus) {
    q_ = 1;
    for (unsigned i = 0; i < w; ++i) q_ *= p;
    build_tables();
}

Elem Field::mul_raw(Elem a, Elem b) const {
    if (w_ == 1) return static_cast<Elem>((unsigned(a) * unsigned(b)) % p_);
    if (p_ == 2) {
        // carryless multiply then reduce by the modulus bit pattern
        unsigned acc = 0, x = a;
        for (unsigned y = b; y; y >>= 1, x <<= 1)
            if (y & 1) acc ^= x;
        for (int bit = 15; bit >= int(w_); --bit)
            if (acc & (1u << bit)) acc ^= modulus_ << (bit - w_);
        return static_cast<Elem>(acc);
    }
    return static_cast<Elem>(poly_rem(poly_mul_mod_p(a, b, p_), modulus_, p_));
}

void Field::build_tables() {
    mul_table_.assign(size_t(q_) * q_, 0);
    inv_table_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b <= a; ++b) {
            Elem r = mul_raw(Elem(a), Elem(b));
            mul_table_[size_t(a) * q_ + b] = r;
            mul_table_[size_t(b) * q_ + a] = r;
            if (r == 1) {
                inv_table_[a] = Elem(b);
                inv_table_[b] = Elem(a);
            }
        }
    // designated primitive element: smallest encoding of order q - 1
    for (unsigned c = 1; c < q_; ++c) {
        unsigned ord = 1;
        Elem x = Elem(c);
        while (x != 1) {
            x = mul_table_[size_t(x) * q_ + c];
            ++ord;
        }
        if (ord == q_ - 1) {
            alpha_ = Elem(c);
            break;
        }
    }
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (w_ == 1) return static_cast<Elem>((unsigned(a) + b) % p_);
    auto da = poly_digits(a, p_), db = poly_digits(b, p_);
    if (da.size() < db.size()) da.resize(db.size(), 0);
    for (size_t i = 0; i < db.size(); ++i) da[i] = (da[i] + db[i]) % p_;
    return static_cast<Elem>(poly_encode(da, p_));
}

Elem Field::neg(Elem a) const {
    if (p_ == 2) return a;
    if (w_ == 1) return a == 0 ? 0 : static_cast<Elem>(p_ - a);
    auto d = poly_digits(a, p_);
    for (auto& x : d) x = (p_ - x) % p_;
    return static_cast<Elem>(poly_encode(d, p_));
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const { return mul_table_[size_t(a) * q_ + b]; }

Elem Field::inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero in GF(" + name() + ")");
    return inv_table_[a];
}

Elem Field::pow(Elem a, unsigned long long e) const {
    Elem r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::string Field::name() const { return std::to_string(q_); }

std::string elem_to_token(const Field& f, Elem a) {
    if (f.q() <= 10) return std::to_string(unsigned(a));
    std::ostringstream os;
    os << std::hex << unsigned(a);
    return os.str();
}

Elem elem_from_token(const Field& f, const std::string& tok) {
    unsigned v = 0;
    std::istringstream is(tok);
    if (f.q() <= 10)
        is >> v;
    else
        is >> std::hex >> v;
    if (is.fail() || !is.eof() || v >= f.q())
        throw ParseError("bad element token '" + tok + "' for GF(" + f.name() + ")");
    return static_cast<Elem>(v);
}

}  // namespace pir
