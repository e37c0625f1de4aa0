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

#include "pir/matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pir {

Matrix::Matrix(const Field& f, size_t rows, size_t cols)
    : f_(f), rows_(rows), cols_(cols) {
    if (f_.q() == 2) {
        wpr_ = (cols_ + 63) / 64;
        bits_.assign(rows_ * wpr_, 0);
    } else {
        bytes_.assign(rows_ * cols_, 0);
    }
}

Matrix Matrix::identity(const Field& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Elem Matrix::at(size_t r, size_t c) const {
    if (f_.q() == 2) return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1;
    return bytes_[r * cols_ + c];
}

void Matrix::set(size_t r, size_t c, Elem v) {
    if (f_.q() == 2) {
        std::uint64_t& w = bits_[r * wpr_ + c / 64];
        std::uint64_t bit = std::uint64_t(1) << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    } else {
        bytes_[r * cols_ + c] = v;
    }
}

void Matrix::row_swap(size_t a, size_t b) {
    if (a == b) return;
    if (f_.q() == 2)
        std::swap_ranges(bits_.begin() + a * wpr_, bits_.begin() + (a + 1) * wpr_,
                         bits_.begin() + b * wpr_);
    else
        std::swap_ranges(bytes_.begin() + a * cols_, bytes_.begin() + (a + 1) * cols_,
                         bytes_.begin() + b * cols_);
}

void Matrix::row_scale(size_t r, Elem v) {
    if (f_.q() == 2) {
        if (v == 0)
            std::fill(bits_.begin() + r * wpr_, bits_.begin() + (r + 1) * wpr_, 0);
        return;
    }
    for (size_t c = 0; c < cols_; ++c)
        bytes_[r * cols_ + c] = f_.mul(bytes_[r * cols_ + c], v);
}

void Matrix::row_addmul(size_t dst, size_t src, Elem coef) {
    if (coef == 0) return;
    if (f_.q() == 2) {
        for (size_t w = 0; w < wpr_; ++w) bits_[dst * wpr_ + w] ^= bits_[src * wpr_ + w];
        return;
    }
    for (size_t c = 0; c < cols_; ++c)
        bytes_[dst * cols_ + c] =
            f_.add(bytes_[dst * cols_ + c], f_.mul(coef, bytes_[src * cols_ + c]));
}

std::vector<Elem> Matrix::row(size_t r) const {
    std::vector<Elem> out(cols_);
    for (size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

std::vector<Elem> Matrix::col(size_t c) const {
    std::vector<Elem> out(rows_);
    for (size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

std::uint64_t Matrix::col_mask(size_t c) const {
    if (f_.q() != 2 || rows_ > 64) throw ShapeError("col_mask needs GF(2), rows <= 64");
    std::uint64_t m = 0;
    for (size_t r = 0; r < rows_; ++r)
        if (at(r, c)) m |= std::uint64_t(1) << r;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(f_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Matrix Matrix::submatrix_cols(const std::vector<size_t>& cols) const {
    Matrix s(f_, rows_, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t r = 0; r < rows_; ++r) s.set(r, j, at(r, cols[j]));
    return s;
}

bool Matrix::operator==(const Matrix& o) const {
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (f_.q() == 2) return bits_ == o.bits_;
    return bytes_ == o.bytes_;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field() || a.cols() != b.rows())
        throw ShapeError("matrix product shape/field mismatch");
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t t = 0; t < a.cols(); ++t) {
            Elem v = a.at(i, t);
            if (v == 0) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                out.set(i, j, f.add(out.at(i, j), f.mul(v, b.at(t, j))));
        }
    return out;
}

std::vector<Elem> encode(const std::vector<Elem>& u, const Matrix& g) {
    if (u.size() != g.rows()) throw ShapeError("encode: message length != matrix rows");
    const Field& f = g.field();
    std::vector<Elem> c(g.cols(), 0);
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (size_t j = 0; j < g.cols(); ++j)
            c[j] = f.add(c[j], f.mul(u[i], g.at(i, j)));
    }
    return c;
}

Rref rref(const Matrix& m) {
    const Field& f = m.field();
    Rref out{m, {}, {}};
    Matrix& r = out.reduced;
    size_t lead = 0;
    for (size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        size_t piv = lead;
        while (piv < m.rows() && r.at(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != lead) {
            r.row_swap(piv, lead);
            out.ops.push_back({RowOp::kSwap, piv, lead, 0});
        }
        Elem inv = f.inv(r.at(lead, c));
        if (inv != 1) {
            r.row_scale(lead, inv);
            out.ops.push_back({RowOp::kScale, lead, 0, inv});
        }
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == lead) continue;
            Elem v = r.at(i, c);
            if (v == 0) continue;
            Elem coef = f.neg(v);
            r.row_addmul(i, lead, coef);
            out.ops.push_back({RowOp::kAddMul, i, lead, coef});
        }
        out.pivots.push_back(c);
        ++lead;
    }
    return out;
}

Matrix apply_ops(const Matrix& m, const std::vector<RowOp>& ops) {
    Matrix r = m;
    for (const RowOp& op : ops) {
        switch (op.kind) {
            case RowOp::kSwap: r.row_swap(op.a, op.b); break;
            case RowOp::kScale: r.row_scale(op.a, op.coef); break;
            case RowOp::kAddMul: r.row_addmul(op.a, op.b, op.coef); break;
        }
    }
    return r;
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix dual(const Matrix& g) {
    Rref rr = rref(g);
    size_t s = g.rows(), m = g.cols();
    if (rr.pivots.size() != s) throw DomainError("dual: generator is rank-deficient");
    const Field& f = g.field();
    std::vector<bool> is_pivot(m, false);
    for (size_t p : rr.pivots) is_pivot[p] = true;
    Matrix h(f, m - s, m);
    size_t hr = 0;
    for (size_t c = 0; c < m; ++c) {
        if (is_pivot[c]) continue;
        h.set(hr, c, 1);
        for (size_t t = 0; t < s; ++t)
            h.set(hr, rr.pivots[t], f.neg(rr.reduced.at(t, c)));
        ++hr;
    }
    return h;
}

namespace {

size_t min_distance_gf2(const Matrix& g) {
    size_t s = g.rows(), wpr = g.words_per_row();
    std::vector<std::uint64_t> acc(wpr, 0);
    size_t best = g.cols() + 1;
    // Gray-code walk over all nonzero messages: step t flips row ctz(t).
    for (std::uint64_t t = 1; t < (std::uint64_t(1) << s); ++t) {
        size_t r = std::countr_zero(t);
        const std::uint64_t* row = g.packed_row(r);
        size_t w = 0;
        for (size_t i = 0; i < wpr; ++i) {
            acc[i] ^= row[i];
            w += std::popcount(acc[i]);
        }
        best = std::min(best, w);
    }
    return best;
}

}  // namespace

size_t min_distance(const Matrix& g) {
    const Field& f = g.field();
    double states = 1;
    for (size_t i = 0; i < g.rows(); ++i) {
        states *= f.q();
        if (states > double(1 << 24))
            throw GuardError("min_distance: q^s exceeds the 2^24 enumeration guard");
    }
    if (rank(g) != g.rows()) throw DomainError("min_distance: generator is rank-deficient");
    if (f.q() == 2) return min_distance_gf2(g);

    size_t s = g.rows(), m = g.cols();
    std::vector<Elem> msg(s, 0), cw(m, 0);
    size_t best = m + 1;
    while (true) {
        // odometer over element encodings; the codeword tracks each digit
        // change by the element-wise difference of the encodings
        size_t d = 0;
        while (d < s && msg[d] + 1u == f.q()) {
            for (size_t j = 0; j < m; ++j)
                cw[j] = f.add(cw[j], f.mul(f.neg(msg[d]), g.at(d, j)));
            msg[d] = 0;
            ++d;
        }
        if (d == s) break;
        Elem delta = f.sub(Elem(msg[d] + 1), msg[d]);
        msg[d] = Elem(msg[d] + 1);
        for (size_t j = 0; j < m; ++j)
            cw[j] = f.add(cw[j], f.mul(delta, g.at(d, j)));
        size_t w = 0;
        for (size_t j = 0; j < m; ++j) w += cw[j] != 0;
        best = std::min(best, w);
    }
    return best;
}

bool same_row_space(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field() || a.cols() != b.cols()) return false;
    // each row of one reduces to zero against an rref basis of the other
    auto contains = [](const Matrix& basis, const Matrix& probe) {
        Rref rr = rref(basis);
        const Field& f = basis.field();
        for (size_t i = 0; i < probe.rows(); ++i) {
            std::vector<Elem> v = probe.row(i);
            for (size_t t = 0; t < rr.pivots.size(); ++t) {
                Elem coef = v[rr.pivots[t]];
                if (coef == 0) continue;
                for (size_t c = 0; c < v.size(); ++c)
                    v[c] = f.sub(v[c], f.mul(coef, rr.reduced.at(t, c)));
            }
            for (Elem e : v)
                if (e != 0) return false;
        }
        return true;
    };
    return contains(a, b) && contains(b, a);
}

std::string to_text(const Matrix& m) {
    std::ostringstream os;
    os << m.field().q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << elem_to_token(m.field(), m.at(r, c));
        }
        os << '\n';
    }
    return os.str();
}

Matrix matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    unsigned q = 0;
    size_t r = 0, c = 0;
    if (!(is >> q >> r >> c)) throw ParseError("matrix text: bad header");
    Field f = Field::of_order(q);
    Matrix m(f, r, c);
    std::string tok;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) {
            if (!(is >> tok)) throw ParseError("matrix text: truncated entries");
            m.set(i, j, elem_from_token(f, tok));
        }
    return m;
}

}  // namespace pir
