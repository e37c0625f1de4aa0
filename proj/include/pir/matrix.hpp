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

#ifndef PIR_MATRIX_HPP_
#define PIR_MATRIX_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pir/gf.hpp"

namespace pir {

/// Dense matrix over GF(q). GF(2) rows are bit-packed into 64-bit words
/// (the code-search oracles enumerate huge numbers of GF(2) row sums);
/// every other field stores a byte per entry.
class Matrix {
public:
    Matrix(const Field& f, size_t rows, size_t cols);
    static Matrix identity(const Field& f, size_t n);

    const Field& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Elem at(size_t r, size_t c) const;
    void set(size_t r, size_t c, Elem v);

    void row_swap(size_t a, size_t b);
    void row_scale(size_t r, Elem v);
    /// row[dst] += coef * row[src]
    void row_addmul(size_t dst, size_t src, Elem coef);

    std::vector<Elem> row(size_t r) const;
    std::vector<Elem> col(size_t c) const;
    /// Column as a bit mask (GF(2) only, rows <= 64).
    std::uint64_t col_mask(size_t c) const;

    Matrix transposed() const;
    Matrix submatrix_cols(const std::vector<size_t>& cols) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    size_t words_per_row() const { return wpr_; }
    const std::uint64_t* packed_row(size_t r) const { return bits_.data() + r * wpr_; }

private:
    Field f_;
    size_t rows_, cols_, wpr_ = 0;
    std::vector<std::uint64_t> bits_;  // q == 2
    std::vector<Elem> bytes_;          // q > 2
};

struct RowOp {
    enum Kind { kSwap, kScale, kAddMul } kind;
    size_t a, b;
    Elem coef;
};

struct Rref {
    Matrix reduced;
    std::vector<size_t> pivots;
    std::vector<RowOp> ops;  // replaying these on the input reproduces `reduced`
};

Matrix mat_mul(const Matrix& a, const Matrix& b);

/// c = u * G (length-m codeword of the length-s message u).
std::vector<Elem> encode(const std::vector<Elem>& u, const Matrix& g);

size_t rank(const Matrix& m);
Rref rref(const Matrix& m);
Matrix apply_ops(const Matrix& m, const std::vector<RowOp>& ops);

/// Parity-check matrix H with G * H^T = 0; input must be full rank.
Matrix dual(const Matrix& g);

/// Minimum Hamming weight over all q^s - 1 nonzero codewords of the code
/// generated by g. Exhaustive; guarded at q^s <= 2^24 (s <= 24 for GF(2)).
size_t min_distance(const Matrix& g);

/// Same row space (mutual containment).
bool same_row_space(const Matrix& a, const Matrix& b);

/// Text format: first line "q r c", then r lines of c space-separated
/// digits (hex digits for q > 10).
std::string to_text(const Matrix& m);
Matrix matrix_from_text(const std::string& text);

}  // namespace pir

#endif  // PIR_MATRIX_HPP_
