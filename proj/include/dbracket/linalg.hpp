/*
 * Copyright 2026 dbracket contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "dbracket/rational.hpp"

#include <optional>
#include <vector>

namespace dbr {

using Vec = std::vector<GaussRat>;

/// Dense exact matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GaussRat& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const GaussRat& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    Vec apply(const Vec& v) const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    bool is_zero() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<GaussRat> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(Matrix& m);
int rank(Matrix m);
/// Basis of the kernel, one vector per free column.
std::vector<Vec> nullspace(Matrix m);
/// Some x with A x = b, or nullopt.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
/// Matrix whose columns are the given vectors (all of length n).
Matrix from_columns(const std::vector<Vec>& cols, int n);

}  // namespace dbr
