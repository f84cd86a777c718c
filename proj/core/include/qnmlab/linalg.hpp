#pragma once

#include <vector>

#include "qnmlab/constants.hpp"

namespace qnmlab {

// Dense column-major complex matrix, sized for LAPACK.
class Matrix {
public:
    Matrix() : n_rows_(0), n_cols_(0) {}
    Matrix(int rows, int cols)
        : n_rows_(rows), n_cols_(cols),
          data_(static_cast<size_t>(rows) * cols, cplx(0.0)) {}

    cplx& operator()(int i, int j) {
        return data_[static_cast<size_t>(j) * n_rows_ + i];
    }
    const cplx& operator()(int i, int j) const {
        return data_[static_cast<size_t>(j) * n_rows_ + i];
    }

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

private:
    int n_rows_, n_cols_;
    std::vector<cplx> data_;
};

struct EigenDecomposition {
    std::vector<cplx> values; // eigenvalues, order as returned by LAPACK
    Matrix right;             // right eigenvectors as columns
};

// Full eigendecomposition of a general complex matrix (LAPACK zgeev).
EigenDecomposition eigs(const Matrix& a);

// Eigenvalues only; much cheaper when no vectors are needed.
std::vector<cplx> eig_values(const Matrix& a);

// Solve a x = b in place; b holds one or more right-hand-side columns.
// Throws SingularAtEigenvalue when the factorization finds an exact zero
// pivot.
Matrix solve(Matrix a, Matrix b);

// Matrix inverse via zgetrf/zgetri.
Matrix inverse(Matrix a);

Matrix multiply(const Matrix& a, const Matrix& b);

} // namespace qnmlab
