#include "qnmlab/linalg.hpp"

#include <lapacke.h>

#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {
lapack_complex_double* lp(cplx* p) {
    return reinterpret_cast<lapack_complex_double*>(p);
}
} // namespace

EigenDecomposition eigs(const Matrix& a) {
    const int n = a.rows();
    Matrix work = a;
    EigenDecomposition d;
    d.values.resize(n);
    d.right = Matrix(n, n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'V', n, lp(work.data()), n,
        lp(d.values.data()), nullptr, 1, lp(d.right.data()), n);
    if (info != 0)
        throw DefectiveMatrix("zgeev failed, info=" + std::to_string(info));
    return d;
}

std::vector<cplx> eig_values(const Matrix& a) {
    const int n = a.rows();
    Matrix work = a;
    std::vector<cplx> values(n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lp(work.data()), n,
                      lp(values.data()), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw DefectiveMatrix("zgeev failed, info=" + std::to_string(info));
    return values;
}

Matrix solve(Matrix a, Matrix b) {
    const int n = a.rows();
    std::vector<lapack_int> ipiv(n);
    const lapack_int info =
        LAPACKE_zgesv(LAPACK_COL_MAJOR, n, b.cols(), lp(a.data()), n,
                      ipiv.data(), lp(b.data()), n);
    if (info > 0)
        throw SingularAtEigenvalue("zgesv: singular system, pivot " +
                                   std::to_string(info));
    if (info < 0)
        throw QnmError("zgesv: bad argument " + std::to_string(-info));
    return b;
}

Matrix inverse(Matrix a) {
    const int n = a.rows();
    std::vector<lapack_int> ipiv(n);
    lapack_int info =
        LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(a.data()), n, ipiv.data());
    if (info != 0)
        throw SingularAtEigenvalue("zgetrf: singular matrix, pivot " +
                                   std::to_string(info));
    info = LAPACKE_zgetri(LAPACK_COL_MAJOR, n, lp(a.data()), n, ipiv.data());
    if (info != 0)
        throw SingularAtEigenvalue("zgetri failed, info=" +
                                   std::to_string(info));
    return a;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (int j = 0; j < b.cols(); ++j)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx bkj = b(k, j);
            if (bkj == cplx(0.0)) continue;
            for (int i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

} // namespace qnmlab
