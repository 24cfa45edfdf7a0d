#include "core/kernels.hpp"

#include <cstdint>
#include <stdexcept>

namespace gg::kernels {

namespace {

void check_dims(int ar, int ac, int br, int bc, int k_a, int k_b, const char* what) {
    (void)ar;
    (void)bc;
    if (k_a != k_b)
        throw std::invalid_argument(std::string(what) + ": inner dimensions disagree (" + std::to_string(k_a) +
                                    " vs " + std::to_string(k_b) + ")");
    if (ac < 0 || br < 0) throw std::invalid_argument(std::string(what) + ": bad shape");
}

// Work small enough that spawning a team costs more than it saves.
constexpr std::int64_t kParallelCutoff = 1 << 15;

}  // namespace

Matrix transposed(const Matrix& A) {
    Matrix T(A.cols(), A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        const double* a = A.row(i);
        for (int j = 0; j < A.cols(); ++j) T(j, i) = a[j];
    }
    return T;
}

// The OpenMP kernels all run in saxpy order (i, k, j with j contiguous):
// the inner loop has no reduction dependency, so it vectorizes without
// reassociating floating-point sums.

void matmul_nn(const Matrix& A, const Matrix& B, Matrix& C) {
    check_dims(A.rows(), A.cols(), B.rows(), B.cols(), A.cols(), B.rows(), "matmul_nn");
    const int m = A.rows(), k = A.cols(), n = B.cols();
    C = Matrix(m, n);
    const std::int64_t work = static_cast<std::int64_t>(m) * k * n;
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
    for (int i = 0; i < m; ++i) {
        const double* a = A.row(i);
        double* c = C.row(i);
        for (int p = 0; p < k; ++p) {
            const double av = a[p];
            const double* b = B.row(p);
            for (int j = 0; j < n; ++j) c[j] += av * b[j];
        }
    }
}

void matmul_nn_serial(const Matrix& A, const Matrix& B, Matrix& C) {
    check_dims(A.rows(), A.cols(), B.rows(), B.cols(), A.cols(), B.rows(), "matmul_nn");
    const int m = A.rows(), k = A.cols(), n = B.cols();
    C = Matrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int p = 0; p < k; ++p) s += A(i, p) * B(p, j);
            C(i, j) = s;
        }
}

void matmul_nt(const Matrix& A, const Matrix& B, Matrix& C) {
    check_dims(A.rows(), A.cols(), B.rows(), B.cols(), A.cols(), B.cols(), "matmul_nt");
    // Transposing B costs O(n*k) against the O(m*n*k) product and buys the
    // contiguous inner loop.
    Matrix BT = transposed(B);
    matmul_nn(A, BT, C);
}

void matmul_nt_serial(const Matrix& A, const Matrix& B, Matrix& C) {
    check_dims(A.rows(), A.cols(), B.rows(), B.cols(), A.cols(), B.cols(), "matmul_nt");
    const int m = A.rows(), k = A.cols(), n = B.rows();
    C = Matrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int p = 0; p < k; ++p) s += A(i, p) * B(j, p);
            C(i, j) = s;
        }
}

void matmul_tn(const Matrix& A, const Matrix& B, Matrix& C, bool accumulate) {
    check_dims(A.cols(), A.rows(), B.rows(), B.cols(), A.rows(), B.rows(), "matmul_tn");
    const int k = A.rows(), m = A.cols(), n = B.cols();
    if (!accumulate)
        C = Matrix(m, n);
    else
        C.require_shape(m, n, "matmul_tn accumulate");
    const std::int64_t work = static_cast<std::int64_t>(m) * k * n;
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
    for (int i = 0; i < m; ++i) {
        double* c = C.row(i);
        for (int p = 0; p < k; ++p) {
            const double av = A(p, i);
            const double* b = B.row(p);
            for (int j = 0; j < n; ++j) c[j] += av * b[j];
        }
    }
}

void matmul_tn_serial(const Matrix& A, const Matrix& B, Matrix& C, bool accumulate) {
    check_dims(A.cols(), A.rows(), B.rows(), B.cols(), A.rows(), B.rows(), "matmul_tn");
    const int k = A.rows(), m = A.cols(), n = B.cols();
    if (!accumulate)
        C = Matrix(m, n);
    else
        C.require_shape(m, n, "matmul_tn accumulate");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int p = 0; p < k; ++p) s += A(p, i) * B(p, j);
            C(i, j) += s;
        }
}

}  // namespace gg::kernels
