#pragma once

#include "core/matrix.hpp"

// Matrix-product kernels. Each product exists twice: an OpenMP variant used
// by the pipeline and a plain triple-loop serial reference kept for testing.
// Both accumulate along k in ascending order; the compiler may fuse
// multiply-adds differently between the two loop forms, so the unit tests
// and the benchmark target (bench/kernels_bench) compare them to a few ulp.
// Each output element is written by exactly one thread with a fixed
// accumulation order, so re-running the same binary is bit-reproducible
// regardless of thread count.
namespace gg::kernels {

// C = A * B^T        A: m x k, B: n x k, C: m x n
void matmul_nt(const Matrix& A, const Matrix& B, Matrix& C);
void matmul_nt_serial(const Matrix& A, const Matrix& B, Matrix& C);

// C = A * B          A: m x k, B: k x n, C: m x n
void matmul_nn(const Matrix& A, const Matrix& B, Matrix& C);
void matmul_nn_serial(const Matrix& A, const Matrix& B, Matrix& C);

// C (+)= A^T * B     A: k x m, B: k x n, C: m x n
void matmul_tn(const Matrix& A, const Matrix& B, Matrix& C, bool accumulate = false);
void matmul_tn_serial(const Matrix& A, const Matrix& B, Matrix& C, bool accumulate = false);

Matrix transposed(const Matrix& A);

}  // namespace gg::kernels
