#pragma once

#include <cstddef>

// Shared dense kernels. Deliberately out-of-line: the homogeneous and
// heterogeneous update paths must run the exact same floating-point code so
// that identity mapping matrices reproduce the homogeneous trajectory bit
// for bit.

namespace spreadgram::vec {

double dot(const double* a, const double* b, std::size_t d);

// y += s * x; returns false if a written value is non-finite.
bool axpy(double* y, double s, const double* x, std::size_t d);

// out[j] = base[j] + s * acc[j]; returns false if non-finite.
bool scale_add(double* out, const double* base, double s, const double* acc,
               std::size_t d);

// out = W x  (W is d x d row-major)
void matvec(const double* W, const double* x, double* out, std::size_t d);

// out = W^T x
void matvec_t(const double* W, const double* x, double* out, std::size_t d);

// W += s * u v^T
void outer_acc(double* W, double s, const double* u, const double* v,
               std::size_t d);

}  // namespace spreadgram::vec
