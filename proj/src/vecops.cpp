#include "vecops.hpp"

#include <cmath>

namespace spreadgram::vec {

double dot(const double* a, const double* b, std::size_t d) {
  double z = 0.0;
  for (std::size_t j = 0; j < d; ++j) z += a[j] * b[j];
  return z;
}

bool axpy(double* y, double s, const double* x, std::size_t d) {
  bool ok = true;
  for (std::size_t j = 0; j < d; ++j) {
    y[j] += s * x[j];
    ok &= std::isfinite(y[j]);
  }
  return ok;
}

bool scale_add(double* out, const double* base, double s, const double* acc,
               std::size_t d) {
  bool ok = true;
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = base[j] + s * acc[j];
    ok &= std::isfinite(out[j]);
  }
  return ok;
}

void matvec(const double* W, const double* x, double* out, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    const double* row = W + i * d;
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
    out[i] = z;
  }
}

void matvec_t(const double* W, const double* x, double* out, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) out[i] = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double* row = W + i * d;
    const double xi = x[i];
    for (std::size_t j = 0; j < d; ++j) out[j] += row[j] * xi;
  }
}

void outer_acc(double* W, double s, const double* u, const double* v,
               std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    double* row = W + i * d;
    const double su = s * u[i];
    for (std::size_t j = 0; j < d; ++j) row[j] += su * v[j];
  }
}

}  // namespace spreadgram::vec
