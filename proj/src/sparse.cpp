#include "mixlag/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace mixlag {

void SparseCsr::mul(const Vector& x, Vector& y) const {
  y.resize(rows);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    const int end = ptr[i + 1];
    for (int k = ptr[i]; k < end; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

Vector SparseCsr::mul(const Vector& x) const {
  Vector y;
  mul(x, y);
  return y;
}

void SparseCsr::axpy_same_pattern(double s, const SparseCsr& other) {
  if (other.val.size() != val.size())
    throw std::invalid_argument("axpy_same_pattern: pattern mismatch");
  for (std::size_t k = 0; k < val.size(); ++k) val[k] += s * other.val[k];
}

double SparseCsr::max_abs() const {
  double m = 0.0;
  for (double v : val) m = std::max(m, std::abs(v));
  return m;
}

double SparseCsr::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int k = ptr[i]; k < ptr[i + 1]; ++k)
      m = std::max(m, std::abs(val[k] - at(col[k], i)));
  return m;
}

double SparseCsr::at(int i, int j) const {
  const int* beg = col.data() + ptr[i];
  const int* end = col.data() + ptr[i + 1];
  const int* it = std::lower_bound(beg, end, j);
  if (it != end && *it == j) return val[ptr[i] + (it - beg)];
  return 0.0;
}

SparseCsr add_scaled(const SparseCsr& a, double sa, const SparseCsr& b,
                     double sb) {
  if (a.val.size() != b.val.size() || a.rows != b.rows)
    throw std::invalid_argument("add_scaled: pattern mismatch");
  SparseCsr out = a;
  for (std::size_t k = 0; k < out.val.size(); ++k)
    out.val[k] = sa * a.val[k] + sb * b.val[k];
  return out;
}

void write_triplets(const SparseCsr& m, std::ostream& os) {
  char buf[80];
  for (int i = 0; i < m.rows; ++i)
    for (int k = m.ptr[i]; k < m.ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i, m.col[k], m.val[k]);
      os << buf;
    }
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

CgResult cg_solve(const SparseCsr& a, const Vector& b, Vector& x, double tol,
                  int max_iter, const std::function<void(Vector&)>& project) {
  const int n = a.rows;
  if (x.size() != std::size_t(n)) x.assign(n, 0.0);

  Vector inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const double d = a.at(i, i);
    inv_diag[i] = d > 0.0 ? 1.0 / d : 1.0;
  }

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    return {0, 0.0, true};
  }

  Vector r(n), z(n), p(n), ap(n);
  a.mul(x, ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  if (project) project(r);

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double rel = norm2(r) / bnorm;

  for (int it = 0; it < max_iter; ++it) {
    if (rel <= tol) return {it, rel, true};
    a.mul(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0)
      throw SolverError("cg_solve: non-positive curvature (matrix not SPD?)",
                        rel);
    const double alpha = rz / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    if (project) project(r);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rel = norm2(r) / bnorm;
  }
  if (rel <= tol) return {max_iter, rel, true};
  throw SolverError("cg_solve: no convergence within iteration cap", rel);
}

}  // namespace mixlag
