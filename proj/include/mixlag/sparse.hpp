// Compressed sparse row matrices and a Jacobi-preconditioned conjugate
// gradient solver.  All operators in this project are symmetric with a fixed
// sparsity pattern per mesh, so matrices with the same pattern can be
// combined entrywise.
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace mixlag {

using Vector = std::vector<double>;

struct SparseCsr {
  int rows = 0;
  std::vector<int> ptr;   // size rows + 1
  std::vector<int> col;   // size nnz
  std::vector<double> val;

  std::size_t nnz() const { return col.size(); }

  void mul(const Vector& x, Vector& y) const;
  Vector mul(const Vector& x) const;

  // this += s * other; requires an identical pattern.
  void axpy_same_pattern(double s, const SparseCsr& other);

  double max_abs() const;
  double max_asymmetry() const;

  // Entry lookup (binary search within the row); 0 if not stored.
  double at(int i, int j) const;
};

SparseCsr add_scaled(const SparseCsr& a, double sa, const SparseCsr& b,
                     double sb);

// Writes "row col value" triplets, one per line.
void write_triplets(const SparseCsr& m, std::ostream& os);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double max_abs(const Vector& a);
void axpy(double a, const Vector& x, Vector& y);  // y += a x
Vector operator-(const Vector& a, const Vector& b);

struct CgResult {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual = 0.0;
};

// Jacobi-preconditioned CG for SPD (or consistent positive semidefinite)
// systems.  `x` doubles as the initial guess.  Throws SolverError if the
// relative residual does not reach `tol` within `max_iter` iterations.
CgResult cg_solve(const SparseCsr& a, const Vector& b, Vector& x, double tol,
                  int max_iter,
                  const std::function<void(Vector&)>& project = nullptr);

}  // namespace mixlag
