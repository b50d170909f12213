#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nlcs/nonlinearity.hpp"

namespace nlcs {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;

/// Two-mode state on the box 0 <= n1, n2 <= cutoff, stored sparsely with
/// |n1, n2> at index n1 * (cutoff + 1) + n2.
class FockVector {
 public:
  using Storage = Eigen::SparseVector<Complex>;

  explicit FockVector(int cutoff);

  static FockVector basis(int cutoff, int n1, int n2);

  int cutoff() const { return cutoff_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  Eigen::Index index(int n1, int n2) const { return static_cast<Eigen::Index>(n1) * (cutoff_ + 1) + n2; }
  bool contains(int n1, int n2) const { return n1 >= 0 && n2 >= 0 && n1 <= cutoff_ && n2 <= cutoff_; }

  Complex operator()(int n1, int n2) const;
  /// Inserts or overwrites one amplitude. Throws outside the box.
  void set(int n1, int n2, Complex value);

  const Storage& amplitudes() const { return amplitudes_; }
  Storage& amplitudes() { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  /// <this|other>
  Complex dot(const FockVector& other) const;

 private:
  int cutoff_;
  Storage amplitudes_;
};

/// Result of applying an operator on the truncated box. `dropped_weight` is
/// the squared norm of every amplitude a raising step pushed past the cutoff.
struct Applied {
  FockVector vector;
  double dropped_weight = 0.0;
};

/// Composition tree over the mode primitives a_i, a_i^dagger, n_i, f(n_i),
/// arbitrary diagonal functions and the identity. Products apply right to left.
class OperatorExpr {
 public:
  using DiagonalFunction = std::function<Complex(int n1, int n2)>;

  static OperatorExpr identity();
  static OperatorExpr lower(int mode);
  static OperatorExpr raise(int mode);
  static OperatorExpr number(int mode);
  /// f(n_mode). At n_mode = 0 an infinite f(0) (harmonious states) is
  /// replaced by 0; that level is only ever reached through a f(n), which
  /// annihilates it.
  static OperatorExpr nonlinearity(const NonlinearityModel& model, int mode);
  static OperatorExpr diagonal(DiagonalFunction fn);

  Applied apply(const FockVector& v) const;

  SparseMatrixXcd to_sparse(int cutoff) const;
  /// Dense matrix; cutoff is capped at 64 per mode.
  Eigen::MatrixXcd to_dense(int cutoff) const;

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(Complex s, const OperatorExpr& a);

  struct Node;

 private:
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Named operators. Mode indices are 1 and 2.

OperatorExpr charge_operator();                                   // n1 - n2
OperatorExpr deformed_lower(const NonlinearityModel& f, int mode);  // a f(n)
OperatorExpr deformed_raise(const NonlinearityModel& f, int mode);  // f(n) a^dagger
OperatorExpr spectrum_operator(const NonlinearityModel& f, int mode);  // n f^2(n)

OperatorExpr build_k_minus();  // a1 a2
OperatorExpr build_k_plus();
OperatorExpr build_k0();       // (n1 + n2 + 1) / 2

OperatorExpr build_K_minus(const NonlinearityModel& f);  // A1 A2
OperatorExpr build_K_plus(const NonlinearityModel& f);
/// (1/2)[e(n1+1) e(n2+1) - e(n1) e(n2)] with e(n) = n f^2(n).
OperatorExpr build_K0(const NonlinearityModel& f);
/// g(n1, n2) with [K0, K-] = -K- g and [K0, K+] = g K+:
///   (1/2)[e(n1+1) e(n2+1) - 2 e(n1) e(n2) + e(n1-1) e(n2-1)],
/// where the last product is taken as 0 when n1 = 0 or n2 = 0.
OperatorExpr build_g(const NonlinearityModel& f);

/// Quadratures. y/z are the single-mode pairs of modes 1/2, Y/Z their
/// deformed versions, w/W the two-mode sums, x/X the su(1,1) pairs.
/// `which` selects the first (1) or second (2) member of each pair.
OperatorExpr quadrature_y(int which);
OperatorExpr quadrature_z(int which);
OperatorExpr quadrature_Y(const NonlinearityModel& f, int which);
OperatorExpr quadrature_Z(const NonlinearityModel& f, int which);
OperatorExpr quadrature_w(int which);
OperatorExpr quadrature_W(const NonlinearityModel& f, int which);
OperatorExpr quadrature_x(int which);
OperatorExpr quadrature_X(const NonlinearityModel& f, int which);

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

/// max |(([A, B] - C) v_k)_j| over basis vectors v_k with n1, n2 <= cutoff - margin.
double commutator_residual(const OperatorExpr& a, const OperatorExpr& b, const OperatorExpr& c,
                           int cutoff, int margin);

/// max |(A - B) v_k| elementwise over the interior basis, for plain identities.
double operator_residual(const OperatorExpr& a, const OperatorExpr& b, int cutoff, int margin);

/// max |M_jk - conj(M_kj)| restricted to the interior box.
double hermiticity_residual(const OperatorExpr& a, int cutoff, int margin);
/// max |A_jk - conj(B_kj)| restricted to the interior box.
double adjoint_residual(const OperatorExpr& a, const OperatorExpr& b, int cutoff, int margin);

}  // namespace nlcs
