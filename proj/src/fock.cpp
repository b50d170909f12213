#include "nlcs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "nlcs/errors.hpp"

namespace nlcs {

namespace {

enum class PrimitiveKind { identity, lower, raise, number, diagonal };

struct Primitive {
  PrimitiveKind kind;
  int mode = 0;
  OperatorExpr::DiagonalFunction fn{};
};

struct Scaled {
  Complex factor;
  OperatorExpr operand;
};

struct Sum {
  OperatorExpr lhs, rhs;
};

struct Product {
  OperatorExpr lhs, rhs;  // lhs * rhs, rhs acts first
};

void check_mode(int mode) {
  if (mode != 1 && mode != 2) throw InvalidParameter("mode must be 1 or 2");
}

int occupation(int mode, int n1, int n2) { return mode == 1 ? n1 : n2; }

}  // namespace

struct OperatorExpr::Node {
  std::variant<Primitive, Scaled, Sum, Product> value;
};

FockVector::FockVector(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 1) throw InvalidParameter("Fock cutoff must be positive");
  const Eigen::Index side = cutoff + 1;
  amplitudes_ = Storage(side * side);
}

FockVector FockVector::basis(int cutoff, int n1, int n2) {
  FockVector v(cutoff);
  v.set(n1, n2, 1.0);
  return v;
}

Complex FockVector::operator()(int n1, int n2) const {
  if (!contains(n1, n2)) return 0.0;
  return amplitudes_.coeff(index(n1, n2));
}

void FockVector::set(int n1, int n2, Complex value) {
  if (!contains(n1, n2)) throw InvalidParameter("Fock state outside the truncation box");
  amplitudes_.coeffRef(index(n1, n2)) = value;
}

Complex FockVector::dot(const FockVector& other) const {
  if (other.cutoff_ != cutoff_) throw InvalidParameter("dot product across different cutoffs");
  Complex acc = 0.0;
  Storage::InnerIterator a(amplitudes_), b(other.amplitudes_);
  while (a && b) {
    if (a.index() < b.index()) {
      ++a;
    } else if (b.index() < a.index()) {
      ++b;
    } else {
      acc += std::conj(a.value()) * b.value();
      ++a;
      ++b;
    }
  }
  return acc;
}

OperatorExpr OperatorExpr::identity() {
  return OperatorExpr(std::make_shared<const Node>(Node{Primitive{PrimitiveKind::identity}}));
}

OperatorExpr OperatorExpr::lower(int mode) {
  check_mode(mode);
  return OperatorExpr(std::make_shared<const Node>(Node{Primitive{PrimitiveKind::lower, mode}}));
}

OperatorExpr OperatorExpr::raise(int mode) {
  check_mode(mode);
  return OperatorExpr(std::make_shared<const Node>(Node{Primitive{PrimitiveKind::raise, mode}}));
}

OperatorExpr OperatorExpr::number(int mode) {
  check_mode(mode);
  return OperatorExpr(std::make_shared<const Node>(Node{Primitive{PrimitiveKind::number, mode}}));
}

OperatorExpr OperatorExpr::diagonal(DiagonalFunction fn) {
  return OperatorExpr(
      std::make_shared<const Node>(Node{Primitive{PrimitiveKind::diagonal, 0, std::move(fn)}}));
}

OperatorExpr OperatorExpr::nonlinearity(const NonlinearityModel& model, int mode) {
  check_mode(mode);
  return diagonal([model, mode](int n1, int n2) -> Complex {
    const int n = occupation(mode, n1, n2);
    const double value = model.f(n);
    return std::isfinite(value) ? value : 0.0;
  });
}

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
  return OperatorExpr(std::make_shared<const OperatorExpr::Node>(OperatorExpr::Node{Sum{a, b}}));
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + Complex(-1.0) * b; }

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  return OperatorExpr(std::make_shared<const OperatorExpr::Node>(OperatorExpr::Node{Product{a, b}}));
}

OperatorExpr operator*(Complex s, const OperatorExpr& a) {
  return OperatorExpr(std::make_shared<const OperatorExpr::Node>(OperatorExpr::Node{Scaled{s, a}}));
}

namespace {

// Every primitive maps basis indices monotonically, so results are appended
// in index order.
Applied apply_primitive(const Primitive& p, const FockVector& v) {
  const int cutoff = v.cutoff();
  const Eigen::Index side = cutoff + 1;
  Applied out{FockVector(cutoff), 0.0};
  auto& dst = out.vector.amplitudes();
  dst.reserve(v.amplitudes().nonZeros());
  for (FockVector::Storage::InnerIterator it(v.amplitudes()); it; ++it) {
    const Complex amp = it.value();
    if (amp == Complex(0.0)) continue;
    const int n1 = static_cast<int>(it.index() / side);
    const int n2 = static_cast<int>(it.index() % side);
    const int n = occupation(p.mode, n1, n2);
    const Eigen::Index step = p.mode == 1 ? side : 1;
    switch (p.kind) {
      case PrimitiveKind::identity:
        dst.insertBack(it.index()) = amp;
        break;
      case PrimitiveKind::number:
        dst.insertBack(it.index()) = static_cast<double>(n) * amp;
        break;
      case PrimitiveKind::diagonal:
        dst.insertBack(it.index()) = p.fn(n1, n2) * amp;
        break;
      case PrimitiveKind::lower:
        if (n == 0) break;
        dst.insertBack(it.index() - step) = std::sqrt(static_cast<double>(n)) * amp;
        break;
      case PrimitiveKind::raise:
        if (n == cutoff) {
          out.dropped_weight += static_cast<double>(n + 1) * std::norm(amp);
          break;
        }
        dst.insertBack(it.index() + step) = std::sqrt(static_cast<double>(n + 1)) * amp;
        break;
    }
  }
  return out;
}

SparseMatrixXcd primitive_matrix(const Primitive& p, int cutoff) {
  const Eigen::Index side = cutoff + 1;
  const Eigen::Index dim = side * side;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  auto index = [side](int n1, int n2) { return static_cast<Eigen::Index>(n1) * side + n2; };
  for (int n1 = 0; n1 <= cutoff; ++n1) {
    for (int n2 = 0; n2 <= cutoff; ++n2) {
      const int n = occupation(p.mode, n1, n2);
      const Eigen::Index col = index(n1, n2);
      switch (p.kind) {
        case PrimitiveKind::identity:
          entries.emplace_back(col, col, 1.0);
          break;
        case PrimitiveKind::number:
          if (n) entries.emplace_back(col, col, static_cast<double>(n));
          break;
        case PrimitiveKind::diagonal: {
          const Complex value = p.fn(n1, n2);
          if (value != Complex(0.0)) entries.emplace_back(col, col, value);
          break;
        }
        case PrimitiveKind::lower:
          if (n == 0) break;
          entries.emplace_back(p.mode == 1 ? index(n1 - 1, n2) : index(n1, n2 - 1), col,
                               std::sqrt(static_cast<double>(n)));
          break;
        case PrimitiveKind::raise:
          if (n == cutoff) break;
          entries.emplace_back(p.mode == 1 ? index(n1 + 1, n2) : index(n1, n2 + 1), col,
                               std::sqrt(static_cast<double>(n + 1)));
          break;
      }
    }
  }
  SparseMatrixXcd m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

}  // namespace

Applied OperatorExpr::apply(const FockVector& v) const {
  return std::visit(
      [&v](const auto& node) -> Applied {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Primitive>) {
          return apply_primitive(node, v);
        } else if constexpr (std::is_same_v<T, Scaled>) {
          Applied r = node.operand.apply(v);
          r.vector.amplitudes() *= node.factor;
          return r;
        } else if constexpr (std::is_same_v<T, Sum>) {
          Applied a = node.lhs.apply(v);
          Applied b = node.rhs.apply(v);
          a.vector.amplitudes() += b.vector.amplitudes();
          a.dropped_weight += b.dropped_weight;
          return a;
        } else {
          Applied r = node.rhs.apply(v);
          Applied l = node.lhs.apply(r.vector);
          l.dropped_weight += r.dropped_weight;
          return l;
        }
      },
      node_->value);
}

SparseMatrixXcd OperatorExpr::to_sparse(int cutoff) const {
  if (cutoff < 1) throw InvalidParameter("Fock cutoff must be positive");
  return std::visit(
      [cutoff](const auto& node) -> SparseMatrixXcd {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Primitive>) {
          return primitive_matrix(node, cutoff);
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return node.factor * node.operand.to_sparse(cutoff);
        } else if constexpr (std::is_same_v<T, Sum>) {
          return node.lhs.to_sparse(cutoff) + node.rhs.to_sparse(cutoff);
        } else {
          return (node.lhs.to_sparse(cutoff) * node.rhs.to_sparse(cutoff)).pruned();
        }
      },
      node_->value);
}

Eigen::MatrixXcd OperatorExpr::to_dense(int cutoff) const {
  if (cutoff > 64) throw InvalidParameter("dense operator matrices are capped at cutoff 64");
  return Eigen::MatrixXcd(to_sparse(cutoff));
}

OperatorExpr charge_operator() { return OperatorExpr::number(1) - OperatorExpr::number(2); }

OperatorExpr deformed_lower(const NonlinearityModel& f, int mode) {
  return OperatorExpr::lower(mode) * OperatorExpr::nonlinearity(f, mode);
}

OperatorExpr deformed_raise(const NonlinearityModel& f, int mode) {
  return OperatorExpr::nonlinearity(f, mode) * OperatorExpr::raise(mode);
}

OperatorExpr spectrum_operator(const NonlinearityModel& f, int mode) {
  check_mode(mode);
  return OperatorExpr::diagonal(
      [f, mode](int n1, int n2) -> Complex { return f.spectrum(occupation(mode, n1, n2)); });
}

OperatorExpr build_k_minus() { return OperatorExpr::lower(1) * OperatorExpr::lower(2); }
OperatorExpr build_k_plus() { return OperatorExpr::raise(1) * OperatorExpr::raise(2); }

OperatorExpr build_k0() {
  return Complex(0.5) * (OperatorExpr::number(1) + OperatorExpr::number(2) + OperatorExpr::identity());
}

OperatorExpr build_K_minus(const NonlinearityModel& f) { return deformed_lower(f, 1) * deformed_lower(f, 2); }
OperatorExpr build_K_plus(const NonlinearityModel& f) { return deformed_raise(f, 1) * deformed_raise(f, 2); }

OperatorExpr build_K0(const NonlinearityModel& f) {
  return OperatorExpr::diagonal([f](int n1, int n2) -> Complex {
    return 0.5 * (f.spectrum(n1 + 1) * f.spectrum(n2 + 1) - f.spectrum(n1) * f.spectrum(n2));
  });
}

OperatorExpr build_g(const NonlinearityModel& f) {
  return OperatorExpr::diagonal([f](int n1, int n2) -> Complex {
    const double below = (n1 == 0 || n2 == 0) ? 0.0 : f.spectrum(n1 - 1) * f.spectrum(n2 - 1);
    return 0.5 * (f.spectrum(n1 + 1) * f.spectrum(n2 + 1) - 2.0 * f.spectrum(n1) * f.spectrum(n2) + below);
  });
}

namespace {

const Complex kI(0.0, 1.0);

OperatorExpr hermitian_pair(const OperatorExpr& lower, const OperatorExpr& raise, int which) {
  if (which == 1) return Complex(0.5) * (raise + lower);
  if (which == 2) return (0.5 * kI) * (raise - lower);
  throw InvalidParameter("quadrature index must be 1 or 2");
}

}  // namespace

OperatorExpr quadrature_y(int which) {
  return hermitian_pair(OperatorExpr::lower(1), OperatorExpr::raise(1), which);
}

OperatorExpr quadrature_z(int which) {
  return hermitian_pair(OperatorExpr::lower(2), OperatorExpr::raise(2), which);
}

OperatorExpr quadrature_Y(const NonlinearityModel& f, int which) {
  return hermitian_pair(deformed_lower(f, 1), deformed_raise(f, 1), which);
}

OperatorExpr quadrature_Z(const NonlinearityModel& f, int which) {
  return hermitian_pair(deformed_lower(f, 2), deformed_raise(f, 2), which);
}

OperatorExpr quadrature_w(int which) {
  return Complex(1.0 / std::sqrt(2.0)) * (quadrature_y(which) + quadrature_z(which));
}

OperatorExpr quadrature_W(const NonlinearityModel& f, int which) {
  return Complex(1.0 / std::sqrt(2.0)) * (quadrature_Y(f, which) + quadrature_Z(f, which));
}

OperatorExpr quadrature_x(int which) { return hermitian_pair(build_k_minus(), build_k_plus(), which); }

OperatorExpr quadrature_X(const NonlinearityModel& f, int which) {
  return hermitian_pair(build_K_minus(f), build_K_plus(f), which);
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }

namespace {

bool interior(Eigen::Index index, int cutoff, int margin) {
  const Eigen::Index side = cutoff + 1;
  const auto n1 = index / side;
  const auto n2 = index % side;
  return n1 <= cutoff - margin && n2 <= cutoff - margin;
}

double max_interior_column(const SparseMatrixXcd& m, int cutoff, int margin) {
  double worst = 0.0;
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    if (!interior(col, cutoff, margin)) continue;
    for (SparseMatrixXcd::InnerIterator it(m, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double max_interior_block(const SparseMatrixXcd& m, int cutoff, int margin) {
  double worst = 0.0;
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    if (!interior(col, cutoff, margin)) continue;
    for (SparseMatrixXcd::InnerIterator it(m, col); it; ++it)
      if (interior(it.row(), cutoff, margin)) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

std::optional<Eigen::VectorXcd> diagonal_of(const SparseMatrixXcd& m) {
  for (Eigen::Index col = 0; col < m.outerSize(); ++col)
    for (SparseMatrixXcd::InnerIterator it(m, col); it; ++it)
      if (it.row() != col) return std::nullopt;
  return Eigen::VectorXcd(m.diagonal());
}

// [A, B] with the diagonal side applied as (d_i - d_j) B_ij, which avoids
// cancelling two separately rounded products.
SparseMatrixXcd commutator(const SparseMatrixXcd& a, const SparseMatrixXcd& b) {
  const auto da = diagonal_of(a);
  const auto db = diagonal_of(b);
  if (!da && !db) return SparseMatrixXcd(a * b) - SparseMatrixXcd(b * a);
  SparseMatrixXcd out = da ? b : a;
  const double sign = da ? 1.0 : -1.0;
  const Eigen::VectorXcd& d = da ? *da : *db;
  for (Eigen::Index col = 0; col < out.outerSize(); ++col)
    for (SparseMatrixXcd::InnerIterator it(out, col); it; ++it)
      it.valueRef() *= sign * (d(it.row()) - d(col));
  return out;
}

void check_margin(int cutoff, int margin) {
  if (margin < 2 || margin > cutoff) throw InvalidParameter("margin must lie in [2, cutoff]");
}

}  // namespace

double commutator_residual(const OperatorExpr& a, const OperatorExpr& b, const OperatorExpr& c,
                           int cutoff, int margin) {
  check_margin(cutoff, margin);
  const SparseMatrixXcd ma = a.to_sparse(cutoff);
  const SparseMatrixXcd mb = b.to_sparse(cutoff);
  const SparseMatrixXcd mc = c.to_sparse(cutoff);
  const SparseMatrixXcd residual = commutator(ma, mb) - mc;
  return max_interior_column(residual, cutoff, margin);
}

double operator_residual(const OperatorExpr& a, const OperatorExpr& b, int cutoff, int margin) {
  check_margin(cutoff, margin);
  return max_interior_column(a.to_sparse(cutoff) - b.to_sparse(cutoff), cutoff, margin);
}

double hermiticity_residual(const OperatorExpr& a, int cutoff, int margin) {
  return adjoint_residual(a, a, cutoff, margin);
}

double adjoint_residual(const OperatorExpr& a, const OperatorExpr& b, int cutoff, int margin) {
  check_margin(cutoff, margin);
  const SparseMatrixXcd mb = b.to_sparse(cutoff);
  const SparseMatrixXcd diff = a.to_sparse(cutoff) - SparseMatrixXcd(mb.adjoint());
  return max_interior_block(diff, cutoff, margin);
}

}  // namespace nlcs
