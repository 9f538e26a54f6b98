#ifndef KARCHER_CONE_HERMITIAN_HPP
#define KARCHER_CONE_HERMITIAN_HPP

// Dense complex Hermitian matrices, the open cone of positive definite
// matrices, and the spectral functional calculus on both.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <utility>

#include "karcher_cone/errors.hpp"

namespace karcher_cone {

using Index = Eigen::Index;

template <typename Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Relative threshold below which a Hermitian matrix is not accepted as
/// positive definite: min eigenvalue must exceed pd_tol * spectral norm.
template <typename Real>
constexpr Real pd_tol = Real(1e-12);

/// Condition number above which a congruence factor is treated as singular.
template <typename Real>
constexpr Real congruence_cond_limit = Real(1e12);

template <typename Real>
class Hermitian {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  Hermitian() = default;

  /// Symmetrizes: stores (raw + raw*) / 2, which is exactly Hermitian and
  /// leaves exactly Hermitian input bit-identical.
  template <typename Derived>
  explicit Hermitian(const Eigen::MatrixBase<Derived>& raw) {
    if (raw.rows() != raw.cols()) {
      std::ostringstream msg;
      msg << "expected a square matrix, got " << raw.rows() << "x"
          << raw.cols();
      throw NotSquare(msg.str());
    }
    const Matrix m = raw.template cast<Scalar>();
    m_ = (m + m.adjoint()) * Real(0.5);
  }

  static Hermitian zero(Index n) { return Hermitian(Matrix::Zero(n, n)); }
  static Hermitian identity(Index n) {
    return Hermitian(Matrix::Identity(n, n));
  }
  static Hermitian diagonal(const RealVector<Real>& d) {
    return Hermitian(Matrix(d.template cast<Scalar>().asDiagonal()));
  }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  friend Hermitian operator+(const Hermitian& a, const Hermitian& b) {
    check_same_dim(a, b);
    return Hermitian(a.m_ + b.m_);
  }
  friend Hermitian operator-(const Hermitian& a, const Hermitian& b) {
    check_same_dim(a, b);
    return Hermitian(a.m_ - b.m_);
  }
  friend Hermitian operator-(const Hermitian& a) { return Hermitian(-a.m_); }
  friend Hermitian operator*(Real t, const Hermitian& a) {
    return Hermitian(t * a.m_);
  }
  friend Hermitian operator*(const Hermitian& a, Real t) { return t * a; }

  Hermitian& operator+=(const Hermitian& b) { return *this = *this + b; }

  static void check_same_dim(const Hermitian& a, const Hermitian& b) {
    if (a.dim() != b.dim()) {
      std::ostringstream msg;
      msg << "dimension mismatch: " << a.dim() << " vs " << b.dim();
      throw DimensionMismatch(msg.str());
    }
  }

 private:
  Matrix m_;
};

/// (raw + raw*) / 2.
template <typename Derived>
auto symmetrize(const Eigen::MatrixBase<Derived>& raw) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  return Hermitian<Real>(raw);
}

/// Ascending eigenvalues with a unitary eigenbasis in the columns of `basis`.
template <typename Real>
struct SpectralDecomposition {
  RealVector<Real> eigenvalues;
  ComplexMatrix<Real> basis;

  Index dim() const { return eigenvalues.size(); }
  Real min() const { return eigenvalues(0); }
  Real max() const { return eigenvalues(eigenvalues.size() - 1); }

  /// basis * diag(f(eigenvalues)) * basis*.
  template <typename F>
  ComplexMatrix<Real> apply(F&& f) const {
    const RealVector<Real> mapped = eigenvalues.unaryExpr(f);
    return basis * mapped.template cast<std::complex<Real>>().asDiagonal() *
           basis.adjoint();
  }

  ComplexMatrix<Real> reconstruct() const {
    return apply([](Real v) { return v; });
  }
};

namespace detail {

// Rotates each eigenvector so that its largest-magnitude entry (lowest index
// on exact ties) is real and positive.
template <typename Real>
void normalize_phases(ComplexMatrix<Real>& basis) {
  for (Index c = 0; c < basis.cols(); ++c) {
    Index best = 0;
    Real best_abs = -1;
    for (Index r = 0; r < basis.rows(); ++r) {
      const Real a = std::abs(basis(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs > 0) {
      const std::complex<Real> phase = std::conj(basis(best, c)) / best_abs;
      basis.col(c) *= phase;
      basis(best, c) = std::complex<Real>(best_abs, 0);
    }
  }
}

}  // namespace detail

template <typename Real>
SpectralDecomposition<Real> eig(const Hermitian<Real>& h) {
  using Matrix = ComplexMatrix<Real>;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(),
                                               Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge within "
        << Eigen::SelfAdjointEigenSolver<Matrix>::m_maxIterations
        << " QR sweeps per eigenvalue (dim " << h.dim() << ")";
    throw EigenFailure(msg.str());
  }
  SpectralDecomposition<Real> out{solver.eigenvalues(), solver.eigenvectors()};
  detail::normalize_phases(out.basis);
  return out;
}

template <typename Real>
RealVector<Real> eigenvalues(const Hermitian<Real>& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(
      h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

template <typename Real>
Real spectral_norm(const Hermitian<Real>& h) {
  if (h.dim() == 0) return 0;
  const RealVector<Real> ev = eigenvalues(h);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

template <typename Real>
Real frobenius_norm(const Hermitian<Real>& h) {
  return h.matrix().norm();
}

/// Element of the open cone of positive definite matrices. The spectral
/// decomposition is computed once at construction and kept.
template <typename Real>
class PositiveDefinite {
 public:
  using Matrix = ComplexMatrix<Real>;

  explicit PositiveDefinite(Hermitian<Real> h)
      : base_(std::move(h)), spectral_(eig(base_)) {
    if (base_.dim() == 0) throw NotPositiveDefinite("empty matrix");
    const Real norm = std::max(std::abs(spectral_.min()),
                               std::abs(spectral_.max()));
    if (!(spectral_.min() > pd_tol<Real> * norm) || !std::isfinite(norm)) {
      std::ostringstream msg;
      msg << "matrix is not positive definite: min eigenvalue "
          << spectral_.min() << ", spectral norm " << norm;
      throw NotPositiveDefinite(msg.str());
    }
  }

  template <typename Derived>
  explicit PositiveDefinite(const Eigen::MatrixBase<Derived>& raw)
      : PositiveDefinite(Hermitian<Real>(raw)) {}

  /// Builds basis * diag(eigenvalues) * basis* from a known decomposition.
  /// Eigenvalues must be strictly positive; they are re-sorted ascending.
  static PositiveDefinite from_spectral(SpectralDecomposition<Real> s) {
    const Index n = s.dim();
    for (Index i = 0; i < n; ++i) {
      if (!(s.eigenvalues(i) > 0) || !std::isfinite(s.eigenvalues(i))) {
        throw NotPositiveDefinite("non-positive eigenvalue in spectrum");
      }
    }
    bool ascending = true;
    for (Index i = 1; i < n; ++i) {
      ascending = ascending && s.eigenvalues(i - 1) <= s.eigenvalues(i);
    }
    if (!ascending) {
      Eigen::VectorXi order(n);
      for (Index i = 0; i < n; ++i) order(i) = static_cast<int>(i);
      std::stable_sort(order.data(), order.data() + n, [&](int a, int b) {
        return s.eigenvalues(a) < s.eigenvalues(b);
      });
      SpectralDecomposition<Real> sorted{RealVector<Real>(n), Matrix(n, n)};
      for (Index i = 0; i < n; ++i) {
        sorted.eigenvalues(i) = s.eigenvalues(order(i));
        sorted.basis.col(i) = s.basis.col(order(i));
      }
      s = std::move(sorted);
    }
    Hermitian<Real> h(s.reconstruct());
    return PositiveDefinite(std::move(h), std::move(s));
  }

  static PositiveDefinite identity(Index n) {
    return PositiveDefinite(Hermitian<Real>::identity(n));
  }

  Index dim() const { return base_.dim(); }
  const Hermitian<Real>& hermitian() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  const SpectralDecomposition<Real>& spectral() const { return spectral_; }
  Real min_eigenvalue() const { return spectral_.min(); }
  Real max_eigenvalue() const { return spectral_.max(); }

 private:
  PositiveDefinite(Hermitian<Real> h, SpectralDecomposition<Real> s)
      : base_(std::move(h)), spectral_(std::move(s)) {}

  Hermitian<Real> base_;
  SpectralDecomposition<Real> spectral_;
};

using HermitianMatrix = Hermitian<double>;
using PDMatrix = PositiveDefinite<double>;

template <typename Real>
PositiveDefinite<Real> matrix_exp(const Hermitian<Real>& h) {
  SpectralDecomposition<Real> s = eig(h);
  s.eigenvalues = s.eigenvalues.array().exp().matrix();
  return PositiveDefinite<Real>::from_spectral(std::move(s));
}

template <typename Real>
Hermitian<Real> matrix_log(const PositiveDefinite<Real>& a) {
  return Hermitian<Real>(
      a.spectral().apply([](Real v) { return std::log(v); }));
}

template <typename Real>
PositiveDefinite<Real> matrix_pow(const PositiveDefinite<Real>& a, Real p) {
  SpectralDecomposition<Real> s = a.spectral();
  s.eigenvalues =
      s.eigenvalues.unaryExpr([p](Real v) { return std::pow(v, p); });
  return PositiveDefinite<Real>::from_spectral(std::move(s));
}

template <typename Real>
PositiveDefinite<Real> sqrt(const PositiveDefinite<Real>& a) {
  return matrix_pow(a, Real(0.5));
}

template <typename Real>
PositiveDefinite<Real> inv_sqrt(const PositiveDefinite<Real>& a) {
  return matrix_pow(a, Real(-0.5));
}

template <typename Real>
PositiveDefinite<Real> inverse(const PositiveDefinite<Real>& a) {
  return matrix_pow(a, Real(-1));
}

/// t * a for t > 0, computed in the cached eigenbasis.
template <typename Real>
PositiveDefinite<Real> scale(Real t, const PositiveDefinite<Real>& a) {
  if (!(t > 0)) throw NotPositiveDefinite("scale factor must be positive");
  SpectralDecomposition<Real> s = a.spectral();
  s.eigenvalues *= t;
  return PositiveDefinite<Real>::from_spectral(std::move(s));
}

namespace detail {

template <typename Real, typename Derived>
Hermitian<Real> congruence_product(const Eigen::MatrixBase<Derived>& m,
                                   const PositiveDefinite<Real>& a) {
  const ComplexMatrix<Real> mc = m.template cast<std::complex<Real>>();
  return Hermitian<Real>(mc.adjoint() * a.matrix() * mc);
}

}  // namespace detail

/// m* a m for an invertible square m.
template <typename Real, typename Derived>
PositiveDefinite<Real> congruence(const Eigen::MatrixBase<Derived>& m,
                                  const PositiveDefinite<Real>& a) {
  if (m.rows() != m.cols()) throw NotSquare("congruence factor not square");
  if (m.rows() != a.dim()) {
    throw DimensionMismatch("congruence factor and matrix differ in dim");
  }
  const ComplexMatrix<Real> mc = m.template cast<std::complex<Real>>();
  const RealVector<Real> sv =
      Eigen::JacobiSVD<ComplexMatrix<Real>>(mc).singularValues();
  const Real smax = sv.size() ? sv(0) : Real(0);
  const Real smin = sv.size() ? sv(sv.size() - 1) : Real(0);
  if (!(smin > 0) || smax / smin > congruence_cond_limit<Real>) {
    std::ostringstream msg;
    msg << "congruence factor is numerically singular (singular values "
        << smax << " .. " << smin << ")";
    throw SingularCongruence(msg.str());
  }
  return PositiveDefinite<Real>(detail::congruence_product(mc, a));
}

/// m a m for a positive definite (hence invertible, self-adjoint) m.
template <typename Real>
PositiveDefinite<Real> congruence(const PositiveDefinite<Real>& m,
                                  const PositiveDefinite<Real>& a) {
  if (m.dim() != a.dim()) {
    throw DimensionMismatch("congruence factor and matrix differ in dim");
  }
  return PositiveDefinite<Real>(detail::congruence_product(m.matrix(), a));
}

/// a <= b in the Loewner order: min eigenvalue of b - a is at least
/// -tol * (1 + ||b - a||).
template <typename Real>
bool loewner_leq(const Hermitian<Real>& a, const Hermitian<Real>& b,
                 Real tol) {
  const Hermitian<Real> diff = b - a;
  if (diff.dim() == 0) return true;
  const RealVector<Real> ev = eigenvalues(diff);
  const Real norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * (1 + norm);
}

/// Smallest eigenvalue of b - a; nonnegative exactly when a <= b.
template <typename Real>
Real loewner_gap(const Hermitian<Real>& a, const Hermitian<Real>& b) {
  return eigenvalues(b - a)(0);
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_HERMITIAN_HPP
