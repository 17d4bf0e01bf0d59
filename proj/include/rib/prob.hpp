#pragma once

// Finite-distribution primitives. Every information quantity is in bits.
//
// The free functions accept any Eigen dense expression so callers can pass
// columns, rows, or temporaries without copying; the Distribution and
// JointDistribution types add validation on top of them.

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "rib/error.hpp"

namespace rib {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Tolerance on |sum - 1| accepted when constructing distributions.
inline constexpr double kNormalizationTolerance = 1e-9;

template <typename Scalar>
inline Scalar infinity() {
  return std::numeric_limits<Scalar>::infinity();
}

/// Order of a Rényi entropy, restricted to (0, 1]. alpha == 1 is the Shannon limit.
class RenyiOrder {
 public:
  explicit RenyiOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw ValidationError(fmt::format("Renyi order must lie in (0,1], got {}", alpha));
    }
  }

  static RenyiOrder shannon() { return RenyiOrder(1.0); }

  double alpha() const { return alpha_; }
  bool is_shannon() const { return alpha_ == 1.0; }

  friend bool operator==(const RenyiOrder&, const RenyiOrder&) = default;

 private:
  double alpha_;
};

/// -sum p log2 p with 0 log 0 = 0.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& masses) {
  using Scalar = typename Derived::Scalar;
  using std::log2;
  Scalar h(0);
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    const Scalar p = masses.derived().coeff(i);
    if (p > Scalar(0)) h -= p * log2(p);
  }
  return h > Scalar(0) ? h : Scalar(0);
}

/// (1/(1-alpha)) log2 sum p^alpha, zero masses skipped; alpha == 1 is Shannon.
///
/// Evaluated as log1p(sum p expm1((alpha-1) ln p)) / ((1-alpha) ln 2), which stays
/// accurate as alpha approaches 1 where the direct form cancels catastrophically.
template <typename Derived>
typename Derived::Scalar renyi_entropy(const Eigen::DenseBase<Derived>& masses,
                                       const RenyiOrder& order) {
  using Scalar = typename Derived::Scalar;
  if (order.is_shannon()) return shannon_entropy(masses);
  using std::expm1;
  using std::log;
  using std::log1p;
  const Scalar alpha(order.alpha());
  const Scalar shift = alpha - Scalar(1);
  // Masses are rescaled by their total so rounding in the input sum cannot leak in;
  // a point mass then gives exactly 0.
  Scalar total(0);
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    const Scalar p = masses.derived().coeff(i);
    if (p > Scalar(0)) total += p;
  }
  Scalar excess(0);  // sum q^alpha - 1 for q = p / total
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    const Scalar p = masses.derived().coeff(i);
    if (p > Scalar(0)) {
      const Scalar q = p / total;
      excess += q * expm1(shift * log(q));
    }
  }
  const Scalar h = log1p(excess) / ((Scalar(1) - alpha) * log(Scalar(2)));
  return h > Scalar(0) ? h : Scalar(0);
}

/// D(p||q) in bits; +inf when p charges a symbol q does not.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar kl_divergence(const Eigen::DenseBase<DerivedP>& p,
                                        const Eigen::DenseBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::log2;
  if (p.size() != q.size()) {
    throw ValidationError(
        fmt::format("kl_divergence: alphabet sizes differ ({} vs {})", p.size(), q.size()));
  }
  Scalar d(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p.derived().coeff(i);
    if (!(pi > Scalar(0))) continue;
    const Scalar qi = q.derived().coeff(i);
    if (!(qi > Scalar(0))) return infinity<Scalar>();
    d += pi * log2(pi / qi);
  }
  return d > Scalar(0) ? d : Scalar(0);
}

/// I = H(rows) + H(columns) - H(joint) for a non-negative matrix summing to one.
/// Zero rows or columns are allowed here.
template <typename Derived>
typename Derived::Scalar mutual_information(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  const Vector<Scalar> rows = joint.rowwise().sum();
  const Vector<Scalar> cols = joint.colwise().sum().transpose();
  // A constant marginal carries no information; skip the cancelling entropy sum.
  if ((rows.array() > Scalar(0)).count() <= 1 || (cols.array() > Scalar(0)).count() <= 1) {
    return Scalar(0);
  }
  const Scalar joint_h = shannon_entropy(joint.reshaped());
  const Scalar i = shannon_entropy(rows) + shannon_entropy(cols) - joint_h;
  return i > Scalar(0) ? i : Scalar(0);
}

/// A validated probability vector, renormalized to sum to one.
template <typename Scalar>
class BasicDistribution {
 public:
  explicit BasicDistribution(Vector<Scalar> masses, std::vector<std::string> labels = {})
      : masses_(std::move(masses)), labels_(std::move(labels)) {
    using std::abs;
    using std::isfinite;
    if (masses_.size() < 1) throw ValidationError("distribution must have at least one symbol");
    if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != masses_.size()) {
      throw ValidationError(fmt::format("distribution has {} masses but {} labels",
                                        masses_.size(), labels_.size()));
    }
    for (Eigen::Index i = 0; i < masses_.size(); ++i) {
      if (!isfinite(masses_[i]) || masses_[i] < Scalar(0)) {
        throw ValidationError(fmt::format("distribution mass at index {} is negative or not finite",
                                          i));
      }
    }
    const Scalar total = masses_.sum();
    if (abs(total - Scalar(1)) > Scalar(kNormalizationTolerance)) {
      throw ValidationError(
          fmt::format("distribution does not sum to 1 (sum={:.6f})", static_cast<double>(total)));
    }
    masses_ /= total;
  }

  static BasicDistribution uniform(Eigen::Index n) {
    return BasicDistribution(Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n)));
  }

  const Vector<Scalar>& masses() const { return masses_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Eigen::Index size() const { return masses_.size(); }
  Scalar operator[](Eigen::Index i) const { return masses_[i]; }

 private:
  Vector<Scalar> masses_;
  std::vector<std::string> labels_;
};

/// P_{Y,X} as a |Y| x |X| matrix. Every column (every x) must carry mass.
template <typename Scalar>
class BasicJointDistribution {
 public:
  explicit BasicJointDistribution(Matrix<Scalar> pyx, std::vector<std::string> y_labels = {},
                                  std::vector<std::string> x_labels = {})
      : pyx_(std::move(pyx)), y_labels_(std::move(y_labels)), x_labels_(std::move(x_labels)) {
    using std::abs;
    using std::isfinite;
    if (pyx_.rows() < 1 || pyx_.cols() < 1) {
      throw ValidationError("joint distribution must have at least one row and one column");
    }
    if (!y_labels_.empty() && static_cast<Eigen::Index>(y_labels_.size()) != pyx_.rows()) {
      throw ValidationError(fmt::format("joint has {} rows but {} y_labels", pyx_.rows(),
                                        y_labels_.size()));
    }
    if (!x_labels_.empty() && static_cast<Eigen::Index>(x_labels_.size()) != pyx_.cols()) {
      throw ValidationError(fmt::format("joint has {} columns but {} x_labels", pyx_.cols(),
                                        x_labels_.size()));
    }
    for (Eigen::Index y = 0; y < pyx_.rows(); ++y) {
      for (Eigen::Index x = 0; x < pyx_.cols(); ++x) {
        if (!isfinite(pyx_(y, x)) || pyx_(y, x) < Scalar(0)) {
          throw ValidationError(fmt::format(
              "joint entry at row {}, column {} is negative or not finite ({})", y + 1, x + 1,
              static_cast<double>(pyx_(y, x))));
        }
      }
    }
    const Scalar total = pyx_.sum();
    if (abs(total - Scalar(1)) > Scalar(kNormalizationTolerance)) {
      throw ValidationError(
          fmt::format("joint does not sum to 1 (sum={:.6f})", static_cast<double>(total)));
    }
    pyx_ /= total;
    for (Eigen::Index x = 0; x < pyx_.cols(); ++x) {
      if (!(pyx_.col(x).sum() > Scalar(0))) {
        throw ValidationError(fmt::format("joint column {} has zero mass (P_X(x)=0)", x + 1));
      }
    }
  }

  const Matrix<Scalar>& matrix() const { return pyx_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  Eigen::Index y_size() const { return pyx_.rows(); }
  Eigen::Index x_size() const { return pyx_.cols(); }

  Vector<Scalar> p_x() const { return pyx_.colwise().sum().transpose(); }
  Vector<Scalar> p_y() const { return pyx_.rowwise().sum(); }
  /// P_{Y|X=x}.
  Vector<Scalar> p_y_given_x(Eigen::Index x) const {
    return pyx_.col(x) / pyx_.col(x).sum();
  }

 private:
  Matrix<Scalar> pyx_;
  std::vector<std::string> y_labels_;
  std::vector<std::string> x_labels_;
};

using Distribution = BasicDistribution<double>;
using JointDistribution = BasicJointDistribution<double>;

template <typename Scalar>
Scalar shannon_entropy(const BasicDistribution<Scalar>& p) {
  return shannon_entropy(p.masses());
}

template <typename Scalar>
Scalar renyi_entropy(const BasicDistribution<Scalar>& p, const RenyiOrder& order) {
  return renyi_entropy(p.masses(), order);
}

template <typename Scalar>
Scalar kl_divergence(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q) {
  return kl_divergence(p.masses(), q.masses());
}

template <typename Scalar>
Scalar mutual_information(const BasicJointDistribution<Scalar>& joint) {
  return mutual_information(joint.matrix());
}

}  // namespace rib
