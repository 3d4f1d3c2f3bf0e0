#pragma once

// Self-dual cones (PSD, nonnegative orthant, finite products) and the
// closed-form operations built on the Moreau decomposition y = y+ - y-.
//
// Storage convention: a PSD block of order l is a full symmetric l x l matrix,
// an orthant block of dimension m is an m x 1 column. Product cones are kept
// as a flat list of such leaf blocks; inner products are the direct sum of
// Frobenius (PSD) and Euclidean (orthant) products.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace conedc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class BlockKind { Psd, Orthant };

struct ConeBlock {
  BlockKind kind;
  int size;  // matrix order for PSD, dimension for orthant

  bool operator==(const ConeBlock&) const = default;
};

class Cone {
 public:
  enum class Kind { Psd, Orthant, Product };

  static Cone psd(int order);
  static Cone orthant(int dim);
  static Cone product(std::vector<Cone> factors);

  Kind kind() const { return kind_; }
  /// Order for PSD, dimension for orthant, number of factors for products.
  int size() const { return size_; }
  const std::vector<Cone>& factors() const { return factors_; }
  const std::vector<ConeBlock>& blocks() const { return blocks_; }

  /// l(l+1)/2 for PSD (symmetric-vector count), m for orthant, sum for products.
  int ambient_dim() const;
  std::string describe() const;

  /// Two cones are equal when their flattened leaf structure agrees.
  bool operator==(const Cone& other) const { return blocks_ == other.blocks_; }

 private:
  Cone() = default;

  Kind kind_ = Kind::Orthant;
  int size_ = 0;
  std::vector<Cone> factors_;
  std::vector<ConeBlock> blocks_;
};

class ConeElement {
 public:
  /// Validates shapes and finiteness; PSD blocks are symmetrized as (Y + Y^T)/2
  /// and rejected when the asymmetry exceeds 1e-8 relative.
  ConeElement(Cone cone, std::vector<Mat> blocks);

  static ConeElement zero(const Cone& cone);
  /// Cone identity e: identity matrices on PSD blocks, all-ones on orthants.
  static ConeElement identity(const Cone& cone);
  /// Element of orthant(1).
  static ConeElement scalar(double value);

  const Cone& cone() const { return cone_; }
  const std::vector<Mat>& blocks() const { return blocks_; }
  const Mat& block(std::size_t i) const { return blocks_[i]; }
  std::size_t num_blocks() const { return blocks_.size(); }

  double inner(const ConeElement& other) const;
  double norm() const;
  /// <e, y>: trace on PSD blocks, component sum on orthant blocks.
  double trace() const;
  bool all_finite() const;

  ConeElement operator+(const ConeElement& other) const;
  ConeElement operator-(const ConeElement& other) const;
  ConeElement operator-() const;
  ConeElement operator*(double scale) const;
  ConeElement& operator+=(const ConeElement& other);
  ConeElement& operator-=(const ConeElement& other);

 private:
  struct Unchecked {};
  ConeElement(Unchecked, Cone cone, std::vector<Mat> blocks)
      : cone_(std::move(cone)), blocks_(std::move(blocks)) {}

  void require_same_cone(const ConeElement& other) const;

  Cone cone_;
  std::vector<Mat> blocks_;

  friend ConeElement project_pos(const ConeElement& y);
};

inline ConeElement operator*(double scale, const ConeElement& y) { return y * scale; }

/// Selects a rank-one direction inside one leaf block. For PSD blocks `v` is a
/// vector of length l; for orthant blocks it has length m and the associated
/// quadratic form is sum_i v_i^2 y_i.
struct Direction {
  std::size_t block = 0;
  Vec v;
};

double quad_form(const ConeElement& y, const Direction& d);

/// Positive part y+ of the Moreau decomposition onto K.
ConeElement project_pos(const ConeElement& y);

/// dist(y, -K) = ||y+||.
double dist_to_neg_cone(const ConeElement& y);

struct SlackCost {
  double cost;
  ConeElement s_star;
};

/// min{ <tau e, s> : s in K, s - y in K } with minimizer s* = y+.
SlackCost slack_cost(double tau, const ConeElement& y);

struct Scalarization {
  double value;
  Direction witness;
};

/// Largest eigenvalue (PSD) or component (orthant), maximized over blocks,
/// together with a unit vector attaining it. value <= 0 iff y in -K.
Scalarization lambda_max_scalarize(const ConeElement& y);

/// Spectral decomposition of every block: PSD blocks contribute their
/// eigenpairs, orthant blocks their components with unit coordinate vectors.
std::vector<std::pair<double, Direction>> spectral_pairs(const ConeElement& y);

}  // namespace conedc
