#include "conedc/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conedc/error.hpp"

namespace conedc {

Cone Cone::psd(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "PSD order must be >= 1");
  Cone c;
  c.kind_ = Kind::Psd;
  c.size_ = order;
  c.blocks_ = {{BlockKind::Psd, order}};
  return c;
}

Cone Cone::orthant(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "orthant dimension must be >= 1");
  Cone c;
  c.kind_ = Kind::Orthant;
  c.size_ = dim;
  c.blocks_ = {{BlockKind::Orthant, dim}};
  return c;
}

Cone Cone::product(std::vector<Cone> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "empty product cone");
  Cone c;
  c.kind_ = Kind::Product;
  c.size_ = static_cast<int>(factors.size());
  for (const auto& f : factors) c.blocks_.insert(c.blocks_.end(), f.blocks_.begin(), f.blocks_.end());
  c.factors_ = std::move(factors);
  return c;
}

int Cone::ambient_dim() const {
  int n = 0;
  for (const auto& b : blocks_) n += b.kind == BlockKind::Psd ? b.size * (b.size + 1) / 2 : b.size;
  return n;
}

std::string Cone::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Psd: os << "psd(" << size_ << ")"; break;
    case Kind::Orthant: os << "orthant(" << size_ << ")"; break;
    case Kind::Product:
      os << "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? ", " : "") << factors_[i].describe();
      os << ")";
      break;
  }
  return os.str();
}

namespace {

int block_rows(const ConeBlock& b) { return b.size; }
int block_cols(const ConeBlock& b) { return b.kind == BlockKind::Psd ? b.size : 1; }

}  // namespace

ConeElement::ConeElement(Cone cone, std::vector<Mat> blocks) : cone_(std::move(cone)), blocks_(std::move(blocks)) {
  const auto& layout = cone_.blocks();
  if (layout.size() != blocks_.size()) throw Error(ErrorCode::InvalidElement, "block count does not match cone");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    Mat& m = blocks_[i];
    if (m.rows() != block_rows(layout[i]) || m.cols() != block_cols(layout[i])) {
      throw Error(ErrorCode::InvalidElement, "block shape does not match cone " + cone_.describe());
    }
    if (!m.allFinite()) throw Error(ErrorCode::InvalidElement, "non-finite entry");
    if (layout[i].kind == BlockKind::Psd) {
      const double asym = (m - m.transpose()).norm();
      if (asym > 1e-8 * std::max(1.0, m.norm())) throw Error(ErrorCode::InvalidElement, "PSD block is not symmetric");
      m = 0.5 * (m + m.transpose()).eval();
    }
  }
}

ConeElement ConeElement::zero(const Cone& cone) {
  std::vector<Mat> blocks;
  for (const auto& b : cone.blocks()) blocks.push_back(Mat::Zero(block_rows(b), block_cols(b)));
  return ConeElement(Unchecked{}, cone, std::move(blocks));
}

ConeElement ConeElement::identity(const Cone& cone) {
  std::vector<Mat> blocks;
  for (const auto& b : cone.blocks()) {
    blocks.push_back(b.kind == BlockKind::Psd ? Mat(Mat::Identity(b.size, b.size)) : Mat(Mat::Ones(b.size, 1)));
  }
  return ConeElement(Unchecked{}, cone, std::move(blocks));
}

ConeElement ConeElement::scalar(double value) {
  return ConeElement(Cone::orthant(1), {Mat::Constant(1, 1, value)});
}

void ConeElement::require_same_cone(const ConeElement& other) const {
  if (!(cone_ == other.cone_)) {
    throw Error(ErrorCode::InvalidElement, "cone mismatch: " + cone_.describe() + " vs " + other.cone_.describe());
  }
}

double ConeElement::inner(const ConeElement& other) const {
  require_same_cone(other);
  double s = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += blocks_[i].cwiseProduct(other.blocks_[i]).sum();
  return s;
}

double ConeElement::norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

double ConeElement::trace() const {
  double s = 0.0;
  const auto& layout = cone_.blocks();
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    s += layout[i].kind == BlockKind::Psd ? blocks_[i].trace() : blocks_[i].sum();
  }
  return s;
}

bool ConeElement::all_finite() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Mat& m) { return m.allFinite(); });
}

ConeElement ConeElement::operator+(const ConeElement& other) const {
  ConeElement r = *this;
  r += other;
  return r;
}

ConeElement ConeElement::operator-(const ConeElement& other) const {
  ConeElement r = *this;
  r -= other;
  return r;
}

ConeElement ConeElement::operator-() const { return *this * -1.0; }

ConeElement ConeElement::operator*(double scale) const {
  std::vector<Mat> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b * scale);
  return ConeElement(Unchecked{}, cone_, std::move(blocks));
}

ConeElement& ConeElement::operator+=(const ConeElement& other) {
  require_same_cone(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

ConeElement& ConeElement::operator-=(const ConeElement& other) {
  require_same_cone(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

double quad_form(const ConeElement& y, const Direction& d) {
  if (d.block >= y.num_blocks()) throw Error(ErrorCode::InvalidArgument, "direction block out of range");
  const Mat& b = y.block(d.block);
  if (d.v.size() != b.rows()) throw Error(ErrorCode::InvalidArgument, "direction length mismatch");
  if (y.cone().blocks()[d.block].kind == BlockKind::Psd) return d.v.dot(b * d.v);
  return d.v.cwiseAbs2().dot(b.col(0));
}

namespace {

Eigen::SelfAdjointEigenSolver<Mat> eigen_of(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::InvalidElement, "eigendecomposition failed");
  return es;
}

}  // namespace

ConeElement project_pos(const ConeElement& y) {
  if (!y.all_finite()) throw Error(ErrorCode::InvalidElement, "non-finite element");
  std::vector<Mat> blocks;
  const auto& layout = y.cone().blocks();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Mat& b = y.block(i);
    if (layout[i].kind == BlockKind::Orthant) {
      blocks.push_back(b.cwiseMax(0.0));
      continue;
    }
    const auto es = eigen_of(b);
    const Vec lam = es.eigenvalues().cwiseMax(0.0);
    Mat p = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    blocks.push_back(0.5 * (p + p.transpose()));
  }
  return ConeElement(ConeElement::Unchecked{}, y.cone(), std::move(blocks));
}

double dist_to_neg_cone(const ConeElement& y) { return project_pos(y).norm(); }

SlackCost slack_cost(double tau, const ConeElement& y) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidPenalty, "penalty scale must be positive");
  ConeElement s = project_pos(y);
  const double cost = tau * s.trace();
  return {cost, std::move(s)};
}

Scalarization lambda_max_scalarize(const ConeElement& y) {
  if (!y.all_finite()) throw Error(ErrorCode::InvalidElement, "non-finite element");
  Scalarization best{-std::numeric_limits<double>::infinity(), {}};
  const auto& layout = y.cone().blocks();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Mat& b = y.block(i);
    if (layout[i].kind == BlockKind::Orthant) {
      Eigen::Index k = 0;
      const double v = b.col(0).maxCoeff(&k);
      if (v > best.value) {
        best.value = v;
        best.witness = {i, Vec::Unit(b.rows(), k)};
      }
      continue;
    }
    const auto es = eigen_of(b);
    const Eigen::Index last = b.rows() - 1;
    const double v = es.eigenvalues()(last);
    if (v > best.value) {
      best.value = v;
      best.witness = {i, es.eigenvectors().col(last)};
    }
  }
  return best;
}

std::vector<std::pair<double, Direction>> spectral_pairs(const ConeElement& y) {
  std::vector<std::pair<double, Direction>> out;
  const auto& layout = y.cone().blocks();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Mat& b = y.block(i);
    if (layout[i].kind == BlockKind::Orthant) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) out.push_back({b(k, 0), {i, Vec::Unit(b.rows(), k)}});
      continue;
    }
    const auto es = eigen_of(b);
    for (Eigen::Index k = 0; k < b.rows(); ++k) out.push_back({es.eigenvalues()(k), {i, es.eigenvectors().col(k)}});
  }
  return out;
}

}  // namespace conedc
