#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace ritzlag {

/// Value and first two derivatives of a 1D basis member at a point.
struct Eval1D {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// All derivative channels of a 2D basis member through second order.
struct Eval2D {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dyy = 0.0;
  double dxy = 0.0;
};

/// A family of C^2 trial functions on [0, length] evaluable with first and
/// second derivatives.
///
/// Families:
///   cosine(N, l):            1, cos(pi x/l), ..., cos((N-1) pi x/l)
///   augmented_cosine(N, l):  x, x^2, 1, cos(pi x/l), ..., cos((N-3) pi x/l)
///   monomial(N, l):          1, x, ..., x^(N-1)
class Basis1D {
 public:
  enum class Family { cosine, augmented_cosine, monomial, custom };

  static Basis1D cosine(std::size_t count, double length);
  static Basis1D augmented_cosine(std::size_t count, double length);
  static Basis1D monomial(std::size_t count, double length);
  static Basis1D custom(std::vector<std::function<Eval1D(double)>> members, double length);

  std::size_t size() const { return count_; }
  double length() const { return length_; }
  Family family() const { return family_; }

  Eval1D eval(std::size_t member, double x) const;
  double value(std::size_t member, double x) const { return eval(member, x).value; }

 private:
  Basis1D(Family family, std::size_t count, double length)
      : family_(family), count_(count), length_(length) {}

  Family family_;
  std::size_t count_;
  double length_;
  std::vector<std::function<Eval1D(double)>> custom_members_;
};

/// Cosine, augmented-cosine, or monomial members indexed (i, j) row-major,
/// evaluated as products phi_i(x) * phi~_j(y) with product-rule derivatives.
class Basis2D {
 public:
  /// Members phi_i(x) * phi~_j(y), k = i * by.size() + j.
  static Basis2D tensor(Basis1D bx, Basis1D by);
  /// N^2 bivariate monomials x^(i-1) y^(j-1), row-major in (i, j), on the
  /// unit square or disk bounding box.
  static Basis2D monomials(std::size_t per_axis);

  std::size_t size() const { return bx_->size() * by_->size(); }
  std::size_t size_x() const { return bx_->size(); }
  std::size_t size_y() const { return by_->size(); }
  const Basis1D& factor_x() const { return *bx_; }
  const Basis1D& factor_y() const { return *by_; }

  Eval2D eval(std::size_t member, double x, double y) const;
  double value(std::size_t member, double x, double y) const { return eval(member, x, y).value; }

 private:
  Basis2D(Basis1D bx, Basis1D by)
      : bx_(std::make_shared<Basis1D>(std::move(bx))), by_(std::make_shared<Basis1D>(std::move(by))) {}

  std::shared_ptr<const Basis1D> bx_;
  std::shared_ptr<const Basis1D> by_;
};

}  // namespace ritzlag
