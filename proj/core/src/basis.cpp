#include "ritzlag/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ritzlag {

namespace {

// Half-period phase reduction keeps cos(k pi t) exact at integer t, so
// cosine members have exactly vanishing endpoint slopes and exactly +-1
// endpoint values.
double sin_pi(double t) {
  const double n = std::nearbyint(t);
  const double r = t - n;
  const double s = std::sin(std::numbers::pi * r);
  return static_cast<long long>(n) % 2 == 0 ? s : -s;
}

double cos_pi(double t) {
  const double n = std::nearbyint(t);
  const double r = t - n;
  const double c = std::cos(std::numbers::pi * r);
  return static_cast<long long>(n) % 2 == 0 ? c : -c;
}

Eval1D eval_cosine(std::size_t harmonic, double length, double x) {
  if (harmonic == 0) return {1.0, 0.0, 0.0};
  const double t = static_cast<double>(harmonic) * (x / length);
  const double k = static_cast<double>(harmonic) * std::numbers::pi / length;
  return {cos_pi(t), -k * sin_pi(t), -k * k * cos_pi(t)};
}

Eval1D eval_monomial(std::size_t power, double x) {
  const double p = static_cast<double>(power);
  if (power == 0) return {1.0, 0.0, 0.0};
  if (power == 1) return {x, 1.0, 0.0};
  const double v = std::pow(x, p);
  const double d1 = p * std::pow(x, p - 1.0);
  const double d2 = p * (p - 1.0) * std::pow(x, p - 2.0);
  return {v, d1, d2};
}

}  // namespace

Basis1D Basis1D::cosine(std::size_t count, double length) {
  if (count < 1) throw std::invalid_argument("cosine basis: count must be >= 1");
  if (length <= 0.0) throw std::invalid_argument("cosine basis: length must be positive");
  return Basis1D(Family::cosine, count, length);
}

Basis1D Basis1D::augmented_cosine(std::size_t count, double length) {
  if (count < 3)
    throw std::invalid_argument("augmented cosine basis: count must be >= 3 (x, x^2, 1, ...)");
  if (length <= 0.0) throw std::invalid_argument("augmented cosine basis: length must be positive");
  return Basis1D(Family::augmented_cosine, count, length);
}

Basis1D Basis1D::monomial(std::size_t count, double length) {
  if (count < 1) throw std::invalid_argument("monomial basis: count must be >= 1");
  return Basis1D(Family::monomial, count, length);
}

Basis1D Basis1D::custom(std::vector<std::function<Eval1D(double)>> members, double length) {
  if (members.empty()) throw std::invalid_argument("custom basis: needs at least one member");
  Basis1D basis(Family::custom, members.size(), length);
  basis.custom_members_ = std::move(members);
  return basis;
}

Eval1D Basis1D::eval(std::size_t member, double x) const {
  if (member >= count_) throw std::out_of_range("basis member index out of range");
  switch (family_) {
    case Family::cosine:
      return eval_cosine(member, length_, x);
    case Family::augmented_cosine:
      if (member == 0) return {x, 1.0, 0.0};
      if (member == 1) return {x * x, 2.0 * x, 2.0};
      return eval_cosine(member - 2, length_, x);
    case Family::monomial:
      return eval_monomial(member, x);
    case Family::custom:
      return custom_members_[member](x);
  }
  return {};
}

Basis2D Basis2D::tensor(Basis1D bx, Basis1D by) {
  return Basis2D(std::move(bx), std::move(by));
}

Basis2D Basis2D::monomials(std::size_t per_axis) {
  if (per_axis < 1) throw std::invalid_argument("monomial 2D basis: per_axis must be >= 1");
  return tensor(Basis1D::monomial(per_axis, 1.0), Basis1D::monomial(per_axis, 1.0));
}

Eval2D Basis2D::eval(std::size_t member, double x, double y) const {
  if (member >= size()) throw std::out_of_range("basis member index out of range");
  const std::size_t i = member / by_->size();
  const std::size_t j = member % by_->size();
  const Eval1D fx = bx_->eval(i, x);
  const Eval1D fy = by_->eval(j, y);
  Eval2D out;
  out.value = fx.value * fy.value;
  out.dx = fx.d1 * fy.value;
  out.dy = fx.value * fy.d1;
  out.dxx = fx.d2 * fy.value;
  out.dyy = fx.value * fy.d2;
  out.dxy = fx.d1 * fy.d1;
  return out;
}

}  // namespace ritzlag
