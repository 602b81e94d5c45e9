#pragma once

#include <initializer_list>
#include <vector>

namespace pdm {

/// Dense real polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() : c_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double v) { return Polynomial({v}); }

  /// Degree after dropping exact trailing zeros; the zero polynomial has degree 0.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double leading() const { return c_.back(); }
  const std::vector<double>& coefficients() const { return c_; }
  double operator[](int i) const;

  double operator()(double y) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<double> c_;
};

}  // namespace pdm
