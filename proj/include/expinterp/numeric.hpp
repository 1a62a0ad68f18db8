#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace expinterp {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Largest x with exp(x) finite.
inline constexpr double kLogMax = 709.782712893384;

/// An exponent lambda of a series term. Exponents generated from families
/// declared in units of pi keep those units, so phases reduce modulo 2 exactly
/// and e^{2 pi n i} is exactly 1.
struct Exponent {
  Complex value{};
  Complex units{};
  bool pi_scaled = false;

  static Exponent plain(Complex v) { return {v, {}, false}; }
  static Exponent in_pi_units(Complex u) { return {kPi * u, u, true}; }

  double modulus() const { return std::abs(value); }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.value == b.value && a.pi_scaled == b.pi_scaled &&
           (!a.pi_scaled || a.units == b.units);
  }
};

/// (cos(pi t), sin(pi t)) with exact values at multiples of 1/2.
Complex cis_pi(double t);

/// Real part of lambda * z, computed the same way exp_term does.
double re_product(const Exponent& lambda, Complex z);

/// exp(lambda * z + log_shift). The real shift lets callers fold weights and
/// derivative factors into the exponent before exponentiating.
Complex exp_term(const Exponent& lambda, Complex z, double log_shift = 0.0);

/// Neumaier-compensated accumulator for complex sums.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_part(x.real(), re_, re_c_);
    add_part(x.imag(), im_, im_c_);
  }

  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double x, double& sum, double& comp) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

}  // namespace expinterp
