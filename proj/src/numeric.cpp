#include "expinterp/numeric.hpp"

namespace expinterp {

namespace {

struct ProductParts {
  double re;
  double im;
};

ProductParts product(Complex a, Complex z) {
  return {a.real() * z.real() - a.imag() * z.imag(),
          a.real() * z.imag() + a.imag() * z.real()};
}

}  // namespace

Complex cis_pi(double t) {
  double r = std::fmod(t, 2.0);
  if (r < 0.0) r += 2.0;
  // r in [0, 2)
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == 1.0) return {-1.0, 0.0};
  if (r == 1.5) return {0.0, -1.0};
  if (r > 1.0) r -= 2.0;
  return {std::cos(kPi * r), std::sin(kPi * r)};
}

double re_product(const Exponent& lambda, Complex z) {
  if (lambda.pi_scaled) return kPi * product(lambda.units, z).re;
  return product(lambda.value, z).re;
}

Complex exp_term(const Exponent& lambda, Complex z, double log_shift) {
  if (lambda.pi_scaled) {
    const auto p = product(lambda.units, z);
    const double mag = std::exp(kPi * p.re + log_shift);
    if (mag == 0.0) return {0.0, 0.0};
    return mag * cis_pi(p.im);
  }
  const auto p = product(lambda.value, z);
  const double mag = std::exp(p.re + log_shift);
  if (mag == 0.0) return {0.0, 0.0};
  return {mag * std::cos(p.im), mag * std::sin(p.im)};
}

}  // namespace expinterp
