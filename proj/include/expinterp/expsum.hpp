#pragma once

#include <vector>

#include "expinterp/numeric.hpp"

namespace expinterp {

/// One term of U(z) = sum c_n e^{lambda_n z}. The coefficient is held as
/// c_n = scaled * e^{-rate |lambda_n|} so that heavily damped terms stay
/// representable.
struct ExpTerm {
  Exponent exponent;
  Complex scaled{};
};

/// Truncated exponential sum with decay certificate |c_n| <= C e^{-rate |lambda_n|},
/// C = max |scaled|.
class ExpSum {
 public:
  ExpSum() = default;
  /// Throws InvalidArgument on repeated exponents or a negative rate.
  ExpSum(std::vector<ExpTerm> terms, double rate, bool truncated = false);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double rate() const { return rate_; }
  double bound() const { return bound_; }
  /// The stored terms are a prefix of a longer series with the same certificate.
  bool truncated() const { return truncated_; }

  double log_weight(std::size_t i) const { return -rate_ * terms_[i].exponent.modulus(); }
  /// c_n; may underflow to zero for strongly damped terms.
  Complex coefficient(std::size_t i) const;
  /// Term indices sorted by ascending |lambda|, ties by position.
  std::vector<std::size_t> ascending_order() const;

 private:
  std::vector<ExpTerm> terms_;
  double rate_ = 0.0;
  double bound_ = 0.0;
  bool truncated_ = false;
};

}  // namespace expinterp
