#include "expinterp/expsum.hpp"

#include <algorithm>
#include <numeric>

#include "expinterp/error.hpp"

namespace expinterp {

ExpSum::ExpSum(std::vector<ExpTerm> terms, double rate, bool truncated)
    : terms_(std::move(terms)), rate_(rate), truncated_(truncated) {
  if (!(rate_ >= 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorCode::InvalidArgument, "decay rate must be finite and >= 0");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      if (terms_[i].exponent.value == terms_[j].exponent.value) {
        throw Error(ErrorCode::InvalidArgument, "exponential sum has repeated exponents");
      }
    }
    bound_ = std::max(bound_, std::abs(terms_[i].scaled));
  }
}

Complex ExpSum::coefficient(std::size_t i) const {
  return terms_[i].scaled * std::exp(log_weight(i));
}

std::vector<std::size_t> ExpSum::ascending_order() const {
  std::vector<std::size_t> idx(terms_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
    return terms_[a].exponent.modulus() < terms_[b].exponent.modulus();
  });
  return idx;
}

}  // namespace expinterp
