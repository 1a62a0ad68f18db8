#include "expinterp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "expinterp/error.hpp"

namespace expinterp {

bool SparseSequence::contains(const Exponent& e) const {
  return std::any_of(exponents.begin(), exponents.end(),
                     [&](const Exponent& x) { return x.value == e.value; });
}

namespace {

constexpr std::int64_t kLinearScan = 4096;

// Modulus used for the doubling test; non-finite points count as +inf so the
// bisection below brackets them.
double modulus_at(const PointFamily& f, std::int64_t k) {
  const double m = std::abs(f.point(k));
  return std::isnan(m) ? std::numeric_limits<double>::infinity() : m;
}

std::int64_t next_index(const PointFamily& f, std::int64_t cursor, double floor_modulus,
                        std::size_t family_id) {
  auto qualifies = [&](std::int64_t k) { return modulus_at(f, k) > floor_modulus; };
  auto exhausted = [&] {
    std::ostringstream os;
    os << "family " << family_id << " cannot supply a point with modulus > " << floor_modulus
       << " below index bound";
    return Error(ErrorCode::Exhausted, os.str());
  };

  for (std::int64_t k = cursor + 1; k <= cursor + kLinearScan; ++k) {
    if (qualifies(k)) return k;
  }
  // Past the linear window the catalog moduli are increasing; gallop, then
  // bisect for the first qualifying index.
  std::int64_t lo = cursor + kLinearScan;
  std::int64_t step = kLinearScan;
  std::int64_t hi = lo + step;
  while (!qualifies(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (hi > kSparseIndexBound) throw exhausted();
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (qualifies(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

SparseSequence extract_sparse(const FamilySet& exponents, const DirectionSet& targets,
                              std::size_t count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "sparse sequence length must be >= 1");
  if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "sparse extraction needs target directions");

  std::vector<std::size_t> realizing;
  for (const auto& t : targets) {
    bool found = false;
    for (std::size_t f = 0; f < exponents.families.size(); ++f) {
      const auto& fam = exponents.families[f].family;
      if (fam.unbounded() && Direction::normalize(fam.beta).approx_equal(t)) found = true;
    }
    if (!found) {
      std::ostringstream os;
      os << "target direction (" << t.value().real() << ", " << t.value().imag()
         << ") is not a limit direction of the exponent set";
      throw Error(ErrorCode::TargetNotInLambda, os.str());
    }
  }
  for (std::size_t f = 0; f < exponents.families.size(); ++f) {
    const auto& fam = exponents.families[f].family;
    if (fam.unbounded() && targets.contains(Direction::normalize(fam.beta))) realizing.push_back(f);
  }

  SparseSequence seq;
  seq.targets = targets;
  std::vector<std::int64_t> cursor(realizing.size(), 0);
  double prev = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t slot = n % realizing.size();
    const std::size_t f = realizing[slot];
    const auto& fam = exponents.families[f].family;
    const std::int64_t k = next_index(fam, cursor[slot], 2.0 * prev, f);
    const Exponent e = fam.exponent(k);
    if (!std::isfinite(e.modulus())) {
      throw Error(ErrorCode::Exhausted, "family " + std::to_string(f) + " left the binary64 range");
    }
    cursor[slot] = k;
    prev = e.modulus();
    seq.exponents.push_back(e);
    seq.source_family.push_back(static_cast<int>(f));
    seq.source_index.push_back(k);
  }
  return seq;
}

G1Value g1_eval(const SparseSequence& seq, Complex z) {
  if (seq.exponents.empty()) throw Error(ErrorCode::InvalidArgument, "empty sparse sequence");
  G1Value out{{1.0, 0.0}, 0.0};
  for (const auto& e : seq.exponents) {
    if (z == e.value) {
      out.value = {0.0, 0.0};
    } else {
      out.value *= Complex{1.0, 0.0} - z / e.value;
    }
  }
  // sum_{n>N} |z / lambda_n| < |z| / |lambda_N| =: S by doubling, and every
  // tail factor has |w| < S / 2, so |sum log(1 - w_n)| <= S / (1 - S / 2).
  const double s = std::abs(z) / seq.exponents.back().modulus();
  out.tail_bound = s < 2.0 ? s / (1.0 - s / 2.0) : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<TypeProbe> minimal_type_probe(const SparseSequence& seq, std::span<const double> radii) {
  std::vector<TypeProbe> out;
  if (radii.empty()) return out;
  if (seq.exponents.empty()) throw Error(ErrorCode::InvalidArgument, "empty sparse sequence");
  const double reach = seq.exponents.back().modulus();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r > 0.0) || r > reach || (i > 0 && !(r > radii[i - 1]))) {
      std::ostringstream os;
      os << "radius " << r << " must be increasing within (0, " << reach << "]";
      throw Error(ErrorCode::RadiiOutOfRange, os.str());
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 64; ++j) {
      const Complex z = r * cis_pi(static_cast<double>(j) / 32.0);
      double log_mod = 0.0;
      for (const auto& e : seq.exponents) log_mod += std::log(std::abs(Complex{1.0, 0.0} - z / e.value));
      best = std::max(best, log_mod);
    }
    out.push_back({r, best / r});
  }
  return out;
}

ExpSum apply_convolution(const SparseSequence& seq, const ExpSum& u) {
  std::vector<ExpTerm> terms;
  terms.reserve(u.size());
  for (const auto& t : u.terms()) {
    if (seq.contains(t.exponent)) {
      terms.push_back({t.exponent, {0.0, 0.0}});
    } else {
      terms.push_back({t.exponent, t.scaled * g1_eval(seq, t.exponent.value).value});
    }
  }
  return ExpSum(std::move(terms), u.rate(), u.truncated());
}

}  // namespace expinterp
