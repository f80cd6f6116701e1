#include "fsqca/fuzzyset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace fsqca {

namespace {

// Same cap the truth table enforces (2^16 corners); keeps corners in 32 bits.
constexpr unsigned kMaxK = 16;

void check_k(unsigned k) {
  if (k == 0 || k > kMaxK) {
    throw ConfigError("implicant width must be in [1, " + std::to_string(kMaxK) + "], got " +
                      std::to_string(k));
  }
}

// Rank used by the reporting order: present < absent < dontcare.
int tri_rank(Tri t) {
  switch (t) {
    case Tri::present: return 0;
    case Tri::absent: return 1;
    case Tri::dontcare: return 2;
  }
  return 3;
}

} // namespace

Implicant::Implicant(unsigned k, std::uint32_t bits, std::uint32_t mask) : k_(k) {
  check_k(k);
  const std::uint32_t width = (k == 32) ? ~0u : ((1u << k) - 1u);
  mask_ = mask & width;
  bits_ = bits & mask_; // canonical: value bits only where specified
}

Implicant Implicant::from_pattern(const std::string& pattern) {
  const unsigned k = static_cast<unsigned>(pattern.size());
  check_k(k);
  std::uint32_t bits = 0;
  std::uint32_t mask = 0;
  for (unsigned j = 0; j < k; ++j) {
    const std::uint32_t bit = 1u << (k - 1 - j);
    switch (pattern[j]) {
      case '1': bits |= bit; mask |= bit; break;
      case '0': mask |= bit; break;
      case '-': break;
      default:
        throw ConfigError("bad pattern character '" + std::string(1, pattern[j]) + "' in \"" +
                          pattern + "\" (want 1, 0 or -)");
    }
  }
  return Implicant(k, bits, mask);
}

Implicant Implicant::corner(unsigned k, std::uint32_t corner_value) {
  check_k(k);
  const std::uint32_t width = (1u << k) - 1u;
  if (corner_value > width) {
    throw ConfigError("corner value " + std::to_string(corner_value) + " does not fit " +
                      std::to_string(k) + " conditions");
  }
  return Implicant(k, corner_value, width);
}

Implicant Implicant::universal(unsigned k) { return Implicant(k, 0, 0); }

Tri Implicant::state(unsigned condition) const {
  const std::uint32_t bit = 1u << (k_ - 1 - condition);
  if (!(mask_ & bit)) return Tri::dontcare;
  return (bits_ & bit) ? Tri::present : Tri::absent;
}

void Implicant::set_state(unsigned condition, Tri t) {
  const std::uint32_t bit = 1u << (k_ - 1 - condition);
  switch (t) {
    case Tri::present: mask_ |= bit; bits_ |= bit; break;
    case Tri::absent: mask_ |= bit; bits_ &= ~bit; break;
    case Tri::dontcare: mask_ &= ~bit; bits_ &= ~bit; break;
  }
}

unsigned Implicant::literal_count() const { return static_cast<unsigned>(std::popcount(mask_)); }

std::string Implicant::pattern() const {
  std::string s(k_, '-');
  for (unsigned j = 0; j < k_; ++j) {
    switch (state(j)) {
      case Tri::present: s[j] = '1'; break;
      case Tri::absent: s[j] = '0'; break;
      case Tri::dontcare: break;
    }
  }
  return s;
}

bool Implicant::operator<(const Implicant& other) const {
  if (k_ != other.k_) return k_ < other.k_;
  for (unsigned j = 0; j < k_; ++j) {
    const int a = tri_rank(state(j));
    const int b = tri_rank(other.state(j));
    if (a != b) return a < b;
  }
  return false;
}

double stable_sum(std::span<const double> values) {
  // Neumaier's compensated summation.
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double term_membership(std::span<const double> case_memberships, const Implicant& imp) {
  if (case_memberships.size() != imp.k()) {
    throw DataError("membership vector has " + std::to_string(case_memberships.size()) +
                    " entries but the implicant spans " + std::to_string(imp.k()) +
                    " conditions");
  }
  double m = 1.0; // empty conjunction
  for (unsigned j = 0; j < imp.k(); ++j) {
    switch (imp.state(j)) {
      case Tri::present: m = std::min(m, case_memberships[j]); break;
      case Tri::absent: m = std::min(m, 1.0 - case_memberships[j]); break;
      case Tri::dontcare: break;
    }
  }
  return m;
}

MembershipVector term_membership_vector(std::span<const double> matrix, std::size_t n_cases,
                                        std::size_t n_conditions, const Implicant& imp) {
  if (matrix.size() != n_cases * n_conditions) {
    throw DataError("membership matrix size does not match cases x conditions");
  }
  MembershipVector out(n_cases);
  for (std::size_t i = 0; i < n_cases; ++i) {
    out[i] = term_membership(matrix.subspan(i * n_conditions, n_conditions), imp);
  }
  return out;
}

namespace {

double sum_min(std::span<const double> x, std::span<const double> y) {
  std::vector<double> mins(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mins[i] = std::min(x[i], y[i]);
  return stable_sum(mins);
}

} // namespace

double consistency(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("consistency: vector lengths differ");
  const double denom = stable_sum(x);
  if (!(denom > 0.0)) throw DataError("consistency: sum of the antecedent memberships is zero");
  return sum_min(x, y) / denom;
}

double coverage(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("coverage: vector lengths differ");
  const double denom = stable_sum(y);
  if (!(denom > 0.0)) throw DataError("coverage: sum of the outcome memberships is zero");
  return sum_min(x, y) / denom;
}

} // namespace fsqca
