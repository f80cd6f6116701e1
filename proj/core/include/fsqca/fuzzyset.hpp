#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsqca/errors.hpp"

namespace fsqca {

enum class Tri : std::uint8_t { present, absent, dontcare };

/// Conjunction pattern over k causal conditions.
///
/// Packed big-endian: condition j sits at bit (k-1-j), so ascending corner
/// values read like the pattern strings ("10-" covers corners 100 and 101).
class Implicant {
public:
  Implicant() = default;
  Implicant(unsigned k, std::uint32_t bits, std::uint32_t mask);

  /// Parse "1", "0", "-" per condition, e.g. "1-0".
  static Implicant from_pattern(const std::string& pattern);
  /// Fully-specified implicant for one corner.
  static Implicant corner(unsigned k, std::uint32_t corner_value);
  /// The all-dontcare implicant (empty conjunction).
  static Implicant universal(unsigned k);

  unsigned k() const { return k_; }
  std::uint32_t bits() const { return bits_; }
  std::uint32_t mask() const { return mask_; }

  Tri state(unsigned condition) const;
  void set_state(unsigned condition, Tri t);

  unsigned literal_count() const;
  bool is_universal() const { return mask_ == 0; }

  bool covers(std::uint32_t corner_value) const {
    return ((corner_value ^ bits_) & mask_) == 0;
  }

  /// True when every literal of `other` appears here (corner set is a
  /// subset of other's).
  bool specializes(const Implicant& other) const {
    return (mask_ & other.mask_) == other.mask_ && ((bits_ ^ other.bits_) & other.mask_) == 0;
  }

  /// "1-0" style string, condition 0 leftmost.
  std::string pattern() const;

  /// Ordering used everywhere results are reported: position by position,
  /// present < absent < don't-care.
  bool operator<(const Implicant& other) const;
  bool operator==(const Implicant& other) const = default;

private:
  unsigned k_ = 0;
  std::uint32_t bits_ = 0; // value bits, meaningful where mask_ is set
  std::uint32_t mask_ = 0; // set bit = condition specified
};

/// Per-case memberships of one set expression.
using MembershipVector = std::vector<double>;

/// Compensated (Neumaier) summation; keeps the measure identities stable
/// to ~1e-12 regardless of case ordering.
double stable_sum(std::span<const double> values);

/// Membership of one case in a conjunction: min over the specified
/// conditions of m (present) or 1-m (absent); 1 for the empty conjunction.
double term_membership(std::span<const double> case_memberships, const Implicant& imp);

/// Term membership for every case of a row-major membership matrix.
MembershipVector term_membership_vector(std::span<const double> matrix, std::size_t n_cases,
                                        std::size_t n_conditions, const Implicant& imp);

/// sum(min(x,y)) / sum(x). Requires equal lengths and sum(x) > 0.
double consistency(std::span<const double> x, std::span<const double> y);

/// sum(min(x,y)) / sum(y). Requires equal lengths and sum(y) > 0.
double coverage(std::span<const double> x, std::span<const double> y);

} // namespace fsqca
