#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "council/graph.hpp"

namespace council {

using FieldElement = std::uint64_t;

/// Arithmetic modulo a prime p < 2^63.
class PrimeField {
 public:
  static constexpr FieldElement kMersenne61 = (FieldElement{1} << 61) - 1;

  /// Throws Errc::invalid_field unless p is a prime below 2^63.
  explicit PrimeField(FieldElement p = kMersenne61);

  FieldElement modulus() const { return p_; }

  FieldElement reduce(std::uint64_t v) const { return v % p_; }
  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement base, std::uint64_t exp) const;
  /// Throws Errc::invalid_field on zero.
  FieldElement inv(FieldElement a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  FieldElement p_;
};

bool is_prime(std::uint64_t n);

/// Uniform field elements from a seeded mt19937_64 (rejection sampling, so
/// the stream is identical on every platform).
class FieldSampler {
 public:
  explicit FieldSampler(std::uint64_t seed) : engine_(seed) {}

  FieldElement uniform(const PrimeField& field);
  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct ThresholdPolicy {
  std::size_t n = 1;
  std::size_t k = 1;

  /// 1 <= k <= n and 2k >= n + 1.
  bool valid() const { return k >= 1 && k <= n && 2 * k >= n + 1; }

  friend bool operator==(const ThresholdPolicy&, const ThresholdPolicy&) = default;
};

/// Smallest majority threshold: k = floor(n/2) + 1.
/// Throws Errc::invalid_council_size for n < 1.
ThresholdPolicy choose_threshold(std::size_t n);

/// One point (x, f(x)) of a sharing polynomial, tagged with its threshold,
/// refresh epoch and field.
struct Share {
  FieldElement x = 0;
  FieldElement y = 0;
  std::size_t k = 1;
  std::uint64_t epoch = 0;
  FieldElement p = PrimeField::kMersenne61;

  friend bool operator==(const Share&, const Share&) = default;
};

/// "(x, y, k, epoch, p)" in decimal.
std::string to_string(const Share& s);
/// Accepts the to_string format (parentheses and spaces optional).
/// Throws Errc::parse_error.
Share parse_share(std::string_view text);

/// Share abscissa of a node: its NID reduced mod p. Throws Errc::zero_x.
FieldElement share_x(NodeId nid, const PrimeField& field);

/// Coefficients, constant term first.
using Polynomial = std::vector<FieldElement>;

FieldElement evaluate(const Polynomial& f, FieldElement x, const PrimeField& field);

/// Shares of a caller-chosen polynomial; k = f.size(). Throws DuplicateX/ZeroX.
std::vector<Share> split_with_polynomial(const Polynomial& f, std::span<const FieldElement> xs,
                                         const PrimeField& field, std::uint64_t epoch = 0);

/// Shamir split: f(0) = secret, the k - 1 higher coefficients drawn from
/// FieldSampler(seed). Deterministic for a fixed seed.
std::vector<Share> split_secret(FieldElement secret, ThresholdPolicy policy,
                                std::span<const FieldElement> xs, const PrimeField& field,
                                std::uint64_t seed);

/// Lagrange basis weights l_i(at) for the given abscissae.
std::vector<FieldElement> lagrange_weights(std::span<const FieldElement> xs, FieldElement at,
                                           const PrimeField& field);

/// f(0) by Lagrange interpolation over all given shares.
/// Throws InsufficientShares (< k), MixedEpoch, DuplicateX.
FieldElement reconstruct(std::span<const Share> shares, std::size_t k, const PrimeField& field);

/// Each quorum member's contribution l_i(new_x) * y_i toward the share of a
/// newcomer at new_x. Every contribution is a public nonzero multiple of one
/// share, so it reveals nothing beyond that share.
std::vector<FieldElement> issue_contributions(std::span<const Share> quorum, FieldElement new_x,
                                              std::size_t k, const PrimeField& field);

/// (new_x, f(new_x)) as the sum of issue_contributions; no dealer holds f.
/// Throws InsufficientShares, MixedEpoch, DuplicateX (including new_x
/// colliding with a quorum abscissa), ZeroX.
Share issue_share(std::span<const Share> quorum, FieldElement new_x, std::size_t k,
                  const PrimeField& field);

/// Adds delta(x_i) to every share, delta(0) must be 0. Epoch becomes e + 1
/// and every share's k becomes policy.k.
/// Throws IncompleteShareSet (size != policy.n), MixedEpoch, InvalidField.
std::vector<Share> refresh_with_polynomial(std::span<const Share> shares, const Polynomial& delta,
                                           ThresholdPolicy policy, const PrimeField& field);

/// Proactive refresh with a random degree-(k-1) zero-constant polynomial.
std::vector<Share> refresh_shares(std::span<const Share> shares, ThresholdPolicy policy,
                                  const PrimeField& field, std::uint64_t seed);

/// Every secret s for which some polynomial of degree <= k-1 with f(0) = s
/// passes through all `points`, found by enumerating the p^(k-1) choices of
/// higher coefficients. Only meant for small p; throws InvalidField when the
/// enumeration would exceed 10^8 polynomials.
std::vector<FieldElement> consistent_secrets(std::span<const Share> points, std::size_t k,
                                             const PrimeField& field);

}  // namespace council
