#include <gtest/gtest.h>

#include <random>

#include "council/errors.hpp"
#include "council/shamir.hpp"
#include "test_support.hpp"

using namespace council;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::validation_error;
}

TEST(PrimeField, Arithmetic) {
  const PrimeField f(13);
  EXPECT_EQ(f.add(7, 9), 3U);
  EXPECT_EQ(f.sub(2, 5), 10U);
  EXPECT_EQ(f.mul(5, 8), 1U);
  EXPECT_EQ(f.inv(5), 8U);
  EXPECT_EQ(f.pow(2, 12), 1U);
  EXPECT_EQ(code_of([&] { f.inv(0); }), Errc::invalid_field);
  EXPECT_EQ(code_of([] { PrimeField bad(12); }), Errc::invalid_field);
}

TEST(PrimeField, MersenneInverses) {
  const PrimeField f;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const FieldElement a = 1 + rng() % (f.modulus() - 1);
    EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
  }
}

TEST(Primes, MatchTrialDivision) {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    EXPECT_EQ(is_prime(n), prime) << n;
  }
  EXPECT_TRUE(is_prime(PrimeField::kMersenne61));
  EXPECT_FALSE(is_prime(PrimeField::kMersenne61 + 2));
}

TEST(Threshold, MajorityTable) {
  const std::vector<std::size_t> expect{1, 2, 2, 3, 3, 4, 4};
  for (std::size_t n = 1; n <= expect.size(); ++n) {
    const auto p = choose_threshold(n);
    EXPECT_EQ(p.k, expect[n - 1]);
    EXPECT_TRUE(p.valid());
  }
  EXPECT_EQ(code_of([] { choose_threshold(0); }), Errc::invalid_council_size);
}

TEST(Share, TextRoundTrip) {
  const Share s{3, 12, 2, 4, 13};
  EXPECT_EQ(to_string(s), "(3, 12, 2, 4, 13)");
  EXPECT_EQ(parse_share(to_string(s)), s);
  EXPECT_EQ(parse_share("3,12,2,4,13"), s);
  EXPECT_EQ(code_of([] { parse_share("(1, 2, 3)"); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { parse_share("(a, 2, 3, 4, 5)"); }), Errc::parse_error);
}

TEST(Split, SharesLieOnThePolynomial) {
  const PrimeField f(13);
  const Polynomial poly{7, 3, 5};
  const std::vector<FieldElement> xs{1, 2, 3, 4, 5};
  const auto shares = split_with_polynomial(poly, xs, f);
  for (const auto& s : shares) {
    EXPECT_EQ(s.y, oracle::poly_eval(poly, s.x, 13));
    EXPECT_EQ(s.k, 3U);
  }
  EXPECT_EQ(code_of([&] {
              const std::vector<FieldElement> dup{1, 1};
              split_with_polynomial(poly, dup, f);
            }),
            Errc::duplicate_x);
  EXPECT_EQ(code_of([&] { share_x(13, f); }), Errc::zero_x);
}

TEST(Split, SeededAndReconstructible) {
  const PrimeField f;
  const std::vector<FieldElement> xs{2, 5, 9, 11, 40};
  const auto a = split_secret(123456789, {5, 3}, xs, f, 42);
  EXPECT_EQ(a, split_secret(123456789, {5, 3}, xs, f, 42));
  EXPECT_NE(a, split_secret(123456789, {5, 3}, xs, f, 43));
  EXPECT_EQ(reconstruct(std::span(a).first(3), 3, f), 123456789U);
  EXPECT_EQ(reconstruct(std::span(a).last(3), 3, f), 123456789U);
  EXPECT_EQ(reconstruct(a, 3, f), 123456789U);
}

TEST(Reconstruct, Errors) {
  const PrimeField f(13);
  const std::vector<FieldElement> xs{1, 2, 3};
  auto shares = split_secret(4, {3, 2}, xs, f, 1);
  EXPECT_EQ(code_of([&] { reconstruct(std::span(shares).first(1), 2, f); }),
            Errc::insufficient_shares);
  auto mixed = shares;
  mixed[1].epoch = 1;
  EXPECT_EQ(code_of([&] { reconstruct(mixed, 2, f); }), Errc::mixed_epoch);
  auto dup = shares;
  dup[1].x = dup[0].x;
  EXPECT_EQ(code_of([&] { reconstruct(dup, 2, f); }), Errc::duplicate_x);
  EXPECT_EQ(code_of([&] { reconstruct(shares, 2, PrimeField(17)); }), Errc::invalid_field);
}

// Lagrange weights at 0 recombine any degree < n polynomial, checked with the
// schoolbook oracle.
TEST(Lagrange, WeightsRecombineConstantTerm) {
  const PrimeField f(101);
  const oracle::SmallField g{101};
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<FieldElement> xs{1, 7, 20, 33};
    Polynomial poly(4);
    for (auto& c : poly) c = rng() % 101;
    const auto w = lagrange_weights(xs, 0, f);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      acc = (acc + g.mul(w[i], oracle::poly_eval(poly, xs[i], 101))) % 101;
    }
    EXPECT_EQ(acc, poly[0]);
  }
}

TEST(Issue, MatchesPolynomialAndKeepsEpoch) {
  const PrimeField f;
  FieldSampler sampler(9);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial poly(3);
    for (auto& c : poly) c = sampler.uniform(f);
    const std::vector<FieldElement> xs{3, 8, 15};
    const auto shares = split_with_polynomial(poly, xs, f, 2);
    const FieldElement nx = 100 + trial;
    const Share fresh = issue_share(shares, nx, 3, f);
    EXPECT_EQ(fresh.y, oracle::poly_eval(poly, nx, f.modulus()));
    EXPECT_EQ(fresh.epoch, 2U);
    // Each contribution is one public multiple of a single share.
    const auto parts = issue_contributions(shares, nx, 3, f);
    const auto w = lagrange_weights(xs, nx, f);
    for (std::size_t i = 0; i < parts.size(); ++i) EXPECT_EQ(parts[i], f.mul(w[i], shares[i].y));
  }
}

TEST(Issue, Errors) {
  const PrimeField f(13);
  const std::vector<FieldElement> xs{1, 2, 3};
  const auto shares = split_secret(4, {3, 2}, xs, f, 1);
  EXPECT_EQ(code_of([&] { issue_share(shares, 2, 2, f); }), Errc::duplicate_x);
  EXPECT_EQ(code_of([&] { issue_share(shares, 0, 2, f); }), Errc::zero_x);
  EXPECT_EQ(code_of([&] { issue_share(std::span(shares).first(1), 5, 2, f); }),
            Errc::insufficient_shares);
}

// A lone contribution over a small field leaves every secret possible once
// combined with anything less than a full quorum.
TEST(Issue, SingleContributionRevealsNothingExtra) {
  const PrimeField f(13);
  const std::vector<FieldElement> xs{1, 2, 3};
  const auto shares = split_with_polynomial({6, 4, 9}, xs, f);
  const auto parts = issue_contributions(shares, 5, 3, f);
  const auto w = lagrange_weights(xs, 5, f);
  // Knowing parts[0] and the public weight is knowing share 0.
  EXPECT_EQ(f.mul(parts[0], f.inv(w[0])), shares[0].y);
  const std::vector<Share> one{shares[0]};
  EXPECT_EQ(consistent_secrets(one, 3, f).size(), 13U);
}

TEST(Refresh, PreservesSecretAndBumpsEpoch) {
  const PrimeField f;
  const std::vector<FieldElement> xs{1, 2, 3, 4, 5};
  const auto shares = split_secret(777, {5, 3}, xs, f, 5);
  const auto next = refresh_shares(shares, {5, 3}, f, 6);
  for (std::size_t i = 0; i < next.size(); ++i) {
    EXPECT_EQ(next[i].epoch, 1U);
    EXPECT_NE(next[i].y, shares[i].y);
  }
  EXPECT_EQ(reconstruct(std::span(next).last(3), 3, f), 777U);
  std::vector<Share> mixed{shares[0], next[1], next[2]};
  EXPECT_EQ(code_of([&] { reconstruct(mixed, 3, f); }), Errc::mixed_epoch);
  EXPECT_EQ(code_of([&] { refresh_shares(std::span(shares).first(4), {5, 3}, f, 1); }),
            Errc::incomplete_share_set);
  EXPECT_EQ(code_of([&] { refresh_with_polynomial(shares, {1, 2}, {5, 3}, f); }),
            Errc::invalid_field);
}

TEST(Refresh, ExplicitDeltaIsAdded) {
  const PrimeField f(13);
  const std::vector<FieldElement> xs{1, 2, 3};
  const auto shares = split_with_polynomial({5, 1}, xs, f);
  const auto next = refresh_with_polynomial(shares, {0, 3}, {3, 2}, f);
  for (const auto& s : next) EXPECT_EQ(s.y, oracle::poly_eval({5, 4}, s.x, 13));
}

TEST(ConsistentSecrets, ThresholdBoundary) {
  const PrimeField f(13);
  const std::vector<FieldElement> xs{1, 2, 3};
  const auto shares = split_with_polynomial({11, 2, 7}, xs, f);
  EXPECT_EQ(consistent_secrets(std::span(shares).first(2), 3, f).size(), 13U);
  EXPECT_EQ(consistent_secrets(shares, 3, f), (std::vector<FieldElement>{11}));
  EXPECT_EQ(code_of([&] { consistent_secrets(shares, 3, PrimeField()); }), Errc::invalid_field);
}

TEST(FieldSampler, UniformStaysInField) {
  const PrimeField f(13);
  FieldSampler s(2);
  std::vector<int> seen(13, 0);
  for (int i = 0; i < 1300; ++i) {
    const auto v = s.uniform(f);
    ASSERT_LT(v, 13U);
    ++seen[v];
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

}  // namespace
