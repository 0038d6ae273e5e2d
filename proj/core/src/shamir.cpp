#include "council/shamir.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

#include "council/errors.hpp"

namespace council {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

void check_field(const Share& s, const PrimeField& field) {
  if (s.p != field.modulus()) {
    throw Error(Errc::invalid_field, "share " + to_string(s) + " belongs to another field");
  }
}

void check_epochs(std::span<const Share> shares) {
  for (const auto& s : shares) {
    if (s.epoch != shares.front().epoch) {
      throw Error(Errc::mixed_epoch, "shares from epochs " + std::to_string(shares.front().epoch) +
                                         " and " + std::to_string(s.epoch) + " cannot be combined");
    }
  }
}

void check_distinct(std::span<const FieldElement> xs) {
  std::set<FieldElement> seen;
  for (FieldElement x : xs) {
    if (x == 0) throw Error(Errc::zero_x, "share abscissa must be nonzero");
    if (!seen.insert(x).second) {
      throw Error(Errc::duplicate_x, "abscissa " + std::to_string(x) + " appears twice");
    }
  }
}

std::vector<FieldElement> abscissae(std::span<const Share> shares) {
  std::vector<FieldElement> xs;
  xs.reserve(shares.size());
  for (const auto& s : shares) xs.push_back(s.x);
  return xs;
}

void check_quorum(std::span<const Share> shares, std::size_t k, const PrimeField& field) {
  if (shares.size() < k || shares.empty()) {
    throw Error(Errc::insufficient_shares, std::to_string(shares.size()) + " shares, need " +
                                               std::to_string(k));
  }
  for (const auto& s : shares) check_field(s, field);
  check_epochs(shares);
  check_distinct(abscissae(shares));
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                              31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  // These bases are a deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(FieldElement p) : p_(p) {
  if (p >= (FieldElement{1} << 63) || !is_prime(p)) {
    throw Error(Errc::invalid_field, std::to_string(p) + " is not a prime below 2^63");
  }
}

FieldElement PrimeField::add(FieldElement a, FieldElement b) const {
  FieldElement s = a + b;  // both < 2^63, no overflow
  return s >= p_ ? s - p_ : s;
}

FieldElement PrimeField::sub(FieldElement a, FieldElement b) const {
  return a >= b ? a - b : a + p_ - b;
}

FieldElement PrimeField::mul(FieldElement a, FieldElement b) const { return mulmod(a, b, p_); }

FieldElement PrimeField::pow(FieldElement base, std::uint64_t exp) const {
  return powmod(base, exp, p_);
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a % p_ == 0) throw Error(Errc::invalid_field, "zero has no inverse");
  return powmod(a, p_ - 2, p_);
}

FieldElement FieldSampler::uniform(const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % p;
  for (;;) {
    std::uint64_t v = engine_();
    if (v < limit) return v % p;
  }
}

ThresholdPolicy choose_threshold(std::size_t n) {
  if (n < 1) throw Error(Errc::invalid_council_size, "a COUNCIL needs at least one head");
  return {n, n / 2 + 1};
}

std::string to_string(const Share& s) {
  return "(" + std::to_string(s.x) + ", " + std::to_string(s.y) + ", " + std::to_string(s.k) +
         ", " + std::to_string(s.epoch) + ", " + std::to_string(s.p) + ")";
}

Share parse_share(std::string_view text) {
  std::vector<std::uint64_t> fields;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '(' ||
                               text[i] == ')' || text[i] == ',')) {
      ++i;
    }
  };
  skip();
  while (i < text.size()) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{}) {
      throw Error(Errc::parse_error, "bad share tuple '" + std::string(text) + "'");
    }
    fields.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
    skip();
  }
  if (fields.size() != 5) {
    throw Error(Errc::parse_error,
                "share tuple needs 5 fields (x, y, k, epoch, p): '" + std::string(text) + "'");
  }
  return {fields[0], fields[1], static_cast<std::size_t>(fields[2]), fields[3], fields[4]};
}

FieldElement share_x(NodeId nid, const PrimeField& field) {
  FieldElement x = field.reduce(nid);
  if (x == 0) {
    throw Error(Errc::zero_x, "node " + std::to_string(nid) + " maps to abscissa 0");
  }
  return x;
}

FieldElement evaluate(const Polynomial& f, FieldElement x, const PrimeField& field) {
  FieldElement acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

std::vector<Share> split_with_polynomial(const Polynomial& f, std::span<const FieldElement> xs,
                                         const PrimeField& field, std::uint64_t epoch) {
  if (f.empty()) throw Error(Errc::invalid_council_size, "empty polynomial");
  for (FieldElement c : f) {
    if (c >= field.modulus()) throw Error(Errc::invalid_field, "coefficient outside the field");
  }
  check_distinct(xs);
  std::vector<Share> out;
  out.reserve(xs.size());
  for (FieldElement x : xs) {
    if (x >= field.modulus()) throw Error(Errc::invalid_field, "abscissa outside the field");
    out.push_back({x, evaluate(f, x, field), f.size(), epoch, field.modulus()});
  }
  return out;
}

std::vector<Share> split_secret(FieldElement secret, ThresholdPolicy policy,
                                std::span<const FieldElement> xs, const PrimeField& field,
                                std::uint64_t seed) {
  if (policy.k < 1 || policy.k > policy.n) {
    throw Error(Errc::invalid_council_size, "threshold must satisfy 1 <= k <= n");
  }
  if (xs.size() != policy.n) {
    throw Error(Errc::invalid_council_size, "need exactly n = " + std::to_string(policy.n) +
                                                " abscissae, got " + std::to_string(xs.size()));
  }
  if (secret >= field.modulus()) throw Error(Errc::invalid_field, "secret outside the field");
  FieldSampler sampler(seed);
  Polynomial f{secret};
  for (std::size_t i = 1; i < policy.k; ++i) f.push_back(sampler.uniform(field));
  return split_with_polynomial(f, xs, field);
}

std::vector<FieldElement> lagrange_weights(std::span<const FieldElement> xs, FieldElement at,
                                           const PrimeField& field) {
  std::vector<FieldElement> weights(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    FieldElement num = 1;
    FieldElement den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = field.mul(num, field.sub(at, xs[j]));
      den = field.mul(den, field.sub(xs[i], xs[j]));
    }
    weights[i] = field.mul(num, field.inv(den));
  }
  return weights;
}

FieldElement reconstruct(std::span<const Share> shares, std::size_t k, const PrimeField& field) {
  check_quorum(shares, k, field);
  const auto xs = abscissae(shares);
  const auto w = lagrange_weights(xs, 0, field);
  FieldElement acc = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) acc = field.add(acc, field.mul(w[i], shares[i].y));
  return acc;
}

std::vector<FieldElement> issue_contributions(std::span<const Share> quorum, FieldElement new_x,
                                              std::size_t k, const PrimeField& field) {
  check_quorum(quorum, k, field);
  if (field.reduce(new_x) == 0) throw Error(Errc::zero_x, "new share abscissa must be nonzero");
  auto xs = abscissae(quorum);
  if (std::find(xs.begin(), xs.end(), new_x) != xs.end()) {
    throw Error(Errc::duplicate_x, "abscissa " + std::to_string(new_x) + " already holds a share");
  }
  const auto w = lagrange_weights(xs, new_x, field);
  std::vector<FieldElement> out(quorum.size());
  for (std::size_t i = 0; i < quorum.size(); ++i) out[i] = field.mul(w[i], quorum[i].y);
  return out;
}

Share issue_share(std::span<const Share> quorum, FieldElement new_x, std::size_t k,
                  const PrimeField& field) {
  FieldElement y = 0;
  for (FieldElement c : issue_contributions(quorum, new_x, k, field)) y = field.add(y, c);
  return {new_x, y, k, quorum.front().epoch, field.modulus()};
}

std::vector<Share> refresh_with_polynomial(std::span<const Share> shares, const Polynomial& delta,
                                           ThresholdPolicy policy, const PrimeField& field) {
  if (shares.size() != policy.n || shares.empty()) {
    throw Error(Errc::incomplete_share_set, "refresh needs all " + std::to_string(policy.n) +
                                                " shares, got " + std::to_string(shares.size()));
  }
  if (!delta.empty() && delta.front() != 0) {
    throw Error(Errc::invalid_field, "refresh polynomial must vanish at 0");
  }
  for (const auto& s : shares) check_field(s, field);
  check_epochs(shares);
  check_distinct(abscissae(shares));
  std::vector<Share> out(shares.begin(), shares.end());
  for (auto& s : out) {
    s.y = field.add(s.y, evaluate(delta, s.x, field));
    s.k = policy.k;
    s.epoch += 1;
  }
  return out;
}

std::vector<Share> refresh_shares(std::span<const Share> shares, ThresholdPolicy policy,
                                  const PrimeField& field, std::uint64_t seed) {
  FieldSampler sampler(seed);
  Polynomial delta{0};
  for (std::size_t i = 1; i < policy.k; ++i) delta.push_back(sampler.uniform(field));
  return refresh_with_polynomial(shares, delta, policy, field);
}

std::vector<FieldElement> consistent_secrets(std::span<const Share> points, std::size_t k,
                                             const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  if (k < 1) throw Error(Errc::invalid_council_size, "threshold must be >= 1");
  for (const auto& s : points) check_field(s, field);
  check_distinct(abscissae(points));

  if (p > (1U << 20)) {
    throw Error(Errc::invalid_field, "brute-force enumeration too large for this field");
  }
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < k; ++i) {
    if (total > 100'000'000 / p) {
      throw Error(Errc::invalid_field, "brute-force enumeration too large for this field");
    }
    total *= p;
  }

  std::vector<bool> possible(p, false);
  Polynomial f(k, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 1; i < k; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    // The first point pins f(0); every other point must agree.
    if (points.empty()) {
      std::fill(possible.begin(), possible.end(), true);
      break;
    }
    f[0] = 0;
    FieldElement s = field.sub(points.front().y, evaluate(f, points.front().x, field));
    f[0] = s;
    bool ok = true;
    for (std::size_t j = 1; j < points.size() && ok; ++j) {
      ok = evaluate(f, points[j].x, field) == points[j].y;
    }
    if (ok) possible[s] = true;
  }
  std::vector<FieldElement> out;
  for (std::uint64_t s = 0; s < p; ++s) {
    if (possible[s]) out.push_back(s);
  }
  return out;
}

}  // namespace council
