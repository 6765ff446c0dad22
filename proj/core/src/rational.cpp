#include "hodgekit/rational.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace hodgekit {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer double_factorial_odd(int k) {
  Integer r = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) r *= i;
  return r;
}

Rational binomial(const Rational& alpha, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= alpha - i;
    r /= i + 1;
  }
  return r;
}

Rational bernoulli(unsigned n) {
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mutex);
  while (cache.size() <= n) {
    // sum_{k=0}^{m} binom(m+1, k) B_k = 0
    const auto m = static_cast<long>(cache.size());
    Rational acc = 0;
    for (long k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * cache[static_cast<std::size_t>(k)];
    cache.push_back(-acc / Rational(m + 1));
  }
  return cache[n];
}

Rational pow(const Rational& base, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

}  // namespace hodgekit
