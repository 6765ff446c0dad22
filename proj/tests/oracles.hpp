#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the algorithms under test beyond the Series container itself.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hodgekit/rational.hpp"
#include "hodgekit/series.hpp"

namespace oracle {

using hodgekit::Caps;
using hodgekit::Monomial;
using hodgekit::Rational;
using hodgekit::Series;
using Partition = std::vector<int>;

inline std::vector<Partition> partitions(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {Partition{}};
  std::vector<Partition> out;
  for (int k = std::min(n, max_part); k >= 1; --k)
    for (auto rest : partitions(n - k, k)) {
      rest.insert(rest.begin(), k);
      out.push_back(rest);
    }
  return out;
}

inline Rational z_mu(const Partition& mu) {
  Rational z = 1;
  std::map<int, int> mult;
  for (int k : mu) {
    z *= k;
    ++mult[k];
  }
  for (auto [k, m] : mult) z *= Rational(hodgekit::factorial(static_cast<unsigned>(m)));
  return z;
}

inline Monomial p_monomial(const Partition& mu) {
  Monomial m;
  for (int k : mu) m = m * Monomial::of(hodgekit::p(k));
  return m;
}

/// Complete homogeneous h_k = sum_{|mu| = k} p_mu / z_mu.
inline Series h(int k, const Caps& c) {
  Series s(c);
  if (k < 0) return s;
  for (const auto& mu : partitions(k)) s.add_term(p_monomial(mu), 1 / z_mu(mu));
  return s;
}

/// Determinant by Laplace expansion along the first row.
inline Series det(const std::vector<std::vector<Series>>& a, const Caps& c) {
  const std::size_t n = a.size();
  if (n == 0) return Series::constant(1, c);
  Series out(c);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Series>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Series> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Series term = a[0][j] * det(minor, c);
    if (j % 2) out -= term;
    else out += term;
  }
  return out;
}

/// Jacobi-Trudi: s_lambda = det h_{lambda_i - i + j}.
inline Series schur(const Partition& lambda) {
  int n = 0;
  for (int x : lambda) n += x;
  const Caps c = Caps::exact().with_weight(n);
  std::vector<std::vector<Series>> m(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < lambda.size(); ++j)
      m[i].push_back(h(lambda[i] - static_cast<int>(i) + static_cast<int>(j), c));
  return det(m, c);
}

inline int content_sum(const Partition& lambda) {
  int s = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (int j = 0; j < lambda[i]; ++j) s += j - static_cast<int>(i);
  return s;
}

/// Number of standard Young tableaux via the hook length formula.
inline Rational dimension(const Partition& lambda) {
  int n = 0;
  for (int x : lambda) n += x;
  Rational d(hodgekit::factorial(static_cast<unsigned>(n)));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (int j = 0; j < lambda[i]; ++j) {
      int arm = lambda[i] - j - 1;
      int leg = 0;
      for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++leg;
      d /= arm + leg + 1;
    }
  return d;
}

/// Counts m-tuples of transpositions in S_d whose product has cycle type mu
/// and which act transitively, times prod(mult!)/d!.
inline Rational brute_hurwitz(int d, int m, Partition mu) {
  std::vector<std::pair<int, int>> tr;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) tr.emplace_back(i, j);
  std::sort(mu.rbegin(), mu.rend());
  long count = 0;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  const std::size_t nt = tr.size();
  if (nt == 0) return d == 1 && m == 0 && mu == Partition{1} ? Rational(1) : Rational(0);
  while (true) {
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> comp(perm);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int k = 0; k < m; ++k) {
      auto [a, b] = tr[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      comp[static_cast<std::size_t>(find(a))] = find(b);
    }
    std::set<int> roots;
    for (int x = 0; x < d; ++x) roots.insert(find(x));
    if (roots.size() == 1) {
      std::vector<bool> seen(static_cast<std::size_t>(d), false);
      Partition type;
      for (int x = 0; x < d; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        int len = 0;
        for (int y = x; !seen[static_cast<std::size_t>(y)]; y = perm[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          ++len;
        }
        type.push_back(len);
      }
      std::sort(type.rbegin(), type.rend());
      if (type == mu) ++count;
    }
    int k = 0;
    while (k < m && ++pick[static_cast<std::size_t>(k)] == static_cast<int>(nt)) pick[static_cast<std::size_t>(k++)] = 0;
    if (k == m) break;
  }
  Rational out(count);
  std::map<int, int> mult;
  for (int x : mu) ++mult[x];
  for (auto [x, c] : mult) out *= Rational(hodgekit::factorial(static_cast<unsigned>(c)));
  return out / Rational(hodgekit::factorial(static_cast<unsigned>(d)));
}

}  // namespace oracle
