#include "hodgekit/hurwitz.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <numeric>
#include <stdexcept>

#include "hodgekit/diffop.hpp"

namespace hodgekit {

int RamificationProfile::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int RamificationProfile::m() const { return 2 * genus - 2 + static_cast<int>(parts.size()) + degree(); }

bool RamificationProfile::admissible() const {
  if (genus < 0 || parts.empty()) return false;
  if (std::any_of(parts.begin(), parts.end(), [](int b) { return b < 1; })) return false;
  return m() >= 0;
}

RamificationProfile RamificationProfile::normalized() const {
  RamificationProfile r = *this;
  std::sort(r.parts.rbegin(), r.parts.rend());
  return r;
}

Caps hurwitz_caps(int beta_cap, int weight_cap, int max_factors) {
  return Caps::weight(weight_cap).with_degree(max_factors).with_param(Param::Beta, 0, beta_cap);
}

Series hurwitz_tau(int beta_cap, int weight_cap) {
  const Caps caps = hurwitz_caps(beta_cap, weight_cap);
  // The flow preserves weight, so block w only involves p1^w / w!.
  auto block = [beta_cap](int w) {
    const Caps bc = Caps::weight(w);
    const DiffOp m0 = materialize(OperatorSpec::cutjoin(), Family::P, w);
    Series z = Series::term(Monomial::of(p(1), w), Rational(1) / Rational(factorial(static_cast<unsigned>(w))), bc);
    std::vector<Series> orders{z};
    for (int k = 1; k <= beta_cap; ++k) {
      z = apply(m0, z);
      z *= frac(1, k);
      if (z.is_zero()) break;
      orders.push_back(z);
    }
    return orders;
  };
  std::vector<std::future<std::vector<Series>>> jobs;
  for (int w = 0; w <= weight_cap; ++w) jobs.push_back(std::async(std::launch::async, block, w));
  Series tau(caps);
  for (auto& job : jobs) {
    const auto orders = job.get();
    for (std::size_t k = 0; k < orders.size(); ++k)
      for (const auto& [m, c] : orders[k].terms()) tau.add_term(m.with_param(Param::Beta, static_cast<int>(k)), c);
  }
  return tau;
}

Series hurwitz_connected(int beta_cap, int weight_cap, int max_factors) {
  const Series tau = hurwitz_tau(beta_cap, weight_cap).truncated(hurwitz_caps(beta_cap, weight_cap, max_factors));
  return log(tau);
}

Series h01(int beta_cap, int weight_cap) {
  Series s(hurwitz_caps(beta_cap, weight_cap));
  for (int b = 1; b <= weight_cap && b - 1 <= beta_cap; ++b) {
    Rational c = Rational(pow(Rational(b), static_cast<unsigned>(b))) / Rational(b * b) / Rational(factorial(static_cast<unsigned>(b)));
    s.add_term(Monomial::from({{p(b), 1}}, {b - 1, 0, 0, 0}), c);
  }
  return s;
}

Series h02(int beta_cap, int weight_cap) {
  Series s(hurwitz_caps(beta_cap, weight_cap));
  for (int b1 = 1; b1 <= weight_cap; ++b1) {
    for (int b2 = 1; b1 + b2 <= weight_cap && b1 + b2 <= beta_cap; ++b2) {
      Rational c = pow(Rational(b1), static_cast<unsigned>(b1)) * pow(Rational(b2), static_cast<unsigned>(b2));
      c /= Rational(b1 + b2) * Rational(factorial(static_cast<unsigned>(b1))) * Rational(factorial(static_cast<unsigned>(b2)));
      c /= 2;
      s.add_term(Monomial::from({{p(b1), 1}, {p(b2), 1}}, {b1 + b2, 0, 0, 0}), c);
    }
  }
  return s;
}

namespace {

Monomial profile_monomial(const RamificationProfile& profile) {
  std::vector<Monomial::VarPower> powers;
  for (int b : profile.parts) powers.push_back({p(b), 1});
  return Monomial::from(std::move(powers), {profile.m(), 0, 0, 0});
}

Integer automorphism_factor(const RamificationProfile& profile) {
  std::map<int, unsigned> mult;
  for (int b : profile.parts) ++mult[b];
  Integer f = 1;
  for (const auto& [b, k] : mult) f *= factorial(k);
  return f;
}

void require_admissible(const RamificationProfile& profile) {
  if (!profile.admissible())
    throw std::invalid_argument("profile is not admissible (needs genus >= 0, parts >= 1 and m >= 0)");
}

constexpr int kOracleMaxDegree = 8;
using Perm = std::array<std::int8_t, kOracleMaxDegree>;

struct OracleState {
  int n = 0;
  Perm perm{};
  Perm parent{};
};

int find_root(Perm& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
  return x;
}

void unite(Perm& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(b);
}

int transposition_distance(const Perm& perm, int n) {
  std::array<bool, kOracleMaxDegree> seen{};
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) seen[static_cast<std::size_t>(j)] = true;
  }
  return n - cycles;
}

bool transitive(Perm parent, int n) {
  const int root = find_root(parent, 0);
  for (int i = 1; i < n; ++i)
    if (find_root(parent, i) != root) return false;
  return true;
}

/// Number of ways to finish with `left` transpositions from the given state.
std::uint64_t count_completions(const OracleState& st, int left) {
  const int dist = transposition_distance(st.perm, st.n);
  if (dist > left || (left - dist) % 2 != 0) return 0;
  if (left == 0) return transitive(st.parent, st.n) ? 1 : 0;
  std::uint64_t total = 0;
  for (int a = 0; a < st.n; ++a) {
    for (int b = a + 1; b < st.n; ++b) {
      OracleState next = st;
      for (int i = 0; i < st.n; ++i) {
        auto& x = next.perm[static_cast<std::size_t>(i)];
        if (x == a)
          x = static_cast<std::int8_t>(b);
        else if (x == b)
          x = static_cast<std::int8_t>(a);
      }
      unite(next.parent, a, b);
      total += count_completions(next, left - 1);
    }
  }
  return total;
}

}  // namespace

Rational hurwitz_number(const RamificationProfile& profile, const Series& connected) {
  require_admissible(profile);
  const Rational coef = connected.coefficient(profile_monomial(profile));
  return coef * Rational(factorial(static_cast<unsigned>(profile.m()))) * Rational(automorphism_factor(profile));
}

Rational hurwitz_number(const RamificationProfile& profile) {
  require_admissible(profile);
  const Series h = hurwitz_connected(profile.m(), profile.degree(), static_cast<int>(profile.parts.size()));
  return hurwitz_number(profile, h);
}

Rational oracle_hurwitz_number(const RamificationProfile& profile) {
  require_admissible(profile);
  const int n = profile.degree();
  if (n > kOracleMaxDegree) throw std::invalid_argument("oracle is limited to degree " + std::to_string(kOracleMaxDegree));
  OracleState st;
  st.n = n;
  int start = 0;
  for (int i = 0; i < kOracleMaxDegree; ++i) {
    st.perm[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
    st.parent[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
  }
  for (int b : profile.parts) {
    for (int i = 0; i < b; ++i) {
      st.perm[static_cast<std::size_t>(start + i)] = static_cast<std::int8_t>(start + (i + 1) % b);
      unite(st.parent, start, start + i);
    }
    start += b;
  }
  const int m = profile.m();
  std::uint64_t count = 0;
  if (m == 0) {
    count = count_completions(st, 0);
  } else {
    // Split over the first transposition.
    std::vector<std::future<std::uint64_t>> jobs;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        jobs.push_back(std::async(std::launch::async, [st, a, b, m]() {
          OracleState next = st;
          for (int i = 0; i < next.n; ++i) {
            auto& x = next.perm[static_cast<std::size_t>(i)];
            if (x == a)
              x = static_cast<std::int8_t>(b);
            else if (x == b)
              x = static_cast<std::int8_t>(a);
          }
          unite(next.parent, a, b);
          return count_completions(next, m - 1);
        }));
      }
    }
    for (auto& j : jobs) count += j.get();
  }
  Integer parts_product = 1;
  for (int b : profile.parts) parts_product *= b;
  return Rational(Integer(static_cast<unsigned long>(count))) / Rational(parts_product);
}

void HurwitzTable::require(int beta_cap, int weight_cap, int max_factors) {
  std::lock_guard lock(mutex_);
  if (beta_cap <= beta_cap_ && weight_cap <= weight_cap_ && max_factors <= max_factors_) return;
  beta_cap_ = std::max(beta_cap, beta_cap_);
  weight_cap_ = std::max(weight_cap, weight_cap_);
  max_factors_ = std::max(max_factors, max_factors_);
  series_ = hurwitz_connected(beta_cap_, weight_cap_, max_factors_);
}

Rational HurwitzTable::number(const RamificationProfile& profile) {
  require(profile.m(), profile.degree(), static_cast<int>(profile.parts.size()));
  std::lock_guard lock(mutex_);
  return hurwitz_number(profile, series_);
}

}  // namespace hodgekit
