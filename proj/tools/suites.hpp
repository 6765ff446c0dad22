#pragma once

#include <string>
#include <vector>

namespace hodgekit::suites {

struct Check {
  std::string key;
  bool passed = false;
  std::string value;   // exact value or short outcome
  std::string detail;  // first offending monomial etc.
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
  const Check* first_failure() const;
};

struct Limits {
  int max_weight = 8;   // weight up to which residuals must vanish
  int beta_order = 6;
  int energy = 8;
  int u_window = 8;
};

Report kp(const Limits& lim);
Report kdv(const Limits& lim);
Report virasoro(const Limits& lim);
Report newcaj(const Limits& lim);
Report theorem4(const Limits& lim);
Report lambda_g(const Limits& lim);
Report bosonfermion(const Limits& lim);
Report reduction(const Limits& lim);

const std::vector<std::string>& names();
/// Throws std::invalid_argument on an unknown name.
Report run(const std::string& name, const Limits& lim);

}  // namespace hodgekit::suites
