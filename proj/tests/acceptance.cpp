// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/hurwitz.hpp"
#include "hodgekit/kp.hpp"
#include "suites.hpp"

using namespace hodgekit;

namespace {

struct Outcome {
  bool passed = false;
  std::string note;
};

Outcome all_of(const suites::Report& r, const std::function<bool(const std::string&)>& keep = {}) {
  int n = 0;
  for (const auto& c : r.checks) {
    if (keep && !keep(c.key)) continue;
    ++n;
    if (!c.passed) return {false, c.key + " " + c.detail};
  }
  return {n > 0, std::to_string(n) + " checks"};
}

Outcome kp_zero(const Series& f, Family fam = Family::P) {
  for (const auto& r : kp_residuals(f, fam))
    if (!r.passed) return {false, r.id + " at " + (r.first_offending ? r.first_offending->to_string() : "?")};
  return {true, "4 equations"};
}

Outcome criterion1() {
  const Caps c = Caps::weight(24);
  return kp_zero(log(Series::constant(1, c) + schur({3}).relabel_caps(c)));
}

Outcome criterion2() { return kp_zero(hurwitz_connected(6, 14)); }

Outcome criterion3() {
  const Series conn = hurwitz_connected(6, 6);
  int n = 0;
  for (int d = 1; d <= 6; ++d)
    for (const auto& mu : partitions_of(d))
      for (int g = 0; g <= 3; ++g) {
        RamificationProfile pr{g, mu};
        if (!pr.admissible() || pr.m() > 6) continue;
        if (hurwitz_number(pr, conn) != oracle_hurwitz_number(pr))
          return {false, "g=" + std::to_string(g) + " b=" + to_string(mu)};
        ++n;
      }
  return {n >= 30, std::to_string(n) + " values"};
}

suites::Limits limits() {
  suites::Limits l;
  l.max_weight = 8;
  l.beta_order = 6;
  l.energy = 8;
  l.u_window = 8;
  return l;
}

}  // namespace

int main() {
  const suites::Limits lim = limits();
  suites::Limits w6 = lim;
  w6.max_weight = 6;
  suites::Report bf;
  bool bf_done = false;
  auto bosonfermion = [&]() -> const suites::Report& {
    if (!bf_done) bf = suites::bosonfermion(lim), bf_done = true;
    return bf;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"KP on 1+s3, residual weight <= 18", criterion1},
      {"KP on the Hurwitz potential, weight <= 8, beta <= 6", criterion2},
      {"cut-and-join vs transposition counts, sum b <= 6, m <= 6", criterion3},
      {"G equals the pre-Hodge series, weight <= 8, u in [0,8]", [&] { return all_of(suites::theorem4(lim)); }},
      {"Witten specialization and three routes to <tau0^3>, <tau1>", [&] { return all_of(suites::kdv(lim)); }},
      {"Virasoro constraints m = -1..2, weight <= 9",
       [&] {
         return all_of(suites::virasoro(lim), [](const std::string& k) { return k.find("(3)") == std::string::npos; });
       }},
      {"transformed cut-and-join equation on G, weight <= 6",
       [&] { return all_of(suites::newcaj(w6), [](const std::string& k) { return k.rfind("G/", 0) == 0 || k == "G"; }); }},
      {"operator identities, cocycle [a_m,a_-m] = -m, tables at energy 8",
       [&] { return all_of(bosonfermion(), [](const std::string& k) { return k.rfind("plucker", 0) != 0; }); }},
      {"Plucker minors of e^H equal its Schur coordinates, energy 8, beta <= 4",
       [&] { return all_of(bosonfermion(), [](const std::string& k) { return k.rfind("plucker", 0) == 0; }); }},
      {"lambda_g: A-recursion, Faber formula g <= 3, Psi and G~ equations",
       [&] { return all_of(suites::lambda_g(lim)); }},
      {"reduction agrees with the ELSV table for 3g-3+n <= 4", [&] { return all_of(suites::reduction(lim)); }},
      {"ELSV change preserves KP on 5 decomposable solutions, weight <= 8",
       [&] {
         return all_of(suites::kp(lim), [](const std::string& k) { return k.find("/elsv_change/") != std::string::npos; });
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s %s [%s, %.2fs]\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.note.c_str(), secs);
    if (!o.passed) ++failed;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
