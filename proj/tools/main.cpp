// hodgekit command line front-end.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/elsv.hpp"
#include "hodgekit/faber.hpp"
#include "hodgekit/hurwitz.hpp"
#include "hodgekit/kp.hpp"
#include "suites.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hodgekit;

struct Row {
  std::string key;
  std::string value;
  std::string extra;  // oracle column / pass flag
};

struct Output {
  std::string kind;
  json params = json::object();
  std::vector<Row> rows;
  std::string extra_name;
  bool verified = true;
  std::vector<std::string> failures;
};

bool verbose() {
  const char* v = std::getenv("HODGEKIT_LOG");
  return v && std::string(v) != "0" && std::string(v) != "quiet";
}

void log_line(const std::string& msg) {
  if (verbose()) std::cerr << "[hodgekit] " << msg << '\n';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write(const Output& out, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << "key,value" << (out.extra_name.empty() ? "" : "," + out.extra_name) << '\n';
    for (const auto& r : out.rows)
      os << csv_field(r.key) << ',' << csv_field(r.value) << (out.extra_name.empty() ? "" : "," + csv_field(r.extra))
         << '\n';
    return;
  }
  json j;
  j["kind"] = out.kind;
  j["params"] = out.params;
  j["results"] = json::array();
  for (const auto& r : out.rows) {
    json row = {{"key", r.key}, {"value", r.value}};
    if (out.extra_name == "passed")
      row["passed"] = r.extra == "true";
    else if (!out.extra_name.empty())
      row[out.extra_name] = r.extra;
    j["results"].push_back(row);
  }
  j["verified"] = out.verified;
  j["failures"] = out.failures;
  os << j.dump(2) << '\n';
}

std::string parts_string(const std::vector<int>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + std::to_string(parts[i]);
  return s;
}

std::string tau_key(const CorrelatorKey& k) {
  std::string s = "tau[";
  for (std::size_t i = 0; i < k.ks.size(); ++i) s += (i ? "," : "") + std::to_string(k.ks[i]);
  return s + "]";
}

void require_nonnegative(const std::string& name, int v) {
  if (v < 0) throw std::invalid_argument(name + " must be >= 0 (got " + std::to_string(v) + ")");
}

// ---------------------------------------------------------------------------

Output cmd_hurwitz(int max_sum, int max_m, bool oracle) {
  require_nonnegative("--max-parts-sum", max_sum);
  require_nonnegative("--max-transpositions", max_m);
  if (oracle && max_sum > 8) throw std::invalid_argument("--oracle needs --max-parts-sum <= 8");
  Output out;
  out.kind = "hurwitz";
  out.params = {{"max_parts_sum", max_sum}, {"max_transpositions", max_m}, {"oracle", oracle}};
  if (oracle) out.extra_name = "oracle";
  HurwitzTable table;
  table.require(max_m, max_sum, max_sum);
  for (int b = 1; b <= max_sum; ++b)
    for (const auto& parts : hodgekit::partitions_of(b))
      for (int g = 0;; ++g) {
        const RamificationProfile prof{g, parts};
        if (prof.m() > max_m) break;
        if (!prof.admissible()) continue;
        Row r{std::to_string(g) + ";" + parts_string(parts) + ";" + std::to_string(prof.m()),
              to_string(table.number(prof)), ""};
        if (oracle) {
          const Rational o = oracle_hurwitz_number(prof);
          r.extra = to_string(o);
          if (o != table.number(prof)) {
            out.verified = false;
            out.failures.push_back(r.key + ": cut-and-join " + r.value + " vs oracle " + r.extra);
          }
        }
        out.rows.push_back(std::move(r));
      }
  return out;
}

void write_hurwitz_csv(const Output& out, std::ostream& os) {
  os << "genus,parts,m,value" << (out.extra_name.empty() ? "" : ",oracle") << '\n';
  for (const auto& r : out.rows) {
    std::stringstream ss(r.key);
    std::string g, parts, m;
    std::getline(ss, g, ';');
    std::getline(ss, parts, ';');
    std::getline(ss, m, ';');
    os << g << ',' << parts << ',' << m << ',' << r.value << (out.extra_name.empty() ? "" : "," + r.extra) << '\n';
  }
}

Output cmd_correlators(const std::string& kind, int g, int n) {
  require_nonnegative("--genus", g);
  if (n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("(genus, points) must satisfy n >= 1 and 2g - 2 + n > 0");
  Output out;
  out.kind = kind;
  out.params = {{"genus", g}, {"points", n}};
  for (const auto& [key, v] : elsv_solve(g, n)) {
    if (kind == "intersect" && key.j != 0) continue;
    const std::string k = kind == "intersect" ? tau_key(key) : "lambda_" + std::to_string(key.j) + " " + tau_key(key);
    out.rows.push_back({k, to_string(v), ""});
  }
  return out;
}

Output cmd_series(const std::string& which, int w, int beta, int u, bool emit) {
  require_nonnegative("--max-weight", w);
  require_nonnegative("--beta-order", beta);
  require_nonnegative("--u-max", u);
  Output out;
  out.kind = "series/" + which;
  Series s;
  if (which == "H") {
    out.params = {{"max_weight", w}, {"beta_order", beta}};
    s = hurwitz_connected(beta, w);
  } else if (which == "G") {
    out.params = {{"max_weight", w}, {"u_max", u}};
    s = build_G(w, u);
  } else {
    out.params = {{"max_weight", w}};
    const int gmax = (w + 3) / 4;
    std::vector<std::pair<int, int>> types;
    for (int g = 1; g <= gmax; ++g) types.push_back({g, 1});
    s = ftop_build(w, faber_constants(elsv_solve_many(types), gmax));
  }
  out.rows.push_back({"terms", std::to_string(s.size()), ""});
  if (emit)
    for (const auto& [m, c] : s.terms()) out.rows.push_back({m.to_string(), to_string(c), ""});
  return out;
}

Output cmd_verify(const std::string& suite, const suites::Limits& lim, int threads) {
  require_nonnegative("--max-weight", lim.max_weight);
  require_nonnegative("--beta-order", lim.beta_order);
  require_nonnegative("--energy", lim.energy);
  require_nonnegative("--u-max", lim.u_window);
  Output out;
  out.kind = "verify/" + suite;
  out.params = {{"max_weight", lim.max_weight},
                {"beta_order", lim.beta_order},
                {"energy", lim.energy},
                {"u_max", lim.u_window}};
  out.extra_name = "passed";
  std::vector<std::string> names;
  if (suite == "all")
    names = suites::names();
  else
    names = {suite};
  for (const auto& n : names)
    if (std::find(suites::names().begin(), suites::names().end(), n) == suites::names().end())
      throw std::invalid_argument("unknown suite '" + n + "'");

  auto timed = [&](const std::string& n) {
    const auto t0 = std::chrono::steady_clock::now();
    suites::Report r = suites::run(n, lim);
    log_line(n + " finished in " +
             std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s");
    return r;
  };
  std::vector<suites::Report> reports(names.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i) reports[i] = timed(names[i]);
  } else {
    for (std::size_t start = 0; start < names.size(); start += static_cast<std::size_t>(threads)) {
      std::vector<std::future<suites::Report>> jobs;
      for (std::size_t i = start; i < std::min(names.size(), start + static_cast<std::size_t>(threads)); ++i)
        jobs.push_back(std::async(std::launch::async, timed, names[i]));
      for (std::size_t i = 0; i < jobs.size(); ++i) reports[start + i] = jobs[i].get();
    }
  }
  for (const auto& rep : reports)
    for (const auto& c : rep.checks) {
      out.rows.push_back({rep.suite + "/" + c.key, c.value, c.passed ? "true" : "false"});
      if (!c.passed) {
        out.verified = false;
        out.failures.push_back(rep.suite + "/" + c.key + (c.detail.empty() ? "" : ": " + c.detail));
      }
    }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hurwitz numbers, Hodge integrals and KP identities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string out_path;
  std::string threads_opt = "1";
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--out", out_path, "write the report here instead of stdout");
  app.add_option("--threads", threads_opt, "suites run concurrently in verify all (integer or auto)");

  int max_sum = 4;
  int max_m = 6;
  bool oracle = false;
  auto* hur = app.add_subcommand("hurwitz", "table of Hurwitz numbers (CSV unless --format json)");
  hur->add_option("--max-parts-sum", max_sum, "largest degree sum(b_i)");
  hur->add_option("--max-transpositions", max_m, "largest number of simple branch points");
  hur->add_flag("--oracle", oracle, "add a column from transposition-factorization counts");

  int genus = 0;
  int points = 3;
  auto* inter = app.add_subcommand("intersect", "psi-class intersection numbers of one type");
  inter->add_option("--genus", genus)->required();
  inter->add_option("--points", points)->required();
  auto* hodge = app.add_subcommand("hodge", "Hodge integrals <lambda_j tau...> of one type");
  hodge->add_option("--genus", genus)->required();
  hodge->add_option("--points", points)->required();

  suites::Limits lim;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "kp|kdv|virasoro|newcaj|theorem4|lambda-g|bosonfermion|reduction|all")
      ->required()
      ->check(CLI::IsMember({"kp", "kdv", "virasoro", "newcaj", "theorem4", "lambda-g", "bosonfermion", "reduction",
                             "all"}));
  verify->add_option("--max-weight", lim.max_weight, "weight up to which residuals must vanish");
  verify->add_option("--beta-order", lim.beta_order, "beta truncation");
  verify->add_option("--energy", lim.energy, "energy cap in the wedge space");
  verify->add_option("--u-max", lim.u_window, "largest power of u");

  std::string which;
  int s_weight = 8;
  int s_beta = 6;
  int s_u = 8;
  bool emit = false;
  auto* series = app.add_subcommand("series", "build H, G or Ftop");
  series->add_option("which", which, "H, G or Ftop")->required()->check(CLI::IsMember({"H", "G", "Ftop"}));
  series->add_option("--max-weight", s_weight);
  series->add_option("--beta-order", s_beta);
  series->add_option("--u-max", s_u);
  series->add_flag("--emit", emit, "print every term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    int threads = 1;
    if (threads_opt == "auto")
      threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    else
      threads = std::stoi(threads_opt);
    if (threads < 1) throw std::invalid_argument("--threads must be positive or auto");

    Output out;
    bool hurwitz_csv = false;
    if (*hur) {
      out = cmd_hurwitz(max_sum, max_m, oracle);
      hurwitz_csv = !app.get_option("--format")->count() || format == "csv";
    } else if (*inter) {
      out = cmd_correlators("intersect", genus, points);
    } else if (*hodge) {
      out = cmd_correlators("hodge", genus, points);
    } else if (*verify) {
      out = cmd_verify(suite, lim, threads);
    } else {
      out = cmd_series(which, s_weight, s_beta, s_u, emit);
    }

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::invalid_argument("cannot open output file " + out_path);
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    if (hurwitz_csv)
      write_hurwitz_csv(out, os);
    else
      write(out, format, os);
    if (!out.verified) {
      std::cerr << "verification failed: " << out.failures.front() << '\n';
      return 1;
    }
    return 0;
  } catch (const CapError& e) {
    std::cerr << "error (cap): " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
