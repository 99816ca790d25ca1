#include "wreath/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wreath/invariants.hpp"
#include "wreath/molienweyl.hpp"
#include "wreath/seriesring.hpp"
#include "wreath/wigner.hpp"

#ifndef WREATH_DATA_DIR
#define WREATH_DATA_DIR "data"
#endif

namespace wreath::cli {

namespace {

using json = nlohmann::ordered_json;

// Number of worker threads for sample loops, from MOLIEN_THREADS.
int thread_count() {
  if (const char* env = std::getenv("MOLIEN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// Deterministic max-reduction over per-sample evaluations; the result is
// independent of the thread split.
double parallel_max(int samples, const std::function<double(int)>& eval) {
  const int nthreads = std::min(thread_count(), std::max(1, samples));
  if (nthreads == 1) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) worst = std::max(worst, eval(i));
    return worst;
  }
  std::vector<double> partial(nthreads, 0.0);
  std::vector<std::thread> pool;
  for (int w = 0; w < nthreads; ++w) {
    pool.emplace_back([&, w] {
      double worst = 0.0;
      for (int i = w; i < samples; i += nthreads) {
        worst = std::max(worst, eval(i));
      }
      partial[w] = worst;
    });
  }
  for (auto& t : pool) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
  out << text;
}

std::vector<mpz_class> load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file " + path);
  std::vector<mpz_class> coeffs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) coeffs.emplace_back(token);
  }
  return coeffs;
}

std::string data_path(const RunConfig& cfg, const std::string& name) {
  const std::string dir = cfg.data_dir.empty() ? WREATH_DATA_DIR : cfg.data_dir;
  return dir + "/" + name;
}

double tolerance_or(const RunConfig& cfg, const std::string& name,
                    double fallback) {
  const auto it = cfg.tolerances.find(name);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

std::string twice_to_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// Factor degrees of the published denominator shared by both ell = 2
// numerators: 19 factors (1 - t^d).
const std::vector<int> kQ0Degrees = {2, 3, 4,  4,  4,  5,  6,  6,  7, 7,
                                     8, 8, 9,  9,  10, 10, 11, 12, 13};

int cmd_molien(const RunConfig& cfg, const std::string& group) {
  series::TruncatedSeries s =
      group == "gamma0"  ? molien::gamma0_series(cfg.ell, cfg.order)
      : group == "gamma1" ? molien::gamma1_series(cfg.ell, cfg.order)
                          : molien::full_series(cfg.ell, cfg.order);
  const std::vector<mpz_class> coeffs = s.integer_coefficients();
  if (cfg.format == "text") {
    std::ostringstream out;
    out << "# molien series, group=" << group << " ell=" << cfg.ell
        << " order=" << cfg.order << "\n";
    for (const mpz_class& c : coeffs) out << c.get_str() << "\n";
    emit(cfg, out.str());
    return 0;
  }
  json report;
  report["group"] = group;
  report["ell"] = cfg.ell;
  report["order"] = cfg.order;
  json arr = json::array();
  for (const mpz_class& c : coeffs) arr.push_back(c.get_str());
  report["coefficients"] = std::move(arr);
  emit(cfg, report.dump(2) + "\n");
  return 0;
}

json reconstruction_report(const std::string& which,
                           const series::TruncatedSeries& s,
                           const series::CyclotomicDenominator& q,
                           int expected_deg, int palindrome_sign,
                           const std::vector<mpz_class>& golden) {
  const series::IntPolynomial p =
      series::reconstruct_numerator(s, q, expected_deg);
  json report;
  report["which"] = which;
  report["order"] = s.order();
  report["expected_degree"] = expected_deg;
  report["degree"] = p.degree();
  int first_mismatch = -1;
  for (int k = 0; k <= expected_deg; ++k) {
    const mpz_class want = k < static_cast<int>(golden.size()) ? golden[k] : 0;
    if (p.coeff(k) != want) {
      first_mismatch = k;
      break;
    }
  }
  report["match"] = first_mismatch < 0;
  report["first_mismatch"] = first_mismatch;
  report["palindrome_sign"] = palindrome_sign;
  report["palindromic"] = series::is_palindromic(p, palindrome_sign);
  report["eval_at_one"] = series::eval_at_one(p).get_str();
  json arr = json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(p.coeff(k).get_str());
  report["coefficients"] = std::move(arr);
  return report;
}

int cmd_reconstruct(const RunConfig& cfg, const std::string& which,
                    int order_flag) {
  json report;
  bool ok = true;
  if (which == "ell1") {
    const int order = order_flag > 0 ? order_flag : 20;
    const series::CyclotomicDenominator q({2, 3, 4});
    report = json::array();
    for (const std::string group : {"gamma0", "gamma1"}) {
      series::TruncatedSeries s = group == "gamma0"
                                      ? molien::gamma0_series(1, order)
                                      : molien::gamma1_series(1, order);
      json r = reconstruction_report(which + "/" + group, s, q, 0, +1, {1});
      ok = ok && r["match"].get<bool>();
      report.push_back(std::move(r));
    }
  } else {
    const int order = order_flag > 0 ? order_flag : 120;
    const series::CyclotomicDenominator q(kQ0Degrees);
    const std::string file = which == "p0" ? "p0_coefficients.txt"
                                           : "p1_coefficients.txt";
    const std::vector<mpz_class> golden =
        load_coefficients(data_path(cfg, file));
    series::TruncatedSeries s = which == "p0"
                                    ? molien::gamma0_series(2, order)
                                    : molien::gamma1_series(2, order);
    report = reconstruction_report(which, s, q, 113,
                                   which == "p0" ? +1 : -1, golden);
    ok = report["match"].get<bool>() && report["palindromic"].get<bool>();
  }
  if (cfg.format == "text") {
    std::ostringstream out;
    out << report.dump(2) << "\n";
    emit(cfg, out.str());
  } else {
    emit(cfg, report.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int cmd_labels(const RunConfig& cfg, int max_dim) {
  const auto table = molien::su2_label_table(max_dim);
  if (cfg.format == "text") {
    std::ostringstream out;
    for (const auto& row : table) {
      if (row.labels.empty()) continue;
      out << row.dim << ":";
      for (const auto& l : row.labels) {
        out << " (" << twice_to_string(l.twol1) << ","
            << twice_to_string(l.twol2) << ")";
      }
      out << "\n";
    }
    emit(cfg, out.str());
    return 0;
  }
  json report;
  report["max_dim"] = max_dim;
  json rows = json::array();
  for (const auto& row : table) {
    json labels = json::array();
    for (const auto& l : row.labels) {
      labels.push_back(
          json::array({twice_to_string(l.twol1), twice_to_string(l.twol2)}));
    }
    rows.push_back(json{{"dim", row.dim}, {"labels", std::move(labels)}});
  }
  report["rows"] = std::move(rows);
  emit(cfg, report.dump(2) + "\n");
  return 0;
}

const std::vector<std::string>& quartic_names() {
  static const std::vector<std::string> names = {
      "I4(0,0)",  "I4(1,1)",  "I4(2,2)",  "I4(3,3)",  "I4(4,4)",
      "I4sym(0,2)",  "I4sym(0,4)",  "I4sym(1,3)",  "I4sym(2,4)",
      "I4skew(0,2)", "I4skew(0,4)", "I4skew(1,3)", "I4skew(2,4)"};
  return names;
}

std::vector<double> quartic_values(const invariants::OrderTensor& s) {
  std::vector<double> v;
  for (int j = 0; j <= 4; ++j) v.push_back(invariants::inv4(s, j, j));
  static constexpr std::pair<int, int> kOff[] = {{0, 2}, {0, 4}, {1, 3}, {2, 4}};
  for (const auto& [j, jp] : kOff) v.push_back(invariants::inv4_sym(s, j, jp));
  for (const auto& [j, jp] : kOff) v.push_back(invariants::inv4_skew(s, j, jp));
  return v;
}

int cmd_invariants(const RunConfig& cfg, int degree) {
  json report;
  report["degree"] = degree;
  report["ell"] = 2;
  report["seed"] = cfg.seed;
  report["samples"] = cfg.samples;
  json names = json::array();
  if (degree == 2) {
    names.push_back("I2");
  } else if (degree == 3) {
    names.push_back("I3");
  } else {
    for (const auto& n : quartic_names()) names.push_back(n);
  }
  report["names"] = std::move(names);
  json values = json::array();
  for (int i = 0; i < cfg.samples; ++i) {
    const auto s = invariants::OrderTensor::random(2, cfg.seed + i);
    json row = json::array();
    if (degree == 2) {
      row.push_back(invariants::inv2(s));
    } else if (degree == 3) {
      row.push_back(invariants::inv3(s));
    } else {
      for (double v : quartic_values(s)) row.push_back(v);
    }
    values.push_back(std::move(row));
  }
  report["values"] = std::move(values);
  emit(cfg, report.dump(2) + "\n");
  return 0;
}

int cmd_cg(const RunConfig& cfg, int j1, int j2) {
  json report;
  report["j1"] = j1;
  report["j2"] = j2;
  json rows = json::array();
  for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j) {
    for (int m = -j; m <= j; ++m) {
      json entries = json::array();
      for (int m1 = -j1; m1 <= j1; ++m1) {
        for (int m2 = -j2; m2 <= j2; ++m2) {
          const wigner::Surd c =
              wigner::clebsch_gordan(2 * j1, 2 * m1, 2 * j2, 2 * m2, 2 * j,
                                     2 * m);
          if (c.is_zero()) continue;
          entries.push_back(json{{"m1", m1},
                                 {"m2", m2},
                                 {"sign", c.sign()},
                                 {"radicand", c.radicand().get_str()}});
        }
      }
      rows.push_back(
          json{{"j", j}, {"m", m}, {"entries", std::move(entries)}});
    }
  }
  report["rows"] = std::move(rows);
  emit(cfg, report.dump(2) + "\n");
  return 0;
}

struct CheckRow {
  std::string name;
  int samples;
  double max_residual;
  double tolerance;
  bool pass;
};

CheckRow check_identities(const RunConfig& cfg) {
  const double tol = tolerance_or(cfg, "identities", 1e-8);
  const double worst = parallel_max(cfg.samples, [&](int i) {
    const auto s = invariants::OrderTensor::random(2, cfg.seed + i);
    double w = 0.0;
    for (const auto& id : invariants::verify_identities(s)) {
      w = std::max(w, id.residual / std::max(1.0, id.scale));
    }
    return w;
  });
  return CheckRow{"identities", cfg.samples, worst, tol, worst < tol};
}

CheckRow check_invariance(const RunConfig& cfg) {
  const double tol = tolerance_or(cfg, "invariance", 1e-8);
  const double worst = parallel_max(cfg.samples, [&](int i) {
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto angles = [&] {
      return wigner::EulerAngles{2 * M_PI * unit(rng),
                                 std::acos(1.0 - 2.0 * unit(rng)),
                                 2 * M_PI * unit(rng)};
    };
    const auto s = invariants::OrderTensor::random(2, cfg.seed + i);
    const auto moved = invariants::act_gamma0(angles(), angles(), s);
    const auto swapped = invariants::act_tau(s);

    std::vector<double> base = quartic_values(s);
    std::vector<double> after = quartic_values(moved);
    std::vector<double> tau = quartic_values(swapped);
    base.insert(base.begin(), {invariants::inv2(s), invariants::inv3(s)});
    after.insert(after.begin(),
                 {invariants::inv2(moved), invariants::inv3(moved)});
    tau.insert(tau.begin(),
               {invariants::inv2(swapped), invariants::inv3(swapped)});

    double w = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const double scale = std::max(1.0, std::abs(base[k]));
      w = std::max(w, std::abs(after[k] - base[k]) / scale);
      // tau fixes everything except the four skew contractions, which flip.
      const double expected = k >= base.size() - 4 ? -base[k] : base[k];
      w = std::max(w, std::abs(tau[k] - expected) / scale);
    }
    return w;
  });
  return CheckRow{"invariance+tau", cfg.samples, worst, tol, worst < tol};
}

std::vector<CheckRow> check_rank(const RunConfig& cfg) {
  std::vector<CheckRow> rows;
  const int n = std::max(40, cfg.samples);
  const std::uint64_t seeds[] = {cfg.seed, cfg.seed + 0x517cc1b727220a95ULL};
  for (const std::uint64_t seed : seeds) {
    const int rank_all =
        invariants::degree4_rank(n, seed, invariants::CandidateSet::kAll13);
    rows.push_back(CheckRow{"rank all13 seed=" + std::to_string(seed), n,
                            static_cast<double>(rank_all), 5.0, rank_all == 5});
    const int rank_tau = invariants::degree4_rank(
        n, seed, invariants::CandidateSet::kTauInvariant);
    rows.push_back(CheckRow{"rank tau-invariant seed=" + std::to_string(seed),
                            n, static_cast<double>(rank_tau), 4.0,
                            rank_tau == 4});
  }
  return rows;
}

std::vector<CheckRow> check_charpoly(const RunConfig& cfg) {
  const double tol = tolerance_or(cfg, "charpoly", 1e-8);
  std::vector<CheckRow> rows;
  for (int ell : {1, 2}) {
    for (const auto coset : {molien::Coset::Gamma0, molien::Coset::Gamma1}) {
      for (double t : {0.2, 0.5}) {
        const double dev =
            molien::char_poly_check(ell, coset, cfg.samples, t, cfg.seed);
        std::ostringstream name;
        name << "charpoly ell=" << ell << " "
             << (coset == molien::Coset::Gamma0 ? "gamma0" : "gamma1")
             << " t=" << t;
        rows.push_back(CheckRow{name.str(), cfg.samples, dev, tol, dev < tol});
      }
    }
  }
  return rows;
}

std::vector<CheckRow> check_blocks(const RunConfig& cfg) {
  const double tol = tolerance_or(cfg, "blocks", 1e-9);
  std::vector<CheckRow> rows;
  for (const auto& [j1, j2] : {std::pair{2, 2}, std::pair{1, 2}}) {
    const double err = wigner::cg_block_check(j1, j2, 20, cfg.seed);
    rows.push_back(CheckRow{"blocks (" + std::to_string(j1) + "," +
                                std::to_string(j2) + ")",
                            20, err, tol, err < tol});
  }
  return rows;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  std::vector<CheckRow> rows;
  if (suite == "identities" || suite == "all") rows.push_back(check_identities(cfg));
  if (suite == "invariance" || suite == "all") rows.push_back(check_invariance(cfg));
  if (suite == "rank" || suite == "all") {
    for (auto& r : check_rank(cfg)) rows.push_back(std::move(r));
  }
  if (suite == "charpoly" || suite == "all") {
    for (auto& r : check_charpoly(cfg)) rows.push_back(std::move(r));
  }
  if (suite == "blocks" || suite == "all") {
    for (auto& r : check_blocks(cfg)) rows.push_back(std::move(r));
  }

  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.pass;

  if (cfg.format == "text") {
    std::ostringstream out;
    for (const auto& r : rows) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name
          << " samples=" << r.samples << " value=" << r.max_residual
          << " bound=" << r.tolerance << "\n";
    }
    out << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    emit(cfg, out.str());
  } else {
    json report;
    report["suite"] = suite;
    report["samples"] = cfg.samples;
    report["seed"] = cfg.seed;
    json checks = json::array();
    for (const auto& r : rows) {
      checks.push_back(json{{"check", r.name},
                            {"samples", r.samples},
                            {"value", r.max_residual},
                            {"bound", r.tolerance},
                            {"pass", r.pass}});
    }
    report["checks"] = std::move(checks);
    report["pass"] = all_pass;
    emit(cfg, report.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Molien series and explicit invariants for the left/right "
               "rotation action on square matrices with transposition"};
  app.set_config("--config");
  app.add_option("--max-order", cfg.max_order, "hard cap on --order")
      ->capture_default_str();
  app.add_option("--output", cfg.output, "write the report to a file");
  app.add_option("--format", cfg.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--data-dir", cfg.data_dir,
                 "directory with golden coefficient files");
  std::vector<std::string> tol_overrides;
  app.add_option("--tolerance", tol_overrides,
                 "override a check tolerance, name=value");

  std::string group = "full";
  auto* molien_cmd = app.add_subcommand("molien", "print a Molien series");
  molien_cmd->fallthrough();
  molien_cmd->add_option("--group", group, "gamma0, gamma1 or full")
      ->check(CLI::IsMember({"gamma0", "gamma1", "full"}))
      ->capture_default_str();
  molien_cmd->add_option("--ell", cfg.ell, "1 or 2")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  molien_cmd->add_option("--order", cfg.order, "truncation order")
      ->capture_default_str();

  std::string which = "p0";
  int reconstruct_order = -1;
  auto* rec_cmd = app.add_subcommand(
      "reconstruct", "reconstruct a rational-function numerator and compare "
                     "against the golden coefficients");
  rec_cmd->fallthrough();
  rec_cmd->add_option("--which", which, "p0, p1 or ell1")
      ->check(CLI::IsMember({"p0", "p1", "ell1"}))
      ->capture_default_str();
  rec_cmd->add_option("--order", reconstruct_order,
                      "series order (default 120 for p0/p1, 20 for ell1)");

  int max_dim = 33;
  auto* labels_cmd =
      app.add_subcommand("labels", "irreducible label pairs by dimension");
  labels_cmd->fallthrough();
  labels_cmd->add_option("--max-dim", max_dim, "largest dimension listed")
      ->capture_default_str();

  int degree = 4;
  auto* inv_cmd = app.add_subcommand(
      "invariants", "evaluate the explicit invariants on random tensors");
  inv_cmd->fallthrough();
  inv_cmd->add_option("--degree", degree, "2, 3 or 4")
      ->check(CLI::IsMember({2, 3, 4}))
      ->capture_default_str();
  inv_cmd->add_option("--seed", cfg.seed, "sample seed")->capture_default_str();
  inv_cmd->add_option("--samples", cfg.samples, "sample count")
      ->capture_default_str();

  int cg_j1 = 2, cg_j2 = 2;
  auto* cg_cmd = app.add_subcommand(
      "cg", "dump a coupling matrix as exact sign/radicand pairs");
  cg_cmd->fallthrough();
  cg_cmd->add_option("--j1", cg_j1, "left spin")->capture_default_str();
  cg_cmd->add_option("--j2", cg_j2, "right spin")->capture_default_str();

  std::string suite = "all";
  auto* verify_cmd =
      app.add_subcommand("verify", "run the numerical verification suites");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--suite", suite,
                         "identities, invariance, rank, charpoly, blocks, all")
      ->check(CLI::IsMember(
          {"identities", "invariance", "rank", "charpoly", "blocks", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--samples", cfg.samples, "sample count")
      ->capture_default_str();
  verify_cmd->add_option("--seed", cfg.seed, "sample seed")
      ->capture_default_str();
  verify_cmd->add_option("--order", cfg.order, "unused, accepted for scripts");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const std::string& kv : tol_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --tolerance, expected name=value: " << kv << "\n";
      return 2;
    }
    cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  if (cfg.order < 0 || cfg.order > cfg.max_order) {
    std::cerr << "order " << cfg.order << " outside [0, " << cfg.max_order
              << "]\n";
    return 2;
  }

  try {
    if (molien_cmd->parsed()) {
      cfg.command = "molien";
      return cmd_molien(cfg, group);
    }
    if (rec_cmd->parsed()) {
      cfg.command = "reconstruct";
      if (reconstruct_order > cfg.max_order) {
        std::cerr << "order " << reconstruct_order << " outside [0, "
                  << cfg.max_order << "]\n";
        return 2;
      }
      return cmd_reconstruct(cfg, which, reconstruct_order);
    }
    if (labels_cmd->parsed()) {
      cfg.command = "labels";
      return cmd_labels(cfg, max_dim);
    }
    if (inv_cmd->parsed()) {
      cfg.command = "invariants";
      return cmd_invariants(cfg, degree);
    }
    if (cg_cmd->parsed()) {
      cfg.command = "cg";
      return cmd_cg(cfg, cg_j1, cg_j2);
    }
    cfg.command = "verify";
    return cmd_verify(cfg, suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wreath::cli
