// momext: exact verifier for the sharp moment-curve extension constant over
// finite fields. Subcommands: verify, sweep, threshold, check-cert, oracle,
// selftest. Exit codes: 0 = verified/valid, 1 = mathematical violation,
// 2 = usage, format or budget error.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "momext/asymptotic.hpp"
#include "momext/certificate_io.hpp"
#include "momext/ff_oracle.hpp"
#include "momext/hall_matching.hpp"
#include "momext/partitions.hpp"
#include "momext/symmetric_sums.hpp"
#include "momext/weights.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace momext;

constexpr const char* kVersion = "1.0.0";

std::string fmt12(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::string verdict_name(const HallVerdict& verdict) {
  switch (verdict.kind) {
    case HallVerdict::Kind::holds:
      return "holds";
    case HallVerdict::Kind::violated:
      return "violated";
    case HallVerdict::Kind::aborted_too_large:
      return "aborted_too_large";
  }
  return "?";
}

Json violation_json(const BipartiteInstance& inst, const PartitionPoset& poset,
                    const HallVerdict& verdict) {
  Json v;
  Json subset = Json::array();
  for (std::size_t pos : verdict.violating_n) subset.push_back(poset[inst.n_index[pos]].str());
  v["subset"] = std::move(subset);
  v["deficit"] = rational_str(verdict.deficit);
  return v;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct VerifyOptions {
  int d = 0;
  long q = 0;
  std::string method = "flow";
  std::string emit_cert;
  bool json = false;
};

int cmd_verify(const VerifyOptions& opt) {
  PartitionPoset poset(opt.d);
  const WeightTable table = WeightTable::build(poset, opt.q);
  const BipartiteInstance inst = BipartiteInstance::from_table(table, poset);

  std::optional<HallVerdict> flow_verdict, subset_verdict;
  if (opt.method == "flow" || opt.method == "both") flow_verdict = check_hall_flow(inst);
  if (opt.method == "subsets" || opt.method == "both") subset_verdict = check_hall_subsets(inst);

  if (subset_verdict && subset_verdict->kind == HallVerdict::Kind::aborted_too_large &&
      opt.method == "subsets") {
    std::cerr << "subset enumeration aborted: |N| = " << inst.n_index.size()
              << " exceeds the cap of 20; use --method flow\n";
    return 2;
  }
  if (flow_verdict && subset_verdict &&
      subset_verdict->kind != HallVerdict::Kind::aborted_too_large &&
      flow_verdict->holds() != subset_verdict->holds()) {
    std::cerr << "internal error: flow and subset methods disagree at d=" << opt.d
              << " q=" << opt.q << "\n";
    return 1;
  }

  const HallVerdict& decisive = flow_verdict ? *flow_verdict : *subset_verdict;
  const bool holds = decisive.holds();

  std::string cert_path;
  if (!opt.emit_cert.empty() && holds) {
    MatchingCertificate cert = construct_certificate(inst, table, poset);
    cert.generator_version = kVersion;
    write_certificate_file(opt.emit_cert, cert);
    cert_path = opt.emit_cert;
  }

  if (opt.json) {
    Json j;
    j["command"] = "verify";
    j["schema_version"] = 1;
    j["d"] = opt.d;
    j["q"] = opt.q;
    j["A"] = rational_str(table.a());
    j["sharp_constant"] = fmt12(table.sharp_constant());
    j["partition_count"] = table.rows().size();
    j["n_size"] = table.n_indices().size();
    j["p_size"] = table.p_indices().size();
    j["method"] = opt.method;
    Json verdicts;
    if (flow_verdict) verdicts["flow"] = verdict_name(*flow_verdict);
    if (subset_verdict) verdicts["subsets"] = verdict_name(*subset_verdict);
    j["verdicts"] = std::move(verdicts);
    j["holds"] = holds;
    j["certificate_path"] = cert_path.empty() ? Json(nullptr) : Json(cert_path);
    j["violation"] = holds ? Json(nullptr) : violation_json(inst, poset, decisive);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "d = " << opt.d << ", q = " << opt.q << "\n";
    std::cout << "A = " << rational_str(table.a()) << "  (conjectured sharp constant A^(1/"
              << 2 * opt.d << ") = " << fmt12(table.sharp_constant()) << ")\n";
    std::cout << "partitions: " << table.rows().size() << ", |N| = " << table.n_indices().size()
              << ", |P| = " << table.p_indices().size() << "\n";
    if (flow_verdict) std::cout << "flow: " << verdict_name(*flow_verdict) << "\n";
    if (subset_verdict) std::cout << "subsets: " << verdict_name(*subset_verdict) << "\n";
    if (!holds) {
      std::cout << "violating subset U:";
      for (std::size_t pos : decisive.violating_n)
        std::cout << " " << poset[inst.n_index[pos]].str();
      std::cout << "\nweight deficit: " << rational_str(decisive.deficit) << "\n";
    }
    if (!cert_path.empty()) std::cout << "certificate written to " << cert_path << "\n";
    std::cout << "verdict: " << (holds ? "holds" : "violated") << "\n";
  }
  return holds ? 0 : 1;
}

struct SweepOptions {
  int d_min = 2;
  int d_max = 20;
  std::string method = "flow";
  bool json = false;
  int threads = default_threads();
};

struct SweepPair {
  int d;
  long q;
};

struct SweepResult {
  bool holds = true;
  bool methods_agree = true;
  bool subsets_ran = false;
  std::size_t n_size = 0;
  std::string violation_subset;
  std::string violation_deficit;
};

int cmd_sweep(const SweepOptions& opt) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<SweepPair> pairs;
  struct PerD {
    int d;
    long q_min, q_max;
  };
  std::vector<PerD> per_d;
  for (int d = opt.d_min; d <= opt.d_max; ++d) {
    const ThresholdReport report = threshold(d);
    per_d.push_back({d, d + 1, report.q_search_max});
    for (long q = d + 1; q <= report.q_search_max; ++q) pairs.push_back({d, q});
  }

  std::vector<std::shared_ptr<PartitionPoset>> posets(static_cast<std::size_t>(opt.d_max) + 1);
  for (int d = opt.d_min; d <= opt.d_max; ++d)
    posets[static_cast<std::size_t>(d)] = std::make_shared<PartitionPoset>(d);

  std::vector<SweepResult> results(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) return;
      const SweepPair pair = pairs[idx];
      const PartitionPoset& poset = *posets[static_cast<std::size_t>(pair.d)];
      const WeightTable table = WeightTable::build(poset, pair.q);
      const BipartiteInstance inst = BipartiteInstance::from_table(table, poset);
      SweepResult& res = results[idx];
      res.n_size = inst.n_index.size();

      HallVerdict verdict;
      if (opt.method == "subsets") {
        verdict = check_hall_subsets(inst);
        if (verdict.kind == HallVerdict::Kind::aborted_too_large) verdict = check_hall_flow(inst);
        else res.subsets_ran = true;
      } else {
        verdict = check_hall_flow(inst);
        if (opt.method == "both") {
          const HallVerdict sub = check_hall_subsets(inst);
          if (sub.kind != HallVerdict::Kind::aborted_too_large) {
            res.subsets_ran = true;
            res.methods_agree = sub.holds() == verdict.holds();
          }
        }
      }
      res.holds = verdict.holds();
      if (!res.holds) {
        std::string subset;
        for (std::size_t pos : verdict.violating_n) {
          if (!subset.empty()) subset += " ";
          subset += poset[inst.n_index[pos]].str();
        }
        res.violation_subset = subset;
        res.violation_deficit = rational_str(verdict.deficit);
      }
    }
  };
  const int thread_count = std::max(1, opt.threads);
  if (thread_count == 1 || pairs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all_hold = true, all_agree = true;
  Json violations = Json::array();
  std::size_t checked = 0, subset_aborted = 0;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    ++checked;
    if (opt.method != "flow" && !results[idx].subsets_ran) ++subset_aborted;
    if (!results[idx].holds) {
      all_hold = false;
      Json v;
      v["d"] = pairs[idx].d;
      v["q"] = pairs[idx].q;
      v["subset"] = results[idx].violation_subset;
      v["deficit"] = results[idx].violation_deficit;
      violations.push_back(std::move(v));
    }
    if (!results[idx].methods_agree) all_agree = false;
  }

  if (opt.json) {
    Json j;
    j["command"] = "sweep";
    j["schema_version"] = 1;
    j["d_min"] = opt.d_min;
    j["d_max"] = opt.d_max;
    j["method"] = opt.method;
    Json rows = Json::array();
    std::size_t cursor = 0;
    for (const PerD& row : per_d) {
      Json r;
      r["d"] = row.d;
      r["q_min"] = row.q_min;
      r["q_max"] = row.q_max;
      const bool empty = row.q_max < row.q_min;
      r["explicit_range_empty"] = empty;
      std::size_t count = 0;
      bool holds = true;
      while (cursor < pairs.size() && pairs[cursor].d == row.d) {
        ++count;
        holds = holds && results[cursor].holds;
        ++cursor;
      }
      r["checked"] = count;
      r["all_hold"] = holds;
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["total_checked"] = checked;
    j["all_hold"] = all_hold;
    j["methods_agree"] = all_agree;
    if (opt.method != "flow") j["subset_enumeration_skipped"] = subset_aborted;
    j["violations"] = std::move(violations);
    std::cout << j.dump(2) << "\n";
  } else {
    std::size_t cursor = 0;
    for (const PerD& row : per_d) {
      std::size_t count = 0;
      bool holds = true;
      while (cursor < pairs.size() && pairs[cursor].d == row.d) {
        ++count;
        holds = holds && results[cursor].holds;
        ++cursor;
      }
      if (row.q_max < row.q_min)
        std::printf("d = %2d  explicit range empty (covered by the large-q bound)\n", row.d);
      else
        std::printf("d = %2d  q in [%ld, %ld]  %3zu checked  %s\n", row.d, row.q_min, row.q_max,
                    count, holds ? "all hold" : "VIOLATED");
    }
    std::printf("total: %zu pairs checked in %.1f s, %s\n", checked, elapsed,
                all_hold ? "all hold" : "violations found");
    if (opt.method != "flow" && subset_aborted > 0)
      std::printf("subset enumeration skipped on %zu pairs with |N| > 20 (flow decided those)\n",
                  subset_aborted);
    if (!all_agree) std::printf("WARNING: flow and subset methods disagreed somewhere\n");
    for (const Json& v : violations)
      std::printf("  d=%d q=%ld U={%s} deficit=%s\n", v["d"].get<int>(), v["q"].get<long>(),
                  v["subset"].get<std::string>().c_str(), v["deficit"].get<std::string>().c_str());
  }
  if (!all_agree) return 1;
  return all_hold ? 0 : 1;
}

struct ThresholdOptions {
  int d_min = 0;
  int d_max = 0;
  bool json = false;
};

int cmd_threshold(const ThresholdOptions& opt) {
  Json rows = Json::array();
  for (int d = opt.d_min; d <= opt.d_max; ++d) {
    const ThresholdReport report = threshold(d);
    if (opt.json) {
      Json r;
      r["d"] = d;
      r["threshold"] = fmt12(report.threshold);
      r["ceil"] = report.ceil_threshold;
      r["q_search_max"] = report.q_search_max;
      r["q_min"] = d + 1;
      r["explicit_range_empty"] = report.explicit_range_empty();
      rows.push_back(std::move(r));
    } else {
      if (report.explicit_range_empty())
        std::printf("d = %2d: threshold = %s, explicit search range empty (all q >= %d covered)\n",
                    d, fmt12(report.threshold).c_str(), d + 1);
      else
        std::printf("d = %2d: threshold = %s, explicit search range q in [%d, %ld]\n", d,
                    fmt12(report.threshold).c_str(), d + 1, report.q_search_max);
    }
  }
  if (opt.json) {
    Json j;
    j["command"] = "threshold";
    j["schema_version"] = 1;
    j["rows"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

struct CheckCertOptions {
  std::string path;
  bool json = false;
};

int cmd_check_cert(const CheckCertOptions& opt) {
  auto report = [&](int code, const std::string& status, const std::string& detail) {
    if (opt.json) {
      Json j;
      j["command"] = "check-cert";
      j["schema_version"] = 1;
      j["path"] = opt.path;
      j["valid"] = code == 0;
      j["status"] = status;
      j["detail"] = detail;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << status << (detail.empty() ? "" : ": " + detail) << "\n";
    }
    return code;
  };

  MatchingCertificate cert;
  try {
    cert = read_certificate_file(opt.path);
  } catch (const CertificateFormatError& e) {
    return report(2, "malformed certificate", e.what());
  }

  PartitionPoset poset(cert.d);
  if (cert.partitions.size() != poset.size())
    return report(2, "malformed certificate",
                  "partition list length mismatches the (d,q) header");

  const WeightTable table = WeightTable::build(poset, cert.q);
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (!(cert.partitions[i] == poset[i]))
      return report(1, "invalid certificate",
                    "partition list deviates from the canonical enumeration at index " +
                        std::to_string(i));
  if (cert.a != table.a())
    return report(1, "invalid certificate", "stored A does not match the recomputed constant");
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (cert.omega[i] != table.row(i).omega)
      return report(1, "invalid certificate",
                    "stored omega mismatches recomputation at " + poset[i].str());
  if (cert.n_indices != table.n_indices() || cert.p_indices != table.p_indices())
    return report(1, "invalid certificate", "N/P split mismatches the recomputed signs");

  std::string reason;
  if (!verify_certificate(cert, table, &reason))
    return report(1, "invalid certificate", reason);
  return report(0, "valid certificate",
                "d=" + std::to_string(cert.d) + " q=" + std::to_string(cert.q) + ", " +
                    std::to_string(cert.tau.size()) + " tau entries");
}

struct OracleOptions {
  int d = 0;
  long p = 0;
  int trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = default_threads();
  bool json = false;
};

int cmd_oracle(const OracleOptions& opt) {
  OracleConfig config;
  config.nonconstant_trials = opt.trials;
  config.constant_modulus_trials = std::max(1, opt.trials / 10);
  config.seed = opt.seed;
  config.tol = opt.tol;
  config.threads = opt.threads;

  const OracleReport report = run_oracle_battery(opt.d, opt.p, config);

  if (opt.json) {
    Json j;
    j["command"] = "oracle";
    j["schema_version"] = 1;
    j["d"] = report.d;
    j["p"] = report.p;
    j["seed"] = opt.seed;
    Json checks = Json::array();
    for (const OracleCheck& check : report.checks) {
      Json c;
      c["name"] = check.name;
      c["pass"] = check.pass;
      c["detail"] = check.detail;
      checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    Json counts = Json::array();
    const PartitionPoset poset(report.d);
    for (std::size_t i = 0; i < report.w_count_bruteforce.size(); ++i) {
      Json c;
      c["partition"] = poset[i].str();
      c["bruteforce"] = report.w_count_bruteforce[i];
      c["formula"] = report.w_count_formula[i];
      counts.push_back(std::move(c));
    }
    j["w_counts"] = std::move(counts);
    Json experiments = Json::array();
    for (const RatioExperiment& e : report.experiments) {
      Json r;
      r["f"] = e.description;
      r["ratio"] = fmt12(e.ratio);
      r["bound"] = fmt12(e.bound);
      r["slack"] = fmt12(e.slack);
      experiments.push_back(std::move(r));
    }
    j["ratio_experiments"] = std::move(experiments);
    j["constant_ratio_error"] = fmt12(report.constant_ratio_error);
    j["max_constant_modulus_error"] = fmt12(report.max_constant_modulus_error);
    j["min_nonconstant_margin"] = fmt12(report.min_nonconstant_margin);
    j["all_pass"] = report.all_pass();
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("oracle battery for d = %d, p = %ld\n", report.d, report.p);
    const PartitionPoset poset(report.d);
    for (std::size_t i = 0; i < report.w_count_bruteforce.size(); ++i)
      std::printf("  |W_%s| counted %ld, formula %s\n", poset[i].str().c_str(),
                  report.w_count_bruteforce[i], report.w_count_formula[i].c_str());
    for (const RatioExperiment& e : report.experiments)
      std::printf("  ratio[%s] = %s, bound = %s, slack = %s\n", e.description.c_str(),
                  fmt12(e.ratio).c_str(), fmt12(e.bound).c_str(), fmt12(e.slack).c_str());
    for (const OracleCheck& check : report.checks)
      std::printf("[%s] %s: %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                  check.detail.c_str());
    std::printf("%s\n", report.all_pass() ? "all checks pass" : "SOME CHECKS FAILED");
  }
  return report.all_pass() ? 0 : 1;
}

struct SelftestOptions {
  std::uint64_t seed = 1;
  bool json = false;
};

int cmd_selftest(const SelftestOptions& opt) {
  std::vector<std::pair<std::string, bool>> groups;
  auto run_group = [&](const std::string& name, auto&& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      std::cerr << name << " raised: " << e.what() << "\n";
      ok = false;
    }
    groups.emplace_back(name, ok);
  };

  run_group("partition_counts", [] {
    const std::size_t expected[] = {2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int d = 2; d <= 12; ++d)
      if (enumerate_partitions(d).size() != expected[d - 2]) return false;
    return true;
  });

  run_group("weight_identities", [] {
    for (const auto& [d, q] : {std::pair<int, long>{3, 7}, {4, 7}, {5, 8}, {6, 9}}) {
      const WeightTable table = WeightTable::build(d, q);  // identities checked internally
      if (table.n_indices().empty()) return false;
    }
    const WeightTable d3q7 = WeightTable::build(3, 7);
    return rational_str(d3q7.a()) == "235/49";
  });

  run_group("hall_and_certificates", [] {
    for (int d = 2; d <= 8; ++d) {
      const PartitionPoset poset(d);
      const long q_max = std::min<long>(threshold(d).q_search_max, d + 4);
      for (long q = d + 1; q <= std::max<long>(q_max, d + 1); ++q) {
        const WeightTable table = WeightTable::build(poset, q);
        const BipartiteInstance inst = BipartiteInstance::from_table(table, poset);
        if (!check_hall_flow(inst).holds()) return false;
        const MatchingCertificate cert = construct_certificate(inst, table, poset);
        if (!verify_certificate(cert, table)) return false;
      }
    }
    return true;
  });

  run_group("muirhead_spot_checks", [&] {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> num(0, 16), den(1, 16);
    const PartitionPoset poset(4);
    const std::size_t q = 6;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Rational> values(q);
      for (auto& v : values) {
        v = Rational(num(rng), den(rng));
        v.canonicalize();
      }
      const VariableVector x(values);
      for (std::size_t i = 0; i < poset.size(); ++i)
        for (std::size_t j = 0; j < poset.size(); ++j) {
          if (!poset.leq(i, j)) continue;
          const MuirheadComparison cmp = muirhead_compare(poset[i], poset[j], x);
          const bool predicted_equal =
              muirhead_equality_classify(poset[i], poset[j], x) != MuirheadCase::strict;
          if (cmp.lower > cmp.upper || cmp.equal != predicted_equal) return false;
        }
    }
    return true;
  });

  run_group("master_inequality", [&] {
    const PartitionPoset poset(3);
    const WeightTable table = WeightTable::build(poset, 7);
    const BipartiteInstance inst = BipartiteInstance::from_table(table, poset);
    const MatchingCertificate cert = construct_certificate(inst, table, poset);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> num(0, 16), den(1, 16);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> values(7);
      for (auto& v : values) {
        v = Rational(num(rng), den(rng));
        v.canonicalize();
      }
      if (!verify_master_inequality(table, cert, VariableVector(values))) return false;
    }
    if (!verify_master_inequality(table, cert,
                                  VariableVector(std::vector<Rational>(7, Rational(3, 2)))))
      return false;
    return verify_master_inequality(table, cert,
                                    VariableVector(std::vector<Rational>(7, Rational(0))));
  });

  run_group("threshold_and_small_N", [] {
    if (threshold(3).q_search_max != 3) return false;
    if (threshold(20).q_search_max != 119) return false;
    return small_N_condition(3, 7) && large_q_chain_check(5, 20);
  });

  run_group("field_oracle", [&] {
    OracleConfig config;
    config.constant_modulus_trials = 5;
    config.nonconstant_trials = 20;
    config.seed = opt.seed;
    for (long p : {5L, 7L}) {
      const OracleReport report = run_oracle_battery(2, p, config);
      if (!report.all_pass()) return false;
    }
    return run_oracle_battery(3, 5, config).all_pass();
  });

  bool all = true;
  if (opt.json) {
    Json j;
    j["command"] = "selftest";
    j["schema_version"] = 1;
    Json checks = Json::array();
    for (const auto& [name, ok] : groups) {
      all = all && ok;
      checks.push_back(Json{{"name", name}, {"pass", ok}});
    }
    j["checks"] = std::move(checks);
    j["all_pass"] = all;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [name, ok] : groups) {
      all = all && ok;
      std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    }
    std::printf("%s\n", all ? "selftest passed" : "SELFTEST FAILED");
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verifier for the sharp moment-curve extension constant on finite fields"};
  app.require_subcommand(1);

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "verify the Hall condition for one (d,q)");
  verify->add_option("--d", verify_opt.d, "dimension, >= 2")->required();
  verify->add_option("--q", verify_opt.q, "field-size parameter, >= d+1")->required();
  verify->add_option("--method", verify_opt.method, "flow | subsets | both")
      ->check(CLI::IsMember({"flow", "subsets", "both"}))
      ->capture_default_str();
  verify->add_option("--emit-cert", verify_opt.emit_cert, "write a matching certificate here");
  verify->add_flag("--json", verify_opt.json, "machine-readable output");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "verify every q below the threshold for each d");
  sweep->add_option("--d-min", sweep_opt.d_min, "first dimension")->capture_default_str();
  sweep->add_option("--d-max", sweep_opt.d_max, "last dimension")->capture_default_str();
  sweep->add_option("--method", sweep_opt.method, "flow | subsets | both")
      ->check(CLI::IsMember({"flow", "subsets", "both"}))
      ->capture_default_str();
  sweep->add_option("--threads", sweep_opt.threads, "worker threads")->capture_default_str();
  sweep->add_flag("--json", sweep_opt.json, "machine-readable output");

  ThresholdOptions threshold_opt;
  int threshold_d = 0, threshold_dmin = 0, threshold_dmax = 0;
  CLI::App* thresh = app.add_subcommand("threshold", "print the large-q threshold");
  CLI::Option* opt_d = thresh->add_option("--d", threshold_d, "single dimension");
  CLI::Option* opt_dmin = thresh->add_option("--d-min", threshold_dmin, "first dimension");
  CLI::Option* opt_dmax = thresh->add_option("--d-max", threshold_dmax, "last dimension");
  thresh->add_flag("--json", threshold_opt.json, "machine-readable output");

  CheckCertOptions check_opt;
  CLI::App* check = app.add_subcommand("check-cert", "re-verify a certificate file");
  check->add_option("path", check_opt.path, "certificate file")->required();
  check->add_flag("--json", check_opt.json, "machine-readable output");

  OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force prime-field oracle battery");
  oracle->add_option("--d", oracle_opt.d, "dimension, >= 2")->required();
  oracle->add_option("--p", oracle_opt.p, "prime with p > d")->required();
  oracle->add_option("--trials", oracle_opt.trials, "random non-constant samples")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_opt.seed, "RNG seed")->capture_default_str();
  oracle->add_option("--tol", oracle_opt.tol, "floating tolerance")->capture_default_str();
  oracle->add_option("--threads", oracle_opt.threads, "worker threads")->capture_default_str();
  oracle->add_flag("--json", oracle_opt.json, "machine-readable output");

  SelftestOptions selftest_opt;
  CLI::App* selftest = app.add_subcommand("selftest", "condensed internal verification battery");
  selftest->add_option("--seed", selftest_opt.seed, "RNG seed")->capture_default_str();
  selftest->add_flag("--json", selftest_opt.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (verify_opt.d < 2) {
        std::cerr << "usage error: --d must be >= 2\n";
        return 2;
      }
      if (verify_opt.q <= verify_opt.d) {
        std::cerr << "usage error: --q must be >= d+1\n";
        return 2;
      }
      return cmd_verify(verify_opt);
    }
    if (sweep->parsed()) {
      if (sweep_opt.d_min < 2 || sweep_opt.d_min > sweep_opt.d_max) {
        std::cerr << "usage error: need 2 <= --d-min <= --d-max\n";
        return 2;
      }
      return cmd_sweep(sweep_opt);
    }
    if (thresh->parsed()) {
      if (opt_d->count()) {
        threshold_opt.d_min = threshold_opt.d_max = threshold_d;
      } else if (opt_dmin->count() && opt_dmax->count()) {
        threshold_opt.d_min = threshold_dmin;
        threshold_opt.d_max = threshold_dmax;
      } else {
        std::cerr << "usage error: pass --d or both --d-min and --d-max\n";
        return 2;
      }
      if (threshold_opt.d_min < 2 || threshold_opt.d_min > threshold_opt.d_max) {
        std::cerr << "usage error: need 2 <= d range\n";
        return 2;
      }
      return cmd_threshold(threshold_opt);
    }
    if (check->parsed()) return cmd_check_cert(check_opt);
    if (oracle->parsed()) {
      if (oracle_opt.d < 2) {
        std::cerr << "usage error: --d must be >= 2\n";
        return 2;
      }
      return cmd_oracle(oracle_opt);
    }
    if (selftest->parsed()) return cmd_selftest(selftest_opt);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const CertificateFormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
