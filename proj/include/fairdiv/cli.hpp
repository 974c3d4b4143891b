#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairdiv/fixtures.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace cli_detail

/// Figure data for a 3-agent identical instance: every allocation's value
/// vector, its squared distance to (PS)^3, and whether it is MMS-fair or a
/// distance minimizer.
inline std::string export_simplex_csv(const Instance& inst, const Limits& limits = {}) {
  check_instance(inst);
  if (inst.num_agents != 3) throw DomainError("simplex export needs exactly three agents");
  if (!identical_rows(inst)) throw DomainError("simplex export needs identical valuation rows");
  const Rational ps = proportional_share(inst, 0);
  const Rational mms = maximin_share(inst, 0, limits);

  std::optional<Rational> min_dist;
  for_each_allocation_with_totals(inst, limits,
                                  [&](const Allocation&, const std::vector<Rational>& totals) {
                                    Rational d = detail::dist_sq_from_totals(totals, ps);
                                    if (!min_dist || d < *min_dist) min_dist = d;
                                  });

  std::string out = "allocation,v_1,v_2,v_3,dist_sq,is_mms,is_distance_min\n";
  for_each_allocation_with_totals(
      inst, limits, [&](const Allocation& alloc, const std::vector<Rational>& totals) {
        Rational d = detail::dist_sq_from_totals(totals, ps);
        bool fair = true;
        for (const auto& t : totals)
          if (t < mms) fair = false;
        out += format_allocation(alloc);
        for (const auto& t : totals) out += "," + format_rational(t);
        out += "," + format_rational(d);
        out += fair ? ",1" : ",0";
        out += d == *min_dist ? ",1\n" : ",0\n";
      });
  return out;
}

struct Fixtures {
  Instance identical3 = fixtures::identical_three_agents();
  Instance skewed2 = fixtures::skewed_two_agents();
  Instance stds2 = fixtures::stds_two_agents();
};

/// Runs the golden reproduction suite against the embedded case studies.
/// Prints one PASS/FAIL line per claim and returns the number of failures.
inline int run_verify_paper(std::ostream& out, const Fixtures& fx = {}, const Limits& limits = {}) {
  int failures = 0;
  auto claim = [&](const std::string& label, auto&& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      out << "PASS " << label << "\n";
    } else {
      ++failures;
      out << "FAIL " << label << (detail.empty() ? "" : ": " + detail) << "\n";
    }
  };
  auto expect_eq = [](std::string& detail, const auto& got, const auto& want) {
    std::ostringstream g, w;
    g << got;
    w << want;
    if (g.str() == w.str()) return true;
    detail = "expected " + w.str() + ", got " + g.str();
    return false;
  };

  const Instance& I3 = fx.identical3;
  const Instance& S2 = fx.skewed2;
  const Instance& T2 = fx.stds2;
  const Distribution d_min = fixtures::skewed_min_lottery();
  const Distribution d_good = fixtures::skewed_balanced_lottery();
  const Distribution f_min = fixtures::stds_min_lottery();
  const Distribution f_good = fixtures::stds_balanced_lottery();

  claim("three identical agents: mms equals 912", [&](std::string& detail) {
    return expect_eq(detail, format_rational(maximin_share(I3, 0, limits)), "912");
  });

  claim("three identical agents: minimum squared distance equals 46050", [&](std::string& detail) {
    auto records = min_distance_allocations(I3, false, limits);
    return expect_eq(detail, format_rational(records.front().dist_sq), "46050") &&
           expect_eq(detail, records.size(), 6);
  });

  claim("three identical agents: mms-fair minimum squared distance equals 46464",
        [&](std::string& detail) {
          // (1176,912,912) against (1000)^3: 176^2 + 88^2 + 88^2 = 46464.
          auto records = min_distance_allocations(I3, true, limits);
          return expect_eq(detail, format_rational(records.front().dist_sq), "46464") &&
                 expect_eq(detail, records.front().dist_sq > 46050, true);
        });

  claim("three identical agents: worst minimizer mms ratio equals 275/304",
        [&](std::string& detail) {
          std::optional<Rational> worst;
          for (const auto& rec : min_distance_allocations(I3, false, limits)) {
            auto r = mms_ratio(I3, rec.alloc, limits).ratio;
            if (!r) return false;
            if (!worst || *r < *worst) worst = *r;
          }
          return expect_eq(detail, format_rational(*worst), "275/304");
        });

  claim("three identical agents: every minimizer is efx", [&](std::string& detail) {
    for (const auto& rec : min_distance_allocations(I3, false, limits))
      if (!check_fairness(I3, rec.alloc, FairnessCriterion::efx(), limits)) {
        detail = "allocation " + format_allocation(rec.alloc) + " is not efx";
        return false;
      }
    return true;
  });

  claim("skewed pair: optimum equals 1959000/961 at the unique lottery", [&](std::string& detail) {
    MinimizeOptions opts;
    opts.limits = limits;
    auto result = minimize(S2, ObjectiveKind::SoV, opts);
    return expect_eq(detail, format_objective_value(result.optimum), "1959000/961") &&
           expect_eq(detail, result.unique, true) &&
           expect_eq(detail, result.minimizers.size(), 1) &&
           expect_eq(detail, format_distribution(result.minimizers.front()),
                     format_distribution(normalize_support(d_min.support)));
  });

  claim("skewed pair: balanced lottery scores 2260", [&](std::string& detail) {
    return expect_eq(detail, format_objective_value(evaluate(S2, d_good, ObjectiveKind::SoV)),
                     "2260");
  });

  claim("skewed pair: minimizing lottery is not ef1 ex-post", [&](std::string&) {
    return !check_expost_property(S2, d_min, FairnessCriterion::ef1(), limits);
  });

  claim("skewed pair: minimizing lottery has mms ratio 0", [&](std::string& detail) {
    std::optional<Rational> worst;
    for (const auto& [alloc, p] : d_min.support) {
      auto r = mms_ratio(S2, alloc, limits).ratio;
      if (r && (!worst || *r < *worst)) worst = *r;
    }
    return expect_eq(detail, format_rational(*worst), "0");
  });

  claim("skewed pair: max-var 1382400/961 beats 2116", [&](std::string& detail) {
    return expect_eq(detail, format_objective_value(evaluate(S2, d_min, ObjectiveKind::MaxVar)),
                     "1382400/961") &&
           expect_eq(detail, format_objective_value(evaluate(S2, d_good, ObjectiveKind::MaxVar)),
                     "2116") &&
           expect_eq(detail,
                     ordering_name(compare(S2, d_min, d_good, ObjectiveKind::MaxVar, limits).order),
                     "LT");
  });

  claim("skewed pair: vov (402900/961)^2 beats 972196", [&](std::string& detail) {
    Rational expected = Rational(402900, 961) * Rational(402900, 961);
    return expect_eq(detail, format_objective_value(evaluate(S2, d_min, ObjectiveKind::VoV)),
                     format_rational(expected)) &&
           expect_eq(detail, format_objective_value(evaluate(S2, d_good, ObjectiveKind::VoV)),
                     "972196") &&
           expect_eq(detail,
                     ordering_name(compare(S2, d_min, d_good, ObjectiveKind::VoV, limits).order),
                     "LT");
  });

  claim("skewed pair: std-of-stds stays below 7 against exactly 17", [&](std::string& detail) {
    auto lhs = evaluate(S2, d_min, ObjectiveKind::StdOfStds, limits);
    const auto* interval = std::get_if<CertifiedReal>(&lhs);
    if (!interval || interval->upper >= 7) {
      detail = "minimizer value " + format_objective_value(lhs);
      return false;
    }
    return expect_eq(detail, format_objective_value(evaluate(S2, d_good, ObjectiveKind::StdOfStds)),
                     "17") &&
           expect_eq(
               detail,
               ordering_name(compare(S2, d_min, d_good, ObjectiveKind::StdOfStds, limits).order),
               "LT");
  });

  claim("stds pair: sum-of-stds stays below 42 against exactly 45", [&](std::string& detail) {
    auto lhs = evaluate(T2, f_min, ObjectiveKind::SumOfStds, limits);
    const auto* interval = std::get_if<CertifiedReal>(&lhs);
    if (!interval || interval->upper >= 42) {
      detail = "minimizer value " + format_objective_value(lhs);
      return false;
    }
    return expect_eq(detail, format_objective_value(evaluate(T2, f_good, ObjectiveKind::SumOfStds)),
                     "45") &&
           expect_eq(
               detail,
               ordering_name(compare(T2, f_min, f_good, ObjectiveKind::SumOfStds, limits).order),
               "LT");
  });

  claim("skewed pair: vertex list matches the case analysis", [&](std::string& detail) {
    auto poly = build_prop_polytope(S2, all_allocations(2, 2, limits), limits);
    auto enumeration = polytope_vertices(poly, limits);
    // Atom order is lexicographic: (100,0), (4,62), (96,38), (0,100).
    std::vector<std::vector<Rational>> expected = {
        {Rational(0), Rational(0), Rational(25, 31), Rational(6, 31)},
        {Rational(0), Rational(0), Rational(25, 48), Rational(23, 48)},
        {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)},
        {Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)},
    };
    std::sort(expected.begin(), expected.end());
    std::vector<std::vector<Rational>> got;
    for (const auto& v : enumeration.vertices) got.push_back(v.probabilities);
    std::sort(got.begin(), got.end());
    if (got != expected) {
      detail = "vertex set differs (" + std::to_string(got.size()) + " vertices)";
      return false;
    }
    // The tight-but-infeasible candidate with mass 50/96 on (4,62) and 46/96
    // on (100,0) leaves agent 2 at 3100/96 < 50 and must stay excluded.
    Rational agent2 = Rational(50, 96) * 62 + Rational(46, 96) * 0;
    return agent2 < 50;
  });

  claim("stds pair: sum-of-stds minimizer is the 10/11 lottery", [&](std::string& detail) {
    MinimizeOptions opts;
    opts.limits = limits;
    auto result = minimize(T2, ObjectiveKind::SumOfStds, opts);
    return expect_eq(detail, result.unique, true) &&
           expect_eq(detail, result.minimizers.size(), 1) &&
           expect_eq(detail, format_distribution(result.minimizers.front()),
                     format_distribution(normalize_support(f_min.support)));
  });

  out << (failures == 0 ? "all claims pass\n"
                        : std::to_string(failures) + " claim(s) failed\n");
  return failures;
}

namespace cli_detail {

inline void print_minimize_result(std::ostream& out, const MinimizeResult& result) {
  out << "optimum = " << format_objective_value(result.optimum) << "\n";
  out << "unique = " << (result.unique ? "true" : "false") << "\n";
  if (result.heuristic) {
    out << "heuristic = true\n";
    out << "note = best point found by vertex scan and local search; global optimality not "
           "guaranteed\n";
  }
  for (std::size_t i = 0; i < result.minimizers.size(); ++i) {
    out << "minimizer " << (i + 1) << ":\n";
    out << format_distribution(result.minimizers[i]);
  }
}

}  // namespace cli_detail

/// Command-line front end; returns the process exit status. 0 = success,
/// 1 = domain error (infeasible, undecided comparison, failed claims),
/// 2 = usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact lotteries over indivisible-goods allocations"};
  app.require_subcommand(1);

  Limits limits;
  app.add_option("--max-states", limits.max_states, "cap on enumerated allocation spaces");
  app.add_option("--max-atoms", limits.max_atoms, "cap on lottery support candidates");
  app.add_option("--bits", limits.bits, "starting precision for certified values");

  std::string instance_path, allocation_text, distribution_path, criterion_name, objective_name;
  std::string d1_path, d2_path;
  int agent = 0;
  bool exante = false, efx_strict = false, restrict_mms = false, enumerate_all = false;

  auto* mms_cmd = app.add_subcommand("mms", "exact maximin share of an agent");
  mms_cmd->add_option("instance", instance_path, "instance file")->required();
  mms_cmd->add_option("--agent", agent, "1-based agent index (default: all agents)");

  auto* check_cmd = app.add_subcommand("check", "check a fairness criterion");
  check_cmd->add_option("instance", instance_path, "instance file")->required();
  check_cmd->add_option("--criterion", criterion_name, "prop|ef1|efx|mms|rho-mms:<p/q>")->required();
  check_cmd->add_option("--allocation", allocation_text, "1-based owner list");
  check_cmd->add_option("--distribution", distribution_path, "distribution file (ex-post check)");
  check_cmd->add_flag("--exante", exante, "check ex-ante proportionality of the distribution");
  check_cmd->add_flag("--efx-strict", efx_strict, "require removal of zero-valued goods too");

  auto* enum_cmd = app.add_subcommand("enumerate", "distance records as csv");
  enum_cmd->add_option("instance", instance_path, "instance file (identical rows)")->required();
  enum_cmd->add_flag("--restrict-mms", restrict_mms, "minimize over mms-fair allocations only");
  enum_cmd->add_flag("--all", enumerate_all, "emit every allocation, not just the minimizers");

  auto* min_cmd = app.add_subcommand("minimize", "minimize an objective over ex-ante proportional lotteries");
  min_cmd->add_option("instance", instance_path, "instance file")->required();
  min_cmd->add_option("--objective", objective_name,
                      "sov|sovor|max-var|vov|std-of-stds|sum-of-stds")
      ->required();

  auto* cmp_cmd = app.add_subcommand("compare", "order two lotteries under an objective");
  cmp_cmd->add_option("instance", instance_path, "instance file")->required();
  cmp_cmd->add_option("d1", d1_path, "first distribution file")->required();
  cmp_cmd->add_option("d2", d2_path, "second distribution file")->required();
  cmp_cmd->add_option("--objective", objective_name,
                      "sov|sovor|max-var|vov|std-of-stds|sum-of-stds")
      ->required();

  SearchConfig cfg;
  std::string scan_kind = "auto";
  auto* search_cmd = app.add_subcommand("search", "randomized counterexample search");
  search_cmd->add_option("--agents", cfg.num_agents, "number of agents");
  search_cmd->add_option("--goods", cfg.num_goods, "number of goods");
  search_cmd->add_option("--min", cfg.value_min, "smallest good value");
  search_cmd->add_option("--max", cfg.value_max, "largest good value");
  search_cmd->add_option("--trials", cfg.trials, "number of trials");
  search_cmd->add_option("--seed", cfg.seed, "rng seed");
  search_cmd->add_flag("--identical", cfg.identical, "duplicate one valuation row");
  search_cmd->add_flag("--normalized", cfg.normalized_only, "equal row totals only");
  search_cmd->add_option("--workers", cfg.workers, "worker threads");
  search_cmd->add_option("--scan", scan_kind, "mms-gap|expost-failure (default by mode)");

  auto* verify_cmd = app.add_subcommand("verify-paper", "run the golden reproduction suite");
  auto* simplex_cmd = app.add_subcommand("export-simplex", "figure data for 3 identical agents");
  simplex_cmd->add_option("instance", instance_path, "instance file (3 identical rows)")->required();

  std::vector<const char*> argv;
  argv.push_back("fairdiv");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (mms_cmd->parsed()) {
      Instance inst = cli_detail::load_instance(instance_path);
      if (mms_cmd->count("--agent")) {
        if (agent < 1 || agent > inst.num_agents) throw UsageError("agent index out of range");
        out << format_rational(maximin_share(inst, agent - 1, limits)) << "\n";
      } else {
        for (int i = 0; i < inst.num_agents; ++i)
          out << (i + 1) << ": " << format_rational(maximin_share(inst, i, limits)) << "\n";
      }
      return 0;
    }

    if (check_cmd->parsed()) {
      FairnessCriterion crit;
      try {
        crit = parse_criterion(criterion_name);
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
      Instance inst = cli_detail::load_instance(instance_path);
      CheckOptions opts{efx_strict};
      bool result;
      if (!allocation_text.empty()) {
        Allocation alloc = parse_allocation(allocation_text, inst.num_agents, inst.num_goods);
        result = check_fairness(inst, alloc, crit, limits, opts);
      } else if (!distribution_path.empty()) {
        Distribution dist = parse_distribution(cli_detail::read_file(distribution_path),
                                               inst.num_agents, inst.num_goods);
        result = exante ? check_exante_proportional(inst, dist)
                        : check_expost_property(inst, dist, crit, limits, opts);
      } else {
        throw UsageError("check needs --allocation or --distribution");
      }
      out << (result ? "true" : "false") << "\n";
      return 0;
    }

    if (enum_cmd->parsed()) {
      Instance inst = cli_detail::load_instance(instance_path);
      if (enumerate_all) {
        detail::require_identical_rows(inst);
        const Rational ps = proportional_share(inst, 0);
        out << "allocation";
        for (int i = 1; i <= inst.num_agents; ++i) out << ",v_" << i;
        out << ",dist_sq\n";
        for_each_allocation_with_totals(
            inst, limits, [&](const Allocation& alloc, const std::vector<Rational>& totals) {
              out << format_allocation(alloc);
              for (const auto& t : totals) out << "," << format_rational(t);
              out << "," << format_rational(detail::dist_sq_from_totals(totals, ps)) << "\n";
            });
      } else {
        out << records_to_csv(min_distance_allocations(inst, restrict_mms, limits),
                              inst.num_agents);
      }
      return 0;
    }

    if (min_cmd->parsed()) {
      ObjectiveKind kind;
      try {
        kind = parse_objective(objective_name);
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
      Instance inst = cli_detail::load_instance(instance_path);
      MinimizeOptions opts;
      opts.limits = limits;
      cli_detail::print_minimize_result(out, minimize(inst, kind, opts));
      return 0;
    }

    if (cmp_cmd->parsed()) {
      ObjectiveKind kind;
      try {
        kind = parse_objective(objective_name);
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
      Instance inst = cli_detail::load_instance(instance_path);
      Distribution d1 =
          parse_distribution(cli_detail::read_file(d1_path), inst.num_agents, inst.num_goods);
      Distribution d2 =
          parse_distribution(cli_detail::read_file(d2_path), inst.num_agents, inst.num_goods);
      CompareResult result = compare(inst, d1, d2, kind, limits);
      out << ordering_name(result.order);
      if (result.order == Ordering::Undecided && result.intervals) {
        out << " " << format_certified(result.intervals->first) << " vs "
            << format_certified(result.intervals->second);
      }
      out << "\n";
      return result.order == Ordering::Undecided ? 1 : 0;
    }

    if (search_cmd->parsed()) {
      cfg.limits = limits;
      std::string kind = scan_kind;
      if (kind == "auto") kind = cfg.identical ? "mms-gap" : "expost-failure";
      if (kind == "mms-gap") {
        out << format_report(scan_identical_mms_gap(cfg));
      } else if (kind == "expost-failure") {
        out << format_report(scan_nonidentical_expost_failure(cfg));
      } else {
        throw UsageError("unknown scan '" + kind + "'");
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      return run_verify_paper(out, Fixtures{}, limits) == 0 ? 0 : 1;
    }

    if (simplex_cmd->parsed()) {
      Instance inst = cli_detail::load_instance(instance_path);
      out << export_simplex_csv(inst, limits);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fairdiv
