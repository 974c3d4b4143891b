#pragma once

#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "fairdiv/optimizer.hpp"

namespace fairdiv {

/// Deterministic instance search: every trial derives its own generator from
/// (seed XOR trial), so results do not depend on worker count or run order.
struct SearchConfig {
  int num_agents = 2;
  int num_goods = 2;
  std::uint64_t value_min = 1;
  std::uint64_t value_max = 100;
  int trials = 1;
  std::uint64_t seed = 0;
  bool identical = false;
  bool normalized_only = false;
  int workers = 1;
  Limits limits;
};

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] by rejection; unbiased and portable.
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full 64-bit range
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + x % span;
  }
};

inline void check_config(const SearchConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (cfg.value_min > cfg.value_max) throw DomainError("empty value range");
  if (cfg.num_agents < 1) throw DomainError("agent count must be positive");
  if (cfg.num_goods < 0) throw DomainError("negative number of goods");
  if (cfg.workers < 1) throw DomainError("worker count must be positive");
}

/// The trial's instance, reproducible from (cfg.seed, trial) alone. Integer
/// values are uniform in [value_min, value_max]; normalized_only resamples
/// rows until all totals match the first row (identical mode duplicates a
/// single row and is normalized by construction).
inline Instance random_instance(const SearchConfig& cfg, int trial) {
  check_config(cfg);
  SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(trial));
  auto sample_row = [&] {
    std::vector<Rational> row;
    row.reserve(cfg.num_goods);
    for (int g = 0; g < cfg.num_goods; ++g)
      row.emplace_back(BigInt(rng.in_range(cfg.value_min, cfg.value_max)));
    return row;
  };

  Instance inst;
  inst.num_agents = cfg.num_agents;
  inst.num_goods = cfg.num_goods;
  if (cfg.identical) {
    auto row = sample_row();
    inst.values.assign(cfg.num_agents, row);
    return inst;
  }
  inst.values.push_back(sample_row());
  if (!cfg.normalized_only) {
    for (int i = 1; i < cfg.num_agents; ++i) inst.values.push_back(sample_row());
    return inst;
  }
  Rational target = 0;
  for (const auto& v : inst.values[0]) target += v;
  for (int i = 1; i < cfg.num_agents; ++i) {
    constexpr int kMaxAttempts = 200000;
    int attempt = 0;
    while (true) {
      if (++attempt > kMaxAttempts)
        throw ResourceLimitError("rejection-sampling cap exceeded while normalizing");
      auto row = sample_row();
      Rational total = 0;
      for (const auto& v : row) total += v;
      if (total == target) {
        inst.values.push_back(std::move(row));
        break;
      }
    }
  }
  return inst;
}

/// An identical-valuations instance where no sum-of-variances minimizer is
/// MMS-fair ex-post.
struct MmsGapFinding {
  int trial = 0;
  Instance instance;
  Rational min_dist_sq;
  Rational best_mms_dist_sq;
  Rational worst_ratio;  // min mms_ratio over the distance-minimizing set
  std::vector<Distribution> witnesses;
};

/// An instance where every sum-of-variances minimizing lottery fails EF1
/// ex-post.
struct ExpostFailureFinding {
  int trial = 0;
  Instance instance;
  std::vector<Distribution> witnesses;
  std::optional<Rational> worst_ratio;  // min mms_ratio over all witness supports
};

template <typename Finding>
struct ScanReport {
  std::vector<Finding> findings;
  std::vector<std::string> skipped;  // per-trial resource-limit notes
};

namespace detail {

template <typename Finding, typename TrialFn>
ScanReport<Finding> run_trials(const SearchConfig& cfg, const std::map<int, Instance>& overrides,
                               TrialFn&& trial_fn) {
  check_config(cfg);
  struct Slot {
    std::optional<Finding> finding;
    std::optional<std::string> skip;
  };
  std::vector<Slot> slots(cfg.trials);
  auto run_range = [&](int begin, int step) {
    for (int t = begin; t < cfg.trials; t += step) {
      Instance inst =
          overrides.count(t) ? overrides.at(t) : random_instance(cfg, t);
      try {
        slots[t].finding = trial_fn(t, inst);
      } catch (const ResourceLimitError& e) {
        slots[t].skip = "trial " + std::to_string(t) + " skipped: " + e.what();
      }
    }
  };

  if (cfg.workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(cfg.workers);
    for (int w = 0; w < cfg.workers; ++w)
      threads.emplace_back([&, w] {
        try {
          run_range(w, cfg.workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : threads) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  ScanReport<Finding> report;
  for (auto& slot : slots) {
    if (slot.finding) report.findings.push_back(std::move(*slot.finding));
    if (slot.skip) report.skipped.push_back(std::move(*slot.skip));
  }
  return report;
}

}  // namespace detail

/// Flags trials where no distance minimizer is MMS-fair, i.e. every
/// sum-of-variances minimizer fails ex-post MMS.
inline ScanReport<MmsGapFinding> scan_identical_mms_gap(
    const SearchConfig& cfg, const std::map<int, Instance>& overrides = {}) {
  if (!cfg.identical) throw DomainError("mms-gap scan needs identical mode");
  return detail::run_trials<MmsGapFinding>(
      cfg, overrides, [&](int trial, const Instance& inst) -> std::optional<MmsGapFinding> {
        if (!identical_rows(inst)) throw DomainError("mms-gap scan needs identical rows");
        Rational mms = maximin_share(inst, 0, cfg.limits);
        auto records = min_distance_allocations(inst, false, cfg.limits);
        std::optional<Rational> worst;
        for (const auto& rec : records) {
          Rational low = rec.vector[0];
          for (const auto& v : rec.vector) low = std::min(low, v);
          if (low >= mms) return std::nullopt;  // an MMS-fair minimizer exists
          if (mms > 0) {
            Rational ratio = low / mms;
            if (!worst || ratio < *worst) worst = ratio;
          }
        }
        if (!worst) return std::nullopt;  // mms == 0 makes every allocation fair
        MmsGapFinding finding;
        finding.trial = trial;
        finding.instance = inst;
        finding.min_dist_sq = records.front().dist_sq;
        finding.best_mms_dist_sq = min_distance_allocations(inst, true, cfg.limits).front().dist_sq;
        finding.worst_ratio = *worst;
        MinimizeOptions opts;
        opts.limits = cfg.limits;
        finding.witnesses = minimize(inst, ObjectiveKind::SoV, opts).minimizers;
        return finding;
      });
}

/// Flags trials where every sum-of-variances minimizing vertex lottery fails
/// EF1 ex-post.
inline ScanReport<ExpostFailureFinding> scan_nonidentical_expost_failure(
    const SearchConfig& cfg, const std::map<int, Instance>& overrides = {}) {
  return detail::run_trials<ExpostFailureFinding>(
      cfg, overrides, [&](int trial, const Instance& inst) -> std::optional<ExpostFailureFinding> {
        MinimizeOptions opts;
        opts.limits = cfg.limits;
        MinimizeResult result = minimize(inst, ObjectiveKind::SoV, opts);
        for (const auto& dist : result.minimizers)
          if (check_expost_property(inst, dist, FairnessCriterion::ef1(), cfg.limits))
            return std::nullopt;
        ExpostFailureFinding finding;
        finding.trial = trial;
        finding.instance = inst;
        finding.witnesses = result.minimizers;
        for (const auto& dist : finding.witnesses)
          for (const auto& [alloc, p] : dist.support) {
            auto ratio = mms_ratio(inst, alloc, cfg.limits);
            if (ratio.ratio && (!finding.worst_ratio || *ratio.ratio < *finding.worst_ratio))
              finding.worst_ratio = *ratio.ratio;
          }
        return finding;
      });
}

namespace detail {

inline void append_witnesses(std::string& out, const std::vector<Distribution>& witnesses) {
  out += "witnesses:\n";
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) out += "--\n";
    out += format_distribution(witnesses[i]);
  }
}

}  // namespace detail

/// Deterministic text report; byte-identical for equal configs regardless of
/// worker count.
inline std::string format_report(const ScanReport<MmsGapFinding>& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += "trial " + std::to_string(f.trial) + "\n";
    out += serialize_instance(f.instance);
    detail::append_witnesses(out, f.witnesses);
    out += "failure: mms ratio=" + format_rational(f.worst_ratio) + "\n";
    out += "min_dist_sq = " + format_rational(f.min_dist_sq) + "\n";
    out += "mms_dist_sq = " + format_rational(f.best_mms_dist_sq) + "\n\n";
  }
  for (const auto& s : report.skipped) out += "# " + s + "\n";
  return out;
}

inline std::string format_report(const ScanReport<ExpostFailureFinding>& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += "trial " + std::to_string(f.trial) + "\n";
    out += serialize_instance(f.instance);
    detail::append_witnesses(out, f.witnesses);
    out += "failure: ef1 ratio=" +
           (f.worst_ratio ? format_rational(*f.worst_ratio) : std::string("na")) + "\n\n";
  }
  for (const auto& s : report.skipped) out += "# " + s + "\n";
  return out;
}

}  // namespace fairdiv
