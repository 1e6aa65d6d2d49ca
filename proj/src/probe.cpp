#include "evendt/probe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <thread>

namespace evendt {

namespace {

std::vector<Point> uniform(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::set<std::pair<double, double>> seen;
  std::vector<Point> out;
  while (out.size() < n) {
    const Point p{coord(rng), coord(rng)};
    if (seen.emplace(p.x, p.y).second) out.push_back(p);
  }
  return out;
}

std::vector<Point> grid_jitter(std::size_t n, std::mt19937_64& rng) {
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double spacing = 1.0 / static_cast<double>(std::max<std::size_t>(side, 1));
  std::uniform_real_distribution<double> jitter(-1e-3 * spacing, 1e-3 * spacing);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i % side) * spacing;
    const double y = static_cast<double>(i / side) * spacing;
    out.push_back({x + jitter(rng), y + jitter(rng)});
  }
  return out;
}

std::vector<Point> cocircular(std::size_t n, std::mt19937_64& rng) {
  static constexpr int kRadii[] = {5, 10, 13, 25};
  static constexpr int kCenterSpacing = 60;
  std::vector<std::pair<int, int>> offsets;
  for (int r : kRadii) {
    for (int x = -r; x <= r; ++x) {
      for (int y = -r; y <= r; ++y) {
        if (x * x + y * y == r * r) offsets.emplace_back(x, y);
      }
    }
  }
  for (int g = 1;; ++g) {
    std::set<std::pair<int, int>> pool;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        for (const auto& [dx, dy] : offsets) pool.emplace(i * kCenterSpacing + dx, j * kCenterSpacing + dy);
      }
    }
    if (pool.size() < n) continue;
    std::vector<std::pair<int, int>> picks(pool.begin(), pool.end());
    std::shuffle(picks.begin(), picks.end(), rng);
    std::vector<Point> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back({double(picks[k].first), double(picks[k].second)});
    return out;
  }
}

}  // namespace

std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::GridJitter: return "grid-jitter";
    case Distribution::CocircularStress: return "cocircular-stress";
  }
  throw InternalError("unknown distribution");
}

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "grid-jitter") return Distribution::GridJitter;
  if (name == "cocircular-stress") return Distribution::CocircularStress;
  throw InvalidInput("unknown distribution '" + std::string(name) + "'");
}

std::vector<Point> generate(Distribution d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (d) {
    case Distribution::Uniform: return uniform(n, rng);
    case Distribution::GridJitter: return grid_jitter(n, rng);
    case Distribution::CocircularStress: return cocircular(n, rng);
  }
  throw InternalError("unknown distribution");
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 of the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ok: return "ok";
    case Outcome::CapTriggered: return "cap";
    case Outcome::PlacementFailed: return "placement-failure";
  }
  throw InternalError("unknown outcome");
}

ProbeRecord probe_instance(const std::vector<Point>& points, const EvenConfig& config, std::size_t trial) {
  ProbeRecord rec;
  rec.trial = trial;
  rec.n = points.size();
  try {
    const EvenResult r = dqa_even(points, config);
    rec.m = r.stats.m_steiner;
    rec.iterations = r.stats.loop_iterations;
    rec.merge_u_depth = r.stats.max_merge_u_depth;
  } catch (const SteinerCapExceeded& e) {
    rec.m = e.stats().m_steiner;
    rec.iterations = e.stats().loop_iterations;
    rec.merge_u_depth = e.stats().max_merge_u_depth;
    rec.outcome = Outcome::CapTriggered;
    rec.reproducer = points;
  } catch (const PlacementFailure&) {
    rec.outcome = Outcome::PlacementFailed;
    rec.reproducer = points;
  }
  return rec;
}

ProbeReport probe_conjecture(const ProbeConfig& probe, const EvenConfig& config) {
  if (probe.trials == 0) throw InvalidInput("probe needs at least one trial");
  ProbeReport report;
  report.records.resize(probe.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < probe.trials; i = next++) {
      const std::vector<Point> points = generate(probe.distribution, probe.n, trial_seed(probe.seed, i));
      report.records[i] = probe_instance(points, config, i);
    }
  };
  std::size_t threads = probe.threads ? probe.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, probe.trials);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  double sum = 0.0;
  for (const ProbeRecord& r : report.records) {
    report.max_m = std::max(report.max_m, r.m);
    sum += static_cast<double>(r.m);
    report.cap_triggers += r.outcome == Outcome::CapTriggered;
    report.placement_failures += r.outcome == Outcome::PlacementFailed;
  }
  report.mean_m = sum / static_cast<double>(probe.trials);
  return report;
}

std::string probe_csv(const ProbeReport& report) {
  std::string out = "trial,n,m,iterations,merge_u_depth,cap_triggered,outcome\n";
  for (const ProbeRecord& r : report.records) {
    out += std::to_string(r.trial) + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
           std::to_string(r.iterations) + ',' + std::to_string(r.merge_u_depth) + ',' +
           (r.outcome == Outcome::CapTriggered ? "true" : "false") + ',' + outcome_name(r.outcome) + '\n';
  }
  char mean[64];
  std::snprintf(mean, sizeof mean, "%.6f", report.mean_m);
  out += "# max_m " + std::to_string(report.max_m) + "\n# mean_m " + mean + "\n# cap_triggers " +
         std::to_string(report.cap_triggers) + "\n# placement_failures " +
         std::to_string(report.placement_failures) + '\n';
  return out;
}

}  // namespace evendt
