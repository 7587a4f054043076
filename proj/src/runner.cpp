#include "hgpdc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hgpdc/errors.hpp"

namespace hgpdc {

namespace {

std::string context(const ExperimentConfig& cfg, double power) {
  std::ostringstream s;
  s << cfg.label << " at " << power << " W: ";
  return s.str();
}

}  // namespace

RunRecord run_single(const ExperimentConfig& cfg, double power) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.power = power;
  rec.waveguide = cfg.make_waveguide();
  rec.pump = cfg.make_pump(power);
  rec.grid = cfg.make_grid(rec.waveguide, rec.pump);
  rec.integration = cfg.make_integration(rec.waveguide, rec.pump);

  try {
    const KernelFactory factory(rec.waveguide, rec.pump, rec.grid);
    rec.evolution = evolve(factory, rec.integration);
    rec.moment = second_moment(rec.evolution.state, rec.grid, power);
    rec.decomposition = schmidt_decompose(rec.moment, cfg.truncation);
    if (rec.decomposition.rank > 0) rec.metrics = metrics(rec.decomposition);
  } catch (const ConstraintViolation& e) {
    throw ConstraintViolation(context(cfg, power) + e.what(), e.worst_residual);
  } catch (const NonFiniteState& e) {
    throw NonFiniteState(context(cfg, power) + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(context(cfg, power) + e.what());
  }
  rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

SweepRow summarize(const RunRecord& rec) {
  SweepRow row;
  row.power_w = rec.power;
  row.residuals = rec.evolution.residuals;
  row.wall_s = rec.wall_s;
  if (rec.metrics) {
    const auto& m = *rec.metrics;
    row.gain = m.gain;
    row.gain_db = m.gain_db;
    row.purity = m.purity;
    for (Eigen::Index l = 0; l < 3 && l < m.mode_weights.size(); ++l) {
      row.p[l] = m.mode_weights[l];
      row.r[l] = rec.decomposition.r[l];
    }
  } else {
    row.purity = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const RowCallback& on_row, std::ostream* log) {
  const std::vector<double> powers = cfg.sweep.resolve();
  if (powers.empty()) throw ConfigError("sweep has no powers");

  unsigned threads = cfg.sweep.threads > 0 ? static_cast<unsigned>(cfg.sweep.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(powers.size()));

  SweepResult result;
  std::mutex lock;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= powers.size()) return;
      const double p = powers[k];
      try {
        const RunRecord rec = run_single(cfg, p);
        const SweepRow row = summarize(rec);
        std::lock_guard<std::mutex> g(lock);
        result.rows.push_back(row);
        if (on_row) on_row(row, rec);
        if (log) {
          *log << "[" << cfg.label << "] P=" << p << " W  G_dB=" << row.gain_db
               << "  purity=" << row.purity << "  worst residual=" << row.residuals.worst()
               << "  (" << row.wall_s << " s)" << std::endl;
        }
      } catch (const Error& e) {
        std::lock_guard<std::mutex> g(lock);
        result.failures.push_back({p, e.what()});
        if (log) *log << "[" << cfg.label << "] P=" << p << " W failed: " << e.what() << std::endl;
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(result.rows.begin(), result.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.power_w < b.power_w; });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) { return a.power_w < b.power_w; });
  return result;
}

}  // namespace hgpdc
