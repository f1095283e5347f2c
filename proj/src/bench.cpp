#include "gfmm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gfmm/predict.hpp"

namespace gfmm {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string measure_name(const std::optional<SimilarityMeasure>& m) {
  return m ? std::string(to_string(*m)) : std::string("-");
}

std::vector<std::size_t> complement(const std::vector<std::vector<std::size_t>>& folds, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f != skip) out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double accuracy(const TrainedModel& model, Algorithm algo, const std::vector<Pattern>& test) {
  if (test.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& x : test) hits += bench_predict(model, algo, x) == x.label() ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

// Trains `repeats` times and keeps the model from the fastest run. All runs
// are deterministic, so the models are identical.
TrainedModel timed_train(const std::vector<Pattern>& data, const HyperparamConfig& cfg, Algorithm algo, int repeats) {
  TrainedModel best = train(data, cfg, algo);
  for (int r = 1; r < repeats; ++r) {
    TrainedModel again = train(data, cfg, algo);
    if (again.stats.train_seconds < best.stats.train_seconds) best = std::move(again);
  }
  return best;
}

}  // namespace

Label bench_predict(const TrainedModel& model, Algorithm algo, const Pattern& x) {
  if (algo == Algorithm::IOL) return predict_iol(model, x).label;
  auto tie = TieBreaker::first_class();
  return predict_online_original(model, x, tie).label;
}

BenchResult run_bench(const std::vector<Dataset>& datasets, const BenchConfig& config, const BenchProgress& progress) {
  if (config.timing_repeats < 1) throw std::invalid_argument("timing repeats must be at least 1");
  BenchResult result;

  for (const auto& ds : datasets) {
    const FoldPlan plan = make_fold_plan(ds, config.repeats, config.folds, config.seed);
    for (const auto& w : plan.warnings) result.warnings.push_back(ds.name + ": " + w);

    for (Algorithm algo : config.algorithms) {
      std::vector<std::optional<SimilarityMeasure>> measures;
      if (is_agglomerative(algo)) {
        measures.assign(config.measures.begin(), config.measures.end());
      } else {
        measures.push_back(std::nullopt);
      }

      for (const auto& measure : measures) {
        HyperparamConfig cfg = config.hyper;
        if (measure) cfg.measure = *measure;

        BenchAggregate agg{ds.name, algo, measure};
        double speedup_sum = 0.0;
        std::size_t speedup_n = 0;
        std::size_t cells = 0;

        for (int r = 0; r < plan.repeats; ++r) {
          const auto& folds = plan.assignments[static_cast<std::size_t>(r)];
          for (int f = 0; f < plan.folds; ++f) {
            const auto& train_idx = folds[static_cast<std::size_t>(f)];
            const auto test_idx = complement(folds, static_cast<std::size_t>(f));
            std::vector<Pattern> train_set, test_set;
            if (config.per_fold_normalization) {
              const Normalization norm = fit_normalization(
                  [&] {
                    std::vector<std::vector<double>> rows;
                    for (std::size_t i : train_idx) rows.push_back(ds.raw_features.at(i));
                    return rows;
                  }(),
                  ds.feature_count);
              train_set = select_rescaled(ds, train_idx, norm);
              test_set = select_rescaled(ds, test_idx, norm);
            } else {
              train_set = select(ds, train_idx);
              test_set = select(ds, test_idx);
            }

            HyperparamConfig on = cfg, off = cfg;
            on.accelerated = true;
            off.accelerated = false;
            const TrainedModel m_on = timed_train(train_set, on, algo, config.timing_repeats);
            const TrainedModel m_off = timed_train(train_set, off, algo, config.timing_repeats);

            const std::string cell = ds.name + " " + std::string(to_string(algo)) + " " + measure_name(measure) +
                                     " repeat " + std::to_string(r) + " fold " + std::to_string(f);
            if (auto diff = first_box_difference(m_on, m_off)) {
              throw EquivalenceBreach(cell + ": accelerated and plain models differ: " + *diff);
            }
            if (m_on.stats.candidates_considered > m_off.stats.candidates_considered) {
              throw EquivalenceBreach(cell + ": accelerated run considered more candidates (" +
                                      std::to_string(m_on.stats.candidates_considered) + " > " +
                                      std::to_string(m_off.stats.candidates_considered) + ")");
            }
            const double acc_on = accuracy(m_on, algo, test_set);
            const double acc_off = accuracy(m_off, algo, test_set);
            if (acc_on != acc_off) {
              throw EquivalenceBreach(cell + ": accuracy differs (" + fmt("%.17g", acc_on) + " vs " +
                                      fmt("%.17g", acc_off) + ")");
            }

            for (const auto* m : {&m_on, &m_off}) {
              result.records.push_back(RunRecord{ds.name, algo, measure, m->config.accelerated, r, f,
                                                 m->stats.train_seconds, m->stats.candidates_considered,
                                                 m->boxes.size(), acc_on});
            }

            agg.mean_seconds_on += m_on.stats.train_seconds;
            agg.mean_seconds_off += m_off.stats.train_seconds;
            agg.mean_candidates_on += static_cast<double>(m_on.stats.candidates_considered);
            agg.mean_candidates_off += static_cast<double>(m_off.stats.candidates_considered);
            agg.mean_accuracy += acc_on;
            if (m_on.stats.train_seconds > 0.0) {
              speedup_sum += m_off.stats.train_seconds / m_on.stats.train_seconds;
              ++speedup_n;
            }
            ++cells;
          }
        }

        const double n = static_cast<double>(cells);
        agg.mean_seconds_on /= n;
        agg.mean_seconds_off /= n;
        agg.mean_candidates_on /= n;
        agg.mean_candidates_off /= n;
        agg.mean_accuracy /= n;
        agg.speedup = speedup_n ? speedup_sum / static_cast<double>(speedup_n) : std::numeric_limits<double>::quiet_NaN();
        agg.candidate_ratio = agg.mean_candidates_off > 0.0 ? agg.mean_candidates_on / agg.mean_candidates_off
                                                            : std::numeric_limits<double>::quiet_NaN();
        result.aggregates.push_back(agg);
        if (progress) progress(agg);
      }
    }
  }
  return result;
}

void write_report_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "dataset,algo,measure,accelerated,repeat,fold,train_seconds,candidates,boxes,accuracy\n";
  for (const auto& r : records) {
    out << r.dataset << ',' << to_string(r.algorithm) << ',' << measure_name(r.measure) << ','
        << (r.accelerated ? "on" : "off") << ',' << r.repeat << ',' << r.fold << ',' << fmt("%.9f", r.train_seconds)
        << ',' << r.candidates << ',' << r.boxes << ',' << fmt("%.17g", r.accuracy) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<BenchAggregate>& aggregates) {
  out << "dataset,algo,measure,mean_seconds_on,mean_seconds_off,speedup,mean_candidates_on,mean_candidates_off,"
         "candidate_ratio,mean_accuracy\n";
  for (const auto& a : aggregates) {
    out << a.dataset << ',' << to_string(a.algorithm) << ',' << measure_name(a.measure) << ','
        << fmt("%.9f", a.mean_seconds_on) << ',' << fmt("%.9f", a.mean_seconds_off) << ',' << fmt("%.4f", a.speedup)
        << ',' << fmt("%.17g", a.mean_candidates_on) << ',' << fmt("%.17g", a.mean_candidates_off) << ','
        << fmt("%.17g", a.candidate_ratio) << ',' << fmt("%.17g", a.mean_accuracy) << '\n';
  }
}

}  // namespace gfmm
