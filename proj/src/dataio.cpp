#include "gfmm/dataio.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gfmm {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

struct RawRow {
  std::size_t line;
  std::vector<double> features;
  std::string label;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint64_t out = 0;
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out;
}

}  // namespace

double Normalization::apply(std::size_t feature, double x) const {
  const double lo = min.at(feature);
  const double hi = max.at(feature);
  if (!(hi > lo)) return 0.0;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

Normalization fit_normalization(const std::vector<std::vector<double>>& rows, std::size_t feature_count) {
  Normalization n;
  n.min.assign(feature_count, 0.0);
  n.max.assign(feature_count, 0.0);
  bool first = true;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < feature_count; ++j) {
      n.min[j] = first ? row[j] : std::min(n.min[j], row[j]);
      n.max[j] = first ? row[j] : std::max(n.max[j], row[j]);
    }
    first = false;
  }
  return n;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  Dataset ds;
  ds.name = path.stem().string();

  std::vector<RawRow> rows;
  std::optional<std::size_t> columns;
  std::string line;
  std::size_t line_no = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);

    if (columns && cells.size() != *columns) {
      throw ParseError(where(path, line_no) + ": expected " + std::to_string(*columns) + " columns, found " +
                       std::to_string(cells.size()));
    }
    if (cells.size() < 2) throw ParseError(where(path, line_no) + ": need at least one feature and a label column");
    const std::size_t label_col = options.label_column.value_or(cells.size() - 1);
    if (label_col >= cells.size()) {
      throw ParseError(where(path, line_no) + ": label column " + std::to_string(label_col) + " out of range");
    }

    if (!header_checked) {
      header_checked = true;
      bool is_header = options.header == HeaderMode::Present;
      if (options.header == HeaderMode::Auto) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c != label_col && !parse_number(cells[c])) is_header = true;
        }
      }
      if (is_header) {
        columns = cells.size();
        continue;
      }
    }
    columns = cells.size();

    RawRow row{line_no, {}, cells[label_col]};
    if (row.label.empty()) throw ParseError(where(path, line_no) + ": empty label");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_col) continue;
      const auto v = parse_number(cells[c]);
      if (!v) throw ParseError(where(path, line_no) + ": column " + std::to_string(c) + " is not a number: '" + cells[c] + "'");
      if (!std::isfinite(*v)) throw ParseError(where(path, line_no) + ": column " + std::to_string(c) + " is not finite");
      row.features.push_back(*v);
    }
    rows.push_back(std::move(row));
  }

  ds.feature_count = columns ? *columns - 1 : 0;

  // Label ids: known labels keep their ids, new ones follow in order of
  // first appearance.
  ds.label_names = options.known_labels;
  std::map<std::string, Label> ids;
  for (Label i = 0; i < ds.label_names.size(); ++i) ids.emplace(ds.label_names[i], i);
  for (const auto& r : rows) {
    if (ids.emplace(r.label, static_cast<Label>(ds.label_names.size())).second) ds.label_names.push_back(r.label);
  }
  ds.class_count = ds.label_names.size();

  std::set<std::string> present;
  for (const auto& r : rows) present.insert(r.label);
  if (present.size() == 1) ds.warnings.push_back(path.string() + ": file contains a single class");

  ds.raw_features.reserve(rows.size());
  for (const auto& r : rows) ds.raw_features.push_back(r.features);

  if (options.fixed_normalization) {
    if (options.fixed_normalization->min.size() != ds.feature_count && !rows.empty()) {
      throw std::domain_error(path.string() + ": normalization has " +
                              std::to_string(options.fixed_normalization->min.size()) + " features, file has " +
                              std::to_string(ds.feature_count));
    }
    ds.normalization = options.fixed_normalization;
  } else if (options.normalize) {
    ds.normalization = fit_normalization(ds.raw_features, ds.feature_count);
  }

  ds.patterns.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> x = r.features;
    if (ds.normalization) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = ds.normalization->apply(j, x[j]);
    } else {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0.0 || x[j] > 1.0) {
          throw std::domain_error(where(path, r.line) + ": feature " + std::to_string(j) +
                                  " outside [0,1] and normalization is off");
        }
      }
    }
    ds.patterns.push_back(make_point_pattern(std::move(x), ids.at(r.label)));
  }
  return ds;
}

std::vector<Pattern> select(const Dataset& ds, const std::vector<std::size_t>& indices) {
  std::vector<Pattern> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(ds.patterns.at(i));
  return out;
}

std::vector<Pattern> select_rescaled(const Dataset& ds, const std::vector<std::size_t>& indices,
                                     const Normalization& norm) {
  std::vector<Pattern> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    std::vector<double> x = ds.raw_features.at(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = norm.apply(j, x[j]);
    out.push_back(make_point_pattern(std::move(x), ds.patterns.at(i).label()));
  }
  return out;
}

FoldPlan make_fold_plan(const Dataset& ds, int repeats, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  const std::size_t n = ds.patterns.size();
  if (static_cast<std::size_t>(folds) > n) {
    throw std::domain_error("cannot split " + std::to_string(n) + " patterns into " + std::to_string(folds) +
                            " folds");
  }

  FoldPlan plan;
  plan.repeats = repeats;
  plan.folds = folds;
  plan.seed = seed;

  std::vector<std::vector<std::size_t>> by_class(ds.class_count);
  for (std::size_t i = 0; i < n; ++i) by_class.at(ds.patterns[i].label()).push_back(i);
  for (Label c = 0; c < by_class.size(); ++c) {
    if (!by_class[c].empty() && by_class[c].size() < static_cast<std::size_t>(folds)) {
      plan.stratified = false;
      const std::string name = c < ds.label_names.size() ? ds.label_names[c] : std::to_string(c);
      plan.warnings.push_back("class '" + name + "' has " + std::to_string(by_class[c].size()) +
                              " members, fewer than " + std::to_string(folds) + " folds; splitting unstratified");
    }
  }
  if (!plan.stratified) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    by_class = {all};
  }

  for (int r = 0; r < repeats; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<std::vector<std::size_t>> assignment(static_cast<std::size_t>(folds));
    std::size_t dealt = 0;
    for (auto members : by_class) {
      std::shuffle(members.begin(), members.end(), rng);
      for (std::size_t i : members) assignment[dealt++ % static_cast<std::size_t>(folds)].push_back(i);
    }
    for (auto& fold : assignment) std::sort(fold.begin(), fold.end());
    plan.assignments.push_back(std::move(assignment));
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Model files

namespace {

const json& require(const json& j, const char* field, const std::string& context) {
  if (!j.is_object()) throw ModelFormatError(context + ": expected an object");
  const auto it = j.find(field);
  if (it == j.end()) throw ModelFormatError(context + ": missing field '" + field + "'");
  return *it;
}

template <typename T>
T get_as(const json& j, const char* field, const std::string& context) {
  const json& v = require(j, field, context);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ModelFormatError(context + ": field '" + field + "' has the wrong type");
  }
}

json normalization_to_json(const Normalization& n) { return json{{"min", n.min}, {"max", n.max}}; }

}  // namespace

std::string model_to_json(const TrainedModel& model, const ModelMetadata& meta) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["config"] = json{{"theta", model.config.theta},
                     {"gamma", model.config.gamma},
                     {"sigma", model.config.sigma},
                     {"measure", std::string(to_string(model.config.measure))},
                     {"accelerated", model.config.accelerated},
                     {"epochs", model.config.epochs}};
  json boxes = json::array();
  for (const auto& h : model.boxes) {
    boxes.push_back(json{{"v", std::vector<double>(h.vmin().begin(), h.vmin().end())},
                         {"w", std::vector<double>(h.wmax().begin(), h.wmax().end())},
                         {"label", h.label()},
                         {"cardinality", h.cardinality()}});
  }
  j["boxes"] = std::move(boxes);
  j["stats"] = json{{"candidates_considered", model.stats.candidates_considered},
                    {"train_seconds", model.stats.train_seconds},
                    {"boxes_created", model.stats.boxes_created},
                    {"merges_performed", model.stats.merges_performed}};
  if (meta.algorithm) j["algorithm"] = std::string(to_string(*meta.algorithm));
  if (!meta.label_names.empty()) j["labels"] = meta.label_names;
  if (meta.normalization) j["normalization"] = normalization_to_json(*meta.normalization);
  return j.dump(1);
}

TrainedModel model_from_json(const std::string& text, ModelMetadata* meta) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  const int version = get_as<int>(j, "format_version", "model");
  if (version != kModelFormatVersion) {
    throw ModelFormatError("unsupported model format_version " + std::to_string(version) + " (expected " +
                           std::to_string(kModelFormatVersion) + ")");
  }

  TrainedModel m;
  const json& cfg = require(j, "config", "model");
  m.config.theta = get_as<double>(cfg, "theta", "config");
  m.config.gamma = get_as<std::vector<double>>(cfg, "gamma", "config");
  m.config.sigma = get_as<double>(cfg, "sigma", "config");
  try {
    m.config.measure = parse_measure(get_as<std::string>(cfg, "measure", "config"));
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("config: ") + e.what());
  }
  m.config.accelerated = get_as<bool>(cfg, "accelerated", "config");
  m.config.epochs = get_as<int>(cfg, "epochs", "config");

  const json& boxes = require(j, "boxes", "model");
  if (!boxes.is_array()) throw ModelFormatError("model: field 'boxes' must be an array");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string ctx = "box " + std::to_string(i);
    auto v = get_as<std::vector<double>>(boxes[i], "v", ctx);
    auto w = get_as<std::vector<double>>(boxes[i], "w", ctx);
    const auto label = get_as<Label>(boxes[i], "label", ctx);
    const auto card = get_as<std::uint64_t>(boxes[i], "cardinality", ctx);
    try {
      m.boxes.emplace_back(std::move(v), std::move(w), label, card);
    } catch (const std::exception& e) {
      throw ModelFormatError(ctx + ": " + e.what());
    }
    if (m.boxes.back().dims() != m.boxes.front().dims()) {
      throw ModelFormatError(ctx + ": dimension differs from box 0");
    }
  }
  try {
    m.config.validate(m.dims());
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("config: ") + e.what());
  }

  const json& stats = require(j, "stats", "model");
  m.stats.candidates_considered = get_as<std::uint64_t>(stats, "candidates_considered", "stats");
  m.stats.train_seconds = get_as<double>(stats, "train_seconds", "stats");
  m.stats.boxes_created = get_as<std::uint64_t>(stats, "boxes_created", "stats");
  m.stats.merges_performed = get_as<std::uint64_t>(stats, "merges_performed", "stats");

  if (meta) {
    *meta = {};
    if (j.contains("algorithm")) {
      try {
        meta->algorithm = parse_algorithm(get_as<std::string>(j, "algorithm", "model"));
      } catch (const std::invalid_argument& e) {
        throw ModelFormatError(std::string("model: ") + e.what());
      }
    }
    if (j.contains("labels")) meta->label_names = get_as<std::vector<std::string>>(j, "labels", "model");
    if (j.contains("normalization")) {
      const json& n = j["normalization"];
      Normalization norm;
      norm.min = get_as<std::vector<double>>(n, "min", "normalization");
      norm.max = get_as<std::vector<double>>(n, "max", "normalization");
      if (norm.min.size() != norm.max.size()) throw ModelFormatError("normalization: min and max differ in length");
      meta->normalization = std::move(norm);
    }
  }
  return m;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path, const ModelMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << model_to_json(model, meta) << '\n';
  if (!out) throw std::runtime_error("error writing " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path, ModelMetadata* meta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return model_from_json(buf.str(), meta);
  } catch (const ModelFormatError& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace gfmm
