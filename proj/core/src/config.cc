// Copyright 2026 The risfeel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risfeel/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "presets.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value,
                      absl::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat(key, ": cannot parse '", value, "' as ", expected));
}

absl::Status ParseInt(absl::string_view key, absl::string_view value,
                      int& out) {
  if (!absl::SimpleAtoi(value, &out)) return BadValue(key, value, "integer");
  return absl::OkStatus();
}

absl::Status ParseDouble(absl::string_view key, absl::string_view value,
                         double& out) {
  if (!absl::SimpleAtod(value, &out) || !std::isfinite(out)) {
    return BadValue(key, value, "finite number");
  }
  return absl::OkStatus();
}

absl::Status ParseBool(absl::string_view key, absl::string_view value,
                       bool& out) {
  if (value == "true" || value == "1") {
    out = true;
  } else if (value == "false" || value == "0") {
    out = false;
  } else {
    return BadValue(key, value, "boolean");
  }
  return absl::OkStatus();
}

std::vector<std::string> SplitList(absl::string_view value) {
  std::vector<std::string> out;
  for (absl::string_view item :
       absl::StrSplit(value, absl::ByAnyChar(", \t"), absl::SkipEmpty())) {
    out.emplace_back(item);
  }
  return out;
}

absl::Status ParseDoubleList(absl::string_view key, absl::string_view value,
                             std::vector<double>& out) {
  out.clear();
  for (const std::string& item : SplitList(value)) {
    double v;
    RISFEEL_RETURN_IF_ERROR(ParseDouble(key, item, v));
    out.push_back(v);
  }
  return absl::OkStatus();
}

// Accepts "a", "bi", "a+bi", "a-bi" (and "i" / "-i").
absl::Status ParseComplex(absl::string_view key, absl::string_view text,
                          Complex& out) {
  absl::string_view s = text;
  if (s.empty()) return BadValue(key, text, "complex number");
  if (s.back() != 'i' && s.back() != 'j') {
    double re;
    RISFEEL_RETURN_IF_ERROR(ParseDouble(key, s, re));
    out = {re, 0.0};
    return absl::OkStatus();
  }
  s.remove_suffix(1);
  size_t split = absl::string_view::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0;
  absl::string_view im_text = s;
  if (split != absl::string_view::npos) {
    RISFEEL_RETURN_IF_ERROR(ParseDouble(key, s.substr(0, split), re));
    im_text = s.substr(split);
  }
  double im;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    RISFEEL_RETURN_IF_ERROR(ParseDouble(key, im_text, im));
  }
  out = {re, im};
  return absl::OkStatus();
}

absl::Status ParseComplexList(absl::string_view key, absl::string_view value,
                              std::vector<Complex>& out) {
  out.clear();
  for (const std::string& item : SplitList(value)) {
    Complex c;
    RISFEEL_RETURN_IF_ERROR(ParseComplex(key, item, c));
    out.push_back(c);
  }
  return absl::OkStatus();
}

absl::Status ParsePosition(absl::string_view key, absl::string_view value,
                           Position& out) {
  std::vector<double> xyz;
  RISFEEL_RETURN_IF_ERROR(ParseDoubleList(key, value, xyz));
  if (xyz.size() != 3) return BadValue(key, value, "'x y z' position");
  out = {xyz[0], xyz[1], xyz[2]};
  return absl::OkStatus();
}

template <typename Enum>
absl::Status ParseEnum(
    absl::string_view key, absl::string_view value,
    const std::vector<std::pair<absl::string_view, Enum>>& names, Enum& out) {
  for (const auto& [name, e] : names) {
    if (value == name) {
      out = e;
      return absl::OkStatus();
    }
  }
  std::vector<absl::string_view> options;
  for (const auto& entry : names) options.push_back(entry.first);
  return BadValue(key, value,
                  absl::StrCat("one of {", absl::StrJoin(options, "|"), "}"));
}

absl::Status ParseLinkKind(absl::string_view key, absl::string_view value,
                           LinkModel& link) {
  return ParseEnum<LinkModel::Kind>(key, value,
                                    {{"rayleigh", LinkModel::Kind::kRayleigh},
                                     {"rician", LinkModel::Kind::kRician},
                                     {"fixed", LinkModel::Kind::kFixed}},
                                    link.kind);
}

Geometry& EnsureGeometry(ExperimentConfig& c) {
  if (!c.fading.geometry.has_value()) c.fading.geometry.emplace();
  return *c.fading.geometry;
}

PathLoss& EnsurePathLoss(ExperimentConfig& c) {
  if (!c.fading.path_loss.has_value()) c.fading.path_loss.emplace();
  return *c.fading.path_loss;
}

using Setter = std::function<absl::Status(ExperimentConfig&, absl::string_view,
                                          absl::string_view)>;

Setter IntField(int ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, absl::string_view k,
                 absl::string_view v) { return ParseInt(k, v, c.*field); };
}

Setter DoubleField(double ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, absl::string_view k,
                 absl::string_view v) { return ParseDouble(k, v, c.*field); };
}

template <typename Getter>
Setter IntAt(Getter get) {
  return [get](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
    return ParseInt(k, v, get(c));
  };
}

template <typename Getter>
Setter DoubleAt(Getter get) {
  return [get](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
    return ParseDouble(k, v, get(c));
  };
}

template <typename Getter>
Setter StringAt(Getter get) {
  return [get](ExperimentConfig& c, absl::string_view, absl::string_view v) {
    get(c) = std::string(v);
    return absl::OkStatus();
  };
}

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      // [experiment]
      {"experiment.scenario", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.scenario;
       })},
      {"experiment.seeds",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         c.seeds.clear();
         for (const std::string& item : SplitList(v)) {
           uint64_t seed;
           if (!absl::SimpleAtoi(item, &seed)) {
             return BadValue(k, item, "unsigned seed");
           }
           c.seeds.push_back(seed);
         }
         return absl::OkStatus();
       }},
      {"experiment.rounds",
       IntAt([](ExperimentConfig& c) -> int& { return c.train.rounds; })},
      {"experiment.output_dir",
       StringAt(
           [](ExperimentConfig& c) -> std::string& { return c.output_dir; })},
      {"experiment.record_timing",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseBool(k, v, c.record_timing);
       }},
      // [channel]
      {"channel.devices", IntField(&ExperimentConfig::num_devices)},
      {"channel.antennas", IntField(&ExperimentConfig::num_antennas)},
      {"channel.ris_elements", IntField(&ExperimentConfig::num_elements)},
      {"channel.block_rounds", IntField(&ExperimentConfig::block_rounds)},
      {"channel.direct_model",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseLinkKind(k, v, c.fading.direct);
       }},
      {"channel.direct_variance", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.fading.direct.variance;
       })},
      {"channel.direct_k_factor", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.fading.direct.k_factor;
       })},
      {"channel.direct_fixed",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseComplexList(k, v, c.fading.direct.fixed_values);
       }},
      {"channel.ris_model",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseLinkKind(k, v, c.fading.ris_link);
       }},
      {"channel.ris_variance", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.fading.ris_link.variance;
       })},
      {"channel.ris_k_factor", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.fading.ris_link.k_factor;
       })},
      {"channel.ris_fixed",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseComplexList(k, v, c.fading.ris_link.fixed_values);
       }},
      {"channel.path_loss",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         if (v == "none") {
           c.fading.path_loss.reset();
           return absl::OkStatus();
         }
         if (v == "log_distance") {
           EnsurePathLoss(c);
           return absl::OkStatus();
         }
         return BadValue(k, v, "one of {none|log_distance}");
       }},
      {"channel.path_loss_exponent",
       DoubleAt([](ExperimentConfig& c) -> double& {
         return EnsurePathLoss(c).exponent;
       })},
      {"channel.reference_distance",
       DoubleAt([](ExperimentConfig& c) -> double& {
         return EnsurePathLoss(c).reference_distance;
       })},
      {"channel.reference_gain", DoubleAt([](ExperimentConfig& c) -> double& {
         return EnsurePathLoss(c).reference_gain;
       })},
      {"channel.device_positions",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         Geometry& g = EnsureGeometry(c);
         g.devices.clear();
         for (absl::string_view item :
              absl::StrSplit(v, ';', absl::SkipWhitespace())) {
           Position p;
           RISFEEL_RETURN_IF_ERROR(ParsePosition(k, item, p));
           g.devices.push_back(p);
         }
         return absl::OkStatus();
       }},
      {"channel.ris_position",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParsePosition(k, v, EnsureGeometry(c).ris);
       }},
      {"channel.server_position",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParsePosition(k, v, EnsureGeometry(c).server);
       }},
      // [selection]
      {"selection.strategy",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<SelectionStrategy>(
             k, v,
             {{"all", SelectionStrategy::kAll},
              {"descending_gain", SelectionStrategy::kDescendingGain},
              {"greedy_codesign", SelectionStrategy::kGreedyCodesign}},
             c.strategy);
       }},
      {"selection.count", IntField(&ExperimentConfig::select_count)},
      {"selection.lambda", DoubleField(&ExperimentConfig::lambda)},
      // [ris]
      {"ris.optimizer",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<RisOptimizerKind>(
             k, v,
             {{"none", RisOptimizerKind::kNone},
              {"random", RisOptimizerKind::kRandom},
              {"mse", RisOptimizerKind::kMse},
              {"csit_free", RisOptimizerKind::kCsitFree}},
             c.optimizer);
       }},
      {"ris.levels", IntAt([](ExperimentConfig& c) -> int& {
         return c.optimizer_options.codebook.levels;
       })},
      {"ris.max_sweeps", IntAt([](ExperimentConfig& c) -> int& {
         return c.optimizer_options.max_sweeps;
       })},
      {"ris.restarts", IntAt([](ExperimentConfig& c) -> int& {
         return c.optimizer_options.restarts;
       })},
      // [aggregation]
      {"aggregation.mode",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<AggregationMode>(
             k, v,
             {{"aircomp", AggregationMode::kAirComp},
              {"error_free", AggregationMode::kErrorFree}},
             c.mode);
       }},
      {"aggregation.noise_std", DoubleField(&ExperimentConfig::noise_std)},
      {"aggregation.power_budget",
       DoubleField(&ExperimentConfig::power_budget)},
      {"aggregation.device_power_budgets",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseDoubleList(k, v, c.device_power_budgets);
       }},
      {"aggregation.csi_error_std",
       DoubleField(&ExperimentConfig::csi_error_std)},
      {"aggregation.weights",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<WeightScheme>(k, v,
                                        {{"data_size", WeightScheme::kDataSize},
                                         {"uniform", WeightScheme::kUniform}},
                                        c.weights);
       }},
      // [data]
      {"data.source",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<DataSource>(
             k, v,
             {{"synthetic", DataSource::kSynthetic}, {"idx", DataSource::kIdx}},
             c.data.source);
       }},
      {"data.classes",
       IntAt([](ExperimentConfig& c) -> int& { return c.data.classes; })},
      {"data.features",
       IntAt([](ExperimentConfig& c) -> int& { return c.data.features; })},
      {"data.separation", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.data.separation;
       })},
      {"data.noise_std", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.data.noise_std;
       })},
      {"data.train_size",
       IntAt([](ExperimentConfig& c) -> int& { return c.data.train_size; })},
      {"data.test_size",
       IntAt([](ExperimentConfig& c) -> int& { return c.data.test_size; })},
      {"data.train_images", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.data.train_images;
       })},
      {"data.train_labels", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.data.train_labels;
       })},
      {"data.test_images", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.data.test_images;
       })},
      {"data.test_labels", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.data.test_labels;
       })},
      {"data.partition",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<PartitionSpec::Mode>(
             k, v,
             {{"iid", PartitionSpec::Mode::kIid},
              {"shard", PartitionSpec::Mode::kShard},
              {"dirichlet", PartitionSpec::Mode::kDirichlet}},
             c.data.partition.mode);
       }},
      {"data.shards_per_device", IntAt([](ExperimentConfig& c) -> int& {
         return c.data.partition.shards_per_device;
       })},
      {"data.dirichlet_alpha", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.data.partition.dirichlet_alpha;
       })},
      {"data.samples_per_device", IntAt([](ExperimentConfig& c) -> int& {
         return c.data.partition.samples_per_device;
       })},
      // [model]
      {"model.kind",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<ModelKind>(
             k, v, {{"softmax", ModelKind::kSoftmax}, {"mlp", ModelKind::kMlp}},
             c.model);
       }},
      {"model.hidden", IntField(&ExperimentConfig::hidden)},
      // [train]
      {"train.local_epochs",
       IntAt([](ExperimentConfig& c) -> int& { return c.train.local_epochs; })},
      {"train.batch_size",
       IntAt([](ExperimentConfig& c) -> int& { return c.train.batch_size; })},
      {"train.learning_rate", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.train.learning_rate;
       })},
      // [privacy]
      {"privacy.enabled",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseBool(k, v, c.privacy_enabled);
       }},
      {"privacy.artificial_noise_std",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseDoubleList(k, v, c.privacy.artificial_noise_std);
       }},
      {"privacy.clip_norm", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.privacy.clip_norm;
       })},
      {"privacy.delta", DoubleAt([](ExperimentConfig& c) -> double& {
         return c.privacy.delta;
       })},
      // [sweep]
      {"sweep.key", StringAt([](ExperimentConfig& c) -> std::string& {
         return c.sweep.key;
       })},
      {"sweep.values",
       [](ExperimentConfig& c, absl::string_view, absl::string_view v) {
         c.sweep.values = SplitList(v);
         return absl::OkStatus();
       }},
      {"sweep.reference",
       [](ExperimentConfig& c, absl::string_view k, absl::string_view v) {
         return ParseEnum<SweepReference>(
             k, v,
             {{"none", SweepReference::kNone},
              {"error_free", SweepReference::kErrorFree}},
             c.sweep.reference);
       }},
  };
  return *setters;
}

absl::Status CheckPositive(absl::string_view name, double value) {
  if (!(value > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive, got ", value));
  }
  return absl::OkStatus();
}

absl::Status CheckAtLeast(absl::string_view name, int value, int minimum) {
  if (value < minimum) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be >= ", minimum, ", got ", value));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ConfigEntries> ParseConfigText(absl::string_view text) {
  ConfigEntries entries;
  std::string section;
  int line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    absl::string_view line = raw;
    const size_t comment = line.find_first_of("#;");
    if (comment != absl::string_view::npos) line = line.substr(0, comment);
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_number, ": malformed section '", line, "'"));
      }
      section = std::string(
          absl::StripAsciiWhitespace(line.substr(1, line.size() - 2)));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected 'key = value', got '", line, "'"));
    }
    if (section.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": key outside any [section]"));
    }
    absl::string_view key = absl::StripAsciiWhitespace(line.substr(0, eq));
    absl::string_view value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": empty key"));
    }
    std::string full = absl::StrCat(section, ".", key);
    for (const auto& entry : entries) {
      if (entry.first == full) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": duplicate key '", full, "'"));
      }
    }
    entries.emplace_back(std::move(full), std::string(value));
  }
  return entries;
}

absl::StatusOr<ConfigEntries> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open config file ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = ParseConfigText(buffer.str());
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

ConfigEntries MergeEntries(const ConfigEntries& base,
                           const ConfigEntries& overlay) {
  ConfigEntries out = base;
  for (const auto& [key, value] : overlay) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& e) { return e.first == key; });
    if (it != out.end()) {
      it->second = value;
    } else {
      out.emplace_back(key, value);
    }
  }
  return out;
}

bool IsKnownKey(absl::string_view key) {
  return Setters().find(key) != Setters().end();
}

std::vector<std::string> KnownKeys() {
  std::vector<std::string> keys;
  for (const auto& entry : Setters()) keys.push_back(entry.first);
  return keys;
}

absl::Status ApplySetting(ExperimentConfig& config, absl::string_view key,
                          absl::string_view value) {
  auto it = Setters().find(key);
  if (it == Setters().end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown config key '", key, "'"));
  }
  return it->second(config, key, value);
}

absl::StatusOr<ExperimentConfig> BuildConfig(const ConfigEntries& entries) {
  ExperimentConfig config;
  for (const auto& [key, value] : entries) {
    RISFEEL_RETURN_IF_ERROR(ApplySetting(config, key, value));
  }
  RISFEEL_RETURN_IF_ERROR(ValidateConfig(config));
  return config;
}

absl::Status ValidateConfig(const ExperimentConfig& c) {
  if (c.seeds.empty()) {
    return absl::InvalidArgumentError("experiment.seeds is empty");
  }
  RISFEEL_RETURN_IF_ERROR(CheckAtLeast("channel.devices", c.num_devices, 1));
  RISFEEL_RETURN_IF_ERROR(CheckAtLeast("channel.antennas", c.num_antennas, 1));
  RISFEEL_RETURN_IF_ERROR(
      CheckAtLeast("channel.ris_elements", c.num_elements, 0));
  RISFEEL_RETURN_IF_ERROR(
      CheckAtLeast("channel.block_rounds", c.block_rounds, 0));
  RISFEEL_RETURN_IF_ERROR(ValidateFadingSpec(c.fading, c.num_devices));

  if (c.strategy == SelectionStrategy::kDescendingGain &&
      (c.select_count < 1 || c.select_count > c.num_devices)) {
    return absl::InvalidArgumentError(
        absl::StrCat("selection.count must lie in [1, ", c.num_devices,
                     "], got ", c.select_count));
  }
  if (!(c.lambda >= 0.0)) {
    return absl::InvalidArgumentError("selection.lambda must be >= 0");
  }
  if (c.optimizer == RisOptimizerKind::kMse ||
      c.optimizer == RisOptimizerKind::kRandom ||
      c.strategy == SelectionStrategy::kGreedyCodesign) {
    RISFEEL_RETURN_IF_ERROR(ValidateCodebook(c.optimizer_options.codebook));
  }
  if (c.optimizer == RisOptimizerKind::kMse &&
      c.optimizer_options.codebook.continuous()) {
    return absl::InvalidArgumentError(
        "ris.levels = 0 (continuous) is only supported by csit_free");
  }
  if (c.optimizer == RisOptimizerKind::kCsitFree && c.num_antennas != 1) {
    return absl::InvalidArgumentError(
        "ris.optimizer = csit_free requires channel.antennas = 1");
  }
  if (c.strategy == SelectionStrategy::kGreedyCodesign && c.num_elements > 0 &&
      c.optimizer != RisOptimizerKind::kMse) {
    return absl::InvalidArgumentError(
        "selection.strategy = greedy_codesign requires ris.optimizer = mse");
  }
  RISFEEL_RETURN_IF_ERROR(
      CheckAtLeast("ris.max_sweeps", c.optimizer_options.max_sweeps, 1));
  RISFEEL_RETURN_IF_ERROR(
      CheckAtLeast("ris.restarts", c.optimizer_options.restarts, 1));

  if (!(c.noise_std >= 0.0)) {
    return absl::InvalidArgumentError("aggregation.noise_std must be >= 0");
  }
  RISFEEL_RETURN_IF_ERROR(
      CheckPositive("aggregation.power_budget", c.power_budget));
  if (!c.device_power_budgets.empty()) {
    if (static_cast<int>(c.device_power_budgets.size()) != c.num_devices) {
      return absl::InvalidArgumentError(
          absl::StrCat("aggregation.device_power_budgets has ",
                       c.device_power_budgets.size(), " entries for ",
                       c.num_devices, " devices"));
    }
    for (double p : c.device_power_budgets) {
      RISFEEL_RETURN_IF_ERROR(
          CheckPositive("aggregation.device_power_budgets", p));
    }
  }
  if (!(c.csi_error_std >= 0.0)) {
    return absl::InvalidArgumentError("aggregation.csi_error_std must be >= 0");
  }

  if (c.data.source == DataSource::kSynthetic) {
    RISFEEL_RETURN_IF_ERROR(CheckAtLeast("data.classes", c.data.classes, 2));
    RISFEEL_RETURN_IF_ERROR(CheckAtLeast("data.features", c.data.features, 1));
    RISFEEL_RETURN_IF_ERROR(
        CheckPositive("data.separation", c.data.separation));
    RISFEEL_RETURN_IF_ERROR(CheckPositive("data.noise_std", c.data.noise_std));
    RISFEEL_RETURN_IF_ERROR(
        CheckAtLeast("data.test_size", c.data.test_size, 1));
    const int needed = c.num_devices * c.data.partition.samples_per_device;
    if (c.data.train_size < needed) {
      return absl::InvalidArgumentError(
          absl::StrCat("data.train_size = ", c.data.train_size,
                       " is below devices x "
                       "samples_per_device = ",
                       needed));
    }
  } else if (c.data.train_images.empty() || c.data.train_labels.empty() ||
             c.data.test_images.empty() || c.data.test_labels.empty()) {
    return absl::InvalidArgumentError(
        "data.source = idx requires train_images, train_labels, test_images "
        "and test_labels");
  }
  RISFEEL_RETURN_IF_ERROR(CheckAtLeast("data.samples_per_device",
                                       c.data.partition.samples_per_device, 1));
  if (c.data.partition.mode == PartitionSpec::Mode::kShard) {
    RISFEEL_RETURN_IF_ERROR(CheckAtLeast(
        "data.shards_per_device", c.data.partition.shards_per_device, 1));
    if (c.data.partition.samples_per_device %
            c.data.partition.shards_per_device !=
        0) {
      return absl::InvalidArgumentError(
          "data.samples_per_device must be a multiple of "
          "data.shards_per_device");
    }
  }
  if (c.data.partition.mode == PartitionSpec::Mode::kDirichlet) {
    RISFEEL_RETURN_IF_ERROR(CheckPositive("data.dirichlet_alpha",
                                          c.data.partition.dirichlet_alpha));
  }
  if (c.model == ModelKind::kMlp) {
    RISFEEL_RETURN_IF_ERROR(CheckAtLeast("model.hidden", c.hidden, 1));
  }
  RISFEEL_RETURN_IF_ERROR(ValidateTrainSpec(c.train));

  if (c.privacy_enabled) {
    RISFEEL_RETURN_IF_ERROR(ValidatePrivacySpec(c.privacy));
    const size_t n = c.privacy.artificial_noise_std.size();
    if (n > 1 && static_cast<int>(n) != c.num_devices) {
      return absl::InvalidArgumentError(
          absl::StrCat("privacy.artificial_noise_std has ", n, " entries for ",
                       c.num_devices, " devices"));
    }
  }

  if (!c.sweep.key.empty()) {
    if (!IsKnownKey(c.sweep.key) || absl::StartsWith(c.sweep.key, "sweep.")) {
      return absl::InvalidArgumentError(
          absl::StrCat("sweep.key '", c.sweep.key, "' is not a config key"));
    }
    if (c.sweep.values.empty()) {
      return absl::InvalidArgumentError("sweep.values is empty");
    }
    for (const std::string& value : c.sweep.values) {
      ExperimentConfig probe = c;
      probe.sweep = {};
      absl::Status status = ApplySetting(probe, c.sweep.key, value);
      if (status.ok()) status = ValidateConfig(probe);
      if (!status.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "sweep value ", c.sweep.key, " = ", value, ": ", status.message()));
      }
    }
  }
  return absl::OkStatus();
}

std::string FormatEntries(const ConfigEntries& entries) {
  std::vector<std::string> sections;
  for (const auto& [key, value] : entries) {
    std::string section = key.substr(0, key.find('.'));
    if (std::find(sections.begin(), sections.end(), section) ==
        sections.end()) {
      sections.push_back(section);
    }
  }
  std::string out;
  for (const std::string& section : sections) {
    if (!out.empty()) out += "\n";
    absl::StrAppend(&out, "[", section, "]\n");
    for (const auto& [key, value] : entries) {
      const size_t dot = key.find('.');
      if (key.substr(0, dot) == section) {
        absl::StrAppend(&out, key.substr(dot + 1), " = ", value, "\n");
      }
    }
  }
  return out;
}

absl::StatusOr<std::string> PresetText(absl::string_view scenario) {
  const std::string id = absl::AsciiStrToUpper(scenario);
  if (id == "A") return std::string(kPresetA);
  if (id == "B") return std::string(kPresetB);
  if (id == "C") return std::string(kPresetC);
  if (id == "D") return std::string(kPresetD);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown scenario '", scenario, "'; expected A, B, C or D"));
}

}  // namespace risfeel
