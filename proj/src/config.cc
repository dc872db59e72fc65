// satadapt/src/config.cc

// Copyright 2026  The satadapt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "satadapt/config.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "satadapt/error.h"
#include "satadapt/param-io.h"

namespace satadapt {

namespace {

const std::map<std::string, std::string> &Defaults() {
  static const std::map<std::string, std::string> kDefaults = {
      {"seed", "1"},
      // corpus
      {"num_senones", "10"},
      {"dim", "20"},
      {"n_adult", "5000"},
      {"n_child", "5000"},
      {"n_dev", "1000"},
      {"n_test", "1000"},
      {"within_class_std", "1"},
      {"shift_profile", "default"},
      {"assess_n", "2000"},
      // model shapes
      {"am_hidden", "64,64"},
      {"adapter_hidden", "32"},
      {"disc_hidden", "32"},
      // acoustic model pretraining
      {"pretrain_epochs", "20"},
      {"pretrain_lr", "0.005"},
      {"pretrain_momentum", "0.9"},
      {"pretrain_batch", "64"},
      // adversarial adaptation
      {"adv_epochs", "20"},
      {"reversal_coefficient", "1"},
      {"lambda_shape", "ramp"},
      {"update_scheme", "gradient_reversal"},
      {"lr_adapter", "0.01"},
      {"lr_discriminator", "0.05"},
      {"adv_momentum", "0.9"},
      {"adv_batch", "128"},
      {"alpha_source", "adapted"},
      // assessment network
      {"assess_epochs", "30"},
      {"assess_lr", "0.02"},
      {"assess_batch", "32"},
      {"mse_decoding", "argmax"},
  };
  return kDefaults;
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig::RunConfig() : values_(Defaults()) {}

const std::vector<std::string> &RunConfig::Keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto &[k, v] : Defaults()) keys.push_back(k);
    return keys;
  }();
  return kKeys;
}

RunConfig RunConfig::FromText(const std::string &text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    cfg.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig RunConfig::FromFile(const std::string &path) {
  std::string text;
  try {
    text = ReadFileBytes(path);
  } catch (const IoError &e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return FromText(text);
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  if (!values_.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  if (value.empty()) throw ConfigError("config key '" + key + "' has an empty value");
  values_[key] = value;
}

const std::string &RunConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

std::uint64_t RunConfig::GetU64(const std::string &key) const {
  const std::string &v = Get(key);
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("config key '" + key + "' expects a nonnegative integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "' is out of range");
  }
}

double RunConfig::GetDouble(const std::string &key) const {
  const std::string &v = Get(key);
  char *end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || !std::isfinite(d))
    throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
  return d;
}

std::vector<std::size_t> RunConfig::GetDims(const std::string &key) const {
  return ParseDims(Get(key));
}

std::string RunConfig::Resolved() const {
  std::string out;
  for (const auto &[k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

GeneratorConfig RunConfig::Generator() const {
  GeneratorConfig g;
  g.seed = GetU64("seed");
  g.num_senones = GetU64("num_senones");
  g.dim = GetU64("dim");
  g.n_adult = GetU64("n_adult");
  g.n_child = GetU64("n_child");
  g.n_dev = GetU64("n_dev");
  g.n_test = GetU64("n_test");
  g.within_class_std = GetDouble("within_class_std");
  const std::string &profile = Get("shift_profile");
  if (profile == "default") {
    g.shift_profile = DefaultShiftProfile(g.num_senones, g.within_class_std);
  } else {
    std::istringstream is(profile);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      char *end = nullptr;
      tok = Trim(tok);
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size())
        throw ConfigError("bad shift_profile entry '" + tok + "'");
      g.shift_profile.push_back(v);
    }
  }
  g.Validate();
  return g;
}

PretrainConfig RunConfig::Pretrain() const {
  PretrainConfig p;
  p.seed = GetU64("seed");
  p.epochs = GetU64("pretrain_epochs");
  p.learning_rate = GetDouble("pretrain_lr");
  p.momentum = GetDouble("pretrain_momentum");
  p.batch_size = GetU64("pretrain_batch");
  if (p.batch_size == 0) throw ConfigError("pretrain_batch must be positive");
  return p;
}

AdversarialConfig RunConfig::Adversarial(const std::string &mode) const {
  AdversarialConfig a;
  a.mode = DiscriminatorModeFromName(mode);
  a.seed = GetU64("seed");
  a.epochs = GetU64("adv_epochs");
  a.reversal_coefficient = GetDouble("reversal_coefficient");
  a.lambda_shape = LambdaShapeFromName(Get("lambda_shape"));
  a.update_scheme = UpdateSchemeFromName(Get("update_scheme"));
  a.lr_adapter = GetDouble("lr_adapter");
  a.lr_discriminator = GetDouble("lr_discriminator");
  a.momentum = GetDouble("adv_momentum");
  a.batch_size = GetU64("adv_batch");
  a.alpha_source = AlphaSourceFromName(Get("alpha_source"));
  a.Validate();
  return a;
}

AssessmentTrainConfig RunConfig::Assessment() const {
  AssessmentTrainConfig c;
  c.seed = GetU64("seed");
  c.epochs = GetU64("assess_epochs");
  c.learning_rate = GetDouble("assess_lr");
  c.batch_size = GetU64("assess_batch");
  if (c.batch_size == 0) throw ConfigError("assess_batch must be positive");
  return c;
}

LevelDecoding RunConfig::MseDecoding() const {
  const std::string &v = Get("mse_decoding");
  if (v == "argmax") return LevelDecoding::kArgmax;
  if (v == "expected") return LevelDecoding::kExpected;
  throw ConfigError("mse_decoding must be argmax or expected");
}

GeneratorConfig GeneratorConfigFromText(const std::string &text) {
  return RunConfig::FromText(text).Generator();
}

}  // namespace satadapt
