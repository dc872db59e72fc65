// satadapt/satadapt/config.h

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

#ifndef SATADAPT_CONFIG_H_
#define SATADAPT_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "satadapt/eval.h"
#include "satadapt/synthdata.h"
#include "satadapt/training.h"

namespace satadapt {

/// Flat key=value run configuration.  Every key has a registered default;
/// unknown keys are rejected.
class RunConfig {
 public:
  RunConfig();

  /// Parses "key = value" lines; '#' starts a comment.
  static RunConfig FromText(const std::string &text);
  static RunConfig FromFile(const std::string &path);

  void Set(const std::string &key, const std::string &value);
  const std::string &Get(const std::string &key) const;

  std::uint64_t GetU64(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  std::vector<std::size_t> GetDims(const std::string &key) const;

  /// Every key, sorted, one "key=value" per line.
  std::string Resolved() const;

  static const std::vector<std::string> &Keys();

  GeneratorConfig Generator() const;
  PretrainConfig Pretrain() const;
  /// Adversarial settings for the given mode ("bat" or "sat").
  AdversarialConfig Adversarial(const std::string &mode) const;
  AssessmentTrainConfig Assessment() const;
  LevelDecoding MseDecoding() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Flat key=value generator file accepted by the corpus tools.
GeneratorConfig GeneratorConfigFromText(const std::string &text);

}  // namespace satadapt

#endif  // SATADAPT_CONFIG_H_
