// satadapt/tests/test-util.h

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

#ifndef SATADAPT_TESTS_TEST_UTIL_H_
#define SATADAPT_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "satadapt/matrix.h"
#include "satadapt/rng.h"

namespace satadapt::testing {

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols, Rng *rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (double &v : m.Data()) v = scale * rng->Gaussian();
  return m;
}

/// Random probability rows (softmax of Gaussian logits).
inline Matrix RandomProbRows(std::size_t rows, std::size_t cols, Rng *rng) {
  Matrix m = RandomMatrix(rows, cols, rng);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (double &v : m.Row(r)) {
      v = std::exp(v);
      s += v;
    }
    for (double &v : m.Row(r)) v /= s;
  }
  return m;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    Rng rng(std::hash<std::string>{}(tag) ^ static_cast<std::uint64_t>(
                                               std::filesystem::file_time_type::clock::now()
                                                   .time_since_epoch()
                                                   .count()));
    path_ = std::filesystem::temp_directory_path() /
            ("satadapt-" + tag + "-" + std::to_string(rng.NextU64() % 1000000007ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string path() const { return path_.string(); }
  std::string File(const std::string &name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace satadapt::testing

#endif  // SATADAPT_TESTS_TEST_UTIL_H_
