// satadapt/satadapt/param-io.h

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

#ifndef SATADAPT_PARAM_IO_H_
#define SATADAPT_PARAM_IO_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "satadapt/network.h"

namespace satadapt {

// Parameter container layout (all integers little-endian):
//   "SAPM" | u32 version
//   per entry: u32 name_len | name bytes | u64 rows | u64 cols |
//              rows*cols f64 values (row-major)
// Entries run to end of stream.  Gradients and momentum are not stored.
inline constexpr char kParamMagic[4] = {'S', 'A', 'P', 'M'};
inline constexpr std::uint32_t kParamVersion = 1;

void WriteParameters(const ParameterStore &store, std::ostream &os);
std::string SerializeParameters(const ParameterStore &store);

/// Reads every entry into `store`, which must already hold entries of the
/// same names and shapes (in the same order).
void ReadParameters(std::istream &is, ParameterStore *store);
void DeserializeParameters(const std::string &bytes, ParameterStore *store);

// Little-endian primitives shared with the corpus and bundle formats.
void WriteU32(std::ostream &os, std::uint32_t v);
void WriteU64(std::ostream &os, std::uint64_t v);
void WriteF64(std::ostream &os, double v);
std::uint32_t ReadU32(std::istream &is);
std::uint64_t ReadU64(std::istream &is);
double ReadF64(std::istream &is);
void ExpectMagic(std::istream &is, const char (&magic)[4], const char *what);

/// Model bundle: "SABN" | u32 version | u64 manifest_len | manifest text
/// (key=value lines) | parameter container.
inline constexpr char kBundleMagic[4] = {'S', 'A', 'B', 'N'};
inline constexpr std::uint32_t kBundleVersion = 1;

using Manifest = std::map<std::string, std::string>;

void WriteBundle(const std::string &path, const Manifest &manifest,
                 const ParameterStore &store);
/// Reads the manifest and returns the raw parameter container bytes.
Manifest ReadBundleManifest(const std::string &path, std::string *param_bytes);

/// Whole-file read; throws IoError.
std::string ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, const std::string &bytes);

}  // namespace satadapt

#endif  // SATADAPT_PARAM_IO_H_
