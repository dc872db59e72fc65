// satadapt/src/param-io.cc

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

#include "satadapt/param-io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "satadapt/error.h"

namespace satadapt {

namespace {

template <typename T>
void WriteLe(std::ostream &os, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T ReadLe(std::istream &is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char *>(buf), sizeof(T));
  if (is.gcount() != static_cast<std::streamsize>(sizeof(T)))
    throw FormatError("unexpected end of file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteU32(std::ostream &os, std::uint32_t v) { WriteLe(os, v); }
void WriteU64(std::ostream &os, std::uint64_t v) { WriteLe(os, v); }
void WriteF64(std::ostream &os, double v) { WriteLe(os, std::bit_cast<std::uint64_t>(v)); }
std::uint32_t ReadU32(std::istream &is) { return ReadLe<std::uint32_t>(is); }
std::uint64_t ReadU64(std::istream &is) { return ReadLe<std::uint64_t>(is); }
double ReadF64(std::istream &is) { return std::bit_cast<double>(ReadLe<std::uint64_t>(is)); }

void ExpectMagic(std::istream &is, const char (&magic)[4], const char *what) {
  char buf[4];
  is.read(buf, 4);
  if (is.gcount() != 4 || std::memcmp(buf, magic, 4) != 0)
    throw FormatError(std::string(what) + ": bad magic bytes");
}

void WriteParameters(const ParameterStore &store, std::ostream &os) {
  os.write(kParamMagic, 4);
  WriteU32(os, kParamVersion);
  for (const auto &e : store.entries()) {
    WriteU32(os, static_cast<std::uint32_t>(e.name.size()));
    os.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    WriteU64(os, e.value.NumRows());
    WriteU64(os, e.value.NumCols());
    for (double v : e.value.Data()) WriteF64(os, v);
  }
  if (!os) throw IoError("failed writing parameter container");
}

std::string SerializeParameters(const ParameterStore &store) {
  std::ostringstream os(std::ios::binary);
  WriteParameters(store, os);
  return os.str();
}

void ReadParameters(std::istream &is, ParameterStore *store) {
  ExpectMagic(is, kParamMagic, "parameter container");
  const std::uint32_t version = ReadU32(is);
  if (version != kParamVersion)
    throw FormatError("parameter container: unsupported version " +
                      std::to_string(version));
  std::size_t index = 0;
  while (is.peek() != std::char_traits<char>::eof()) {
    const std::uint32_t name_len = ReadU32(is);
    if (name_len > 4096) throw FormatError("parameter container: absurd name length");
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    if (is.gcount() != static_cast<std::streamsize>(name_len))
      throw FormatError("unexpected end of file");
    const std::uint64_t rows = ReadU64(is), cols = ReadU64(is);
    if (index >= store->entries().size())
      throw FormatError("parameter container: unexpected entry " + name);
    auto &entry = store->entries()[index];
    if (entry.name != name || entry.value.NumRows() != rows ||
        entry.value.NumCols() != cols)
      throw ShapeError("parameter container: entry " + name +
                       " does not match the model (expected " + entry.name + ")");
    for (double &v : entry.value.Data()) v = ReadF64(is);
    ++index;
  }
  if (index != store->entries().size())
    throw FormatError("parameter container: missing entries");
}

void DeserializeParameters(const std::string &bytes, ParameterStore *store) {
  std::istringstream is(bytes, std::ios::binary);
  ReadParameters(is, store);
}

std::string ReadFileBytes(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

void WriteFileBytes(const std::string &path, const std::string &bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot create " + path);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("failed writing " + path);
}

void WriteBundle(const std::string &path, const Manifest &manifest,
                 const ParameterStore &store) {
  std::string text;
  for (const auto &[k, v] : manifest) text += k + "=" + v + "\n";
  std::ostringstream os(std::ios::binary);
  os.write(kBundleMagic, 4);
  WriteU32(os, kBundleVersion);
  WriteU64(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  WriteParameters(store, os);
  WriteFileBytes(path, os.str());
}

Manifest ReadBundleManifest(const std::string &path, std::string *param_bytes) {
  std::istringstream is(ReadFileBytes(path), std::ios::binary);
  ExpectMagic(is, kBundleMagic, "model bundle");
  if (ReadU32(is) != kBundleVersion) throw FormatError("model bundle: bad version");
  const std::uint64_t len = ReadU64(is);
  if (len > (1u << 20)) throw FormatError("model bundle: manifest too large");
  std::string text(len, '\0');
  is.read(text.data(), static_cast<std::streamsize>(len));
  if (is.gcount() != static_cast<std::streamsize>(len))
    throw FormatError("model bundle: truncated manifest");
  Manifest manifest;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("model bundle: bad manifest line");
    manifest[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (param_bytes != nullptr)
    *param_bytes = std::string(std::istreambuf_iterator<char>(is), {});
  return manifest;
}

}  // namespace satadapt
