// Copyright 2026 The kgpath Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgpath {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kLookup,
  kConfig,
  kIo,
  kBackend,
  kState,
  kInternal,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported as Error; the C boundary maps the code
// onto a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Seeded FNV-1a over bytes followed by a splitmix64 finalizer. Stable across
// platforms and runs; used for feature hashing, fingerprints and file digests.
std::uint64_t hash64(std::string_view bytes, std::uint64_t seed = 0);

// Incremental form of hash64 for fingerprints built from several fields.
class Hasher {
 public:
  explicit Hasher(std::uint64_t seed = 0);
  Hasher& add(std::string_view bytes);
  Hasher& add(std::uint64_t value);
  Hasher& add(double value);
  std::uint64_t digest() const;

 private:
  std::uint64_t state_;
};

std::string hex64(std::uint64_t value);

// Deterministic RNG. The engine is fully specified by the standard; the
// bounded draws below avoid std::uniform_*_distribution, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1).
  double uniform();
  // Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kgpath
