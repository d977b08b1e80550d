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

// Commands over a RunConfig. Artifacts land in output_dir:
//
//   paths_train.txt, paths_test.txt   extract   path caches
//   sentences.jsonl                   extract   every sentence, for batching
//   projection.bin, projection.json   train     weights and loss trace
//   results.json, ranks.csv           evaluate
//   explain/query_<i>.{json,csv}      explain
//   metrics.csv                       metrics
//   run.log                           all       effective config + progress
//
// Path caches and weights carry a fingerprint of every input that shaped
// them; a matching fingerprint skips the stage, a stale one is recomputed
// with a warning.

#pragma once

#include <ostream>
#include <span>
#include <string_view>

#include "core/config.hpp"

namespace kgpath {

std::span<const std::string_view> command_names();

// kInvalidArgument for an unknown command; other errors propagate.
void run_command(const RunConfig& config, std::string_view command,
                 std::ostream& log);

}  // namespace kgpath
