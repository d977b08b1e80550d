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

// Triplets and paths rendered as `; `-separated description sequences.

#pragma once

#include <string>
#include <string_view>

#include "core/graph.hpp"
#include "core/paths.hpp"

namespace kgpath {

enum class SentenceKind { kTriplet, kPath, kEmptyPath };

struct Sentence {
  std::string text;
  SentenceKind kind = SentenceKind::kTriplet;
};

inline constexpr std::string_view kSegmentSeparator = "; ";
inline constexpr std::string_view kDefaultEmptyPathText = "(no path)";

enum class SentenceStyle {
  kSemicolon,
  // "Question: <h> is the <r> of what? Is the correct answer <t>?" for
  // triplets; paths keep the semicolon form. Ablation only.
  kQuestion,
};

// Word order of the forward description reversed, single-space joined.
std::string inverse_relation_description(std::string_view forward_desc);

std::string relation_text(const KnowledgeGraph& g, RelationId r);

Sentence triplet_sentence(const Triplet& t, const KnowledgeGraph& g,
                          SentenceStyle style = SentenceStyle::kSemicolon);
Sentence path_sentence(const ReasoningPath& p, const KnowledgeGraph& g);
Sentence empty_path_sentence(std::string_view text = kDefaultEmptyPathText);

const char* to_string(SentenceKind kind);

// {"kind":..., "text":..., "path_id":...} on one line.
std::string sentence_json_line(const Sentence& s, const std::string& path_id);

}  // namespace kgpath
