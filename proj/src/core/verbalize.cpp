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

#include "core/verbalize.hpp"

#include <algorithm>

#include <json.hpp>

#include "core/text.hpp"

namespace kgpath {

std::string inverse_relation_description(std::string_view forward_desc) {
  std::vector<std::string> words = text::split_whitespace(forward_desc);
  std::reverse(words.begin(), words.end());
  return text::join(words, " ");
}

std::string relation_text(const KnowledgeGraph& g, RelationId r) {
  std::string forward = g.vocab().relation_description(r);
  return r.is_inverse() ? inverse_relation_description(forward) : forward;
}

Sentence triplet_sentence(const Triplet& t, const KnowledgeGraph& g,
                          SentenceStyle style) {
  const std::string head = g.vocab().entity_description(t.head);
  const std::string rel = relation_text(g, t.relation);
  const std::string tail = g.vocab().entity_description(t.tail);
  if (style == SentenceStyle::kQuestion) {
    return {"Question: " + head + " is the " + rel +
                " of what? Is the correct answer " + tail + "?",
            SentenceKind::kTriplet};
  }
  std::string s = head;
  s.append(kSegmentSeparator).append(rel);
  s.append(kSegmentSeparator).append(tail);
  return {std::move(s), SentenceKind::kTriplet};
}

Sentence path_sentence(const ReasoningPath& p, const KnowledgeGraph& g) {
  std::string s;
  for (std::size_t i = 0; i < p.entities.size(); ++i) {
    if (i) s.append(kSegmentSeparator);
    s.append(g.vocab().entity_description(p.entities[i]));
    if (i < p.relations.size()) {
      s.append(kSegmentSeparator).append(relation_text(g, p.relations[i]));
    }
  }
  return {std::move(s), SentenceKind::kPath};
}

Sentence empty_path_sentence(std::string_view text) {
  return {std::string(text), SentenceKind::kEmptyPath};
}

const char* to_string(SentenceKind kind) {
  switch (kind) {
    case SentenceKind::kTriplet: return "triplet";
    case SentenceKind::kPath: return "path";
    case SentenceKind::kEmptyPath: return "empty_path";
  }
  return "path";
}

std::string sentence_json_line(const Sentence& s, const std::string& path_id) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(s.kind);
  j["text"] = s.text;
  j["path_id"] = path_id;
  return j.dump();
}

}  // namespace kgpath
