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

// Multi-aspect explanations: the paths of one query are clustered by their
// embeddings, their scores min-max scaled, and the clusters projected to 2D
// with Fisher LDA for plotting.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/embed.hpp"
#include "core/graph.hpp"

namespace kgpath {

using Point = std::vector<double>;

struct ScaledScores {
  std::vector<double> values;
  // All inputs equal; every value is 0.5.
  bool degenerate = false;
};

// (s - min) / (max - min). kInvalidArgument on empty input.
ScaledScores minmax_scale(std::span<const double> scores);

struct KMeansOptions {
  int max_iterations = 100;
  double tolerance = 1e-6;  // max centroid shift
};

struct KMeansResult {
  std::vector<std::size_t> labels;
  std::vector<Point> centroids;
  // SSE after every centroid update, in order; non-increasing.
  std::vector<double> sse_trace;
  double sse = 0.0;
};

// k-means++ seeding, Lloyd iterations, then single-point (Hartigan) moves
// whenever one still lowers the SSE, alternating until neither changes
// anything. An emptied cluster takes the point farthest from its centroid.
// kInvalidArgument unless 1 <= k <= n.
KMeansResult kmeans(const std::vector<Point>& points, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options = {});

struct LdaProjection {
  std::vector<std::array<double, 2>> coords;
  // Unit-length projection directions.
  std::array<Point, 2> axes;
  // Axes that came from discriminants (the rest are residual PCs).
  std::size_t discriminant_axes = 0;
};

inline constexpr double kLdaRegularization = 1e-6;

// Fisher LDA to 2D using `labels` as classes; within-class scatter is
// regularized by epsilon * I. With a single discriminant the second axis is
// the dominant principal component of the residual. kInvalidArgument with
// fewer than 2 classes or 3 points.
LdaProjection lda_project(const std::vector<Point>& points,
                          std::span<const std::size_t> labels,
                          double epsilon = kLdaRegularization);

struct ExplanationEntry {
  // Key/label tokens; nullopt for the empty-path entry.
  std::optional<std::vector<std::string>> path;
  std::string sentence;
  double raw_score = 0.0;
  double scaled_score = 0.0;
  std::size_t cluster = 0;

  bool operator==(const ExplanationEntry&) const = default;
};

struct ExplanationReport {
  std::array<std::string, 3> query;
  std::size_t k = 0;
  std::vector<ExplanationEntry> entries;
  // Empty when the projection was skipped.
  std::vector<std::array<double, 2>> coords;

  bool operator==(const ExplanationReport&) const = default;
};

struct ExplainOptions {
  std::size_t k = 4;
  std::size_t max_paths_for_empty_rule = 20;
  std::uint64_t seed = 42;
  ScoreOptions score;
};

// Entries are the scored paths plus the empty-path entry when fewer than
// max_paths_for_empty_rule paths exist. k is capped at the entry count.
ExplanationReport build_report(const KnowledgeGraph& g,
                               const ScoredTriplet& scored,
                               const Embedder& backend,
                               const ExplainOptions& options = {});

std::string report_to_json(const ExplanationReport& report);
// kParse on malformed input.
ExplanationReport report_from_json(const std::string& json);
// x,y,cluster,scaled_score,label
std::string report_plot_csv(const ExplanationReport& report);

}  // namespace kgpath
