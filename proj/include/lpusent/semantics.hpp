// Copyright 2026 The lpusent Authors
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

#include <string>
#include <unordered_map>
#include <vector>

#include "lpusent/embeddings.hpp"

namespace lpusent {

enum class Metric { Cosine, Dot };

Metric parse_metric(const std::string& name);  // "cosine" | "dot"
std::string metric_name(Metric metric);

struct Neighbor {
    std::string word;
    double score;
};

/// Pairwise similarity. Cosine of a zero vector is defined as 0.
/// Throws std::out_of_range naming any unknown word.
double similarity(const EmbeddingMatrix& matrix, const std::string& w1,
                  const std::string& w2, Metric metric);

/// Precomputed top-k neighbors per word. Lists are sorted by score descending,
/// ties broken by word ascending; a word never lists itself.
class NeighborTable {
  public:
    NeighborTable() = default;
    NeighborTable(int k, Metric metric,
                  std::vector<std::string> words,
                  std::vector<std::vector<Neighbor>> lists);

    int k() const { return k_; }
    Metric metric() const { return metric_; }
    const std::vector<std::string>& words() const { return words_; }
    bool contains(const std::string& word) const { return index_.count(word) != 0; }
    /// Throws std::out_of_range for words outside the table.
    const std::vector<Neighbor>& neighbors(const std::string& word) const;
    std::vector<std::string> neighbor_words(const std::string& word) const;

  private:
    int k_ = 0;
    Metric metric_ = Metric::Cosine;
    std::vector<std::string> words_;
    std::vector<std::vector<Neighbor>> lists_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Brute-force construction: for every word, the k most similar other words.
NeighborTable build_neighbor_table(const EmbeddingMatrix& matrix, int k, Metric metric);

struct TargetQueryResult {
    std::string target;
    std::vector<Neighbor> t_words;  // descending score, target excluded
};

/// Stage-one grouping: the top-n neighbors of `target`.
/// Throws std::out_of_range("unknown target ...") when absent.
TargetQueryResult query_target(const EmbeddingMatrix& matrix, const std::string& target,
                               int n, Metric metric);

/// The n vocabulary words closest to `word` by Levenshtein distance
/// (distance ascending, then word ascending). Used for CLI hints.
std::vector<std::string> closest_words(const Vocabulary& vocab, const std::string& word,
                                       int n);

}  // namespace lpusent
