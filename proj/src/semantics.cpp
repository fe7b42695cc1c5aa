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

#include "lpusent/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lpusent {
namespace {

double dot(std::span<const float> a, std::span<const float> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += static_cast<double>(a[i]) * b[i];
    return sum;
}

double norm(std::span<const float> a) {
    return std::sqrt(dot(a, a));
}

std::vector<double> row_norms(const EmbeddingMatrix& matrix) {
    std::vector<double> norms(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) norms[i] = norm(matrix.row(i));
    return norms;
}

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
}

}  // namespace

Metric parse_metric(const std::string& name) {
    if (name == "cosine") return Metric::Cosine;
    if (name == "dot") return Metric::Dot;
    throw std::invalid_argument("unknown metric '" + name + "' (expected cosine or dot)");
}

std::string metric_name(Metric metric) {
    return metric == Metric::Cosine ? "cosine" : "dot";
}

double similarity(const EmbeddingMatrix& matrix, const std::string& w1,
                  const std::string& w2, Metric metric) {
    auto v1 = matrix.vector(w1);
    auto v2 = matrix.vector(w2);
    double d = dot(v1, v2);
    if (metric == Metric::Dot) return d;
    double n1 = norm(v1);
    double n2 = norm(v2);
    if (n1 == 0.0 || n2 == 0.0) return 0.0;
    return d / (n1 * n2);
}

NeighborTable::NeighborTable(int k, Metric metric, std::vector<std::string> words,
                             std::vector<std::vector<Neighbor>> lists)
    : k_(k), metric_(metric), words_(std::move(words)), lists_(std::move(lists)) {
    if (words_.size() != lists_.size()) {
        throw std::invalid_argument("neighbor table: words/lists size mismatch");
    }
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

const std::vector<Neighbor>& NeighborTable::neighbors(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) {
        throw std::out_of_range("neighbor table: unknown word '" + word + "'");
    }
    return lists_[it->second];
}

std::vector<std::string> NeighborTable::neighbor_words(const std::string& word) const {
    const auto& list = neighbors(word);
    std::vector<std::string> out;
    out.reserve(list.size());
    for (const auto& n : list) out.push_back(n.word);
    return out;
}

namespace {

// Top-n neighbors of row `i` against all other rows.
std::vector<Neighbor> rank_row(const EmbeddingMatrix& matrix,
                               const std::vector<double>& norms, std::size_t i,
                               int n, Metric metric) {
    std::vector<Neighbor> all;
    all.reserve(matrix.size() - 1);
    auto vi = matrix.row(i);
    for (std::size_t j = 0; j < matrix.size(); ++j) {
        if (j == i) continue;
        double score = dot(vi, matrix.row(j));
        if (metric == Metric::Cosine) {
            score = (norms[i] == 0.0 || norms[j] == 0.0) ? 0.0 : score / (norms[i] * norms[j]);
        }
        all.push_back({matrix.vocab().word(j), score});
    }
    const std::size_t keep = std::min<std::size_t>(n, all.size());
    std::partial_sort(all.begin(), all.begin() + keep, all.end(), neighbor_less);
    all.resize(keep);
    return all;
}

}  // namespace

NeighborTable build_neighbor_table(const EmbeddingMatrix& matrix, int k, Metric metric) {
    if (k < 1) throw std::invalid_argument("neighbor table: k must be >= 1");
    if (matrix.size() < 2) {
        throw std::invalid_argument("neighbor table: vocabulary must have >= 2 words");
    }
    const auto norms = row_norms(matrix);
    std::vector<std::vector<Neighbor>> lists(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        lists[i] = rank_row(matrix, norms, i, k, metric);
    }
    return NeighborTable(k, metric, matrix.vocab().words(), std::move(lists));
}

TargetQueryResult query_target(const EmbeddingMatrix& matrix, const std::string& target,
                               int n, Metric metric) {
    if (n < 1) throw std::invalid_argument("query_target: n must be >= 1");
    std::int64_t index = matrix.vocab().index_of(target);
    if (index < 0) {
        throw std::out_of_range("unknown target '" + target + "'");
    }
    const auto norms = row_norms(matrix);
    return {target, rank_row(matrix, norms, static_cast<std::size_t>(index), n, metric)};
}

namespace {

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1);
    std::vector<int> cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::vector<std::string> closest_words(const Vocabulary& vocab, const std::string& word,
                                       int n) {
    std::vector<std::pair<int, std::string>> scored;
    scored.reserve(vocab.size());
    for (const auto& w : vocab.words()) scored.emplace_back(levenshtein(word, w), w);
    const std::size_t keep = std::min<std::size_t>(std::max(n, 0), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end());
    std::vector<std::string> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back(scored[i].second);
    return out;
}

}  // namespace lpusent
