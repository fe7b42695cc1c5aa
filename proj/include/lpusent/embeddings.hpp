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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpusent/corpus.hpp"

namespace lpusent {

struct SkipGramConfig {
    int dim = 200;
    int window = 5;
    int negative_samples = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;
};

/// Dense word vectors for one domain: one row per vocabulary word, row order
/// equals vocabulary order. All entries are finite.
class EmbeddingMatrix {
  public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(Vocabulary vocab, int dim);

    int dim() const { return dim_; }
    std::size_t size() const { return vocab_.size(); }
    const Vocabulary& vocab() const { return vocab_; }

    std::span<const float> row(std::size_t index) const;
    std::span<float> mutable_row(std::size_t index);
    /// Throws std::out_of_range naming the word when it is not in the vocabulary.
    std::span<const float> vector(const std::string& word) const;

    const std::vector<float>& data() const { return data_; }
    bool all_finite() const;

  private:
    Vocabulary vocab_;
    int dim_ = 0;
    std::vector<float> data_;  // row-major, size() * dim_
};

struct TrainStats {
    std::vector<double> epoch_mean_loss;  // mean negative-sampling loss per epoch
    std::int64_t pair_count = 0;          // (center, context) pairs per epoch
};

/// Trains skip-gram with negative sampling on `docs` (windows never cross a
/// document boundary). Single-sequence and deterministic for a fixed seed.
/// Throws std::runtime_error("degenerate corpus...") when the vocabulary has
/// fewer than two words, and std::invalid_argument on a bad config.
EmbeddingMatrix train_skipgram(const std::vector<Document>& docs,
                               const Vocabulary& vocab,
                               const SkipGramConfig& config,
                               TrainStats* stats = nullptr);

/// Reads the plain-text vector format: header "<vocab_size> <dim>", then one
/// "<word> <f1> ... <fd>" line per word. Reports the offending line number on
/// malformed rows; duplicate words and non-finite values are errors.
/// The resulting vocabulary carries zero counts (frequencies are not stored
/// in the format).
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// Writes the same format with six decimal digits per component.
void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

}  // namespace lpusent
