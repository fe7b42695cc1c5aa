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

#include "lpusent/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lpusent {
namespace {

constexpr double kMaxExp = 30.0;

double sigmoid(double z) {
    if (z > kMaxExp) return 1.0;
    if (z < -kMaxExp) return 0.0;
    return 1.0 / (1.0 + std::exp(-z));
}

// -log sigmoid(z), numerically stable.
double neg_log_sigmoid(double z) {
    if (z > kMaxExp) return 0.0;
    if (z < -kMaxExp) return -z;
    return std::log1p(std::exp(-z));
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(Vocabulary vocab, int dim)
    : vocab_(std::move(vocab)), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
    data_.assign(vocab_.size() * static_cast<std::size_t>(dim_), 0.0f);
}

std::span<const float> EmbeddingMatrix::row(std::size_t index) const {
    return {data_.data() + index * dim_, static_cast<std::size_t>(dim_)};
}

std::span<float> EmbeddingMatrix::mutable_row(std::size_t index) {
    return {data_.data() + index * dim_, static_cast<std::size_t>(dim_)};
}

std::span<const float> EmbeddingMatrix::vector(const std::string& word) const {
    std::int64_t index = vocab_.index_of(word);
    if (index < 0) {
        throw std::out_of_range("embeddings: unknown word '" + word + "'");
    }
    return row(static_cast<std::size_t>(index));
}

bool EmbeddingMatrix::all_finite() const {
    for (float v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

EmbeddingMatrix train_skipgram(const std::vector<Document>& docs,
                               const Vocabulary& vocab,
                               const SkipGramConfig& config, TrainStats* stats) {
    if (vocab.size() < 2) {
        throw std::runtime_error("degenerate corpus: need at least 2 vocabulary words");
    }
    if (config.dim < 1 || config.window < 1 || config.negative_samples < 1 ||
        config.epochs < 1 || !(config.learning_rate > 0.0)) {
        throw std::invalid_argument("skip-gram config: dim/window/negative/epochs must be "
                                    ">= 1 and learning_rate > 0");
    }

    const int dim = config.dim;
    const std::size_t v = vocab.size();

    // Encode sentences; out-of-vocabulary tokens are dropped.
    std::vector<std::vector<int>> sentences;
    std::int64_t positions = 0;
    for (const auto& doc : docs) {
        std::vector<int> ids;
        for (auto& tok : tokenize(doc.text)) {
            std::int64_t idx = vocab.index_of(tok);
            if (idx >= 0) ids.push_back(static_cast<int>(idx));
        }
        if (ids.size() >= 2) {
            positions += static_cast<std::int64_t>(ids.size());
            sentences.push_back(std::move(ids));
        }
    }
    if (positions == 0) {
        throw std::runtime_error("degenerate corpus: no trainable sentence has 2+ in-vocabulary tokens");
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<float> init(-0.5f / dim, 0.5f / dim);

    EmbeddingMatrix input(vocab, dim);
    for (std::size_t i = 0; i < v; ++i) {
        for (float& x : input.mutable_row(i)) x = init(rng);
    }
    std::vector<float> output(v * static_cast<std::size_t>(dim), 0.0f);

    // Negative sampling from the unigram^0.75 distribution.
    std::vector<double> noise_weights(v);
    for (std::size_t i = 0; i < v; ++i) {
        noise_weights[i] = std::pow(static_cast<double>(vocab.counts()[i]), 0.75);
    }
    std::discrete_distribution<int> noise(noise_weights.begin(), noise_weights.end());

    const double total_updates =
        static_cast<double>(positions) * config.epochs;
    std::int64_t seen = 0;
    std::vector<float> center_grad(dim);
    std::uniform_int_distribution<int> shrink(0, config.window - 1);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        std::int64_t epoch_pairs = 0;
        for (const auto& sentence : sentences) {
            const int n = static_cast<int>(sentence.size());
            for (int pos = 0; pos < n; ++pos, ++seen) {
                const double progress = static_cast<double>(seen) / total_updates;
                const float lr = static_cast<float>(
                    config.learning_rate * std::max(1.0 - progress, 1e-4));
                const int span = config.window - shrink(rng);
                const int center = sentence[pos];
                float* center_vec = input.mutable_row(center).data();
                for (int off = -span; off <= span; ++off) {
                    if (off == 0) continue;
                    const int cpos = pos + off;
                    if (cpos < 0 || cpos >= n) continue;
                    const int context = sentence[cpos];
                    std::fill(center_grad.begin(), center_grad.end(), 0.0f);
                    double pair_loss = 0.0;
                    for (int s = 0; s <= config.negative_samples; ++s) {
                        int target;
                        float label;
                        if (s == 0) {
                            target = context;
                            label = 1.0f;
                        } else {
                            target = noise(rng);
                            if (target == context) continue;
                            label = 0.0f;
                        }
                        float* out_vec = output.data() + static_cast<std::size_t>(target) * dim;
                        double z = 0.0;
                        for (int c = 0; c < dim; ++c) z += center_vec[c] * out_vec[c];
                        pair_loss += label > 0.5f ? neg_log_sigmoid(z) : neg_log_sigmoid(-z);
                        const float coef = static_cast<float>(sigmoid(z)) - label;
                        for (int c = 0; c < dim; ++c) {
                            center_grad[c] += coef * out_vec[c];
                            out_vec[c] -= lr * coef * center_vec[c];
                        }
                    }
                    for (int c = 0; c < dim; ++c) center_vec[c] -= lr * center_grad[c];
                    epoch_loss += pair_loss;
                    ++epoch_pairs;
                }
            }
        }
        if (stats) {
            stats->epoch_mean_loss.push_back(
                epoch_pairs > 0 ? epoch_loss / static_cast<double>(epoch_pairs) : 0.0);
            stats->pair_count = epoch_pairs;
        }
    }

    if (!input.all_finite()) {
        throw std::runtime_error("skip-gram training produced non-finite vectors "
                                 "(reduce learning_rate)");
    }
    return input;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embeddings file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ":1: empty embeddings file");
    }
    std::istringstream header(line);
    std::int64_t v = -1, d = -1;
    if (!(header >> v >> d) || v < 0 || d < 1) {
        throw std::runtime_error(path.string() + ":1: malformed header, expected '<vocab_size> <dim>'");
    }

    std::vector<std::string> words;
    std::vector<float> data;
    words.reserve(v);
    data.reserve(static_cast<std::size_t>(v) * d);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string word;
        if (!(row >> word)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": missing word");
        }
        std::vector<float> values;
        values.reserve(d);
        double x;
        while (row >> x) values.push_back(static_cast<float>(x));
        if (!row.eof()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": non-numeric vector component");
        }
        if (static_cast<std::int64_t>(values.size()) != d) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(d) + " values, got " +
                                     std::to_string(values.size()));
        }
        for (float f : values) {
            if (!std::isfinite(f)) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": non-finite vector component");
            }
        }
        words.push_back(word);
        data.insert(data.end(), values.begin(), values.end());
    }
    if (static_cast<std::int64_t>(words.size()) != v) {
        throw std::runtime_error(path.string() + ": header declares " + std::to_string(v) +
                                 " words, file has " + std::to_string(words.size()));
    }
    // Duplicate detection happens in the Vocabulary constructor; counts are
    // unknown for externally trained vectors, so they are stored as zero.
    std::vector<std::int64_t> counts(words.size(), 0);
    Vocabulary vocab;
    try {
        vocab = Vocabulary(std::move(words), std::move(counts), 0);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    EmbeddingMatrix matrix(std::move(vocab), static_cast<int>(d));
    std::copy(data.begin(), data.end(), matrix.mutable_row(0).data());
    return matrix;
}

void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embeddings file: " + path.string());
    out << matrix.size() << ' ' << matrix.dim() << '\n';
    out << std::fixed << std::setprecision(6);
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.vocab().word(i);
        for (float x : matrix.row(i)) out << ' ' << x;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lpusent
