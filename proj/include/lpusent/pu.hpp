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
#include <utility>
#include <vector>

#include "lpusent/embeddings.hpp"
#include "lpusent/types.hpp"

namespace lpusent {

/// General opinion lexicon. Membership is exact-match by default; a
/// case-folded lookup is available alongside it.
class Lexicon {
  public:
    explicit Lexicon(WordSet words);
    /// One word per line, UTF-8, '#'-prefixed comment lines ignored.
    static Lexicon from_file(const std::filesystem::path& path);

    bool contains(const std::string& word) const { return words_.count(word) != 0; }
    bool contains_fold(const std::string& word) const;
    const WordSet& words() const { return words_; }
    std::size_t size() const { return words_.size(); }

  private:
    WordSet words_;
    WordSet folded_;
};

/// The PU split: positives = vocabulary ∩ lexicon, unlabeled = the rest.
struct LabelSplit {
    WordSet positives;
    WordSet unlabeled;
};

/// Exact-match partition of the vocabulary against the lexicon.
/// Throws std::runtime_error("no positive seeds...") when no lexicon word is
/// in the vocabulary.
LabelSplit label_split(const Vocabulary& vocab, const Lexicon& lexicon);

struct PuOptions {
    double l2 = 1.0;              // L2 penalty on weights (bias unpenalized)
    double positive_weight = 1.0; // optional class reweighting, off by default
    int max_iter = 500;
    double tol = 1e-6;            // gradient infinity-norm stopping criterion
    std::uint64_t seed = 0;       // reserved; zero-initialized training is deterministic
};

struct PuClassifier {
    std::vector<double> weights;  // length = embedding dim
    double bias = 0.0;
    int iterations = 0;
    double final_loss = 0.0;
};

/// Plain logistic-regression objective over a dense feature matrix, exposed
/// so gradients can be checked against finite differences of the loss.
struct LogisticProblem {
    std::vector<double> features;  // row-major, rows() x dim
    std::vector<int> labels;       // 0/1 per row
    int dim = 0;
    double l2 = 1.0;
    double positive_weight = 1.0;

    std::size_t rows() const { return labels.size(); }
};

double logistic_loss(const LogisticProblem& problem, std::span<const double> weights,
                     double bias);
/// grad_weights must have length problem.dim.
void logistic_gradient(const LogisticProblem& problem, std::span<const double> weights,
                       double bias, std::span<double> grad_weights, double& grad_bias);

/// Builds the training problem for a split: positives are class 1 and every
/// unlabeled word is treated as class 0. Row order is positives then
/// unlabeled, each in set order.
LogisticProblem make_pu_problem(const EmbeddingMatrix& matrix, const LabelSplit& split,
                                const PuOptions& opts);

/// Fits the classifier by full-batch gradient descent with backtracking line
/// search, starting from zero weights. Requires at least two positives and
/// two unlabeled words. A non-finite loss aborts with the iteration index.
PuClassifier train_pu(const EmbeddingMatrix& matrix, const LabelSplit& split,
                      const PuOptions& opts = {});

double predict_probability(const PuClassifier& clf, std::span<const float> vec);

/// Scores words in input order; probability = sigmoid(<w, v> + b).
std::vector<std::pair<std::string, double>> predict_scores(
    const PuClassifier& clf, const EmbeddingMatrix& matrix,
    const std::vector<std::string>& words);

/// Exactly { w in candidates : score(w) > threshold } (strict inequality).
WordSet predict_positive(const PuClassifier& clf, const EmbeddingMatrix& matrix,
                         const WordSet& candidates, double threshold);

/// Textual persistence: "dim\nbias\nw1 ... wd".
void save_classifier(const PuClassifier& clf, const std::filesystem::path& path);
PuClassifier load_classifier(const std::filesystem::path& path);

}  // namespace lpusent
