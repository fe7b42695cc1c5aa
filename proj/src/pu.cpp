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

#include "lpusent/pu.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpusent {
namespace {

std::string ascii_lower(const std::string& word) {
    std::string out = word;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

// -[y log s(z) + (1-y) log(1-s(z))] without overflow.
double nll_term(double z, int y) {
    // softplus(z) - y*z, with softplus(z) = max(z,0) + log1p(exp(-|z|))
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y * z;
}

}  // namespace

Lexicon::Lexicon(WordSet words) : words_(std::move(words)) {
    if (words_.empty()) throw std::invalid_argument("lexicon must not be empty");
    for (const auto& w : words_) folded_.insert(ascii_lower(w));
}

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path.string());
    WordSet words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        // one word per line; surrounding blanks tolerated
        std::istringstream row(line);
        std::string word;
        if (row >> word) words.insert(word);
    }
    if (words.empty()) {
        throw std::runtime_error("lexicon file has no words: " + path.string());
    }
    return Lexicon(std::move(words));
}

bool Lexicon::contains_fold(const std::string& word) const {
    return folded_.count(ascii_lower(word)) != 0;
}

LabelSplit label_split(const Vocabulary& vocab, const Lexicon& lexicon) {
    LabelSplit split;
    for (const auto& w : vocab.words()) {
        if (lexicon.contains(w)) {
            split.positives.insert(w);
        } else {
            split.unlabeled.insert(w);
        }
    }
    if (split.positives.empty()) {
        throw std::runtime_error("no positive seeds: lexicon is disjoint from the vocabulary");
    }
    return split;
}

double logistic_loss(const LogisticProblem& problem, std::span<const double> weights,
                     double bias) {
    const int d = problem.dim;
    double loss = 0.0;
    for (std::size_t i = 0; i < problem.rows(); ++i) {
        const double* x = problem.features.data() + i * d;
        double z = bias;
        for (int c = 0; c < d; ++c) z += weights[c] * x[c];
        const int y = problem.labels[i];
        const double w = y == 1 ? problem.positive_weight : 1.0;
        loss += w * nll_term(z, y);
    }
    double reg = 0.0;
    for (int c = 0; c < d; ++c) reg += weights[c] * weights[c];
    return loss + 0.5 * problem.l2 * reg;
}

void logistic_gradient(const LogisticProblem& problem, std::span<const double> weights,
                       double bias, std::span<double> grad_weights, double& grad_bias) {
    const int d = problem.dim;
    std::fill(grad_weights.begin(), grad_weights.end(), 0.0);
    grad_bias = 0.0;
    for (std::size_t i = 0; i < problem.rows(); ++i) {
        const double* x = problem.features.data() + i * d;
        double z = bias;
        for (int c = 0; c < d; ++c) z += weights[c] * x[c];
        const int y = problem.labels[i];
        const double w = y == 1 ? problem.positive_weight : 1.0;
        const double coef = w * (sigmoid(z) - y);
        for (int c = 0; c < d; ++c) grad_weights[c] += coef * x[c];
        grad_bias += coef;
    }
    for (int c = 0; c < d; ++c) grad_weights[c] += problem.l2 * weights[c];
}

LogisticProblem make_pu_problem(const EmbeddingMatrix& matrix, const LabelSplit& split,
                                const PuOptions& opts) {
    LogisticProblem problem;
    problem.dim = matrix.dim();
    problem.l2 = opts.l2;
    problem.positive_weight = opts.positive_weight;
    problem.features.reserve((split.positives.size() + split.unlabeled.size()) * matrix.dim());
    auto add_rows = [&](const WordSet& words, int label) {
        for (const auto& w : words) {
            auto vec = matrix.vector(w);
            problem.features.insert(problem.features.end(), vec.begin(), vec.end());
            problem.labels.push_back(label);
        }
    };
    add_rows(split.positives, 1);
    add_rows(split.unlabeled, 0);
    return problem;
}

PuClassifier train_pu(const EmbeddingMatrix& matrix, const LabelSplit& split,
                      const PuOptions& opts) {
    if (split.positives.size() < 2 || split.unlabeled.size() < 2) {
        throw std::runtime_error("train_pu: need at least 2 positives and 2 unlabeled words");
    }
    const LogisticProblem problem = make_pu_problem(matrix, split, opts);
    const int d = problem.dim;

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<double> gw(d, 0.0);
    double gb = 0.0;
    std::vector<double> trial_w(d, 0.0);

    double loss = logistic_loss(problem, w, b);
    double step = 1.0 / static_cast<double>(problem.rows());
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_pu: non-finite loss at iteration " +
                                     std::to_string(iter));
        }
        logistic_gradient(problem, w, b, gw, gb);
        double gmax = std::abs(gb);
        double gnorm2 = gb * gb;
        for (double g : gw) {
            gmax = std::max(gmax, std::abs(g));
            gnorm2 += g * g;
        }
        if (gmax < opts.tol) break;

        // Backtracking line search (Armijo), warm-started from the last step.
        step *= 2.0;
        double next_loss = 0.0;
        double trial_b = b;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            for (int c = 0; c < d; ++c) trial_w[c] = w[c] - step * gw[c];
            trial_b = b - step * gb;
            next_loss = logistic_loss(problem, trial_w, trial_b);
            if (std::isfinite(next_loss) && next_loss <= loss - 1e-4 * step * gnorm2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent step
        w.swap(trial_w);
        b = trial_b;
        loss = next_loss;
    }

    PuClassifier clf;
    clf.weights = std::move(w);
    clf.bias = b;
    clf.iterations = iter;
    clf.final_loss = loss;
    return clf;
}

double predict_probability(const PuClassifier& clf, std::span<const float> vec) {
    double z = clf.bias;
    for (std::size_t c = 0; c < clf.weights.size(); ++c) {
        z += clf.weights[c] * static_cast<double>(vec[c]);
    }
    return sigmoid(z);
}

std::vector<std::pair<std::string, double>> predict_scores(
    const PuClassifier& clf, const EmbeddingMatrix& matrix,
    const std::vector<std::string>& words) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.emplace_back(w, predict_probability(clf, matrix.vector(w)));
    }
    return out;
}

WordSet predict_positive(const PuClassifier& clf, const EmbeddingMatrix& matrix,
                         const WordSet& candidates, double threshold) {
    WordSet out;
    for (const auto& w : candidates) {
        if (predict_probability(clf, matrix.vector(w)) > threshold) out.insert(w);
    }
    return out;
}

void save_classifier(const PuClassifier& clf, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write classifier file: " + path.string());
    out.precision(17);
    out << clf.weights.size() << '\n' << clf.bias << '\n';
    for (std::size_t c = 0; c < clf.weights.size(); ++c) {
        out << (c ? " " : "") << clf.weights[c];
    }
    out << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PuClassifier load_classifier(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open classifier file: " + path.string());
    std::size_t d = 0;
    PuClassifier clf;
    if (!(in >> d >> clf.bias)) {
        throw std::runtime_error("malformed classifier file: " + path.string());
    }
    clf.weights.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        if (!(in >> clf.weights[c])) {
            throw std::runtime_error("malformed classifier file (weight " +
                                     std::to_string(c) + "): " + path.string());
        }
    }
    return clf;
}

}  // namespace lpusent
