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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "lpusent/pu.hpp"
#include "oracles.hpp"

using namespace lpusent;
namespace fs = std::filesystem;

namespace {

// Two linearly separable blobs on the first axis, hand-placed so the test
// does not depend on any random distribution.
EmbeddingMatrix blob_matrix() {
    const std::vector<std::string> words{"p1", "p2", "p3", "p4",
                                         "u1", "u2", "u3", "u4"};
    const std::vector<std::vector<float>> rows{
        {1.0f, 0.1f},  {0.9f, 0.0f},   {1.1f, -0.1f}, {1.0f, -0.05f},
        {-1.0f, 0.1f}, {-0.9f, 0.0f}, {-1.1f, -0.1f}, {-1.0f, 0.05f}};
    EmbeddingMatrix matrix(Vocabulary(words, std::vector<std::int64_t>(8, 1), 1), 2);
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto row = matrix.mutable_row(matrix.vocab().index_of(words[i]));
        std::copy(rows[i].begin(), rows[i].end(), row.begin());
    }
    return matrix;
}

LabelSplit blob_split() {
    return {{"p1", "p2", "p3", "p4"}, {"u1", "u2", "u3", "u4"}};
}

}  // namespace

TEST_CASE("lexicon membership is exact with a folded fallback") {
    Lexicon lexicon(WordSet{"good", "Great"});
    CHECK(lexicon.contains("good"));
    CHECK_FALSE(lexicon.contains("Good"));
    CHECK(lexicon.contains_fold("gReAt"));
    CHECK_FALSE(lexicon.contains_fold("bad"));

    const fs::path path = fs::temp_directory_path() / "lpusent_lexicon.txt";
    std::ofstream(path) << "# sentiment seeds\ngood\nbad\n\n";
    Lexicon loaded = Lexicon::from_file(path);
    CHECK(loaded.size() == 2);
    CHECK(loaded.contains("bad"));
}

TEST_CASE("label_split partitions the vocabulary against the lexicon") {
    Vocabulary vocab({"good", "screen", "blurry"}, {3, 2, 1}, 1);
    LabelSplit split = label_split(vocab, Lexicon(WordSet{"good", "blurry", "awful"}));
    CHECK(split.positives == WordSet{"good", "blurry"});
    CHECK(split.unlabeled == WordSet{"screen"});

    CHECK_THROWS_WITH_AS(label_split(vocab, Lexicon(WordSet{"awful"})),
                         doctest::Contains("no positive seeds"), std::runtime_error);
}

TEST_CASE("label_split matches plain set operations on a random vocabulary") {
    std::mt19937_64 rng(2024);
    const auto words = oracle::word_list(300);
    Vocabulary vocab(words, std::vector<std::int64_t>(words.size(), 2), 1);
    WordSet lexicon_words = oracle::random_subset(rng, words, 80);
    lexicon_words.insert("outside-vocab");
    LabelSplit split = label_split(vocab, Lexicon(lexicon_words));

    const WordSet all(words.begin(), words.end());
    CHECK(split.positives == set_intersection(all, lexicon_words));
    CHECK(split.unlabeled == set_difference(all, lexicon_words));
    CHECK(set_union(split.positives, split.unlabeled) == all);
}

TEST_CASE("training separates the blobs perfectly") {
    EmbeddingMatrix matrix = blob_matrix();
    LabelSplit split = blob_split();
    PuClassifier clf = train_pu(matrix, split);
    for (const auto& word : split.positives) {
        CHECK(predict_probability(clf, matrix.vector(word)) > 0.5);
    }
    for (const auto& word : split.unlabeled) {
        CHECK(predict_probability(clf, matrix.vector(word)) < 0.5);
    }
    CHECK(clf.iterations > 0);
    CHECK(std::isfinite(clf.final_loss));
}

TEST_CASE("training is deterministic") {
    EmbeddingMatrix matrix = blob_matrix();
    PuClassifier a = train_pu(matrix, blob_split());
    PuClassifier b = train_pu(matrix, blob_split());
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("stronger regularization shrinks the weights") {
    EmbeddingMatrix matrix = blob_matrix();
    PuOptions weak;
    weak.l2 = 0.1;
    PuOptions strong;
    strong.l2 = 10.0;
    const auto norm = [](const PuClassifier& clf) {
        double sum = 0.0;
        for (double w : clf.weights) sum += w * w;
        return sum;
    };
    CHECK(norm(train_pu(matrix, blob_split(), strong)) <
          norm(train_pu(matrix, blob_split(), weak)));
}

TEST_CASE("training requires two words on each side") {
    EmbeddingMatrix matrix = blob_matrix();
    CHECK_THROWS_AS(train_pu(matrix, {{"p1"}, {"u1", "u2"}}), std::runtime_error);
    CHECK_THROWS_AS(train_pu(matrix, {{"p1", "p2"}, {"u1"}}), std::runtime_error);
}

TEST_CASE("a zero classifier scores everything at one half") {
    EmbeddingMatrix matrix = blob_matrix();
    PuClassifier zero;
    zero.weights.assign(2, 0.0);
    for (const auto& word : matrix.vocab().words()) {
        CHECK(predict_probability(zero, matrix.vector(word)) == doctest::Approx(0.5));
    }
    CHECK(predict_positive(zero, matrix, {matrix.vocab().words().begin(),
                                          matrix.vocab().words().end()},
                           0.5)
              .empty());  // strictly-greater cut
}

TEST_CASE("predict_scores applies the logistic function in input order") {
    EmbeddingMatrix matrix(
        Vocabulary({"hi", "lo"}, std::vector<std::int64_t>{1, 1}, 1), 1);
    matrix.mutable_row(matrix.vocab().index_of("hi"))[0] = 10.0f;
    matrix.mutable_row(matrix.vocab().index_of("lo"))[0] = -10.0f;
    PuClassifier clf;
    clf.weights = {1.0};
    auto scores = predict_scores(clf, matrix, {"lo", "hi"});
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].first == "lo");
    CHECK(scores[0].second == doctest::Approx(4.5398e-05).epsilon(1e-3));
    CHECK(scores[1].first == "hi");
    CHECK(scores[1].second == doctest::Approx(0.9999546).epsilon(1e-6));
}

TEST_CASE("predict_positive is monotone in the threshold") {
    std::mt19937_64 rng(8);
    EmbeddingMatrix matrix = oracle::random_matrix(rng, 50, 4);
    PuClassifier clf;
    clf.weights = {0.7, -0.3, 0.2, 0.5};
    clf.bias = 0.1;
    const std::vector<std::string>& vocab_words = matrix.vocab().words();
    const WordSet words(vocab_words.begin(), vocab_words.end());
    WordSet last = words;
    for (double threshold : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        WordSet current = predict_positive(clf, matrix, words, threshold);
        CHECK(set_difference(current, last).empty());  // current subset of last
        // agreement with a direct filter
        WordSet expected;
        for (const auto& word : words) {
            if (predict_probability(clf, matrix.vector(word)) > threshold) {
                expected.insert(word);
            }
        }
        CHECK(current == expected);
        last = current;
    }
}

TEST_CASE("problem rows follow positives-then-unlabeled set order") {
    EmbeddingMatrix matrix = blob_matrix();
    LabelSplit split = blob_split();
    LogisticProblem problem = make_pu_problem(matrix, split, {});
    REQUIRE(problem.rows() == 8);
    REQUIRE(problem.dim == 2);
    std::size_t row = 0;
    for (const auto& word : split.positives) {
        CHECK(problem.labels[row] == 1);
        CHECK(problem.features[row * 2] == doctest::Approx(matrix.vector(word)[0]));
        ++row;
    }
    for (const auto& word : split.unlabeled) {
        CHECK(problem.labels[row] == 0);
        CHECK(problem.features[row * 2] == doctest::Approx(matrix.vector(word)[0]));
        ++row;
    }
}

TEST_CASE("analytic gradient agrees with finite differences") {
    std::mt19937_64 rng(31);
    EmbeddingMatrix matrix = oracle::random_matrix(rng, 12, 5);
    LabelSplit split;
    const auto& words = matrix.vocab().words();
    for (std::size_t i = 0; i < words.size(); ++i) {
        (i % 2 == 0 ? split.positives : split.unlabeled).insert(words[i]);
    }
    PuOptions opts;
    opts.l2 = 0.8;
    opts.positive_weight = 2.5;
    LogisticProblem problem = make_pu_problem(matrix, split, opts);

    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::vector<double> weights(5);
    for (double& w : weights) w = value(rng);
    const double bias = value(rng);

    std::vector<double> analytic(5);
    double analytic_bias = 0.0;
    logistic_gradient(problem, weights, bias, analytic, analytic_bias);
    const auto numeric = oracle::finite_difference(
        [&](std::span<const double> w, double b) { return logistic_loss(problem, w, b); },
        weights, bias, 1e-6);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        CHECK(analytic[i] == doctest::Approx(numeric[i]).epsilon(1e-6));
    }
    CHECK(analytic_bias == doctest::Approx(numeric.back()).epsilon(1e-6));
}
