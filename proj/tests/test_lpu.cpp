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

#include <random>
#include <string>
#include <vector>

#include "lpusent/lpu.hpp"
#include "oracles.hpp"

using namespace lpusent;

namespace {

NeighborTable hand_table(std::vector<std::string> words,
                         std::vector<std::vector<std::string>> lists) {
    std::vector<std::vector<Neighbor>> scored(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i) {
        double score = 0.9;
        for (const auto& word : lists[i]) {
            scored[i].push_back({word, score});
            score -= 0.1;
        }
    }
    const int k = static_cast<int>(scored.front().size());
    return NeighborTable(k, Metric::Cosine, std::move(words), std::move(scored));
}

// Separable fixture with room to iterate: six lexicon seeds and ten unlabeled
// opinion-like words share a direction, twenty background words oppose it.
struct IterFixture {
    EmbeddingMatrix matrix;
    NeighborTable table;
    LabelSplit split;
    KnowledgeBase kb;

    static IterFixture make() {
        std::vector<std::string> words;
        for (int i = 0; i < 6; ++i) words.push_back("lex" + std::to_string(i));
        for (int i = 0; i < 10; ++i) words.push_back("pos" + std::to_string(i));
        for (int i = 0; i < 20; ++i) words.push_back("bg" + std::to_string(i));

        EmbeddingMatrix matrix(
            Vocabulary(words, std::vector<std::int64_t>(words.size(), 1), 1), 4);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<float> noise(-0.3f, 0.3f);
        for (const auto& word : words) {
            auto row = matrix.mutable_row(matrix.vocab().index_of(word));
            const float axis = word.rfind("bg", 0) == 0 ? -2.0f : 2.0f;
            row[0] = axis + noise(rng);
            for (int d = 1; d < 4; ++d) row[d] = noise(rng);
        }

        IterFixture fix{std::move(matrix), {}, {}, {}};
        fix.table = build_neighbor_table(fix.matrix, 8, Metric::Cosine);
        for (const auto& word : words) {
            (word.rfind("lex", 0) == 0 ? fix.split.positives : fix.split.unlabeled)
                .insert(word);
        }
        // pos0..pos8 recur in three domains; pos9 falls short of support 3
        WordSet most;
        for (int i = 0; i <= 9; ++i) most.insert("pos" + std::to_string(i));
        WordSet d2 = most;
        d2.erase("pos9");
        WordSet d3 = most;
        d3.erase("pos0");
        fix.kb.retain("d1", set_union(most, {"offvocab"}));
        fix.kb.retain("d2", d2);
        fix.kb.retain("d3", set_union(d3, {"stale"}));
        fix.kb.retain("d4", {"pos0", "pos2"});
        return fix;
    }
};

LpuConfig iter_config(Variant variant, bool or_loop) {
    LpuConfig config;
    config.variant = variant;
    config.max_iterations = 4;
    // 2l stays above any possible seed size (at most nine mined words)
    config.words_per_iteration = 5;
    config.neighbor_k = 8;
    config.min_support = 3;
    config.or_loop = or_loop;
    config.pu.l2 = 0.5;
    return config;
}

}  // namespace

TEST_CASE("reliable_neighbors unions the positives' lists") {
    NeighborTable table = hand_table({"good", "nice", "screen"},
                                     {{"nice", "screen"}, {"good", "sharp"}, {"good", "nice"}});
    CHECK(reliable_neighbors(table, {"good"}) == WordSet{"nice", "screen"});
    CHECK(reliable_neighbors(table, {"good", "nice"}) == WordSet{"screen", "sharp"});
    CHECK(reliable_neighbors(table, {}).empty());
    CHECK(reliable_neighbors(table, {"unknown"}).empty());
}

TEST_CASE("count_positive_neighbors counts distinct hits") {
    CHECK(count_positive_neighbors(WordSet{"a", "b"}, std::vector<std::string>{"a", "c", "d"}) == 1);
    CHECK(count_positive_neighbors(WordSet{}, std::vector<std::string>{"a", "c"}) == 0);
    CHECK(count_positive_neighbors(WordSet{"a", "b"}, std::vector<std::string>{"a", "a", "b"}) == 2);
}

TEST_CASE("reliable_opinion ranks by positive-neighbor evidence") {
    NeighborTable table =
        hand_table({"x", "y", "z"}, {{"p", "q"}, {"p", "r"}, {"r", "s"}});
    SUBCASE("spec ordering and truncation") {
        auto picked = reliable_opinion({"x", "y"}, {"p", "q"}, table, 2);
        CHECK(picked == std::vector<std::string>{"x", "y"});
        CHECK(reliable_opinion({"x", "y"}, {"p", "q"}, table, 1) ==
              std::vector<std::string>{"x"});
    }
    SUBCASE("empty evidence set yields nothing") {
        CHECK(reliable_opinion({"x", "y"}, {}, table, 5).empty());
    }
    SUBCASE("zero-evidence words are dropped") {
        auto picked = reliable_opinion({"x", "y", "z"}, {"p", "q"}, table, 5);
        CHECK(picked == std::vector<std::string>{"x", "y"});
    }
    SUBCASE("candidates missing from the table count zero") {
        auto picked = reliable_opinion({"x", "ghost"}, {"p"}, table, 5);
        CHECK(picked == std::vector<std::string>{"x"});
    }
    SUBCASE("ties break by score then word") {
        NeighborTable tie = hand_table({"m", "n"}, {{"p", "u1"}, {"p", "u2"}});
        CHECK(reliable_opinion({"m", "n"}, {"p"}, tie, 2) ==
              std::vector<std::string>{"m", "n"});  // equal count, word order
        std::map<std::string, double> scores{{"m", 0.2}, {"n", 0.8}};
        CHECK(reliable_opinion({"m", "n"}, {"p"}, tie, 2, scores) ==
              std::vector<std::string>{"n", "m"});
    }
}

TEST_CASE("reliable_opinion matches the sort-and-truncate reference") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 25; ++round) {
        EmbeddingMatrix matrix = oracle::random_matrix(rng, 60, 6);
        NeighborTable table = build_neighbor_table(matrix, 5, Metric::Cosine);
        const auto& words = matrix.vocab().words();
        WordSet a = oracle::random_subset(rng, words, 25);
        WordSet b = oracle::random_subset(rng, words, 15);
        std::map<std::string, double> scores;
        std::uniform_real_distribution<double> score(0.0, 1.0);
        for (const auto& word : a) scores[word] = score(rng);
        for (int l : {1, 4, 50}) {
            CHECK(reliable_opinion(a, b, table, l, scores) ==
                  oracle::ranked_by_evidence(a, b, table, l, scores));
        }
    }
}

TEST_CASE("run_lpu validates its configuration") {
    IterFixture fix = IterFixture::make();
    LpuConfig config = iter_config(Variant::Lpu, false);
    config.max_iterations = 0;
    CHECK_THROWS_AS(run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, config),
                    std::invalid_argument);
    config = iter_config(Variant::Lpu, false);
    config.words_per_iteration = 0;
    CHECK_THROWS_AS(run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, config),
                    std::invalid_argument);
}

TEST_CASE("an empty knowledge base reduces the engine to the plain classifier") {
    IterFixture fix = IterFixture::make();
    KnowledgeBase empty;
    DisentangleResult lpu =
        run_lpu({fix.matrix, fix.table}, fix.split, empty, iter_config(Variant::Lpu, false));
    DisentangleResult nll =
        run_lpu({fix.matrix, fix.table}, fix.split, empty, iter_config(Variant::Nll, false));
    CHECK(lpu.new_opinion_words == nll.new_opinion_words);
    CHECK(lpu.classifier.weights == nll.classifier.weights);
    CHECK(lpu.classifier.bias == nll.classifier.bias);
    CHECK(lpu.reliable_sentiment.empty());
    CHECK(lpu.note == "degenerate lifelong case: empty initial seed, result equals nll");
    CHECK(lpu.iteration_log.empty());
}

TEST_CASE("the plain classifier ignores the knowledge base") {
    IterFixture fix = IterFixture::make();
    KnowledgeBase other;
    other.retain("different", {"pos7", "pos8", "bg0"});
    DisentangleResult a =
        run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, iter_config(Variant::Nll, false));
    DisentangleResult b =
        run_lpu({fix.matrix, fix.table}, fix.split, other, iter_config(Variant::Nll, false));
    CHECK(a.new_opinion_words == b.new_opinion_words);
    CHECK(a.classifier.weights == b.classifier.weights);
    CHECK(a.iteration_log.empty());
    CHECK(b.iteration_log.empty());
}

TEST_CASE("the default loop stops once no new words remain") {
    IterFixture fix = IterFixture::make();
    LpuConfig config = iter_config(Variant::Lpu, false);
    DisentangleResult result = run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, config);
    REQUIRE(!result.iteration_log.empty());
    CHECK(result.iteration_log.size() <=
          static_cast<std::size_t>(config.max_iterations));
    // the first iteration trusts exactly the mined-and-nearby seed
    const WordSet seed = set_intersection(
        reliable_neighbors(fix.table, fix.split.positives),
        mine_reliable(fix.kb, config.min_support).words);
    REQUIRE(!seed.empty());
    const auto& first = result.iteration_log.front();
    CHECK(WordSet(first.added.begin(), first.added.end()) == seed);
    CHECK(result.reliable_sentiment == seed);
    // final predictions come from the last classifier over the unlabeled words
    CHECK(result.new_opinion_words ==
          predict_positive(result.classifier, fix.matrix, fix.split.unlabeled,
                           config.threshold));
}

TEST_CASE("the exhaustive loop keeps every growth invariant") {
    IterFixture fix = IterFixture::make();
    LpuConfig config = iter_config(Variant::Lpu, true);
    DisentangleResult result = run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, config);
    const auto& log = result.iteration_log;
    REQUIRE(log.size() >= static_cast<std::size_t>(config.max_iterations));

    const WordSet seed = set_intersection(
        reliable_neighbors(fix.table, fix.split.positives),
        mine_reliable(fix.kb, config.min_support).words);
    WordSet trusted;
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(log[i].t == static_cast<int>(i) + 1);
        if (i > 0) {
            CHECK(log[i].reliable_sentiment_size >= log[i - 1].reliable_sentiment_size);
        }
        CHECK(log[i].added.size() <=
              static_cast<std::size_t>(2 * config.words_per_iteration));
        for (const auto& word : log[i].added) {
            CHECK(trusted.count(word) == 0);  // never re-added
            trusted.insert(word);
            if (i == 0) {
                CHECK(seed.count(word) == 1);
            } else {
                // words trusted later carry neighbor evidence from the
                // prediction set they were selected against
                REQUIRE(i >= 2);
                CHECK(count_positive_neighbors(log[i - 2].predictions,
                                               fix.table.neighbor_words(word)) >= 1);
            }
        }
        CHECK(log[i].reliable_sentiment_size == trusted.size());
    }
    CHECK(result.reliable_sentiment == trusted);
    CHECK(trusted.size() > seed.size());  // the fixture genuinely iterates
}

TEST_CASE("the knowledge-only variant never trusts its own predictions") {
    IterFixture fix = IterFixture::make();
    LpuConfig config = iter_config(Variant::LpuMinor, true);
    DisentangleResult result = run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, config);
    const WordSet mined = mine_reliable(fix.kb, config.min_support).words;
    CHECK(!result.reliable_sentiment.empty());
    CHECK(set_difference(result.reliable_sentiment, mined).empty());
    // after the seed enters in one batch, each round adds at most l words
    for (std::size_t i = 1; i < result.iteration_log.size(); ++i) {
        CHECK(result.iteration_log[i].added.size() <=
              static_cast<std::size_t>(config.words_per_iteration));
    }
}

TEST_CASE("self-training variants run their full loop") {
    IterFixture fix = IterFixture::make();
    for (Variant variant : {Variant::AblationB, Variant::AblationC}) {
        DisentangleResult result =
            run_lpu({fix.matrix, fix.table}, fix.split, fix.kb, iter_config(variant, false));
        CHECK(!result.iteration_log.empty());
        CHECK(result.reliable_sentiment.empty());
        CHECK(result.new_opinion_words ==
              predict_positive(result.classifier, fix.matrix, fix.split.unlabeled, 0.5));
    }
    LabelSplit thin{{"lex0"}, fix.split.unlabeled};
    CHECK_THROWS_AS(
        run_lpu({fix.matrix, fix.table}, thin, fix.kb, iter_config(Variant::AblationB, false)),
        std::runtime_error);
}

TEST_CASE("variant names round-trip") {
    for (Variant variant : {Variant::Lpu, Variant::LpuMinor, Variant::Nll,
                            Variant::AblationB, Variant::AblationC}) {
        CHECK(parse_variant(variant_name(variant)) == variant);
    }
    CHECK_THROWS_AS(parse_variant("frobnicate"), std::invalid_argument);
}

TEST_CASE("disentangle splits a ranking into aspect and opinion words") {
    EmbeddingMatrix matrix(
        Vocabulary({"display", "scratched"}, std::vector<std::int64_t>{2, 1}, 1), 1);
    matrix.mutable_row(0)[0] = 0.0f;
    matrix.mutable_row(1)[0] = 0.0f;
    TargetQueryResult ranking;
    ranking.target = "phone";
    ranking.t_words = {{"display", 0.9}, {"scratched", 0.8}};
    PuClassifier zero;
    zero.weights = {0.0};

    SUBCASE("lexicon membership wins") {
        Disentangled out = disentangle(ranking, zero, matrix, {"scratched"}, {}, 0.5);
        REQUIRE(out.aspect.size() == 1);
        REQUIRE(out.opinion.size() == 1);
        CHECK(out.aspect[0].word == "display");
        CHECK(out.opinion[0].word == "scratched");
    }
    SUBCASE("a zero classifier keeps everything aspect") {
        Disentangled out = disentangle(ranking, zero, matrix, {}, {}, 0.5);
        CHECK(out.aspect.size() == 2);
        CHECK(out.opinion.empty());
    }
    SUBCASE("learned positives win") {
        Disentangled out = disentangle(ranking, zero, matrix, {}, {"display"}, 0.5);
        REQUIRE(out.opinion.size() == 1);
        CHECK(out.opinion[0].word == "display");
    }
}

TEST_CASE("disentangle partitions the ranking and keeps its order") {
    std::mt19937_64 rng(1207);
    EmbeddingMatrix matrix = oracle::random_matrix(rng, 80, 4);
    PuClassifier clf;
    clf.weights = {1.2, -0.5, 0.3, 0.9};
    clf.bias = -0.1;
    TargetQueryResult ranking = query_target(matrix, matrix.vocab().word(0), 60, Metric::Cosine);
    const auto& words = matrix.vocab().words();
    Disentangled out = disentangle(ranking, clf, matrix, oracle::random_subset(rng, words, 10),
                                   oracle::random_subset(rng, words, 10), 0.5);
    CHECK(out.aspect.size() + out.opinion.size() == ranking.t_words.size());
    // both lists are subsequences of the ranking
    for (const auto* list : {&out.aspect, &out.opinion}) {
        std::size_t cursor = 0;
        for (const auto& neighbor : *list) {
            while (cursor < ranking.t_words.size() &&
                   ranking.t_words[cursor].word != neighbor.word) {
                ++cursor;
            }
            CHECK(cursor < ranking.t_words.size());
        }
    }
}
