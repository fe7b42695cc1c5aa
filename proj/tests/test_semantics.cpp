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

#include "lpusent/semantics.hpp"
#include "oracles.hpp"

using namespace lpusent;

namespace {

EmbeddingMatrix tiny_matrix(const std::vector<std::string>& words,
                            const std::vector<std::vector<float>>& rows) {
    EmbeddingMatrix matrix(
        Vocabulary(words, std::vector<std::int64_t>(words.size(), 1), 1),
        static_cast<int>(rows.front().size()));
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto row = matrix.mutable_row(matrix.vocab().index_of(words[i]));
        std::copy(rows[i].begin(), rows[i].end(), row.begin());
    }
    return matrix;
}

}  // namespace

TEST_CASE("similarity computes dot and cosine") {
    EmbeddingMatrix m = tiny_matrix({"x", "y", "z"}, {{1, 0}, {0, 1}, {2, 0}});
    CHECK(similarity(m, "x", "x", Metric::Dot) == doctest::Approx(1.0));
    CHECK(similarity(m, "x", "y", Metric::Dot) == doctest::Approx(0.0));
    CHECK(similarity(m, "z", "z", Metric::Cosine) == doctest::Approx(1.0));
    CHECK(similarity(m, "x", "z", Metric::Cosine) == doctest::Approx(1.0));
    CHECK_THROWS_WITH_AS(similarity(m, "x", "ghost", Metric::Dot),
                         doctest::Contains("ghost"), std::out_of_range);
}

TEST_CASE("cosine against a zero vector is zero") {
    EmbeddingMatrix m = tiny_matrix({"x", "zero"}, {{1, 1}, {0, 0}});
    CHECK(similarity(m, "x", "zero", Metric::Cosine) == 0.0);
    CHECK(similarity(m, "zero", "zero", Metric::Cosine) == 0.0);
}

TEST_CASE("three-word neighbor table picks the nearest other word") {
    EmbeddingMatrix m = tiny_matrix({"a", "b", "c"}, {{1, 0}, {0.9f, 0.1f}, {0, 1}});
    NeighborTable table = build_neighbor_table(m, 1, Metric::Cosine);
    REQUIRE(table.neighbors("a").size() == 1);
    CHECK(table.neighbors("a")[0].word == "b");
    CHECK(table.neighbors("b")[0].word == "a");
    // c is orthogonal to a and barely tilted toward b
    CHECK(table.neighbors("c")[0].word == "b");
    CHECK(table.neighbors("c")[0].score == doctest::Approx(0.110432).epsilon(1e-4));

    NeighborTable dot_table = build_neighbor_table(m, 1, Metric::Dot);
    CHECK(dot_table.neighbors("a")[0].word == "b");
    CHECK(dot_table.neighbors("c")[0].word == "b");
}

TEST_CASE("k saturates at vocabulary size minus one") {
    std::mt19937_64 rng(5);
    EmbeddingMatrix m = oracle::random_matrix(rng, 8, 4);
    NeighborTable table = build_neighbor_table(m, 50, Metric::Cosine);
    for (const auto& word : m.vocab().words()) {
        CHECK(table.neighbors(word).size() == 7);
    }
}

TEST_CASE("neighbor lists agree with a full scan including tie order") {
    std::mt19937_64 rng(91);
    for (int round = 0; round < 4; ++round) {
        EmbeddingMatrix m = oracle::random_matrix(rng, 60, 6);
        for (Metric metric : {Metric::Cosine, Metric::Dot}) {
            const auto expected = oracle::all_neighbors(m, 9, metric);
            NeighborTable table = build_neighbor_table(m, 9, metric);
            for (std::size_t i = 0; i < m.size(); ++i) {
                const auto& got = table.neighbors(m.vocab().word(i));
                REQUIRE(got.size() == expected[i].size());
                for (std::size_t j = 0; j < got.size(); ++j) {
                    CHECK(got[j].word == expected[i][j].word);
                    CHECK(got[j].score == expected[i][j].score);
                }
            }
        }
    }
}

TEST_CASE("larger k only appends to a neighbor list") {
    std::mt19937_64 rng(17);
    EmbeddingMatrix m = oracle::random_matrix(rng, 40, 5);
    NeighborTable small = build_neighbor_table(m, 5, Metric::Cosine);
    NeighborTable large = build_neighbor_table(m, 9, Metric::Cosine);
    for (const auto& word : m.vocab().words()) {
        const auto& a = small.neighbors(word);
        const auto& b = large.neighbors(word);
        REQUIRE(b.size() >= a.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].word == b[i].word);
    }
}

TEST_CASE("cosine ranking ignores positive row scaling") {
    std::mt19937_64 rng(23);
    EmbeddingMatrix m = oracle::random_matrix(rng, 30, 5);
    EmbeddingMatrix scaled = m;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        for (float& x : scaled.mutable_row(i)) x *= 4.0f;  // exact in binary float
    }
    NeighborTable base = build_neighbor_table(m, 6, Metric::Cosine);
    NeighborTable after = build_neighbor_table(scaled, 6, Metric::Cosine);
    for (const auto& word : m.vocab().words()) {
        CHECK(base.neighbor_words(word) == after.neighbor_words(word));
    }
}

TEST_CASE("hand-built tables validate their shape") {
    CHECK_THROWS_AS(NeighborTable(1, Metric::Cosine, {"a", "b"}, {{}}),
                    std::invalid_argument);
    NeighborTable table(1, Metric::Cosine, {"a"}, {{{"b", 0.5}}});
    CHECK(table.neighbor_words("a") == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(table.neighbors("nope"), std::out_of_range);
}

TEST_CASE("query_target returns the ranked words around the target") {
    EmbeddingMatrix m = tiny_matrix({"device", "screen", "battery", "noise"},
                                    {{1, 0}, {0.95f, 0.05f}, {0.8f, 0.2f}, {0, 1}});
    TargetQueryResult top = query_target(m, "device", 2, Metric::Cosine);
    REQUIRE(top.t_words.size() == 2);
    CHECK(top.target == "device");
    CHECK(top.t_words[0].word == "screen");
    CHECK(top.t_words[1].word == "battery");

    TargetQueryResult all = query_target(m, "device", 10, Metric::Cosine);
    CHECK(all.t_words.size() == 3);  // target itself excluded
    for (std::size_t i = 0; i < top.t_words.size(); ++i) {
        CHECK(all.t_words[i].word == top.t_words[i].word);  // prefix property
    }
    CHECK_THROWS_WITH_AS(query_target(m, "dvice", 2, Metric::Cosine),
                         doctest::Contains("dvice"), std::out_of_range);
}

TEST_CASE("closest_words ranks by edit distance then word") {
    Vocabulary vocab({"screen", "screens", "speaker", "green"},
                     std::vector<std::int64_t>{4, 3, 2, 1}, 1);
    auto hints = closest_words(vocab, "scren", 2);
    REQUIRE(hints.size() == 2);
    CHECK(hints[0] == "screen");   // distance 1
    CHECK(hints[1] == "screens");  // distance 2
}
