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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lpusent/lpu.hpp"

namespace lpusent {

enum class WordLabel { Aspect, Opinion };

WordLabel parse_label(const std::string& name);  // "ASPECT" | "OPINION"
std::string label_name(WordLabel label);

/// Gold labels over a target's t-words, in ranking order.
struct LabeledTarget {
    std::string target;
    std::vector<std::pair<std::string, WordLabel>> labels;  // rank order
    std::map<std::string, WordLabel> by_word;

    void add(const std::string& word, WordLabel label);  // throws on duplicate word
};

/// Fraction of the top-n gold words whose predicted label matches.
/// Throws std::runtime_error("insufficient labels...") when gold covers fewer
/// than n words, and errors on a gold word missing from `predictions`.
double acc_at_n(const std::map<std::string, WordLabel>& predictions,
                const LabeledTarget& gold, int n);

/// Reorders a gold label set to a concrete t-word ranking. Every ranked word
/// must be labeled; otherwise the evaluated prefix is not fully annotated and
/// the call fails with "insufficient labels".
LabeledTarget align_to_ranking(const LabeledTarget& gold,
                               const std::vector<Neighbor>& ranking);

/// Gold file format: TSV "target<TAB>word<TAB>{ASPECT|OPINION}", one target's
/// block in rank order.
std::vector<LabeledTarget> load_gold(const std::filesystem::path& path);
void save_gold(const std::vector<LabeledTarget>& gold, const std::filesystem::path& path);

/// Prediction file format: TSV "word<TAB>{ASPECT|OPINION}".
std::map<std::string, WordLabel> load_predictions(const std::filesystem::path& path);
void save_predictions(const std::map<std::string, WordLabel>& predictions,
                      const std::filesystem::path& path);

/// Parameters of the planted-word benchmark generator.
struct SyntheticSpec {
    int n_domains = 6;
    int opinion_words = 20;     // planted opinion words, present in every domain
    int aspect_words = 30;      // planted aspect words around the target
    int confusable_words = 0;   // aspect words that also co-occur with lexicon seeds
    int lexicon_words = 24;     // general opinion lexicon seeds
    int background_words = 120;
    int sentences_per_domain = 700;
    int min_support = 5;
    std::string target = "device";
    int min_count = 5;
    int embedding_dim = 50;
    int embedding_window = 5;
    int embedding_epochs = 30;
    double embedding_lr = 0.05;
    // Classifier setup used for both knowledge accumulation and the engine
    // runs. Strong smoothing plus positive reweighting keeps the probability
    // a function of cluster geometry instead of exact lexicon membership.
    double pu_l2 = 2.0;
    double pu_positive_weight = 4.0;
};

/// Reads a key=value file ('#' comments allowed) into a SyntheticSpec;
/// unknown keys are errors.
SyntheticSpec parse_synthetic_spec(const std::filesystem::path& path);

/// A desk-scale benchmark with known ground truth: planted opinion words
/// co-occur with the lexicon seeds (and recur in every domain, so mining can
/// surface them); planted aspect words co-occur with the target; confusable
/// aspect words sit in between.
struct SyntheticBenchmark {
    SyntheticSpec spec;
    std::uint64_t seed = 0;
    WordSet planted_opinion;
    WordSet planted_aspect;      // includes the confusable words
    WordSet confusable_aspect;   // subset of planted_aspect
    WordSet lexicon_seeds;
    std::vector<std::vector<Document>> corpora;  // one corpus per domain
    std::vector<LabeledTarget> gold;             // full-vocabulary coverage
};

/// Deterministic for a fixed (spec, seed). Throws on a contradictory spec
/// (for example min_support > n_domains).
SyntheticBenchmark generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// Per-domain pipeline artifacts for benchmark runs.
struct DomainArtifacts {
    Vocabulary vocab;
    EmbeddingMatrix embeddings;
    NeighborTable neighbors;
};

/// Builds vocabulary, trains embeddings (seeded from the benchmark seed and
/// the domain index) and the top-k neighbor table for one benchmark domain.
DomainArtifacts build_domain_artifacts(const SyntheticBenchmark& bench,
                                       std::size_t domain_index, int neighbor_k = 10);

/// Knowledge accumulation over the benchmark domains: each domain gets a
/// single lexicon-trained classifier and its predicted opinion words are
/// retained. `current_domain` is skipped (pass bench.corpora.size() to keep
/// every domain).
KnowledgeBase accumulate_knowledge(const SyntheticBenchmark& bench,
                                   std::size_t current_domain);

struct VariantReportRow {
    std::string variant;
    std::string target;
    double acc50 = 0.0;
    double acc100 = 0.0;
    double acc150 = 0.0;
};

struct VariantRunResult {
    Variant variant = Variant::Lpu;
    DisentangleResult engine;
    std::vector<VariantReportRow> rows;  // one per gold target
};

/// End-to-end run on the benchmark's current domain (index 0): mines
/// knowledge from the remaining domains, runs every variant, disentangles each
/// target's t-words and scores acc@{50,100,150} against gold.
std::vector<VariantRunResult> run_benchmark(const SyntheticBenchmark& bench,
                                            const std::vector<Variant>& variants);

/// The accuracy rows of run_benchmark, flattened for reporting.
std::vector<VariantReportRow> compare_variants(const SyntheticBenchmark& bench,
                                               const std::vector<Variant>& variants);

/// CSV with header "variant,target,acc@50,acc@100,acc@150".
void write_report_csv(const std::vector<VariantReportRow>& rows, std::ostream& out);

}  // namespace lpusent
