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

#include <map>
#include <string>
#include <vector>

#include "lpusent/knowledge.hpp"
#include "lpusent/pu.hpp"
#include "lpusent/semantics.hpp"
#include "lpusent/types.hpp"

namespace lpusent {

enum class Variant {
    Lpu,        // knowledge-restricted iterative expansion
    LpuMinor,   // expands from mined knowledge only, never from self-predictions
    Nll,        // single classifier on lexicon positives, no iterations
    AblationB,  // unrestricted self-training: predictions replace the positives
    AblationC,  // lexicon positives plus current predictions, no restriction
};

Variant parse_variant(const std::string& name);  // "lpu" | "lpu-minor" | "nll" | ...
std::string variant_name(Variant variant);

enum class PredictionScope {
    UnlabeledOnly,  // in-loop prediction over the unlabeled words (default)
    AllWords,       // in-loop prediction over the whole vocabulary
};

struct LpuConfig {
    int max_iterations = 10;       // m
    int words_per_iteration = 50;  // l, per expansion route
    int neighbor_k = 10;           // k used when building the neighbor table
    int min_support = 5;           // knowledge-base mining support
    double threshold = 0.5;        // positive-prediction probability cutoff
    Variant variant = Variant::Lpu;
    PredictionScope prediction_scope = PredictionScope::UnlabeledOnly;
    /// Default loop runs while t < m AND new words remain. When set, the loop
    /// instead runs while t < m OR new words remain, which can take more than
    /// m iterations (still finitely many; the trusted set grows into a finite
    /// vocabulary).
    bool or_loop = false;
    /// When non-empty, this record of the knowledge base is excluded from
    /// mining, so a domain learns only from its past.
    std::string current_domain;
    PuOptions pu;
};

/// Evolving engine state, captured per iteration in the log.
struct LpuState {
    WordSet reliable_neighbors;   // W_RN: neighbors of lexicon positives
    WordSet domain_knowledge;     // W_SK restricted to this vocabulary
    WordSet reliable_sentiment;   // W_RS: trusted learned opinion words
    WordSet current_predictions;  // W_PP: latest positive predictions
    WordSet new_sentiment;        // W_NS: words queued for trusting
    int iteration = 0;
};

struct IterationRecord {
    int t = 0;  // 1-based, value after the iteration finished
    std::size_t reliable_sentiment_size = 0;
    WordSet predictions;  // W_PP after this iteration's classifier ran
    std::size_t new_sentiment_size = 0;
    std::vector<std::string> added;  // words newly trusted this iteration
};

struct DisentangleResult {
    WordSet new_opinion_words;  // final predictions over the unlabeled words
    std::vector<IterationRecord> iteration_log;
    WordSet reliable_sentiment;  // final trusted set (empty for NLL/ablations)
    PuClassifier classifier;     // the classifier used for the final prediction
    std::string note;            // set when a degenerate path was taken
};

/// Union of the positives' neighbor lists, minus the positives themselves.
WordSet reliable_neighbors(const NeighborTable& table, const WordSet& positives);

/// |B ∩ neighbors| (duplicates in `neighbors` count once).
int count_positive_neighbors(const WordSet& b, const std::vector<std::string>& neighbors);
int count_positive_neighbors(const WordSet& b, const std::vector<Neighbor>& neighbors);

/// Ranks candidates in A by how many of their neighbors are in B, and returns
/// at most l words, best first. Words with zero positive neighbors are never
/// returned. Ties break by higher `scores` value (when given), then by word.
/// Candidates missing from the table count zero neighbors.
std::vector<std::string> reliable_opinion(const WordSet& a, const WordSet& b,
                                          const NeighborTable& table, int l,
                                          const std::map<std::string, double>& scores = {});

struct CorpusArtifacts {
    const EmbeddingMatrix& embeddings;
    const NeighborTable& neighbors;
};

/// Runs the selected engine variant for the current domain and returns the
/// newly extracted opinion words plus the per-iteration log.
DisentangleResult run_lpu(const CorpusArtifacts& artifacts, const LabelSplit& split,
                          const KnowledgeBase& kb, const LpuConfig& config);

struct Disentangled {
    std::vector<Neighbor> aspect;
    std::vector<Neighbor> opinion;
};

/// Splits the grouped t-words: a word is an opinion word when it is a lexicon
/// positive, a learned positive, or scores above the threshold; every other
/// t-word is an aspect word. Both lists keep the similarity order.
Disentangled disentangle(const TargetQueryResult& t_words, const PuClassifier& clf,
                         const EmbeddingMatrix& matrix, const WordSet& lexicon_positives,
                         const WordSet& learned_positives, double threshold);

}  // namespace lpusent
