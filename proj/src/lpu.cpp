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

#include "lpusent/lpu.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpusent {

Variant parse_variant(const std::string& name) {
    if (name == "lpu") return Variant::Lpu;
    if (name == "lpu-minor") return Variant::LpuMinor;
    if (name == "nll") return Variant::Nll;
    if (name == "ablation-b") return Variant::AblationB;
    if (name == "ablation-c") return Variant::AblationC;
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected lpu, lpu-minor, nll, ablation-b, ablation-c)");
}

std::string variant_name(Variant variant) {
    switch (variant) {
        case Variant::Lpu: return "lpu";
        case Variant::LpuMinor: return "lpu-minor";
        case Variant::Nll: return "nll";
        case Variant::AblationB: return "ablation-b";
        case Variant::AblationC: return "ablation-c";
    }
    return "lpu";
}

WordSet reliable_neighbors(const NeighborTable& table, const WordSet& positives) {
    WordSet out;
    for (const auto& p : positives) {
        if (!table.contains(p)) continue;
        for (const auto& n : table.neighbors(p)) out.insert(n.word);
    }
    for (const auto& p : positives) out.erase(p);
    return out;
}

int count_positive_neighbors(const WordSet& b, const std::vector<std::string>& neighbors) {
    int count = 0;
    WordSet seen;
    for (const auto& w : neighbors) {
        if (b.count(w) && seen.insert(w).second) ++count;
    }
    return count;
}

int count_positive_neighbors(const WordSet& b, const std::vector<Neighbor>& neighbors) {
    int count = 0;
    WordSet seen;
    for (const auto& n : neighbors) {
        if (b.count(n.word) && seen.insert(n.word).second) ++count;
    }
    return count;
}

std::vector<std::string> reliable_opinion(const WordSet& a, const WordSet& b,
                                          const NeighborTable& table, int l,
                                          const std::map<std::string, double>& scores) {
    if (l < 1) throw std::invalid_argument("reliable_opinion: l must be >= 1");
    struct Ranked {
        std::string word;
        int count;
        double score;
    };
    std::vector<Ranked> ranked;
    for (const auto& w : a) {
        if (!table.contains(w)) continue;
        const int count = count_positive_neighbors(b, table.neighbors(w));
        if (count < 1) continue;  // zero evidence is never reliable
        const auto it = scores.find(w);
        ranked.push_back({w, count, it == scores.end() ? 0.0 : it->second});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
        if (x.count != y.count) return x.count > y.count;
        if (x.score != y.score) return x.score > y.score;
        return x.word < y.word;
    });
    if (ranked.size() > static_cast<std::size_t>(l)) ranked.resize(l);
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (auto& r : ranked) out.push_back(std::move(r.word));
    return out;
}

namespace {

WordSet vocab_words(const Vocabulary& vocab) {
    return WordSet(vocab.words().begin(), vocab.words().end());
}

// Scores candidate words under the given classifier (tie-break evidence for
// the expansion ranking).
std::map<std::string, double> score_map(const PuClassifier& clf,
                                        const EmbeddingMatrix& matrix, const WordSet& words) {
    std::map<std::string, double> out;
    for (const auto& w : words) {
        out.emplace(w, predict_probability(clf, matrix.vector(w)));
    }
    return out;
}

bool trainable(const LabelSplit& split) {
    return split.positives.size() >= 2 && split.unlabeled.size() >= 2;
}

DisentangleResult run_nll(const CorpusArtifacts& artifacts, const LabelSplit& split,
                          const LpuConfig& config) {
    DisentangleResult result;
    result.classifier = train_pu(artifacts.embeddings, split, config.pu);
    result.new_opinion_words = predict_positive(result.classifier, artifacts.embeddings,
                                                split.unlabeled, config.threshold);
    return result;
}

// Restricted PU iterations with knowledge-gated expansion (the core engine).
DisentangleResult run_restricted(const CorpusArtifacts& artifacts, const LabelSplit& split,
                                 const KnowledgeBase& kb, const LpuConfig& config) {
    const EmbeddingMatrix& emb = artifacts.embeddings;
    const NeighborTable& table = artifacts.neighbors;
    const WordSet all = vocab_words(emb.vocab());

    const WordSet mined =
        mine_reliable(kb, config.min_support, config.current_domain).words;

    LpuState state;
    state.reliable_neighbors = reliable_neighbors(table, split.positives);
    state.domain_knowledge = set_intersection(all, mined);
    state.new_sentiment =
        set_intersection(state.reliable_neighbors, state.domain_knowledge);

    const WordSet& scope = config.prediction_scope == PredictionScope::AllWords
                               ? all
                               : split.unlabeled;

    DisentangleResult result;
    bool trained = false;
    auto keep_looping = [&]() {
        const bool below_max = state.iteration < config.max_iterations;
        const bool has_new = !state.new_sentiment.empty();
        return config.or_loop ? (below_max || has_new) : (below_max && has_new);
    };

    while (keep_looping()) {
        const WordSet added = set_difference(state.new_sentiment, state.reliable_sentiment);
        state.reliable_sentiment = set_union(state.reliable_sentiment, state.new_sentiment);

        LabelSplit iter_split;
        iter_split.positives = set_union(state.reliable_sentiment, split.positives);
        iter_split.unlabeled = set_difference(all, iter_split.positives);
        if (!trainable(iter_split)) {
            result.note = "stopped: expansion left fewer than 2 positives or unlabeled words";
            break;
        }
        result.classifier = train_pu(emb, iter_split, config.pu);
        trained = true;

        const WordSet known = iter_split.positives;
        const WordSet from_knowledge = set_difference(state.domain_knowledge, known);
        const WordSet from_predictions = set_difference(state.current_predictions, known);
        const auto ties =
            score_map(result.classifier, emb, set_union(from_knowledge, from_predictions));

        const auto new1 = reliable_opinion(from_knowledge, state.current_predictions, table,
                                           config.words_per_iteration, ties);
        std::vector<std::string> new2;
        if (config.variant == Variant::Lpu) {
            new2 = reliable_opinion(from_predictions, state.current_predictions, table,
                                    config.words_per_iteration, ties);
        }
        state.new_sentiment = WordSet(new1.begin(), new1.end());
        state.new_sentiment.insert(new2.begin(), new2.end());

        state.current_predictions =
            predict_positive(result.classifier, emb, scope, config.threshold);
        ++state.iteration;

        result.iteration_log.push_back({state.iteration, state.reliable_sentiment.size(),
                                        state.current_predictions,
                                        state.new_sentiment.size(),
                                        {added.begin(), added.end()}});
    }

    if (!trained) {
        // No seed knowledge: the run reduces to the non-lifelong classifier.
        result.classifier = train_pu(emb, split, config.pu);
        result.note = "degenerate lifelong case: empty initial seed, result equals nll";
    }
    result.reliable_sentiment = state.reliable_sentiment;
    result.new_opinion_words = predict_positive(result.classifier, emb, split.unlabeled,
                                                config.threshold);
    return result;
}

// Unconstrained self-training: the predicted positives replace the training
// positives each round.
DisentangleResult run_ablation_b(const CorpusArtifacts& artifacts, const LabelSplit& split,
                                 const LpuConfig& config) {
    const EmbeddingMatrix& emb = artifacts.embeddings;
    const WordSet all = vocab_words(emb.vocab());
    const WordSet& scope = config.prediction_scope == PredictionScope::AllWords
                               ? all
                               : split.unlabeled;

    DisentangleResult result;
    WordSet positives = split.positives;
    bool trained = false;
    for (int t = 0; t < config.max_iterations; ++t) {
        LabelSplit iter_split{positives, set_difference(all, positives)};
        if (!trainable(iter_split)) {
            result.note = "stopped: self-training positives became untrainable at iteration " +
                          std::to_string(t);
            break;
        }
        result.classifier = train_pu(emb, iter_split, config.pu);
        trained = true;
        const WordSet next = predict_positive(result.classifier, emb, scope, config.threshold);
        const WordSet added = set_difference(next, positives);
        result.iteration_log.push_back(
            {t + 1, set_difference(positives, split.positives).size(), next, 0,
             {added.begin(), added.end()}});
        positives = next;
    }
    if (!trained) {
        throw std::runtime_error("ablation-b: initial split is untrainable");
    }
    result.new_opinion_words = predict_positive(result.classifier, emb, split.unlabeled,
                                                config.threshold);
    return result;
}

// Self-training anchored to the lexicon: positives are always the lexicon
// words plus the current predictions.
DisentangleResult run_ablation_c(const CorpusArtifacts& artifacts, const LabelSplit& split,
                                 const LpuConfig& config) {
    const EmbeddingMatrix& emb = artifacts.embeddings;
    const WordSet all = vocab_words(emb.vocab());
    const WordSet& scope = config.prediction_scope == PredictionScope::AllWords
                               ? all
                               : split.unlabeled;

    DisentangleResult result;
    WordSet predictions;
    bool trained = false;
    for (int t = 0; t < config.max_iterations; ++t) {
        LabelSplit iter_split;
        iter_split.positives = set_union(split.positives, predictions);
        iter_split.unlabeled = set_difference(all, iter_split.positives);
        if (!trainable(iter_split)) {
            result.note = "stopped: predictions swallowed the vocabulary at iteration " +
                          std::to_string(t);
            break;
        }
        result.classifier = train_pu(emb, iter_split, config.pu);
        trained = true;
        const WordSet next = predict_positive(result.classifier, emb, scope, config.threshold);
        const WordSet added = set_difference(next, predictions);
        result.iteration_log.push_back({t + 1, predictions.size(), next, 0,
                                        {added.begin(), added.end()}});
        predictions = next;
    }
    if (!trained) {
        throw std::runtime_error("ablation-c: initial split is untrainable");
    }
    result.new_opinion_words = predict_positive(result.classifier, emb, split.unlabeled,
                                                config.threshold);
    return result;
}

}  // namespace

DisentangleResult run_lpu(const CorpusArtifacts& artifacts, const LabelSplit& split,
                          const KnowledgeBase& kb, const LpuConfig& config) {
    if (config.max_iterations < 1 || config.words_per_iteration < 1 ||
        config.neighbor_k < 1) {
        throw std::invalid_argument("lpu config: m, l and neighbor_k must be >= 1");
    }
    switch (config.variant) {
        case Variant::Nll:
            return run_nll(artifacts, split, config);
        case Variant::AblationB:
            return run_ablation_b(artifacts, split, config);
        case Variant::AblationC:
            return run_ablation_c(artifacts, split, config);
        case Variant::Lpu:
        case Variant::LpuMinor:
            return run_restricted(artifacts, split, kb, config);
    }
    throw std::logic_error("unreachable variant");
}

Disentangled disentangle(const TargetQueryResult& t_words, const PuClassifier& clf,
                         const EmbeddingMatrix& matrix, const WordSet& lexicon_positives,
                         const WordSet& learned_positives, double threshold) {
    if (t_words.t_words.empty()) {
        throw std::invalid_argument("disentangle: empty t-word list");
    }
    Disentangled out;
    for (const auto& n : t_words.t_words) {
        const bool opinion = lexicon_positives.count(n.word) ||
                             learned_positives.count(n.word) ||
                             predict_probability(clf, matrix.vector(n.word)) > threshold;
        (opinion ? out.opinion : out.aspect).push_back(n);
    }
    return out;
}

}  // namespace lpusent
