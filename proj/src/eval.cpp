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

#include "lpusent/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lpusent {

WordLabel parse_label(const std::string& name) {
    if (name == "ASPECT") return WordLabel::Aspect;
    if (name == "OPINION") return WordLabel::Opinion;
    throw std::invalid_argument("unknown word label '" + name + "' (expected ASPECT or OPINION)");
}

std::string label_name(WordLabel label) {
    return label == WordLabel::Aspect ? "ASPECT" : "OPINION";
}

void LabeledTarget::add(const std::string& word, WordLabel label) {
    if (!by_word.emplace(word, label).second) {
        throw std::invalid_argument("duplicate gold label for word '" + word +
                                    "' under target '" + target + "'");
    }
    labels.emplace_back(word, label);
}

double acc_at_n(const std::map<std::string, WordLabel>& predictions,
                const LabeledTarget& gold, int n) {
    if (n < 1) throw std::invalid_argument("acc_at_n: n must be >= 1");
    if (gold.labels.size() < static_cast<std::size_t>(n)) {
        std::ostringstream msg;
        msg << "insufficient labels for target '" << gold.target << "': " << gold.labels.size()
            << " labeled words, acc@" << n << " requested";
        throw std::runtime_error(msg.str());
    }
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const auto& [word, label] = gold.labels[static_cast<std::size_t>(i)];
        auto it = predictions.find(word);
        if (it == predictions.end()) {
            throw std::runtime_error("no prediction for gold word '" + word + "'");
        }
        if (it->second == label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

LabeledTarget align_to_ranking(const LabeledTarget& gold,
                               const std::vector<Neighbor>& ranking) {
    LabeledTarget aligned;
    aligned.target = gold.target;
    for (const auto& neighbor : ranking) {
        auto it = gold.by_word.find(neighbor.word);
        if (it == gold.by_word.end()) {
            throw std::runtime_error("insufficient labels: ranked word '" + neighbor.word +
                                     "' has no gold label under target '" + gold.target + "'");
        }
        aligned.add(neighbor.word, it->second);
    }
    return aligned;
}

std::vector<LabeledTarget> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gold file: " + path.string());
    std::vector<LabeledTarget> gold;
    std::unordered_map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string target, word, label;
        if (!std::getline(fields, target, '\t') || !std::getline(fields, word, '\t') ||
            !std::getline(fields, label, '\t')) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno
                << ": expected three tab-separated fields (target, word, label)";
            throw std::runtime_error(msg.str());
        }
        auto [it, fresh] = index.emplace(target, gold.size());
        if (fresh) {
            gold.emplace_back();
            gold.back().target = target;
        }
        try {
            gold[it->second].add(word, parse_label(label));
        } catch (const std::invalid_argument& e) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
    }
    return gold;
}

void save_gold(const std::vector<LabeledTarget>& gold, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write gold file: " + path.string());
    for (const auto& entry : gold) {
        for (const auto& [word, label] : entry.labels) {
            out << entry.target << '\t' << word << '\t' << label_name(label) << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed while writing gold file: " + path.string());
}

std::map<std::string, WordLabel> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prediction file: " + path.string());
    std::map<std::string, WordLabel> predictions;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string word, label;
        if (!std::getline(fields, word, '\t') || !std::getline(fields, label, '\t')) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno
                << ": expected two tab-separated fields (word, label)";
            throw std::runtime_error(msg.str());
        }
        try {
            if (!predictions.emplace(word, parse_label(label)).second) {
                throw std::invalid_argument("word '" + word + "' labeled twice");
            }
        } catch (const std::invalid_argument& e) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
    }
    return predictions;
}

void save_predictions(const std::map<std::string, WordLabel>& predictions,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write prediction file: " + path.string());
    for (const auto& [word, label] : predictions) {
        out << word << '\t' << label_name(label) << '\n';
    }
    if (!out) throw std::runtime_error("failed while writing prediction file: " + path.string());
}

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string make_word(const std::string& prefix, int i, int width) {
    std::ostringstream out;
    out << prefix << std::setw(width) << std::setfill('0') << i;
    return out.str();
}

std::vector<std::string> make_family(const std::string& prefix, int n, int width) {
    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) words.push_back(make_word(prefix, i, width));
    return words;
}

/// k distinct draws (the whole pool when k >= pool size), order randomized.
std::vector<std::string> pick_distinct(std::mt19937_64& rng,
                                       const std::vector<std::string>& pool, std::size_t k) {
    std::vector<std::string> out = pool;
    std::shuffle(out.begin(), out.end(), rng);
    if (out.size() > k) out.resize(k);
    return out;
}

const std::string& pick_one(std::mt19937_64& rng, const std::vector<std::string>& pool) {
    std::uniform_int_distribution<std::size_t> index(0, pool.size() - 1);
    return pool[index(rng)];
}

void append_all(std::vector<std::string>& tokens, std::vector<std::string> more) {
    for (auto& word : more) tokens.push_back(std::move(word));
}

std::string join(std::vector<std::string> tokens, std::mt19937_64& rng) {
    std::shuffle(tokens.begin(), tokens.end(), rng);
    std::string line;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) line += ' ';
        line += tokens[i];
    }
    return line;
}

/// Every sentiment word (seed or planted) has its own appetite for appearing
/// next to the target, cycling through these levels. Seeds and planted words
/// overlap in range, so proximity to the target alone never cleanly separates
/// the labeled positives from the planted words; planted words reach higher,
/// which puts the words a lexicon-only classifier tends to miss right at the
/// top of the target's ranking, where accumulated cross-domain knowledge can
/// recover them through their subgroup companions.
constexpr double kLexiconAffinity[] = {0.04, 0.12, 0.20, 0.28, 0.36};
constexpr double kOpinionAffinity[] = {0.06, 0.22, 0.38, 0.54, 0.70};
constexpr std::size_t kAffinityLevels = sizeof(kLexiconAffinity) / sizeof(kLexiconAffinity[0]);

/// Number of affinity-weighted sentiment draws in a target/sentiment
/// sentence. These sentences are the only place sentiment words meet the
/// target, and they carry no aspect words, so aspect words never soak up
/// sentiment context and drift over the decision threshold.
constexpr int kSentimentDrawsPerSentence = 3;

struct Families {
    std::vector<std::string> lexicon;
    std::vector<std::string> opinion;
    std::vector<std::string> aspect;      // plain aspect words
    std::vector<std::string> confusable;  // aspect words with lexicon contact
    std::vector<std::string> background;
    // Sentiment words come in co-occurrence subgroups: an opinion word keeps
    // company with a few specific seeds, not with the whole lexicon. Without
    // this the seeds form a block whose nearest neighbors are only other
    // seeds, and no planted word can enter their neighbor lists.
    std::vector<std::vector<std::string>> lexicon_groups;
    std::vector<std::vector<std::string>> opinion_groups;
    std::unordered_map<std::string, std::size_t> group_of;
    // Weighted pool for the sentiment slot of target-context sentences.
    std::vector<std::string> sentiment_pool;       // lexicon then opinion
    std::vector<double> sentiment_cumulative;      // running affinity sums

    void build_groups() {
        // The affinity cycle length is coprime to the group count, so every
        // subgroup contains both target-shy and target-leaning words.
        std::size_t n_groups = std::max<std::size_t>(
            1, std::min({lexicon.size() / 3, opinion.size() / 3, std::size_t{8}}));
        lexicon_groups.assign(n_groups, {});
        opinion_groups.assign(n_groups, {});
        for (std::size_t i = 0; i < lexicon.size(); ++i) {
            lexicon_groups[i % n_groups].push_back(lexicon[i]);
            group_of[lexicon[i]] = i % n_groups;
        }
        for (std::size_t i = 0; i < opinion.size(); ++i) {
            opinion_groups[i % n_groups].push_back(opinion[i]);
            group_of[opinion[i]] = i % n_groups;
        }
        double total = 0.0;
        auto add_weighted = [&](const std::vector<std::string>& family, const double* levels) {
            for (std::size_t i = 0; i < family.size(); ++i) {
                sentiment_pool.push_back(family[i]);
                total += levels[i % kAffinityLevels];
                sentiment_cumulative.push_back(total);
            }
        };
        add_weighted(lexicon, kLexiconAffinity);
        add_weighted(opinion, kOpinionAffinity);
    }

    const std::string& pick_sentiment(std::mt19937_64& rng) const {
        double draw = std::uniform_real_distribution<double>(
            0.0, sentiment_cumulative.back())(rng);
        auto it = std::upper_bound(sentiment_cumulative.begin(), sentiment_cumulative.end(), draw);
        std::size_t index = static_cast<std::size_t>(it - sentiment_cumulative.begin());
        if (index >= sentiment_pool.size()) index = sentiment_pool.size() - 1;
        return sentiment_pool[index];
    }
};

/// Probability that an opinion-context sentence in the evaluation domain
/// carries a confusable aspect word. Confusable words exist only in the
/// evaluation domain (they model domain-specific aspect words with a
/// sentiment-looking distribution), so this contact never reaches the
/// retention passes that feed the knowledge base. The dose is high enough
/// that a lexicon-trained classifier already mistakes them for sentiment:
/// from there, self-training that replaces its positives with its own
/// predictions locks them in, while a knowledge-restricted expansion never
/// admits them and its retrained classifier pushes them back under the
/// threshold.
constexpr double kConfusableSeedRate = 0.5;

// Opinion context: lexicon seeds and planted opinion words of one subgroup
// mingle, no target. In the evaluation domain a confusable aspect word may
// tag along.
std::string opinion_sentence(std::mt19937_64& rng, const Families& fam,
                             bool confusable_active) {
    std::uniform_int_distribution<std::size_t> pick_group(0, fam.lexicon_groups.size() - 1);
    std::size_t g = pick_group(rng);
    std::vector<std::string> tokens = pick_distinct(rng, fam.lexicon_groups[g], 3);
    append_all(tokens, pick_distinct(rng, fam.opinion_groups[g], 3));
    if (confusable_active && !fam.confusable.empty() &&
        std::bernoulli_distribution(kConfusableSeedRate)(rng)) {
        tokens.push_back(pick_one(rng, fam.confusable));
    }
    return join(std::move(tokens), rng);
}

// Target context: the target with its aspect words, nothing else.
std::string target_sentence(std::mt19937_64& rng, const std::string& target,
                            const Families& fam) {
    std::vector<std::string> tokens{target, target};
    append_all(tokens, pick_distinct(rng, fam.aspect, 4));
    return join(std::move(tokens), rng);
}

// Target/sentiment context: the direct target<->sentiment co-occurrence,
// drawn by affinity. Target-leaning sentiment words concentrate here, which
// is what pushes them up the target's neighbor ranking.
std::string sentiment_target_sentence(std::mt19937_64& rng, const std::string& target,
                                      const Families& fam) {
    std::vector<std::string> tokens{target};
    for (int i = 0; i < kSentimentDrawsPerSentence; ++i) {
        tokens.push_back(fam.pick_sentiment(rng));
    }
    return join(std::move(tokens), rng);
}

// Opinion-cluster chatter: planted opinion words of one subgroup among
// themselves, no seeds, no target.
std::string opinion_cluster_sentence(std::mt19937_64& rng, const Families& fam) {
    std::uniform_int_distribution<std::size_t> pick_group(0, fam.opinion_groups.size() - 1);
    const auto& group = fam.opinion_groups[pick_group(rng)];
    std::vector<std::string> tokens =
        pick_distinct(rng, group, std::min<std::size_t>(4, group.size()));
    return join(std::move(tokens), rng);
}

// Confusable context: a tight clique of aspect words that show up next to
// the target and to lexicon seeds, mimicking aspect words with a
// sentiment-looking distribution. The clique keeps a private co-occurrence
// direction: a retrained classifier that treats them as unlabeled can push
// the whole clique back down at once, while one that has adopted them as
// positives reinforces them instead.
std::string confusable_sentence(std::mt19937_64& rng, const std::string& target,
                                const Families& fam) {
    std::vector<std::string> tokens =
        pick_distinct(rng, fam.confusable, std::min<std::size_t>(4, fam.confusable.size()));
    tokens.push_back(target);
    return join(std::move(tokens), rng);
}

std::string background_sentence(std::mt19937_64& rng, const Families& fam) {
    return join(pick_distinct(rng, fam.background, 7), rng);
}

/// A sentence that contains `word` and keeps its family's usual context; used
/// to top up rare words so every planted word clears the frequency filter.
std::string forced_sentence(std::mt19937_64& rng, const std::string& word,
                            const std::string& family, const std::string& target,
                            const Families& fam) {
    std::vector<std::string> tokens;
    if (family == "lexicon") {
        std::size_t g = fam.group_of.at(word);
        tokens = {word};
        append_all(tokens, pick_distinct(rng, fam.lexicon_groups[g], 2));
        append_all(tokens, pick_distinct(rng, fam.opinion_groups[g], 3));
    } else if (family == "opinion") {
        std::size_t g = fam.group_of.at(word);
        tokens = {word};
        append_all(tokens, pick_distinct(rng, fam.lexicon_groups[g], 3));
        append_all(tokens, pick_distinct(rng, fam.opinion_groups[g], 2));
    } else if (family == "aspect") {
        tokens = {word, target, target};
        append_all(tokens, pick_distinct(rng, fam.aspect, 3));
    } else if (family == "confusable") {
        tokens = {word, target};
        append_all(tokens,
                   pick_distinct(rng, fam.confusable, std::min<std::size_t>(3, fam.confusable.size())));
    } else if (family == "background") {
        tokens = {word};
        append_all(tokens, pick_distinct(rng, fam.background, 6));
    } else {  // the target word itself
        tokens = {word, word};
        append_all(tokens, pick_distinct(rng, fam.aspect, 4));
    }
    return join(std::move(tokens), rng);
}

void validate_spec(const SyntheticSpec& spec) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("synthetic spec: " + msg); };
    if (spec.n_domains < 1) fail("n_domains must be >= 1");
    if (spec.lexicon_words < 4) fail("lexicon_words must be >= 4");
    if (spec.opinion_words != 0 && spec.opinion_words < 2) {
        fail("opinion_words must be 0 (no planting) or >= 2");
    }
    if (spec.aspect_words < 2) fail("aspect_words must be >= 2");
    if (spec.confusable_words < 0) fail("confusable_words must be >= 0");
    if (spec.confusable_words > spec.aspect_words - 2) {
        fail("confusable_words must leave at least 2 plain aspect words");
    }
    if (spec.background_words < 7) fail("background_words must be >= 7");
    if (spec.sentences_per_domain < 50) fail("sentences_per_domain must be >= 50");
    if (spec.min_support < 1) fail("min_support must be >= 1");
    if (spec.min_support > spec.n_domains) {
        std::ostringstream msg;
        msg << "contradictory spec: min_support " << spec.min_support << " exceeds the "
            << spec.n_domains << " domains, so no planted word can ever be frequent";
        fail(msg.str());
    }
    if (spec.min_count < 1) fail("min_count must be >= 1");
    if (spec.target.empty()) fail("target must be non-empty");
    if (spec.target.find_first_of(" \t\r\n") != std::string::npos) {
        fail("target must not contain whitespace");
    }
    if (spec.embedding_dim < 2) fail("embedding_dim must be >= 2");
    if (spec.embedding_window < 1) fail("embedding_window must be >= 1");
    if (spec.embedding_epochs < 1) fail("embedding_epochs must be >= 1");
    if (spec.embedding_lr <= 0.0) fail("embedding_lr must be positive");
    if (spec.pu_l2 < 0.0) fail("pu_l2 must be >= 0");
    if (spec.pu_positive_weight <= 0.0) fail("pu_positive_weight must be positive");
}

}  // namespace

SyntheticSpec parse_synthetic_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open benchmark spec: " + path.string());
    SyntheticSpec spec;
    std::string line;
    std::size_t lineno = 0;
    auto parse_int = [&](const std::string& value, const std::string& key) {
        try {
            std::size_t used = 0;
            int parsed = std::stoi(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": bad integer '" << value << "' for key '"
                << key << "'";
            throw std::runtime_error(msg.str());
        }
    };
    auto parse_double = [&](const std::string& value, const std::string& key) {
        try {
            std::size_t used = 0;
            double parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": bad number '" << value << "' for key '"
                << key << "'";
            throw std::runtime_error(msg.str());
        }
    };
    auto trim = [](std::string text) {
        const char* ws = " \t\r";
        auto begin = text.find_first_not_of(ws);
        if (begin == std::string::npos) return std::string();
        auto end = text.find_last_not_of(ws);
        return text.substr(begin, end - begin + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": expected 'key = value'";
            throw std::runtime_error(msg.str());
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "n_domains") spec.n_domains = parse_int(value, key);
        else if (key == "opinion_words") spec.opinion_words = parse_int(value, key);
        else if (key == "aspect_words") spec.aspect_words = parse_int(value, key);
        else if (key == "confusable_words") spec.confusable_words = parse_int(value, key);
        else if (key == "lexicon_words") spec.lexicon_words = parse_int(value, key);
        else if (key == "background_words") spec.background_words = parse_int(value, key);
        else if (key == "sentences_per_domain") spec.sentences_per_domain = parse_int(value, key);
        else if (key == "min_support") spec.min_support = parse_int(value, key);
        else if (key == "target") spec.target = value;
        else if (key == "min_count") spec.min_count = parse_int(value, key);
        else if (key == "embedding_dim") spec.embedding_dim = parse_int(value, key);
        else if (key == "embedding_window") spec.embedding_window = parse_int(value, key);
        else if (key == "embedding_epochs") spec.embedding_epochs = parse_int(value, key);
        else if (key == "embedding_lr") spec.embedding_lr = parse_double(value, key);
        else if (key == "pu_l2") spec.pu_l2 = parse_double(value, key);
        else if (key == "pu_positive_weight") spec.pu_positive_weight = parse_double(value, key);
        else {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": unknown key '" << key << "'";
            throw std::runtime_error(msg.str());
        }
    }
    validate_spec(spec);
    return spec;
}

SyntheticBenchmark generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    validate_spec(spec);

    Families fam;
    fam.lexicon = make_family("lex", spec.lexicon_words, 2);
    fam.opinion = make_family("opn", spec.opinion_words, 2);
    fam.aspect = make_family("asp", spec.aspect_words - spec.confusable_words, 2);
    fam.confusable = make_family("cnf", spec.confusable_words, 2);
    fam.background = make_family("bkg", spec.background_words, 3);
    fam.build_groups();

    SyntheticBenchmark bench;
    bench.spec = spec;
    bench.seed = seed;
    bench.lexicon_seeds = WordSet(fam.lexicon.begin(), fam.lexicon.end());
    bench.planted_opinion = WordSet(fam.opinion.begin(), fam.opinion.end());
    bench.planted_aspect = WordSet(fam.aspect.begin(), fam.aspect.end());
    bench.planted_aspect.insert(fam.confusable.begin(), fam.confusable.end());
    bench.confusable_aspect = WordSet(fam.confusable.begin(), fam.confusable.end());

    const int n = spec.sentences_per_domain;
    const int n_opinion = (n * 2) / 5;
    const int n_target = (n * 8) / 25;
    const int n_sentiment_target = n / 10;
    const int n_cluster = fam.opinion.empty() ? 0 : (n * 3) / 50;

    const int required = spec.min_count + 1;  // margin above the frequency filter
    std::vector<std::pair<std::string, std::string>> all_words;  // (word, family)
    for (const auto& w : fam.lexicon) all_words.emplace_back(w, "lexicon");
    for (const auto& w : fam.opinion) all_words.emplace_back(w, "opinion");
    for (const auto& w : fam.aspect) all_words.emplace_back(w, "aspect");
    for (const auto& w : fam.background) all_words.emplace_back(w, "background");
    all_words.emplace_back(spec.target, "target");

    for (int domain = 0; domain < spec.n_domains; ++domain) {
        // Confusable aspect words are an evaluation-domain phenomenon: they
        // never occur in the past domains, so the knowledge base stays clean.
        const bool confusable_active = domain == 0 && spec.confusable_words > 0;
        const int n_confusable = confusable_active ? n / 10 : 0;
        const int n_background =
            n - n_opinion - n_target - n_sentiment_target - n_cluster - n_confusable;

        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(domain)));
        std::vector<std::string> sentences;
        sentences.reserve(static_cast<std::size_t>(n) + 64);
        for (int i = 0; i < n_opinion; ++i) {
            sentences.push_back(opinion_sentence(rng, fam, confusable_active));
        }
        for (int i = 0; i < n_target; ++i) {
            sentences.push_back(target_sentence(rng, spec.target, fam));
        }
        for (int i = 0; i < n_sentiment_target; ++i) {
            sentences.push_back(sentiment_target_sentence(rng, spec.target, fam));
        }
        for (int i = 0; i < n_cluster; ++i) {
            sentences.push_back(opinion_cluster_sentence(rng, fam));
        }
        for (int i = 0; i < n_confusable; ++i) {
            sentences.push_back(confusable_sentence(rng, spec.target, fam));
        }
        for (int i = 0; i < n_background; ++i) sentences.push_back(background_sentence(rng, fam));

        std::unordered_map<std::string, int> tally;
        auto count_tokens = [&tally](const std::string& sentence) {
            std::istringstream stream(sentence);
            std::string token;
            while (stream >> token) ++tally[token];
        };
        for (const auto& sentence : sentences) count_tokens(sentence);
        for (const auto& [word, family] : all_words) {
            while (tally[word] < required) {
                sentences.push_back(forced_sentence(rng, word, family, spec.target, fam));
                count_tokens(sentences.back());
            }
        }
        if (confusable_active) {
            for (const auto& w : fam.confusable) {
                while (tally[w] < required) {
                    sentences.push_back(forced_sentence(rng, w, "confusable", spec.target, fam));
                    count_tokens(sentences.back());
                }
            }
        }

        std::shuffle(sentences.begin(), sentences.end(), rng);
        std::vector<Document> docs;
        docs.reserve(sentences.size());
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            std::ostringstream id;
            id << "d" << (domain + 1) << "-s" << (i + 1);
            docs.push_back({id.str(), sentences[i]});
        }
        bench.corpora.push_back(std::move(docs));
    }

    LabeledTarget gold;
    gold.target = spec.target;
    for (const auto& w : fam.aspect) gold.add(w, WordLabel::Aspect);
    for (const auto& w : fam.confusable) gold.add(w, WordLabel::Aspect);
    for (const auto& w : fam.opinion) gold.add(w, WordLabel::Opinion);
    for (const auto& w : fam.lexicon) gold.add(w, WordLabel::Opinion);
    for (const auto& w : fam.background) gold.add(w, WordLabel::Aspect);
    gold.add(spec.target, WordLabel::Aspect);
    bench.gold.push_back(std::move(gold));
    return bench;
}

DomainArtifacts build_domain_artifacts(const SyntheticBenchmark& bench,
                                       std::size_t domain_index, int neighbor_k) {
    if (domain_index >= bench.corpora.size()) {
        throw std::out_of_range("build_domain_artifacts: no such domain");
    }
    const auto& docs = bench.corpora[domain_index];
    Vocabulary vocab = build_vocabulary(docs, bench.spec.min_count);
    SkipGramConfig config;
    config.dim = bench.spec.embedding_dim;
    config.window = bench.spec.embedding_window;
    config.epochs = bench.spec.embedding_epochs;
    config.learning_rate = bench.spec.embedding_lr;
    config.seed = mix_seed(bench.seed, 1000 + domain_index);
    EmbeddingMatrix embeddings = train_skipgram(docs, vocab, config);
    NeighborTable neighbors = build_neighbor_table(embeddings, neighbor_k, Metric::Cosine);
    return {std::move(vocab), std::move(embeddings), std::move(neighbors)};
}

KnowledgeBase accumulate_knowledge(const SyntheticBenchmark& bench,
                                   std::size_t current_domain) {
    KnowledgeBase kb;
    Lexicon lexicon(bench.lexicon_seeds);
    for (std::size_t domain = 0; domain < bench.corpora.size(); ++domain) {
        if (domain == current_domain) continue;
        DomainArtifacts artifacts = build_domain_artifacts(bench, domain);
        LabelSplit split = label_split(artifacts.vocab, lexicon);
        PuOptions opts;
        opts.l2 = bench.spec.pu_l2;
        opts.positive_weight = bench.spec.pu_positive_weight;
        PuClassifier clf = train_pu(artifacts.embeddings, split, opts);
        WordSet positives = predict_positive(clf, artifacts.embeddings, split.unlabeled, 0.5);
        // The query word itself is trivially target-related and carries no
        // sentiment evidence of its own; keep it out of the accumulated record.
        positives.erase(bench.spec.target);
        std::ostringstream id;
        id << "domain" << (domain + 1);
        kb.retain(id.str(), positives);
    }
    return kb;
}

std::vector<VariantRunResult> run_benchmark(const SyntheticBenchmark& bench,
                                            const std::vector<Variant>& variants) {
    if (bench.corpora.empty()) throw std::invalid_argument("benchmark has no domains");
    DomainArtifacts current = build_domain_artifacts(bench, 0);
    KnowledgeBase kb = accumulate_knowledge(bench, 0);
    Lexicon lexicon(bench.lexicon_seeds);
    LabelSplit split = label_split(current.vocab, lexicon);

    std::vector<TargetQueryResult> rankings;
    std::vector<LabeledTarget> aligned;
    rankings.reserve(bench.gold.size());
    aligned.reserve(bench.gold.size());
    for (const auto& gold : bench.gold) {
        rankings.push_back(query_target(current.embeddings, gold.target, 150, Metric::Cosine));
        aligned.push_back(align_to_ranking(gold, rankings.back().t_words));
    }

    std::vector<VariantRunResult> results;
    results.reserve(variants.size());
    for (Variant variant : variants) {
        LpuConfig config;
        config.variant = variant;
        config.min_support = bench.spec.min_support;
        config.pu.l2 = bench.spec.pu_l2;
        config.pu.positive_weight = bench.spec.pu_positive_weight;
        VariantRunResult result;
        result.variant = variant;
        result.engine = run_lpu({current.embeddings, current.neighbors}, split, kb, config);
        const WordSet learned =
            set_union(result.engine.new_opinion_words, result.engine.reliable_sentiment);
        for (std::size_t i = 0; i < bench.gold.size(); ++i) {
            Disentangled split_words =
                disentangle(rankings[i], result.engine.classifier, current.embeddings,
                            lexicon.words(), learned, config.threshold);
            std::map<std::string, WordLabel> predictions;
            for (const auto& neighbor : split_words.aspect) {
                predictions[neighbor.word] = WordLabel::Aspect;
            }
            for (const auto& neighbor : split_words.opinion) {
                predictions[neighbor.word] = WordLabel::Opinion;
            }
            VariantReportRow row;
            row.variant = variant_name(variant);
            row.target = bench.gold[i].target;
            row.acc50 = acc_at_n(predictions, aligned[i], 50);
            row.acc100 = acc_at_n(predictions, aligned[i], 100);
            row.acc150 = acc_at_n(predictions, aligned[i], 150);
            result.rows.push_back(std::move(row));
        }
        results.push_back(std::move(result));
    }
    return results;
}

std::vector<VariantReportRow> compare_variants(const SyntheticBenchmark& bench,
                                               const std::vector<Variant>& variants) {
    std::vector<VariantReportRow> rows;
    for (auto& result : run_benchmark(bench, variants)) {
        for (auto& row : result.rows) rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(const std::vector<VariantReportRow>& rows, std::ostream& out) {
    out << "variant,target,acc@50,acc@100,acc@150\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& row : rows) {
        out << row.variant << ',' << row.target << ',' << row.acc50 << ',' << row.acc100 << ','
            << row.acc150 << '\n';
    }
}

}  // namespace lpusent
