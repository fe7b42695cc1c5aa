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

// Command-line frontend: stage-one grouping, knowledge accumulation/mining,
// the disentangling engine, evaluation, and the synthetic benchmark.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpusent/eval.hpp"

namespace fs = std::filesystem;
using namespace lpusent;

namespace {

struct EmbeddingArgs {
    std::string corpus;
    std::string pretrained;
    int min_count = 5;
    int dim = 200;
    int window = 5;
    int negative = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;
};

void add_embedding_flags(CLI::App* cmd, EmbeddingArgs& args) {
    auto* corpus = cmd->add_option("--corpus", args.corpus,
                                   "corpus: one document per line, or a directory of .txt files")
                       ->check(CLI::ExistingPath);
    auto* pretrained =
        cmd->add_option("--embeddings", args.pretrained, "pretrained word vectors (textual format)")
            ->check(CLI::ExistingFile);
    corpus->excludes(pretrained);
    pretrained->excludes(corpus);
    cmd->add_option("--min-count", args.min_count, "vocabulary frequency cutoff")
        ->default_val(5);
    cmd->add_option("--dim", args.dim, "embedding dimension")->default_val(200);
    cmd->add_option("--window", args.window, "context window size")->default_val(5);
    cmd->add_option("--negative", args.negative, "negative samples per pair")->default_val(5);
    cmd->add_option("--epochs", args.epochs, "training epochs")->default_val(5);
    cmd->add_option("--lr", args.learning_rate, "initial learning rate")->default_val(0.025);
    cmd->add_option("--seed", args.seed, "training seed")->default_val(1);
}

EmbeddingMatrix resolve_embeddings(const EmbeddingArgs& args) {
    if (!args.pretrained.empty()) return load_embeddings(args.pretrained);
    if (args.corpus.empty()) {
        throw std::runtime_error("either --corpus or --embeddings is required");
    }
    auto docs = load_corpus(args.corpus);
    auto vocab = build_vocabulary(docs, args.min_count);
    SkipGramConfig config;
    config.dim = args.dim;
    config.window = args.window;
    config.negative_samples = args.negative;
    config.epochs = args.epochs;
    config.learning_rate = args.learning_rate;
    config.seed = args.seed;
    return train_skipgram(docs, vocab, config);
}

/// "unknown target" comes back with the five closest vocabulary strings as a
/// hint, since the usual cause is a typo or a word under the frequency cutoff.
[[noreturn]] void rethrow_with_hint(const EmbeddingMatrix& matrix, const std::string& target,
                                    const std::out_of_range& e) {
    std::ostringstream msg;
    msg << e.what();
    auto hints = closest_words(matrix.vocab(), target, 5);
    if (!hints.empty()) {
        msg << "; closest vocabulary words:";
        for (const auto& word : hints) msg << ' ' << word;
    }
    throw std::runtime_error(msg.str());
}

void print_scored(std::ostream& out, const std::vector<Neighbor>& entries) {
    out << std::fixed << std::setprecision(6);
    for (const auto& entry : entries) out << entry.word << '\t' << entry.score << '\n';
}

int cmd_group(const EmbeddingArgs& emb, const std::string& target, int n, const std::string& metric) {
    EmbeddingMatrix matrix = resolve_embeddings(emb);
    TargetQueryResult result;
    try {
        result = query_target(matrix, target, n, parse_metric(metric));
    } catch (const std::out_of_range& e) {
        rethrow_with_hint(matrix, target, e);
    }
    print_scored(std::cout, result.t_words);
    return 0;
}

int cmd_embed(const EmbeddingArgs& emb, const std::string& out_path) {
    if (emb.corpus.empty()) throw std::runtime_error("embed requires --corpus");
    EmbeddingMatrix matrix = resolve_embeddings(emb);
    save_embeddings(matrix, out_path);
    std::cout << "wrote " << matrix.size() << " vectors of dimension " << matrix.dim() << " to "
              << out_path << '\n';
    return 0;
}

int cmd_accumulate(const EmbeddingArgs& emb, const std::string& domain,
                   const std::string& lexicon_path, const std::string& kb_path, double threshold,
                   double l2) {
    EmbeddingMatrix matrix = resolve_embeddings(emb);
    Lexicon lexicon = Lexicon::from_file(lexicon_path);
    LabelSplit split = label_split(matrix.vocab(), lexicon);
    PuOptions opts;
    opts.l2 = l2;
    PuClassifier clf = train_pu(matrix, split, opts);
    WordSet positives = predict_positive(clf, matrix, split.unlabeled, threshold);
    KnowledgeBase::append_record(kb_path, domain, positives);
    std::cout << domain << ": retained " << positives.size() << " predicted opinion words\n";
    return 0;
}

int cmd_mine(const std::string& kb_path, int min_support, const std::string& exclude) {
    KnowledgeBase kb = KnowledgeBase::load(kb_path);
    ReliableKnowledge mined = mine_reliable(kb, min_support, exclude);
    std::vector<std::pair<std::string, int>> rows(mined.support.begin(), mined.support.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [word, support] : rows) std::cout << word << '\t' << support << '\n';
    return 0;
}

void write_iteration_log(const std::vector<IterationRecord>& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write iteration log: " + path);
    out << "t,rs_size,pp_size,ns_size,added_words\n";
    for (const auto& record : log) {
        out << record.t << ',' << record.reliable_sentiment_size << ','
            << record.predictions.size() << ',' << record.new_sentiment_size << ",\"";
        for (std::size_t i = 0; i < record.added.size(); ++i) {
            if (i > 0) out << ' ';
            out << record.added[i];
        }
        out << "\"\n";
    }
}

struct EngineArgs {
    std::string lexicon_path;
    std::string kb_path;
    std::string target;
    int n = 150;
    std::string variant = "lpu";
    std::string metric = "cosine";
    int m = 10;
    int l = 50;
    int k = 10;
    int min_support = 5;
    double threshold = 0.5;
    double l2 = 1.0;
    std::string current_domain;
    std::string scope = "unlabeled";
    bool or_loop = false;
    std::string log_path;
};

int cmd_disentangle(const EmbeddingArgs& emb, const EngineArgs& engine) {
    EmbeddingMatrix matrix = resolve_embeddings(emb);
    Lexicon lexicon = Lexicon::from_file(engine.lexicon_path);
    KnowledgeBase kb;
    if (!engine.kb_path.empty()) kb = KnowledgeBase::load(engine.kb_path);
    LabelSplit split = label_split(matrix.vocab(), lexicon);
    Metric metric = parse_metric(engine.metric);
    NeighborTable table = build_neighbor_table(matrix, engine.k, metric);

    LpuConfig config;
    config.max_iterations = engine.m;
    config.words_per_iteration = engine.l;
    config.neighbor_k = engine.k;
    config.min_support = engine.min_support;
    config.threshold = engine.threshold;
    config.variant = parse_variant(engine.variant);
    config.or_loop = engine.or_loop;
    config.current_domain = engine.current_domain;
    config.pu.l2 = engine.l2;
    if (engine.scope == "unlabeled") {
        config.prediction_scope = PredictionScope::UnlabeledOnly;
    } else if (engine.scope == "all") {
        config.prediction_scope = PredictionScope::AllWords;
    } else {
        throw std::runtime_error("unknown --predict-scope '" + engine.scope +
                                 "' (expected unlabeled or all)");
    }

    DisentangleResult result = run_lpu({matrix, table}, split, kb, config);
    if (!result.note.empty()) std::cerr << "note: " << result.note << '\n';
    if (!engine.log_path.empty()) write_iteration_log(result.iteration_log, engine.log_path);

    TargetQueryResult grouped;
    try {
        grouped = query_target(matrix, engine.target, engine.n, metric);
    } catch (const std::out_of_range& e) {
        rethrow_with_hint(matrix, engine.target, e);
    }
    WordSet learned = set_union(result.new_opinion_words, result.reliable_sentiment);
    Disentangled split_words = disentangle(grouped, result.classifier, matrix, lexicon.words(),
                                           learned, config.threshold);
    std::cout << "ASPECT\n";
    print_scored(std::cout, split_words.aspect);
    std::cout << "OPINION\n";
    print_scored(std::cout, split_words.opinion);
    return 0;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path,
             const std::vector<int>& ns) {
    auto gold = load_gold(gold_path);
    auto predictions = load_predictions(pred_path);
    if (gold.empty()) throw std::runtime_error("gold file has no labels: " + gold_path);
    std::cout << std::fixed << std::setprecision(4);
    for (const auto& entry : gold) {
        for (int n : ns) {
            std::cout << entry.target << "\tacc@" << n << '\t'
                      << acc_at_n(predictions, entry, n) << '\n';
        }
    }
    return 0;
}

void write_corpus_file(const std::vector<Document>& docs, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path.string());
    for (const auto& doc : docs) out << doc.text << '\n';
}

void write_spec_echo(const SyntheticSpec& spec, std::uint64_t seed, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write spec echo: " + path.string());
    out << "# effective generator parameters (seed " << seed << ")\n"
        << "n_domains = " << spec.n_domains << '\n'
        << "opinion_words = " << spec.opinion_words << '\n'
        << "aspect_words = " << spec.aspect_words << '\n'
        << "confusable_words = " << spec.confusable_words << '\n'
        << "lexicon_words = " << spec.lexicon_words << '\n'
        << "background_words = " << spec.background_words << '\n'
        << "sentences_per_domain = " << spec.sentences_per_domain << '\n'
        << "min_support = " << spec.min_support << '\n'
        << "target = " << spec.target << '\n'
        << "min_count = " << spec.min_count << '\n'
        << "embedding_dim = " << spec.embedding_dim << '\n'
        << "embedding_window = " << spec.embedding_window << '\n'
        << "embedding_epochs = " << spec.embedding_epochs << '\n'
        << "embedding_lr = " << spec.embedding_lr << '\n'
        << "pu_l2 = " << spec.pu_l2 << '\n'
        << "pu_positive_weight = " << spec.pu_positive_weight << '\n';
}

int cmd_synth_bench(const std::string& spec_path, std::uint64_t seed, const std::string& out_dir,
                    const std::string& report_path, const std::string& variant_list) {
    SyntheticSpec spec;
    if (!spec_path.empty()) spec = parse_synthetic_spec(spec_path);
    SyntheticBenchmark bench = generate_synthetic(spec, seed);

    fs::path dir(out_dir);
    fs::create_directories(dir);
    for (std::size_t domain = 0; domain < bench.corpora.size(); ++domain) {
        std::ostringstream name;
        name << "domain" << (domain + 1) << ".txt";
        write_corpus_file(bench.corpora[domain], dir / name.str());
    }
    save_gold(bench.gold, dir / "gold.tsv");
    {
        std::ofstream lex(dir / "lexicon.txt");
        if (!lex) throw std::runtime_error("cannot write lexicon file");
        for (const auto& word : bench.lexicon_seeds) lex << word << '\n';
    }
    write_spec_echo(spec, seed, dir / "benchmark.spec");
    std::cout << "wrote " << bench.corpora.size() << " domain corpora to " << dir.string() << '\n';

    if (!report_path.empty()) {
        std::vector<Variant> variants;
        std::istringstream stream(variant_list);
        std::string name;
        while (std::getline(stream, name, ',')) {
            if (!name.empty()) variants.push_back(parse_variant(name));
        }
        if (variants.empty()) throw std::runtime_error("--variants parsed to an empty list");
        auto rows = compare_variants(bench, variants);
        std::ofstream report(report_path);
        if (!report) throw std::runtime_error("cannot write report: " + report_path);
        write_report_csv(rows, report);
        std::cout << "wrote variant report to " << report_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage target-based sentiment toolkit: embedding-space grouping of "
                 "target words, then lifelong PU disentangling into aspect vs. opinion words"};
    app.require_subcommand(1);

    EmbeddingArgs emb;

    auto* group = app.add_subcommand("group", "rank a target's related words (stage one)");
    std::string target;
    int n = 50;
    std::string metric = "cosine";
    add_embedding_flags(group, emb);
    group->add_option("--target", target, "target word")->required();
    group->add_option("--n", n, "number of related words")->default_val(50);
    group->add_option("--metric", metric, "similarity metric")
        ->check(CLI::IsMember({"cosine", "dot"}))
        ->default_val("cosine");

    auto* embed = app.add_subcommand("embed", "train word vectors and save them");
    std::string embed_out;
    add_embedding_flags(embed, emb);
    embed->add_option("--out", embed_out, "output vector file")->required();

    auto* accumulate =
        app.add_subcommand("accumulate", "classify one domain and append its predicted "
                                         "opinion words to the knowledge base");
    std::string domain_id, lexicon_path, kb_path;
    double threshold = 0.5, l2 = 1.0;
    add_embedding_flags(accumulate, emb);
    accumulate->add_option("--domain", domain_id, "domain identifier")->required();
    accumulate->add_option("--lexicon", lexicon_path, "opinion lexicon, one word per line")
        ->required()
        ->check(CLI::ExistingFile);
    accumulate->add_option("--kb", kb_path, "knowledge-base file to append to")->required();
    accumulate->add_option("--threshold", threshold, "positive probability cutoff")
        ->default_val(0.5);
    accumulate->add_option("--l2", l2, "L2 regularization strength")->default_val(1.0);

    auto* mine = app.add_subcommand("mine", "list words frequent across retained domains");
    std::string mine_kb, mine_exclude;
    int min_support = 5;
    mine->add_option("--kb", mine_kb, "knowledge-base file")->required()->check(CLI::ExistingFile);
    mine->add_option("--min-support", min_support, "minimum domain count")->default_val(5);
    mine->add_option("--exclude", mine_exclude, "domain id to leave out of the tally");

    auto* disentangle_cmd =
        app.add_subcommand("disentangle", "split a target's related words into aspect "
                                          "and opinion words");
    EngineArgs engine;
    add_embedding_flags(disentangle_cmd, emb);
    disentangle_cmd->add_option("--lexicon", engine.lexicon_path, "opinion lexicon")
        ->required()
        ->check(CLI::ExistingFile);
    disentangle_cmd->add_option("--kb", engine.kb_path, "knowledge-base file (omit for none)")
        ->check(CLI::ExistingFile);
    disentangle_cmd->add_option("--target", engine.target, "target word")->required();
    disentangle_cmd->add_option("--n", engine.n, "related words to split")->default_val(150);
    disentangle_cmd
        ->add_option("--variant", engine.variant, "engine variant")
        ->check(CLI::IsMember({"lpu", "lpu-minor", "nll", "ablation-b", "ablation-c"}))
        ->default_val("lpu");
    disentangle_cmd->add_option("--metric", engine.metric, "similarity metric")
        ->check(CLI::IsMember({"cosine", "dot"}))
        ->default_val("cosine");
    disentangle_cmd->add_option("--m", engine.m, "maximum engine iterations")->default_val(10);
    disentangle_cmd->add_option("--l", engine.l, "words admitted per ranking")->default_val(50);
    disentangle_cmd->add_option("--k", engine.k, "neighbors per word")->default_val(10);
    disentangle_cmd->add_option("--min-support", engine.min_support, "mining support cutoff")
        ->default_val(5);
    disentangle_cmd->add_option("--threshold", engine.threshold, "positive probability cutoff")
        ->default_val(0.5);
    disentangle_cmd->add_option("--l2", engine.l2, "L2 regularization strength")->default_val(1.0);
    disentangle_cmd->add_option("--current-domain", engine.current_domain,
                                "knowledge-base record to exclude from mining");
    disentangle_cmd
        ->add_option("--predict-scope", engine.scope, "in-loop prediction scope")
        ->check(CLI::IsMember({"unlabeled", "all"}))
        ->default_val("unlabeled");
    disentangle_cmd->add_flag("--or-loop", engine.or_loop,
                              "keep iterating while new words remain, even past --m");
    disentangle_cmd->add_option("--log-iterations", engine.log_path,
                                "write per-iteration CSV to this path");

    auto* eval_cmd = app.add_subcommand("eval", "score predictions against gold labels");
    std::string gold_path, pred_path;
    std::vector<int> eval_ns{50, 100, 150};
    eval_cmd->add_option("--gold", gold_path, "gold TSV (target, word, label)")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--pred", pred_path, "prediction TSV (word, label)")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--n", eval_ns, "cutoffs, comma separated")
        ->delimiter(',')
        ->default_str("50,100,150");

    auto* synth = app.add_subcommand("synth-bench", "generate the planted-word benchmark");
    std::string synth_spec, synth_out = "bench", synth_report, synth_variants = "lpu,nll";
    std::uint64_t synth_seed = 1;
    synth->add_option("--spec", synth_spec, "key=value generator parameters")
        ->check(CLI::ExistingFile);
    synth->add_option("--seed", synth_seed, "generator seed")->default_val(1);
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--report", synth_report,
                      "also run the engine variants and write this accuracy CSV");
    synth->add_option("--variants", synth_variants, "comma-separated variants for --report")
        ->default_str("lpu,nll");

    CLI11_PARSE(app, argc, argv);

    try {
        if (group->parsed()) return cmd_group(emb, target, n, metric);
        if (embed->parsed()) return cmd_embed(emb, embed_out);
        if (accumulate->parsed()) {
            return cmd_accumulate(emb, domain_id, lexicon_path, kb_path, threshold, l2);
        }
        if (mine->parsed()) return cmd_mine(mine_kb, min_support, mine_exclude);
        if (disentangle_cmd->parsed()) return cmd_disentangle(emb, engine);
        if (eval_cmd->parsed()) return cmd_eval(gold_path, pred_path, eval_ns);
        if (synth->parsed()) {
            return cmd_synth_bench(synth_spec, synth_seed, synth_out, synth_report,
                                   synth_variants);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
