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

#include "lpusent/knowledge.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpusent {
namespace {

std::string record_line(const std::string& domain_id, const WordSet& words) {
    std::string line = domain_id;
    line.push_back('\t');
    bool first = true;
    for (const auto& w : words) {
        if (!first) line.push_back(' ');
        line += w;
        first = false;
    }
    return line;
}

}  // namespace

void KnowledgeBase::retain(const std::string& domain_id, const WordSet& words) {
    if (domain_id.empty()) {
        throw std::invalid_argument("knowledge base: empty domain id");
    }
    if (!domain_ids_.insert(domain_id).second) {
        throw std::runtime_error("knowledge base already has a record for domain '" +
                                 domain_id + "'");
    }
    records_.emplace_back(domain_id, words);
}

bool KnowledgeBase::has_domain(const std::string& domain_id) const {
    return domain_ids_.count(domain_id) != 0;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knowledge base file: " + path.string());
    KnowledgeBase kb;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        std::string id = line.substr(0, tab);
        WordSet words;
        if (tab != std::string::npos) {
            std::istringstream rest(line.substr(tab + 1));
            std::string w;
            while (rest >> w) words.insert(w);
        }
        try {
            kb.retain(id, words);
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return kb;
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write knowledge base file: " + path.string());
    for (const auto& [id, words] : records_) out << record_line(id, words) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void KnowledgeBase::append_record(const std::filesystem::path& path,
                                  const std::string& domain_id, const WordSet& words) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to knowledge base file: " + path.string());
    out << record_line(domain_id, words) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ReliableKnowledge mine_reliable(const KnowledgeBase& kb, int min_support,
                                const std::string& exclude_domain) {
    if (min_support < 1) {
        throw std::invalid_argument("mine_reliable: min_support must be >= 1");
    }
    std::map<std::string, int> tally;
    for (const auto& [id, words] : kb.records()) {
        if (!exclude_domain.empty() && id == exclude_domain) continue;
        for (const auto& w : words) ++tally[w];
    }
    ReliableKnowledge out;
    out.min_support = min_support;
    for (const auto& [word, count] : tally) {
        if (count >= min_support) {
            out.words.insert(word);
            out.support.emplace(word, count);
        }
    }
    return out;
}

}  // namespace lpusent
