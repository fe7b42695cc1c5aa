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

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lpusent/types.hpp"

namespace lpusent {

/// Append-only store of per-domain predicted opinion-word sets. Domain ids
/// are unique; records keep insertion order.
class KnowledgeBase {
  public:
    KnowledgeBase() = default;

    /// Appends one record. Throws std::runtime_error on a duplicate domain id.
    void retain(const std::string& domain_id, const WordSet& words);
    bool has_domain(const std::string& domain_id) const;
    const std::vector<std::pair<std::string, WordSet>>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    /// One record per line: "<domain_id>\t<word1> <word2> ...".
    static KnowledgeBase load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
    /// Appends a single record line to an existing (or new) file.
    static void append_record(const std::filesystem::path& path,
                              const std::string& domain_id, const WordSet& words);

  private:
    std::vector<std::pair<std::string, WordSet>> records_;
    WordSet domain_ids_;
};

/// Words appearing as predicted opinion words in at least min_support domains,
/// with their exact domain counts.
struct ReliableKnowledge {
    WordSet words;
    std::map<std::string, int> support;
    int min_support = 1;
};

/// Treats each record's word set as a transaction and keeps every word whose
/// transaction count reaches min_support (frequent single-word itemsets).
/// When `exclude_domain` is non-empty that record does not contribute, so a
/// domain can mine only its past.
ReliableKnowledge mine_reliable(const KnowledgeBase& kb, int min_support,
                                const std::string& exclude_domain = "");

}  // namespace lpusent
