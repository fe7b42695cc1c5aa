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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpusent {

struct Document {
    std::string id;
    std::string text;
};

/// Frequency-filtered vocabulary of one domain corpus. Words are ordered by
/// (count descending, word ascending), so the index<->word mapping does not
/// depend on document order.
class Vocabulary {
  public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> words, std::vector<std::int64_t> counts,
               int min_count);

    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    bool contains(const std::string& word) const { return index_.count(word) != 0; }

    /// Index of `word`, or -1 when absent.
    std::int64_t index_of(const std::string& word) const;
    const std::string& word(std::size_t index) const { return words_.at(index); }
    std::int64_t count(const std::string& word) const;
    int min_count() const { return min_count_; }
    const std::vector<std::string>& words() const { return words_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }

  private:
    std::vector<std::string> words_;
    std::vector<std::int64_t> counts_;
    std::unordered_map<std::string, std::size_t> index_;
    int min_count_ = 1;
};

/// Splits on whitespace (ASCII plus common Unicode space code points) and
/// strips leading/trailing ASCII punctuation from each token. Case is
/// preserved; internal punctuation (hyphens, apostrophes, ...) is kept.
/// Tokens that are punctuation only are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Builds the vocabulary of all tokens whose corpus frequency is at least
/// `min_count` (exact counts). An empty corpus yields an empty vocabulary.
/// Throws std::invalid_argument when min_count < 1.
Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_count);

/// Reads a corpus from `path`. A plain file holds one document per line
/// (ids "L1", "L2", ...); a directory holds one document per *.txt file
/// (id = file stem), visited in name order.
std::vector<Document> load_corpus(const std::filesystem::path& path);

}  // namespace lpusent
