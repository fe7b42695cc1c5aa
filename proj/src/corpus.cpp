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

#include "lpusent/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace lpusent {
namespace {

bool is_ascii_punct(unsigned char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
           (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Decodes one UTF-8 code point starting at s[i]; advances i past it.
// Malformed bytes are consumed one at a time and returned verbatim.
char32_t next_code_point(std::string_view s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = c;
    if (c < 0x80) {
        extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
        extra = 1;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        extra = 2;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        extra = 3;
        cp = c & 0x07;
    }
    std::size_t j = i + 1;
    for (; extra > 0 && j < s.size(); --extra, ++j) {
        unsigned char cc = static_cast<unsigned char>(s[j]);
        if ((cc & 0xC0) != 0x80) break;
        cp = (cp << 6) | (cc & 0x3F);
    }
    std::size_t len = j - i;
    i = j;
    if (extra != 0) return c;  // malformed; treat lead byte as-is
    (void)len;
    return cp;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case U'\f':
        case U'\v':
        case 0x0085:  // NEL
        case 0x00A0:  // no-break space
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::string strip_edge_punct(std::string token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end && is_ascii_punct(static_cast<unsigned char>(token[begin]))) ++begin;
    while (end > begin && is_ascii_punct(static_cast<unsigned char>(token[end - 1]))) --end;
    return token.substr(begin, end - begin);
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> words,
                       std::vector<std::int64_t> counts, int min_count)
    : words_(std::move(words)), counts_(std::move(counts)), min_count_(min_count) {
    if (words_.size() != counts_.size()) {
        throw std::invalid_argument("vocabulary: words/counts size mismatch");
    }
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (!index_.emplace(words_[i], i).second) {
            throw std::invalid_argument("vocabulary: duplicate word '" + words_[i] + "'");
        }
    }
}

std::int64_t Vocabulary::index_of(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::int64_t Vocabulary::count(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) {
        throw std::out_of_range("vocabulary: unknown word '" + word + "'");
    }
    return counts_[it->second];
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    auto flush = [&]() {
        if (current.empty()) return;
        std::string stripped = strip_edge_punct(std::move(current));
        if (!stripped.empty()) tokens.push_back(std::move(stripped));
        current.clear();
    };
    while (i < text.size()) {
        std::size_t start = i;
        char32_t cp = next_code_point(text, i);
        if (is_space_cp(cp)) {
            flush();
        } else {
            current.append(text.substr(start, i - start));
        }
    }
    flush();
    return tokens;
}

Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_count) {
    if (min_count < 1) {
        throw std::invalid_argument("build_vocabulary: min_count must be >= 1");
    }
    std::unordered_map<std::string, std::int64_t> tally;
    for (const auto& doc : docs) {
        for (auto& tok : tokenize(doc.text)) ++tally[tok];
    }
    std::vector<std::pair<std::string, std::int64_t>> kept;
    kept.reserve(tally.size());
    for (auto& [word, count] : tally) {
        if (count >= min_count) kept.emplace_back(word, count);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> words;
    std::vector<std::int64_t> counts;
    words.reserve(kept.size());
    counts.reserve(kept.size());
    for (auto& [word, count] : kept) {
        words.push_back(std::move(word));
        counts.push_back(count);
    }
    return Vocabulary(std::move(words), std::move(counts), min_count);
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::vector<Document> docs;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::ifstream in(file);
            if (!in) throw std::runtime_error("cannot open corpus file: " + file.string());
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            docs.push_back({file.stem().string(), std::move(text)});
        }
        return docs;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        docs.push_back({"L" + std::to_string(lineno), line});
    }
    return docs;
}

}  // namespace lpusent
