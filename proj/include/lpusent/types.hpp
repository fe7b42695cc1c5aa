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

#include <set>
#include <string>
#include <vector>

namespace lpusent {

// Ordered set keeps every word-set operation deterministic.
using WordSet = std::set<std::string>;

inline WordSet set_union(const WordSet& a, const WordSet& b) {
    WordSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline WordSet set_intersection(const WordSet& a, const WordSet& b) {
    WordSet out;
    for (const auto& w : a) {
        if (b.count(w)) out.insert(w);
    }
    return out;
}

inline WordSet set_difference(const WordSet& a, const WordSet& b) {
    WordSet out;
    for (const auto& w : a) {
        if (!b.count(w)) out.insert(w);
    }
    return out;
}

}  // namespace lpusent
