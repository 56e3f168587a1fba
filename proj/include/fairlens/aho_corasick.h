// Copyright 2026 The Fairlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLENS_AHO_CORASICK_H_
#define FAIRLENS_AHO_CORASICK_H_

// Aho-Corasick automaton over word ids rather than bytes, so that patterns
// only ever match on whole-word boundaries. Word ids are dense in
// [0, alphabet_size); kUnknownWord stands for any word outside every pattern
// and always returns the automaton to its root.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "fairlens/error.h"

namespace fairlens {

class WordAutomaton {
 public:
  static constexpr uint32_t kUnknownWord = std::numeric_limits<uint32_t>::max();
  static constexpr uint32_t kRoot = 0;

  WordAutomaton() : nodes_(1) {}

  // Returns the pattern id. Patterns must be non-empty; duplicates get
  // distinct ids that end on the same node.
  uint32_t Add(std::span<const uint32_t> words) {
    if (built_) throw Error(ErrorCode::kInternal, "WordAutomaton::Add after Build");
    if (words.empty()) throw Error(ErrorCode::kInvalidArgument, "empty pattern");
    uint32_t node = kRoot;
    for (uint32_t w : words) {
      auto& children = nodes_[node].children;
      auto it = std::lower_bound(children.begin(), children.end(), std::make_pair(w, 0u),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      if (it != children.end() && it->first == w) {
        node = it->second;
      } else {
        const uint32_t child = static_cast<uint32_t>(nodes_.size());
        children.insert(it, {w, child});
        nodes_.emplace_back();
        node = child;
      }
    }
    const uint32_t id = static_cast<uint32_t>(pattern_length_.size());
    pattern_length_.push_back(static_cast<uint32_t>(words.size()));
    nodes_[node].own_outputs.push_back(id);
    return id;
  }

  void Build(uint32_t alphabet_size) {
    root_next_.assign(alphabet_size, kRoot);
    for (const auto& [w, child] : nodes_[kRoot].children) {
      if (w < alphabet_size) root_next_[w] = child;
    }
    // Breadth-first failure links; outputs are merged along them.
    std::vector<uint32_t> fail(nodes_.size(), kRoot);
    std::vector<std::vector<uint32_t>> outputs(nodes_.size());
    std::deque<uint32_t> queue;
    for (const auto& [w, child] : nodes_[kRoot].children) queue.push_back(child);
    std::vector<uint32_t> order;
    while (!queue.empty()) {
      const uint32_t node = queue.front();
      queue.pop_front();
      order.push_back(node);
      for (const auto& [w, child] : nodes_[node].children) {
        uint32_t f = fail[node];
        while (true) {
          const uint32_t next = Child(f, w);
          if (next != kNone && next != child) {
            fail[child] = next;
            break;
          }
          if (f == kRoot) {
            fail[child] = kRoot;
            break;
          }
          f = fail[f];
        }
        queue.push_back(child);
      }
    }
    for (uint32_t node : order) {
      outputs[node] = nodes_[node].own_outputs;
      const auto& inherited = outputs[fail[node]];
      outputs[node].insert(outputs[node].end(), inherited.begin(), inherited.end());
    }
    fail_ = std::move(fail);
    output_offsets_.assign(nodes_.size() + 1, 0);
    output_ids_.clear();
    for (size_t n = 0; n < nodes_.size(); ++n) {
      output_offsets_[n] = static_cast<uint32_t>(output_ids_.size());
      output_ids_.insert(output_ids_.end(), outputs[n].begin(), outputs[n].end());
    }
    output_offsets_[nodes_.size()] = static_cast<uint32_t>(output_ids_.size());
    built_ = true;
  }

  uint32_t Step(uint32_t state, uint32_t word) const {
    if (word == kUnknownWord) return kRoot;
    while (state != kRoot) {
      const uint32_t next = Child(state, word);
      if (next != kNone) return next;
      state = fail_[state];
    }
    return word < root_next_.size() ? root_next_[word] : kRoot;
  }

  // Pattern ids whose last word is the word just consumed.
  std::span<const uint32_t> Outputs(uint32_t state) const {
    return std::span<const uint32_t>(output_ids_)
        .subspan(output_offsets_[state], output_offsets_[state + 1] - output_offsets_[state]);
  }

  uint32_t PatternLength(uint32_t pattern) const { return pattern_length_[pattern]; }
  size_t pattern_count() const { return pattern_length_.size(); }
  size_t node_count() const { return nodes_.size(); }

 private:
  static constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();

  struct Node {
    std::vector<std::pair<uint32_t, uint32_t>> children;  // sorted by word
    std::vector<uint32_t> own_outputs;
  };

  uint32_t Child(uint32_t node, uint32_t word) const {
    const auto& children = nodes_[node].children;
    if (children.size() < 8) {
      for (const auto& [w, child] : children) {
        if (w == word) return child;
      }
      return kNone;
    }
    auto it = std::lower_bound(children.begin(), children.end(), std::make_pair(word, 0u),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    return (it != children.end() && it->first == word) ? it->second : kNone;
  }

  std::vector<Node> nodes_;
  std::vector<uint32_t> pattern_length_;
  std::vector<uint32_t> root_next_;
  std::vector<uint32_t> fail_;
  std::vector<uint32_t> output_offsets_;
  std::vector<uint32_t> output_ids_;
  bool built_ = false;
};

}  // namespace fairlens

#endif  // FAIRLENS_AHO_CORASICK_H_
