// Copyright 2026 The emomod Authors.
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

#ifndef EMOMOD_SCOPE_LABEL_H_
#define EMOMOD_SCOPE_LABEL_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "emomod/types.h"

namespace emomod {

// Per-token modifier assignment of one document, indexed by document-level
// token position. Holding a single optional per token makes "at most one
// modifier per token" structural.
class ScopeLabel {
 public:
  ScopeLabel() = default;
  explicit ScopeLabel(std::size_t num_tokens) : labels_(num_tokens) {}

  std::size_t size() const { return labels_.size(); }

  const std::optional<ModifierKind>& at(std::size_t pos) const {
    return labels_[pos];
  }

  void Set(std::size_t pos, ModifierKind kind) { labels_[pos] = kind; }

  // Sets `kind` unless the token already holds a higher-priority kind.
  void Claim(std::size_t pos, ModifierKind kind) {
    auto& cur = labels_[pos];
    if (!cur || HasPriority(kind, *cur)) cur = kind;
  }

  void Clear(std::size_t pos) { labels_[pos].reset(); }

  bool Contains(ModifierKind kind) const {
    for (const auto& l : labels_) {
      if (l == kind) return true;
    }
    return false;
  }

  bool empty() const {
    for (const auto& l : labels_) {
      if (l) return false;
    }
    return true;
  }

  // (position, kind) for every labeled token, in position order.
  std::vector<std::pair<std::size_t, ModifierKind>> Labeled() const {
    std::vector<std::pair<std::size_t, ModifierKind>> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i]) out.emplace_back(i, *labels_[i]);
    }
    return out;
  }

  friend bool operator==(const ScopeLabel&, const ScopeLabel&) = default;

 private:
  std::vector<std::optional<ModifierKind>> labels_;
};

}  // namespace emomod

#endif  // EMOMOD_SCOPE_LABEL_H_
