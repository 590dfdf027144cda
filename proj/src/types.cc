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

#include "emomod/types.h"

#include "emomod/text_util.h"

namespace emomod {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "joy", "anger", "fear", "sadness", "surprise", "disgust"};

constexpr std::array<std::string_view, kNumModifierKinds> kKindNames = {
    "negation", "amplifier", "downtoner"};

constexpr std::array<std::string_view, kNumModifierKinds> kKindAbbrevs = {
    "neg", "amp", "down"};

}  // namespace

std::string_view EmotionName(Emotion e) { return kEmotionNames[Index(e)]; }

std::optional<Emotion> ParseEmotion(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (lower == kEmotionNames[i]) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

std::string_view ModifierKindName(ModifierKind k) {
  return kKindNames[Index(k)];
}

std::string_view ModifierKindAbbrev(ModifierKind k) {
  return kKindAbbrevs[Index(k)];
}

std::optional<ModifierKind> ParseModifierKind(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  for (std::size_t i = 0; i < kNumModifierKinds; ++i) {
    if (lower == kKindNames[i] || lower == kKindAbbrevs[i]) {
      return static_cast<ModifierKind>(i);
    }
  }
  return std::nullopt;
}

}  // namespace emomod
