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

#ifndef EMOMOD_TYPES_H_
#define EMOMOD_TYPES_H_

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace emomod {

// Ekman's six basic emotions. The numeric order is used for matrix indexing
// and as the argmax tie-break everywhere (lowest index wins).
enum class Emotion : int {
  kJoy = 0,
  kAnger = 1,
  kFear = 2,
  kSadness = 3,
  kSurprise = 4,
  kDisgust = 5,
};

inline constexpr std::size_t kNumEmotions = 6;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::kJoy,     Emotion::kAnger,    Emotion::kFear,
    Emotion::kSadness, Emotion::kSurprise, Emotion::kDisgust};

std::string_view EmotionName(Emotion e);
std::optional<Emotion> ParseEmotion(std::string_view name);

inline constexpr std::size_t Index(Emotion e) {
  return static_cast<std::size_t>(e);
}

// Explicit modifier kinds. Enum order is the resolution priority: when two
// cues claim the same token the lower value wins.
enum class ModifierKind : int {
  kNegation = 0,
  kAmplifier = 1,
  kDowntoner = 2,
};

inline constexpr std::size_t kNumModifierKinds = 3;

inline constexpr std::array<ModifierKind, kNumModifierKinds> kAllModifierKinds =
    {ModifierKind::kNegation, ModifierKind::kAmplifier,
     ModifierKind::kDowntoner};

inline constexpr std::size_t Index(ModifierKind k) {
  return static_cast<std::size_t>(k);
}

// "negation", "amplifier", "downtoner".
std::string_view ModifierKindName(ModifierKind k);
// "neg", "amp", "down"; used as bag-of-words prefixes.
std::string_view ModifierKindAbbrev(ModifierKind k);
// Accepts both the full name and the abbreviation.
std::optional<ModifierKind> ParseModifierKind(std::string_view name);

// True when `a` takes precedence over `b`.
inline constexpr bool HasPriority(ModifierKind a, ModifierKind b) {
  return Index(a) < Index(b);
}

// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data or configuration supplied by the caller (missing files,
// malformed rows, violated preconditions). The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace emomod

#endif  // EMOMOD_TYPES_H_
