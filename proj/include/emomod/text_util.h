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

#ifndef EMOMOD_TEXT_UTIL_H_
#define EMOMOD_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace emomod {

std::string_view Trim(std::string_view s);

// Lowercases ASCII letters only; UTF-8 continuation bytes pass through.
std::string AsciiLower(std::string_view s);

std::vector<std::string> SplitOn(std::string_view s, char sep);

// Reads a whole text file. Throws InputError if it cannot be opened.
std::string ReadFile(const std::string& path);

// Writes `contents` to `path`, truncating. Throws Error on failure.
void WriteFile(const std::string& path, std::string_view contents);

// Formats a double so that parsing it back yields the identical value.
std::string FormatExact(double v);

// Round half-up to one decimal, e.g. 87.75 -> 87.8.
double RoundOneDecimal(double v);

}  // namespace emomod

#endif  // EMOMOD_TEXT_UTIL_H_
