// Copyright 2026 The guiground Authors.
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

#ifndef GUIGROUND_TEXT_HPP_
#define GUIGROUND_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace guiground::text {

// Decodes UTF-8; malformed bytes are passed through as U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

// Number of code points.
std::size_t utf8_length(std::string_view s);

// Lowercases and strips Latin diacritics ("Prénom" -> "prenom",
// "Œuvre" -> "oeuvre"). Characters outside Latin-1 and Latin Extended-A
// are kept as is.
std::string fold(std::string_view s);

// Folds, then splits on everything that is not an ASCII letter/digit or a
// non-ASCII code point. Token order is preserved.
std::vector<std::string> tokenize(std::string_view s);

// Tokenize, then rejoin with single spaces.
std::string normalize(std::string_view s);

// Code-point Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - edit_distance / max(len(a), len(b)); 1 for two empty strings.
double edit_similarity(std::string_view a, std::string_view b);

// Trims ASCII whitespace on both ends.
std::string_view trim(std::string_view s);

}  // namespace guiground::text

#endif  // GUIGROUND_TEXT_HPP_
