// Copyright 2026 The Greenpack Authors
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

#ifndef GREENPACK_NUMBER_FORMAT_HPP
#define GREENPACK_NUMBER_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace greenpack {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Strict full-string parses; nullopt on trailing garbage or overflow.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace greenpack

#endif  // GREENPACK_NUMBER_FORMAT_HPP
