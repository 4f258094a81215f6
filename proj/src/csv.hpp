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

#ifndef GREENPACK_SRC_CSV_HPP
#define GREENPACK_SRC_CSV_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace greenpack::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line the row starts on
};

// RFC 4180 reader: comma separated, double-quote escaping, quoted fields may
// span lines, CRLF or LF endings. Blank lines are skipped.
std::vector<Row> read(std::string_view text);

std::string escape(std::string_view field, bool force_quote = false);

}  // namespace greenpack::csv

#endif  // GREENPACK_SRC_CSV_HPP
