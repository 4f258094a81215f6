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

#include "csv.hpp"

#include "greenpack/errors.hpp"

namespace greenpack::csv {

std::vector<Row> read(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    const bool blank = row.fields.size() == 1 && row.fields[0].empty() &&
                       !field_was_quoted;
    if (!blank) rows.push_back(std::move(row));
    row = Row{};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw ParseError(line, "unexpected quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n': {
        const bool quoted = field_was_quoted;
        end_field();
        field_was_quoted = quoted;
        end_row();
        field_was_quoted = false;
        ++line;
        row.line = line;
        break;
      }
      default:
        if (field_was_quoted) {
          throw ParseError(line, "text after closing quote");
        }
        field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(row.line, "unterminated quoted field");
  if (!field.empty() || !row.fields.empty() || field_was_quoted) {
    const bool quoted = field_was_quoted;
    end_field();
    field_was_quoted = quoted;
    end_row();
  }
  return rows;
}

std::string escape(std::string_view field, bool force_quote) {
  const bool needs_quotes =
      force_quote || field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace greenpack::csv
