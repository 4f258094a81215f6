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

#ifndef GREENPACK_ERRORS_HPP
#define GREENPACK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greenpack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV or JSON. `locus()` is the 1-based line or record index
/// where parsing stopped; `kind` names which of the two it is.
class ParseError : public Error {
 public:
  ParseError(std::size_t locus, const std::string& what,
             const std::string& kind = "line")
      : Error(kind + " " + std::to_string(locus) + ": " + what),
        locus_(locus) {}
  std::size_t locus() const noexcept { return locus_; }

 private:
  std::size_t locus_;
};

/// A record breaks a field invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string record_id, std::string field, std::string rule)
      : Error("record '" + record_id + "': field '" + field + "' violates " +
              rule),
        record_id_(std::move(record_id)),
        field_(std::move(field)),
        rule_(std::move(rule)) {}

  const std::string& record_id() const noexcept { return record_id_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string record_id_;
  std::string field_;
  std::string rule_;
};

class DuplicateIdError : public ValidationError {
 public:
  explicit DuplicateIdError(const std::string& id)
      : ValidationError(id, "id", "uniqueness") {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A single guest cannot fit on any host under the utilization target.
class InfeasibleGuestError : public Error {
 public:
  explicit InfeasibleGuestError(std::string server_id)
      : Error("guest '" + server_id +
              "' exceeds target capacity of every available host"),
        server_id_(std::move(server_id)) {}
  const std::string& server_id() const noexcept { return server_id_; }

 private:
  std::string server_id_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace greenpack

#endif  // GREENPACK_ERRORS_HPP
