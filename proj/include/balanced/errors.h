// Copyright 2026 The Authors.
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

#ifndef BALANCED_ERRORS_H_
#define BALANCED_ERRORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace balanced {

// Base class for recoverable errors raised by this library. Argument
// validation failures use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Box constraints whose polytope is empty, either as reals or at page
// granularity.
class InfeasibleConstraintsError : public Error {
 public:
  using Error::Error;
};

class PoolExhaustedError : public Error {
 public:
  PoolExhaustedError(std::size_t type_index, std::size_t shortfall);

  std::size_t type_index() const { return type_index_; }
  std::size_t shortfall() const { return shortfall_; }

 private:
  std::size_t type_index_;
  std::size_t shortfall_;
};

// A click on an article id that is not on the page it claims to come from.
class UnknownArticleError : public Error {
 public:
  using Error::Error;
};

class UnknownSessionError : public Error {
 public:
  using Error::Error;
};

class CorruptLogError : public Error {
 public:
  CorruptLogError(std::optional<std::uint64_t> seq, const std::string& what);

  // First bad sequence number, when the record could be attributed.
  std::optional<std::uint64_t> seq() const { return seq_; }

 private:
  std::optional<std::uint64_t> seq_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Failure reported by a live article source.
class TransportError : public Error {
 public:
  using Error::Error;
};

// An event could not be appended to the session log. The mutation that
// produced it has not been applied.
class PersistError : public Error {
 public:
  using Error::Error;
};

}  // namespace balanced

#endif  // BALANCED_ERRORS_H_
