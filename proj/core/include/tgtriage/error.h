// Copyright 2026 The tgtriage Authors.
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

#ifndef TGTRIAGE_ERROR_H_
#define TGTRIAGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tgtriage {

// Coarse failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  kUsage,      // bad flags, bad configuration values
  kData,       // malformed or inconsistent input files
  kNumerical,  // non-finite values during fitting or training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &what)
      : Error(ErrorKind::kUsage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string &what)
      : Error(ErrorKind::kData, what) {}
};

// Malformed JSON. offset is the byte position reported by the parser.
class ParseError : public DataError {
 public:
  ParseError(const std::string &what, std::size_t offset)
      : DataError(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A required field is missing or has the wrong type.
class SchemaError : public DataError {
 public:
  SchemaError(const std::string &what, std::string field, std::size_t record)
      : DataError(what), field_(std::move(field)), record_(record) {}
  const std::string &field() const { return field_; }
  std::size_t record() const { return record_; }

 private:
  std::string field_;
  std::size_t record_;
};

// A labeled CSV row violates the label invariant. row is 1-based and
// counts data rows (the header is row 0).
class LabeledDataError : public DataError {
 public:
  LabeledDataError(const std::string &what, std::size_t row)
      : DataError(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

// The vectorizer could not learn a vocabulary.
class FitError : public DataError {
 public:
  using DataError::DataError;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::kNumerical, what) {}
};

// Training diverged. epoch and batch are 1-based.
class TrainingError : public NumericalError {
 public:
  TrainingError(const std::string &what, int epoch, int batch)
      : NumericalError(what), epoch_(epoch), batch_(batch) {}
  int epoch() const { return epoch_; }
  int batch() const { return batch_; }

 private:
  int epoch_;
  int batch_;
};

}  // namespace tgtriage

#endif  // TGTRIAGE_ERROR_H_
