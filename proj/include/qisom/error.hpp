// Copyright 2026 The qisom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QISOM_ERROR_HPP
#define QISOM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qisom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed word text, malformed JSON, invalid parameters.
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidQMatrix : public Error {
 public:
  InvalidQMatrix(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class NotARedex : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  NotPositive(std::string v, double min_pivot)
      : Error("Gram block " + v + " is not certified positive-definite (min pivot " + std::to_string(min_pivot) + ")"),
        min_pivot_(min_pivot) {}
  double min_pivot() const { return min_pivot_; }

 private:
  double min_pivot_;
};

class BadOrder : public Error {
 public:
  using Error::Error;
};

class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class SpectralGapTooSmall : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class NonIntegralMultiplicity : public Error {
 public:
  using Error::Error;
};

class RelationViolated : public Error {
 public:
  RelationViolated(int i, int j, double norm)
      : Error("relation violated for (" + std::to_string(i) + "," + std::to_string(j) + "), residual " + std::to_string(norm)),
        i_(i), j_(j), norm_(norm) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double norm() const { return norm_; }

 private:
  int i_, j_;
  double norm_;
};

}  // namespace qisom

#endif  // QISOM_ERROR_HPP
