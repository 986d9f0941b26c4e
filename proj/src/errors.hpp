// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace peakshave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance data violates the model (shapes, signs, fixed initial state).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// No binary schedule satisfies the buffer bounds.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// The oracle refuses instances larger than its enumeration cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// A guarantee of the algorithm did not hold; indicates a bug or numeric
// breakdown rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace peakshave
