// Copyright 2026 The ptr Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ptr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, leg layouts or slot counts do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// An operator that must be positive semidefinite has a negative eigenvalue
/// beyond the tolerated rounding band.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// A conditional state was requested for an event whose probability is below
/// the resolution floor.
class UnresolvableConditionalError : public Error {
 public:
  using Error::Error;
};

/// Tomographic records do not determine the process tensor.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// A requested computation exceeds a configured size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Invalid model or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent data on disk.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptr
