// Copyright 2026 The fairpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRPRIV_ERROR_H_
#define FAIRPRIV_ERROR_H_

#include <stdexcept>
#include <string>

namespace fairpriv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or invalid argument values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A profile or table whose length does not match the number of users.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The exact subset enumeration would exceed the configured user cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A declared symmetry group is not honored by the utility.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Optimal estimator weights are undefined because nobody shares data.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

// A computed equilibrium failed its residual certificate.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairpriv

#endif  // FAIRPRIV_ERROR_H_
