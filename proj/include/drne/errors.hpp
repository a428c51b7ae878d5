// Copyright 2026 The drne Authors.
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

#ifndef DRNE_ERRORS_HPP_
#define DRNE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace drne {

enum class ErrorCode {
  kParameter,
  kShape,
  kDomain,
  kNumeric,
  kContract,
  kRange,
  kConfig,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Single exception type for the library; the code says which contract broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace drne

#endif  // DRNE_ERRORS_HPP_
