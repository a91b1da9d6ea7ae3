// Copyright 2026 The trajsan Authors
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

#ifndef TRAJSAN_ERROR_H_
#define TRAJSAN_ERROR_H_

#include <stdexcept>
#include <string>

namespace trajsan {

// Categories surfaced to callers and mapped to CLI exit codes.
enum class ErrorCode {
  kParse = 2,
  kConfig = 3,
  kUndefinedStatistics = 4,
  kEmptyDomain = 5,
  kMismatch = 6,
  kIo = 7,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trajsan

#endif  // TRAJSAN_ERROR_H_
