// Copyright 2026 The ranlay Authors. All Rights Reserved.
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
#ifndef RANLAY_ERROR_H_
#define RANLAY_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ranlay {

enum class ErrorCode {
  kOutOfCanvas,
  kMalformedRow,
  kNegativeOrInvertedBox,
  kUnknownClassLabel,
  kMissingImageDimension,
  kBoxOutOfPage,
  kUnmappableCategory,
  kDanglingImageId,
  kNonPositiveBoxDims,
  kOutOfRangeNormalizedValue,
  kUnknownClassId,
  kImageLabelMismatch,
  kImageUnreadable,
  kDimensionMismatch,
  kEmptyClass,
  kUnplaceableConfig,
  kInvalidConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All data errors raised by the library. The message carries file/line
// context where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  // The message without the error-code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace ranlay

#endif  // RANLAY_ERROR_H_
