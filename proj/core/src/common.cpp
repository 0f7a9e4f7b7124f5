/*
 * Copyright 2026 The hdrelight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hdrelight/common.hpp"

namespace hdrelight {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kOutOfDomain:
      return "out_of_domain";
    case ErrorCode::kShapeMismatch:
      return "shape_mismatch";
    case ErrorCode::kBadSignature:
      return "bad_signature";
    case ErrorCode::kMalformedHeader:
      return "malformed_header";
    case ErrorCode::kTruncated:
      return "truncated";
    case ErrorCode::kUnsupportedOrientation:
      return "unsupported_orientation";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported_format";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kMissingFrame:
      return "missing_frame";
  }
  return "unknown";
}

ParseError::ParseError(ErrorCode code, std::size_t offset, const std::string& message)
    : Error(code, message + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

void validate_hdr(const HdrImage& img) {
  if (img.empty()) throw Error(ErrorCode::kInvalidInput, "empty HDR image");
  for (const Rgb& p : img.data()) {
    for (float c : {p.r, p.g, p.b}) {
      if (!std::isfinite(c) || c < 0.0f) {
        throw Error(ErrorCode::kInvalidInput, "HDR channel values must be finite and >= 0");
      }
    }
  }
}

}  // namespace hdrelight
