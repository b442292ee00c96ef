#pragma once

#include <stdexcept>
#include <string>

namespace graphjoin {

enum class ErrorCode {
  kUndefinedIndexUniverse,
  kIndexOverflow,
  kUndefinedExtension,
  kValidation,
  kUnknownComponent,
  kForeignOperand,
  kInvalidArgument,
  kSpecMismatch,
  kParse,
  kDuplicateId,
  kDanglingEndpoint,
  kIo,
  kFormat,
  kTimeout,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphjoin
