#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdlwb {

enum class ErrorCode {
  Syntax,
  UnknownToken,
  ThresholdOutOfRange,
  InfiniteWeight,
  ZeroWeight,
  DepthLimit,
  UnknownPrimitive,
  UnknownAtom,
  AlphabetMismatch,
  AtomMismatch,
  DimensionMismatch,
  InvalidModel,
  PartialMap,
  NotClassConstant,
  MassMismatch,
  GridTooCoarse,
  ResourceLimit,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this one exception type; the
/// code selects the CLI exit status, the position is set for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace pdlwb
