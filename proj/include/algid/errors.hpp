#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algid {

enum class Errc {
  VersionMismatch,
  UnknownVersion,
  RankOutOfRange,
  NoDigestSupport,
  NonCanonical,
  ThetaExhausted,
  InvalidToken,
  InvalidKey,
  InvalidSymbol,
  NotAFunction,
  NotCommuting,
  BadPosition,
  RemovalDisabled,
  RefusedSize,
  NotFound,
  ContentConflict,
  AliasRejected,
  MalformedPlan,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code);

/// Domain error raised by every algid operation. The code is stable and is
/// what callers (and the CLI exit-code mapping) should branch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace algid
