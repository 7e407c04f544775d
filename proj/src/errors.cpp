#include "algid/errors.hpp"

namespace algid {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::UnknownVersion: return "UnknownVersion";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::NoDigestSupport: return "NoDigestSupport";
    case Errc::NonCanonical: return "NonCanonical";
    case Errc::ThetaExhausted: return "ThetaExhausted";
    case Errc::InvalidToken: return "InvalidToken";
    case Errc::InvalidKey: return "InvalidKey";
    case Errc::InvalidSymbol: return "InvalidSymbol";
    case Errc::NotAFunction: return "NotAFunction";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::BadPosition: return "BadPosition";
    case Errc::RemovalDisabled: return "RemovalDisabled";
    case Errc::RefusedSize: return "RefusedSize";
    case Errc::NotFound: return "NotFound";
    case Errc::ContentConflict: return "ContentConflict";
    case Errc::AliasRejected: return "AliasRejected";
    case Errc::MalformedPlan: return "MalformedPlan";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace algid
