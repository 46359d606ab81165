#include "peirce/error.hpp"

namespace peirce {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::NotIdempotentFamily: return "NotIdempotentFamily";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::RankTooSmall: return "RankTooSmall";
    case ErrorKind::PairingNotSurjective: return "PairingNotSurjective";
    case ErrorKind::ModuleNotFirm: return "ModuleNotFirm";
    case ErrorKind::NotQuasiInvertible: return "NotQuasiInvertible";
    case ErrorKind::BlockMismatch: return "BlockMismatch";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IndexClash: return "IndexClash";
    case ErrorKind::InjectivityFailure: return "InjectivityFailure";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace peirce
