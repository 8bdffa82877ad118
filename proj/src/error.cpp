#include "procova/error.hpp"

namespace procova {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::SingleArm: return "SingleArm";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::AllReplicationsFailed: return "AllReplicationsFailed";
    case ErrorKind::DegenerateScore: return "DegenerateScore";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

}  // namespace procova
