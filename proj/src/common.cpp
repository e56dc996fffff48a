#include "dmot/common.hpp"

#include <algorithm>
#include <sstream>

namespace dmot {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::KeyOutOfUniverse: return "KeyOutOfUniverse";
    case ErrorCode::ConfigInadmissible: return "ConfigInadmissible";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::NoMeetingAbove: return "NoMeetingAbove";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::DisconnectedSpanner: return "DisconnectedSpanner";
    case ErrorCode::EndpointNotInQuery: return "EndpointNotInQuery";
    case ErrorCode::InvalidR: return "InvalidR";
    case ErrorCode::NoFacilities: return "NoFacilities";
    case ErrorCode::EmptyX: return "EmptyX";
    case ErrorCode::AlreadyPresent: return "AlreadyPresent";
    case ErrorCode::NotPresent: return "NotPresent";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::Truncated: return "Truncated";
  }
  return "Unknown";
}

PartitionConfig PartitionConfig::from_epsilon(double epsilon, double r0) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::ConfigInadmissible, "epsilon must lie in (0,1)");
  }
  PartitionConfig c;
  c.epsilon = epsilon;
  c.tau = 1.0 + epsilon / 3.0;
  c.r0 = r0;
  int eta = 2;
  while (!(std::ldexp(1.0, -eta) < epsilon * epsilon / 24.0) ||
         c.tau < 1.0 / (std::ldexp(1.0, eta - 1) - 1.0) + 1.0) {
    ++eta;
  }
  c.eta = eta;
  return c;
}

bool PartitionConfig::admissible() const {
  if (eta < 2 || eta > 60) return false;
  if (!(tau > 1.0) || !std::isfinite(tau)) return false;
  if (tau < 1.0 / (std::ldexp(1.0, eta - 1) - 1.0) + 1.0) return false;
  if (tau > std::ldexp(1.0, eta)) return false;
  if (epsilon) {
    double e = *epsilon;
    if (!(e > 0.0 && e < 1.0)) return false;
    if (std::abs(tau - (1.0 + e / 3.0)) > 1e-12) return false;
    if (!(std::ldexp(1.0, -eta) < e * e / 24.0)) return false;
  }
  return true;
}

void PartitionConfig::validate() const {
  if (!admissible()) {
    std::ostringstream os;
    os << "tau=" << tau << " eta=" << eta;
    if (epsilon) os << " epsilon=" << *epsilon;
    throw Error(ErrorCode::ConfigInadmissible, os.str());
  }
}

Level PartitionConfig::first_carve_level_above(double dist, Level after) const {
  double est = std::log(std::ldexp(dist, eta) / r0) / std::log(tau);
  Level j = std::max<Level>(after + 1, static_cast<Level>(std::floor(est)));
  while (j > after + 1 && carve_radius(j - 1) > dist) --j;
  while (!(carve_radius(j) > dist)) ++j;
  return j;
}

Level PartitionConfig::first_radius_level_above(double dist, Level from) const {
  double est = std::log(dist / r0) / std::log(tau);
  Level j = std::max<Level>(from, static_cast<Level>(std::floor(est)));
  while (j > from && radius(j - 1) > dist) --j;
  while (!(radius(j) > dist)) ++j;
  return j;
}

int ceil_log(double base, double x) {
  if (x <= 1.0) return 0;
  int c = std::max(0, static_cast<int>(std::floor(std::log(x) / std::log(base))) - 1);
  while (std::pow(base, c) < x) ++c;
  return c;
}

}  // namespace dmot
