#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace dmot {

enum class ErrorCode {
  DuplicatePoint,
  AsymmetricMatrix,
  NegativeDistance,
  TriangleViolation,
  InvalidId,
  BadInput,
  KeyOutOfUniverse,
  ConfigInadmissible,
  InvalidLevel,
  InvalidNode,
  InvalidPoint,
  NoMeetingAbove,
  InvalidRange,
  EmptyQuery,
  UnknownPoint,
  DisconnectedSpanner,
  EndpointNotInQuery,
  InvalidR,
  NoFacilities,
  EmptyX,
  AlreadyPresent,
  NotPresent,
  IoError,
  ChecksumMismatch,
  VersionUnsupported,
  Truncated,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using PointId = int32_t;
using NodeId = int32_t;
using Level = int32_t;

constexpr NodeId kNoNode = -1;
constexpr Level kInfLevel = std::numeric_limits<Level>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Two nodes that first know each other at `level` (a < b).
struct Meeting {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  Level level = 0;
  NodeId other(NodeId x) const { return x == a ? b : a; }
  bool operator==(const Meeting&) const = default;
};

// Growth parameters of the hierarchy. Radii are r_j = tau^j * r0; the
// partition at level j is carved with balls of radius 2^-eta * r_j.
struct PartitionConfig {
  double tau = 2.0;
  int eta = 2;
  double r0 = 0.0;
  std::optional<double> epsilon;

  // Derives (tau, eta) for a target sandwich factor 1 + epsilon.
  static PartitionConfig from_epsilon(double epsilon, double r0 = 0.0);

  // Throws ConfigInadmissible unless eta >= 2, tau >= 1/(2^(eta-1)-1)+1 and
  // tau <= 2^eta (and the epsilon relations when epsilon is set).
  void validate() const;
  bool admissible() const;

  double radius(Level j) const { return r0 * std::pow(tau, static_cast<double>(j)); }
  double carve_radius(Level j) const { return std::ldexp(radius(j), -eta); }

  // tau 2^-eta / (tau - 1): every member of a level-j set lies strictly within
  // leader_factor() * r_j of its leader.
  double leader_factor() const { return tau * std::ldexp(1.0, -eta) / (tau - 1.0); }
  // (1 + 4 tau 2^-eta / (tau - 1)) * tau.
  double sandwich_factor() const { return (1.0 + 4.0 * leader_factor()) * tau; }
  // (1 + (tau/(tau-1))^2 2^(3-eta)) * tau.
  double spanner_stretch() const {
    double q = tau / (tau - 1.0);
    return (1.0 + q * q * std::ldexp(1.0, 3 - eta)) * tau;
  }
  // Smallest level j > after with carve_radius(j) > dist.
  Level first_carve_level_above(double dist, Level after) const;
  // Smallest level j >= from with radius(j) > dist.
  Level first_radius_level_above(double dist, Level from) const;
};

// Seeded multiplicative hash for integer keys used by all dictionaries.
struct SeededHash {
  uint64_t seed = 0x9e3779b97f4a7c15ULL;
  size_t operator()(uint64_t key) const {
    uint64_t x = key ^ seed;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return static_cast<size_t>(x);
  }
};

// ceil(log_base(x)) for x >= 1, robust against rounding.
int ceil_log(double base, double x);

}  // namespace dmot
