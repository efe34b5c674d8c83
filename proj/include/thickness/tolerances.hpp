#pragma once

#include <stdexcept>
#include <string>

namespace thickness {

// Relative tolerance for exact identities (norm axioms, inequality slack).
inline constexpr double REL_TOL = 1e-12;

// Net points must be unit within this.
inline constexpr double NET_UNIT_TOL = 1e-9;

// Slack absorbed by every guaranteed-distance formula (double rounding).
inline constexpr double DIST_SLACK = 1e-9;

// Default cap on points per net construction.
inline constexpr long long NET_CARDINALITY_CAP = 1'000'000;

// Thrown when a construction would exceed its cardinality cap.
class resource_error : public std::runtime_error {
  public:
    resource_error(long long required_, long long cap_)
        : std::runtime_error("net cardinality " + std::to_string(required_) +
                             " exceeds cap " + std::to_string(cap_)),
          required(required_),
          cap(cap_) {}

    long long required;
    long long cap;
};

}  // namespace thickness
