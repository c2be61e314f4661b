#pragma once

#include <stdexcept>

namespace mcvd {

// thrown when a receiver placement makes the requested quantity meaningless
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// transmitter coincides with a receiver center, no radial direction exists
class ZeroRadialDistance : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// hypothesis statistics unusable for detection (zero variance etc)
class DegenerateStats : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// joint statistics requested across different slot indices
class MismatchedSlot : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// empirical AUC needs samples from both hypotheses
class SingleClass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mcvd
