#pragma once

#include <stdexcept>
#include <string>

namespace pmwe {

struct MalformedEditInfo : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompositionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signals a broken internal invariant; never expected on valid input.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct ProtocolMisuse : std::logic_error {
  using std::logic_error::logic_error;
};

struct CorruptSketch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StreamUnderflow : CorruptSketch {
  StreamUnderflow() : CorruptSketch("bit stream underflow") {}
};

struct UnsupportedFormat : CorruptSketch {
  using CorruptSketch::CorruptSketch;
};

}  // namespace pmwe
