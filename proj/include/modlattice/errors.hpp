#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modlattice {

// Error taxonomy. The CLI maps these onto process exit codes, so new
// failure modes should reuse one of these rather than raw runtime_error.
struct InvalidSpec : std::runtime_error {
  explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedRing : std::runtime_error {
  explicit UnsupportedRing(const std::string& what) : std::runtime_error(what) {}
};

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotProper : std::runtime_error {
  explicit NotProper(const std::string& what) : std::runtime_error(what) {}
};

struct RingMismatch : std::runtime_error {
  explicit RingMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
  explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct RequiresFactorization : std::runtime_error {
  explicit RequiresFactorization(const std::string& what)
      : std::runtime_error(what) {}
};

struct UnknownLaw : std::runtime_error {
  explicit UnknownLaw(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Enumeration limits. All exhaustive searches check against these and throw
// BoundExceeded instead of running away.
struct Bounds {
  std::int64_t maxRingCarrier = 4096;   // carrier size for ideal enumeration
  std::int64_t maxIdealCount = 20000;   // ideals per ring
  std::int64_t maxModule = 4096;        // |M| for single-submodule operations
  std::int64_t maxLattice = 512;        // |M| for full lattice enumeration
  std::int64_t maxSubmoduleCount = 20000;
  std::int64_t maxCells = 1 << 20;      // |R|^k cap for coset enumeration
};

// Default bounds; MODLATTICE_MAX_CELLS overrides the coset enumeration cap.
Bounds defaultBounds();

}  // namespace modlattice
