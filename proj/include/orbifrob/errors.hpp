#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbifrob {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured element/dimension cap.
class SizeLimit : public Error {
 public:
  SizeLimit(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : Error(what + ": requested " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label) : Error("unknown label '" + label + "'") {}
};

class BadRepresentative : public Error {
 public:
  using Error::Error;
};

class NotAbelian : public Error {
 public:
  using Error::Error;
};

class NotTransitive : public Error {
 public:
  using Error::Error;
};

class NotSurjective : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class PresentationMismatch : public Error {
 public:
  using Error::Error;
};

class NotElementaryAbelian2 : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Raised when an identity that must hold mathematically fails; indicates a bug.
class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Resource caps shared by every module.
struct Limits {
  static constexpr std::uint64_t kDefaultCap = 1'000'000;
  std::uint64_t cap = kDefaultCap;

  void require(std::uint64_t requested, const std::string& what) const {
    if (requested > cap) throw SizeLimit(what, requested, cap);
  }
};

/// Saturating multiply used for size estimates.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) return UINT64_MAX;
  return out;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

}  // namespace orbifrob
