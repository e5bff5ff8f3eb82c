#pragma once

#include <stdexcept>
#include <string>

namespace flopgw {

/// Root of every engine error. `kind()` returns the stable machine-readable
/// name that the CLI puts into its error object.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define FLOPGW_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name, what) {}            \
  };

// ringcore
FLOPGW_DEFINE_ERROR(RelationNotHomogeneous)
FLOPGW_DEFINE_ERROR(DegeneratePairing)
FLOPGW_DEFINE_ERROR(UnknownGenerator)
FLOPGW_DEFINE_ERROR(DegreeOverflow)
FLOPGW_DEFINE_ERROR(NonRepresentable)
FLOPGW_DEFINE_ERROR(InvalidPresentation)
FLOPGW_DEFINE_ERROR(RingMismatch)

// flopchow
FLOPGW_DEFINE_ERROR(InvalidGeometry)

// gwlocal
FLOPGW_DEFINE_ERROR(ResourceLimit)
FLOPGW_DEFINE_ERROR(NotConcave)
FLOPGW_DEFINE_ERROR(GenericityFailure)
FLOPGW_DEFINE_ERROR(DimensionMismatch)
FLOPGW_DEFINE_ERROR(SeedDisagreement)
FLOPGW_DEFINE_ERROR(InvalidQuery)

#undef FLOPGW_DEFINE_ERROR

}  // namespace flopgw
