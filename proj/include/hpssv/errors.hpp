#pragma once

#include <stdexcept>
#include <string>

namespace hpssv {

/// Base of every numerical error raised by the library. `name()` is the
/// stable identifier reported by the CLI on exit code 3.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  /// True for errors meaning "the quantity is undefined at this parameter
  /// point" rather than "the computation went wrong".
  virtual bool undefined_point() const noexcept { return false; }

 private:
  std::string name_;
};

#define HPSSV_DEFINE_ERROR(Type, Undefined)                              \
  class Type : public Error {                                            \
   public:                                                               \
    explicit Type(const std::string& what) : Error(#Type, what) {}       \
    bool undefined_point() const noexcept override { return Undefined; } \
  }

HPSSV_DEFINE_ERROR(InvalidArgument, false);
HPSSV_DEFINE_ERROR(OverflowError, false);
HPSSV_DEFINE_ERROR(NonPositiveNorm, true);
HPSSV_DEFINE_ERROR(UnsupportedMoment, false);
HPSSV_DEFINE_ERROR(ZeroMeanPhoton, true);
HPSSV_DEFINE_ERROR(DegenerateDenominator, true);
HPSSV_DEFINE_ERROR(FormulaResidue, false);
HPSSV_DEFINE_ERROR(NonConvergence, false);
HPSSV_DEFINE_ERROR(UnphysicalReservoir, false);
HPSSV_DEFINE_ERROR(NearSingularD, false);
HPSSV_DEFINE_ERROR(CutoffTooSmall, false);
HPSSV_DEFINE_ERROR(TraceDrift, false);

#undef HPSSV_DEFINE_ERROR

}  // namespace hpssv
