#ifndef TMSV_ERRORS_H
#define TMSV_ERRORS_H

#include <stdexcept>
#include <string>

namespace tmsv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A Fock cutoff or grid size that cannot hold the requested object.
class InvalidDimension : public Error {
  public:
    using Error::Error;
};

/// Operands whose Hilbert-space dimensions do not agree.
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// A physical parameter outside its domain (lambda >= 1, r < 0, ...).
class InvalidParameter : public Error {
  public:
    using Error::Error;
};

/// Probability pushed onto the edge of a truncated Fock space exceeded the
/// configured threshold. Raise the cutoff.
class TruncationOverflow : public Error {
  public:
    TruncationOverflow(double leakage, double threshold)
        : Error("truncation leakage " + std::to_string(leakage) + " exceeds threshold " +
                std::to_string(threshold) + "; increase the Fock cutoff"),
          leakage_(leakage) {
    }
    double leakage() const {
        return leakage_;
    }

  private:
    double leakage_;
};

/// A wavefunction has non-negligible weight at the edge of its grid, or the
/// grid spacing does not resolve the squeezed kernel.
class GridCoverage : public Error {
  public:
    using Error::Error;
};

/// A measurement outcome with zero probability was supplied.
class InvalidOutcome : public Error {
  public:
    using Error::Error;
};

/// A downward number displacement would discard amplitude below the shift.
class LossyDownshift : public Error {
  public:
    LossyDownshift(int shift, double destroyed_mass)
        : Error("number downshift by " + std::to_string(-shift) + " destroys probability mass " +
                std::to_string(destroyed_mass)),
          destroyed_mass_(destroyed_mass) {
    }
    double destroyed_mass() const {
        return destroyed_mass_;
    }

  private:
    double destroyed_mass_;
};

}  // namespace tmsv

#endif
