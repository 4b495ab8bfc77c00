#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pointlab {

// Base for every domain error raised by the library. The CLI maps these to
// exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument shape or range (negative wavenumber, non-hermitian matrix...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class PoleAtSpectralPoint : public Error {
public:
    explicit PoleAtSpectralPoint(double value)
        : Error("resolvent denominator vanishes at spectral value " + std::to_string(value)),
          value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

class UndefinedScale : public Error {
public:
    UndefinedScale() : Error("free couplings (0,0,0) have no resolvent-constant representation") {}
};

class SignUndefined : public Error {
public:
    SignUndefined() : Error("greens function needs x != 0 and x' != 0") {}
};

class MissingLimit : public Error {
public:
    using Error::Error;
};

class MissingDerivative : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(double condition)
        : Error("scattering system is singular (condition estimate " + std::to_string(condition) + ")"),
          condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class NotSpecialUnitary : public Error {
public:
    using Error::Error;
};

class ZeroCoupling : public Error {
public:
    ZeroCoupling() : Error("plan synthesis needs g1 != 0 and g3 != 0") {}
};

class DegenerateSampling : public Error {
public:
    using Error::Error;
};

class PhaseBlind : public Error {
public:
    PhaseBlind() : Error("|sin(phase)| below 1e-9: the pattern carries no state information") {}
};

class Inconsistent : public Error {
public:
    explicit Inconsistent(double misfit)
        : Error("no unit state reproduces the observables (misfit " + std::to_string(misfit) + ")"),
          misfit_(misfit) {}
    double misfit() const noexcept { return misfit_; }

private:
    double misfit_;
};

class Ambiguous : public Error {
public:
    using Candidate = std::pair<std::complex<double>, std::complex<double>>;

    explicit Ambiguous(std::vector<Candidate> candidates)
        : Error("observables without A4 match more than one state"), candidates_(std::move(candidates)) {}
    const std::vector<Candidate>& candidates() const noexcept { return candidates_; }

private:
    std::vector<Candidate> candidates_;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class LogDomain : public Error {
public:
    using Error::Error;
};

}  // namespace pointlab
