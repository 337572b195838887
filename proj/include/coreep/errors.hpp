#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace coreep {

// Raised when a computed inverse fails its defining identities at the
// configured tolerance. Carries the offending residuals by name.
class NumericalFailure : public std::runtime_error {
  public:
    NumericalFailure(const std::string& what, std::map<std::string, double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}

    const std::map<std::string, double>& residuals() const { return residuals_; }

  private:
    std::map<std::string, double> residuals_;
};

class NoGroupInverse : public std::runtime_error {
  public:
    explicit NoGroupInverse(const std::string& what) : std::runtime_error(what) {}
};

class NoBcInverse : public std::runtime_error {
  public:
    explicit NoBcInverse(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the independent core-EP computation routes disagree beyond the
// equality tolerance. Carries all three candidates.
class RouteMismatch : public std::runtime_error {
  public:
    RouteMismatch(const std::string& what, Eigen::MatrixXcd r1, Eigen::MatrixXcd r2, Eigen::MatrixXcd r3,
                  double residual)
        : std::runtime_error(what), r1_(std::move(r1)), r2_(std::move(r2)), r3_(std::move(r3)), residual_(residual) {}

    const Eigen::MatrixXcd& r1() const { return r1_; }
    const Eigen::MatrixXcd& r2() const { return r2_; }
    const Eigen::MatrixXcd& r3() const { return r3_; }
    double residual() const { return residual_; }

  private:
    Eigen::MatrixXcd r1_, r2_, r3_;
    double residual_;
};

class OrderViolation : public std::runtime_error {
  public:
    explicit OrderViolation(const std::string& what) : std::runtime_error(what) {}
};

// Malformed matrix file or JSON payload.
class MatrixIoError : public std::runtime_error {
  public:
    explicit MatrixIoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coreep
