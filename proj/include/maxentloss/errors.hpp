#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxent {

// Base class for all library errors so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid model parameters, malformed configs, bad CSV rows, ...
class InputError : public Error {
public:
    using Error::Error;
};

// Thrown when an iterative solver exhausts its budget without meeting the
// requested tolerances.  The best iterate found is attached so callers can
// inspect how close the run got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_point,
                     std::vector<double> residuals, int iterations)
        : Error(what),
          best_point_(std::move(best_point)),
          residuals_(std::move(residuals)),
          iterations_(iterations) {}

    const std::vector<double>& best_point() const noexcept { return best_point_; }
    const std::vector<double>& residuals() const noexcept { return residuals_; }
    int iterations() const noexcept { return iterations_; }

private:
    std::vector<double> best_point_;
    std::vector<double> residuals_;
    int iterations_;
};

}  // namespace maxent
