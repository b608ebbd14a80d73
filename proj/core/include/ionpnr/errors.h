#pragma once

#include <stdexcept>
#include <string>

namespace ionpnr {

// A parameter or argument is outside its documented domain.
class InvalidParameter : public std::invalid_argument {
  public:
    explicit InvalidParameter(const std::string &what) : std::invalid_argument(what) {}
};

// Adjacent photon-number hypotheses have identical mean counts, so no
// discrimination threshold exists (t = 0 or a zero fluorescence rate).
class DegenerateHypotheses : public std::domain_error {
  public:
    explicit DegenerateHypotheses(const std::string &what) : std::domain_error(what) {}
};

}  // namespace ionpnr
