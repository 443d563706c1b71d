#pragma once

#include <stdexcept>
#include <string>

namespace eldg {

// Base class for runtime failures of the solver itself (as opposed to bad
// configuration, which throws std::invalid_argument).  The CLI maps these to
// a distinct exit code.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An upstream cell whose traced endpoints cross: the time step is too large
// relative to the divergence of the node velocity field.
class inverted_element_error : public solver_error {
 public:
  inverted_element_error(int cell, double width)
      : solver_error("inverted upstream cell j=" + std::to_string(cell) +
                     " (width " + std::to_string(width) +
                     "): time step too large for velocity divergence"),
        cell_(cell) {}
  int cell() const noexcept { return cell_; }

 private:
  int cell_;
};

// The approximate eigenvector pair degenerates (1/(2 a_p) blows up).
class singular_decomposition_error : public solver_error {
 public:
  using solver_error::solver_error;
};

}  // namespace eldg
