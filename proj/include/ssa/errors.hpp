#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssa {

// Thrown when an iterative numeric routine fails to converge.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, std::size_t iterations)
      : std::runtime_error(what), iterations_(iterations) {}

  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssa
