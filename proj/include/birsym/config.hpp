#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace birsym {

inline constexpr const char* kCodeVersion = "1.0.0";

// Resource bounds keeping every enumeration and factorization total.
struct Limits {
  std::size_t max_group_order = 10'000;
  std::size_t max_enumeration = 50'000'000;  // bound on |G|^n
  std::size_t snf_max_cols = 5'000;
  std::size_t snf_max_rows = 20'000;
};

// Raised when an input exceeds one of the configured Limits.
class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace birsym
