#pragma once

#include <stdexcept>
#include <string>

namespace kpindex {

/// Bad input data: malformed corpus, corrupt index, unknown document.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad invocation: unknown config key, out-of-range value, unknown model.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kpindex
