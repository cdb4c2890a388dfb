#pragma once

#include <stdexcept>

namespace haarq {

// An input that was claimed to satisfy an oracle/tree promise does not.
class promise_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace haarq
