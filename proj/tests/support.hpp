#pragma once

#include "sumfree/error.hpp"

namespace testing {

// Error code thrown by f, or ok.
template <class F>
sumfree::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const sumfree::Error& e) {
    return e.code();
  }
  return sumfree::ErrorCode::ok;
}

}  // namespace testing
