#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "gapline/error.hpp"

namespace testing {

// Kind of the gapline::Error raised by fn; fails the test if nothing is thrown.
inline gapline::ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const gapline::Error& e) {
    return e.kind();
  }
  FAIL("expected a gapline::Error");
  return gapline::ErrorKind::Consistency;
}

}  // namespace testing
