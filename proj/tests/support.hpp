#pragma once

#include <doctest.h>

#include "circpoly/error.hpp"

namespace circpoly::testing {

// Error code raised by fn; fails the test when nothing is thrown.
template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace circpoly::testing
