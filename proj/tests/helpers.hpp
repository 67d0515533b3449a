#pragma once

#include <doctest.h>

#include "opcalc/error.hpp"

// CHECK that `expr` throws opcalc::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected_kind)                          \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const opcalc::Error& e_) {                                \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());          \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "no opcalc::Error thrown by " #expr);       \
  } while (false)
