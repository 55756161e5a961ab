#pragma once

#include <stdexcept>

// Always-on internal checks. These guard contracts the code relies on at
// every call and stay active in optimized builds; a failure means a bug in
// this library (or a broken operator under test), never bad user input.

namespace rankrev::detail {

[[noreturn]] inline void invariant_failure(const char* what) {
  throw std::logic_error(std::string("invariant violated: ") + what);
}

}  // namespace rankrev::detail

#define RANKREV_INVARIANT(cond, what)                  \
  do {                                                 \
    if (!(cond)) ::rankrev::detail::invariant_failure(what); \
  } while (0)
