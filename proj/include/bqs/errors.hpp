#pragma once

#include <stdexcept>
#include <string>

namespace bqs {

/// Malformed external input (CSV rows, store files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant, e.g. dangling ids in the store.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bqs
