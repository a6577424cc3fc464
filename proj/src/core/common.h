#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wrsg {

/// Error with a stable short identifier (e.g. "singular_fit") alongside the
/// human-readable message.  The identifier is part of the library contract:
/// tests and the C layer match on it, the message is free-form.
class Error : public std::runtime_error {
public:
  Error(std::string id, const std::string& msg)
      : std::runtime_error(msg), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

private:
  std::string id_;
};

[[noreturn]] inline void raise(const char* id, const std::string& msg) {
  throw Error(id, msg);
}

} // namespace wrsg
