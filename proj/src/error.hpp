#pragma once

#include <stdexcept>
#include <string>

namespace lcf {

enum class ErrorKind { kInput, kPrecondition, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(ErrorKind::kInput, msg);
}
[[noreturn]] inline void fail_precondition(const std::string& msg) {
  throw Error(ErrorKind::kPrecondition, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(ErrorKind::kInternal, msg);
}

}  // namespace lcf
