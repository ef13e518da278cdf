#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nphoton {

enum class ErrorKind {
    invalid_dimension,
    capacity,
    layout,
    usage,
    domain,
    degenerate_truncation,
    resonance,
    contract_violation,
    iteration_limit,
    truncation_insufficient,
    propagation,
    config,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Throws Error(kind, msg) when cond is false.
void require(bool cond, ErrorKind kind, const std::string& msg);

}  // namespace nphoton
