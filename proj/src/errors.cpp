#include "nphoton/errors.hpp"

namespace nphoton {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_dimension: return "invalid-dimension";
        case ErrorKind::capacity: return "capacity";
        case ErrorKind::layout: return "layout";
        case ErrorKind::usage: return "usage";
        case ErrorKind::domain: return "domain";
        case ErrorKind::degenerate_truncation: return "degenerate-truncation";
        case ErrorKind::resonance: return "resonance";
        case ErrorKind::contract_violation: return "contract-violation";
        case ErrorKind::iteration_limit: return "iteration-limit";
        case ErrorKind::truncation_insufficient: return "truncation-insufficient";
        case ErrorKind::propagation: return "propagation";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

}  // namespace nphoton
