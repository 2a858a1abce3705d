#include "splaydeque/error.hpp"

namespace splaydeque {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::not_found: return "not-found";
        case ErrorKind::empty_structure: return "empty-structure";
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::invariant_violation: return "invariant-violation";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

}  // namespace splaydeque
