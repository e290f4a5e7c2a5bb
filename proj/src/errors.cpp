#include "qps/errors.hpp"

#include <cstdlib>

namespace qps {

Limits Limits::from_env() {
    Limits limits;
    const char* raw = std::getenv("QPS_CAP");
    if (raw == nullptr || *raw == '\0') {
        return limits;
    }
    const std::string value(raw);
    const auto comma = value.find(',');
    try {
        limits.max_dim = std::stoull(value.substr(0, comma));
        if (comma != std::string::npos) {
            limits.max_triples = std::stoull(value.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("QPS_CAP must look like <max_dim>[,<max_triples>], got '" + value + "'");
    }
    return limits;
}

void Limits::require_dim(std::size_t dim, const std::string& what) const {
    if (dim > max_dim) {
        throw CapExceeded(what + ": dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(max_dim));
    }
}

void Limits::require_triples(std::uint64_t count, const std::string& what) const {
    if (count > max_triples) {
        throw CapExceeded(what + ": " + std::to_string(count) + " triples exceed cap " +
                          std::to_string(max_triples));
    }
}

}  // namespace qps
