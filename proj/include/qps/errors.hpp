#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qps {

/// A requested computation exceeds the configured dimension or enumeration cap.
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite value.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Resource caps. Defaults: p^N <= 243 for operators, (p^{2N})^3 <= 1e9 for
/// structure-constant enumeration.
struct Limits {
    std::size_t max_dim = 243;
    std::uint64_t max_triples = 1'000'000'000ULL;

    /// Defaults overridden by QPS_CAP="<max_dim>[,<max_triples>]" when set.
    static Limits from_env();

    void require_dim(std::size_t dim, const std::string& what) const;
    void require_triples(std::uint64_t count, const std::string& what) const;
};

}  // namespace qps
