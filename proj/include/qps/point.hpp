#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qps/phase.hpp"

namespace qps {

/// A vector in [p]^N. Entries are always stored reduced.
class ModVec {
  public:
    ModVec(Prime p, std::size_t length);
    ModVec(Prime p, std::span<const long long> entries);
    ModVec(Prime p, std::initializer_list<long long> entries);

    Prime prime() const noexcept { return p_; }
    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const noexcept { return entries_[i]; }
    void set(std::size_t i, long long value) noexcept;
    const std::vector<int>& entries() const noexcept { return entries_; }

    ModVec operator+(const ModVec& other) const;
    ModVec operator-(const ModVec& other) const;
    ModVec operator-() const;
    ModVec scaled(long long k) const;

    bool is_zero() const noexcept;

    friend bool operator==(const ModVec& a, const ModVec& b) noexcept {
        return a.p_ == b.p_ && a.entries_ == b.entries_;
    }

  private:
    void check_compatible(const ModVec& other) const;

    Prime p_;
    std::vector<int> entries_;
};

/// Integer dot product of the canonical representatives (not reduced).
///
/// Powers of i at p = 2 depend on the unreduced value, so callers reduce only
/// where omega is the base.
long long dot(const ModVec& a, const ModVec& b);

/// The standard basis vector e_k of length n.
ModVec unit_vector(Prime p, std::size_t n, std::size_t k);

/// A phase-space point (a1, a2) in [p]^N x [p]^N.
struct PhasePoint {
    ModVec a1;
    ModVec a2;

    PhasePoint(ModVec first, ModVec second);

    static PhasePoint origin(Prime p, std::size_t sites);
    /// Single-site convenience constructor.
    static PhasePoint single(Prime p, long long x1, long long x2);

    Prime prime() const noexcept { return a1.prime(); }
    std::size_t sites() const noexcept { return a1.size(); }

    PhasePoint operator+(const PhasePoint& other) const;
    PhasePoint operator-(const PhasePoint& other) const;
    PhasePoint operator-() const;

    bool is_zero() const noexcept { return a1.is_zero() && a2.is_zero(); }

    /// Site k as a single-site point.
    PhasePoint site(std::size_t k) const;

    std::string str() const;

    friend bool operator==(const PhasePoint& x, const PhasePoint& y) noexcept {
        return x.a1 == y.a1 && x.a2 == y.a2;
    }
};

/// Kronecker delta modulo p on phase-space points. Throws on shape mismatch.
bool delta_p(const PhasePoint& x, const PhasePoint& y);

/// Symplectic rotation (a1, a2) -> (a2, -a1).
PhasePoint symplectic_rotate(const PhasePoint& x);

/// The Hilbert space (C^p)^{(x) N} and its p^N x p^N phase-space grid.
///
/// Kets |a_1 ... a_N> flatten big-endian (site 1 most significant). Grid
/// points flatten as index(a1) * p^N + index(a2).
class Space {
  public:
    Space(Prime p, std::size_t sites);

    Prime prime() const noexcept { return p_; }
    std::size_t sites() const noexcept { return sites_; }
    /// p^N.
    std::size_t dim() const noexcept { return dim_; }
    /// p^{2N}.
    std::size_t grid_size() const noexcept { return dim_ * dim_; }

    std::size_t index_of(const ModVec& v) const;
    ModVec vec_at(std::size_t index) const;

    std::size_t index_of(const PhasePoint& x) const;
    PhasePoint point_at(std::size_t index) const;

    friend bool operator==(const Space& a, const Space& b) noexcept {
        return a.p_ == b.p_ && a.sites_ == b.sites_;
    }

  private:
    Prime p_;
    std::size_t sites_;
    std::size_t dim_;
};

/// p^N without overflow checks beyond the obvious.
std::size_t ipow(std::size_t base, std::size_t exponent);

}  // namespace qps
