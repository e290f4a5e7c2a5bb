#pragma once

// Exact arithmetic on roots of unity for a fixed prime p.
//
// Every phase is stored as an exponent of zeta = e^{2 pi i / (4p)}. The p-th
// root omega is zeta^4 and the imaginary unit is zeta^p, so the p = 2 phases
// {+-1, +-i} and the odd-p powers of omega share one representation.

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qps {

/// A validated prime modulus.
class Prime {
  public:
    explicit Prime(int p);

    int value() const noexcept { return p_; }
    operator int() const noexcept { return p_; }

    friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

  private:
    int p_;
};

bool is_prime(long long n) noexcept;

/// Non-negative residue of x modulo m (m > 0).
constexpr long long mod(long long x, long long m) noexcept {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

class Phase {
  public:
    explicit Phase(Prime p) noexcept : p_(p), exponent_(0) {}

    /// zeta^e, reduced modulo 4p.
    static Phase from_exponent(Prime p, long long e) noexcept;

    Prime prime() const noexcept { return p_; }
    int exponent() const noexcept { return exponent_; }
    int modulus() const noexcept { return 4 * p_.value(); }

    bool is_one() const noexcept { return exponent_ == 0; }

    /// Throws std::invalid_argument when the primes differ.
    Phase operator*(const Phase& other) const;
    Phase& operator*=(const Phase& other);
    Phase inverse() const noexcept;
    Phase conj() const noexcept { return inverse(); }
    Phase pow(long long k) const noexcept;

    std::complex<double> to_complex() const noexcept;

    friend bool operator==(const Phase& a, const Phase& b) noexcept {
        return a.p_ == b.p_ && a.exponent_ == b.exponent_;
    }

    std::string str() const;

  private:
    Phase(Prime p, int exponent) noexcept : p_(p), exponent_(exponent) {}

    Prime p_;
    int exponent_;
};

/// omega^e with omega = e^{2 pi i / p}; e may be negative or unreduced.
Phase omega_pow(long long e, Prime p) noexcept;

/// i^e, housed in the same 4p-th root group.
Phase i_pow(long long e, Prime p) noexcept;

/// (-1)^e.
Phase sign_pow(long long e, Prime p) noexcept;

std::complex<double> phase_to_complex(const Phase& a) noexcept;
Phase phase_mul(const Phase& a, const Phase& b);

/// Sum over n in [p] of omega^{n x}: p when p | x, else 0.
long long character_sum(long long x, Prime p) noexcept;

/// Marker returned by half_inverse for p = 2, where 2 has no inverse and the
/// phase omega^{1/2} is read as i.
struct HalfAsI {
    friend bool operator==(HalfAsI, HalfAsI) noexcept { return true; }
};

using HalfInverse = std::variant<long long, HalfAsI>;

/// (p + 1) / 2 for odd p; HalfAsI for p = 2.
HalfInverse half_inverse(Prime p) noexcept;

/// Modular inverse of a nonzero residue.
long long mod_inverse(long long a, Prime p);

/// An exact integer combination of 4p-th roots of unity.
///
/// Used for traces of monomial operators, where a zero test must not depend on
/// round-off.
class PhaseSum {
  public:
    explicit PhaseSum(Prime p);

    Prime prime() const noexcept { return p_; }

    void add(const Phase& phase, long long multiplicity = 1);
    PhaseSum& operator+=(const PhaseSum& other);

    /// Exact test for the value being zero in the cyclotomic field.
    bool is_zero() const;

    /// Exact test for the value equal to the integer n.
    bool equals(long long n) const;

    std::complex<double> to_complex() const noexcept;

  private:
    Prime p_;
    std::vector<long long> counts_;
};

}  // namespace qps
