#include "qps/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qps {

bool is_prime(long long n) noexcept {
    if (n < 2) {
        return false;
    }
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

Prime::Prime(int p) : p_(p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("p must be prime (got " + std::to_string(p) + ")");
    }
}

Phase Phase::from_exponent(Prime p, long long e) noexcept {
    return Phase(p, static_cast<int>(mod(e, 4LL * p.value())));
}

Phase Phase::operator*(const Phase& other) const {
    if (!(p_ == other.p_)) {
        throw std::invalid_argument("phase_mul: mismatched primes");
    }
    return Phase(p_, static_cast<int>((exponent_ + other.exponent_) % modulus()));
}

Phase& Phase::operator*=(const Phase& other) {
    *this = *this * other;
    return *this;
}

Phase Phase::inverse() const noexcept {
    return Phase(p_, static_cast<int>(mod(-exponent_, modulus())));
}

Phase Phase::pow(long long k) const noexcept {
    // exponent * k can overflow for huge k; reduce k first.
    const long long m = modulus();
    return from_exponent(p_, exponent_ * mod(k, m));
}

std::complex<double> Phase::to_complex() const noexcept {
    const int p = p_.value();
    // Quarter turns are exact.
    if (exponent_ == 0) {
        return {1.0, 0.0};
    }
    if (exponent_ == p) {
        return {0.0, 1.0};
    }
    if (exponent_ == 2 * p) {
        return {-1.0, 0.0};
    }
    if (exponent_ == 3 * p) {
        return {0.0, -1.0};
    }
    const double angle = 2.0 * std::numbers::pi * exponent_ / (4.0 * p);
    return {std::cos(angle), std::sin(angle)};
}

std::string Phase::str() const {
    return "zeta" + std::to_string(modulus()) + "^" + std::to_string(exponent_);
}

Phase omega_pow(long long e, Prime p) noexcept {
    return Phase::from_exponent(p, 4 * mod(e, p.value()));
}

Phase i_pow(long long e, Prime p) noexcept {
    return Phase::from_exponent(p, static_cast<long long>(p.value()) * mod(e, 4));
}

Phase sign_pow(long long e, Prime p) noexcept {
    return Phase::from_exponent(p, 2LL * p.value() * mod(e, 2));
}

std::complex<double> phase_to_complex(const Phase& a) noexcept { return a.to_complex(); }

Phase phase_mul(const Phase& a, const Phase& b) { return a * b; }

long long character_sum(long long x, Prime p) noexcept {
    return mod(x, p.value()) == 0 ? p.value() : 0;
}

HalfInverse half_inverse(Prime p) noexcept {
    if (p.value() == 2) {
        return HalfAsI{};
    }
    return static_cast<long long>((p.value() + 1) / 2);
}

long long mod_inverse(long long a, Prime p) {
    const long long r = mod(a, p.value());
    if (r == 0) {
        throw std::domain_error("mod_inverse: zero has no inverse");
    }
    // Fermat: a^{p-2}.
    long long result = 1;
    long long base = r;
    long long e = p.value() - 2;
    while (e > 0) {
        if (e & 1) {
            result = result * base % p.value();
        }
        base = base * base % p.value();
        e >>= 1;
    }
    return result;
}

PhaseSum::PhaseSum(Prime p) : p_(p), counts_(static_cast<std::size_t>(4 * p.value()), 0) {}

void PhaseSum::add(const Phase& phase, long long multiplicity) {
    if (!(phase.prime() == p_)) {
        throw std::invalid_argument("PhaseSum: mismatched primes");
    }
    counts_[static_cast<std::size_t>(phase.exponent())] += multiplicity;
}

PhaseSum& PhaseSum::operator+=(const PhaseSum& other) {
    if (!(other.p_ == p_)) {
        throw std::invalid_argument("PhaseSum: mismatched primes");
    }
    for (std::size_t e = 0; e < counts_.size(); ++e) {
        counts_[e] += other.counts_[e];
    }
    return *this;
}

bool PhaseSum::is_zero() const {
    const int p = p_.value();
    const int m = 4 * p;
    if (p == 2) {
        // Q(zeta_8): zeta^{e+4} = -zeta^e, and 1, zeta, zeta^2, zeta^3 are a basis.
        for (int e = 0; e < 4; ++e) {
            if (counts_[e] - counts_[e + 4] != 0) {
                return false;
            }
        }
        return true;
    }
    // zeta^e = i^x omega^y with e = p x + 4 y (CRT, gcd(4, p) = 1). Fold i^2 = -1
    // onto x in {0, 1}; 1 and i are independent over Q(omega), and
    // sum_y c_y omega^y = 0 iff all c_y agree.
    const long long p_inv4 = mod(p, 4);  // p is its own inverse mod 4
    const long long four_inv = mod_inverse(4, p_);
    std::vector<long long> folded(static_cast<std::size_t>(2 * p), 0);
    for (int e = 0; e < m; ++e) {
        if (counts_[e] == 0) {
            continue;
        }
        const long long x = mod(static_cast<long long>(e) * p_inv4, 4);
        const long long y = mod(static_cast<long long>(e) * four_inv, p);
        const long long sign = x >= 2 ? -1 : 1;
        folded[static_cast<std::size_t>((x % 2) * p + y)] += sign * counts_[e];
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 1; y < p; ++y) {
            if (folded[x * p + y] != folded[x * p]) {
                return false;
            }
        }
    }
    return true;
}

bool PhaseSum::equals(long long n) const {
    PhaseSum shifted = *this;
    shifted.counts_[0] -= n;
    return shifted.is_zero();
}

std::complex<double> PhaseSum::to_complex() const noexcept {
    std::complex<double> total{0.0, 0.0};
    for (std::size_t e = 0; e < counts_.size(); ++e) {
        if (counts_[e] != 0) {
            total += static_cast<double>(counts_[e]) *
                     Phase::from_exponent(p_, static_cast<long long>(e)).to_complex();
        }
    }
    return total;
}

}  // namespace qps
