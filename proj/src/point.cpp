#include "qps/point.hpp"

#include <limits>
#include <stdexcept>

namespace qps {

ModVec::ModVec(Prime p, std::size_t length) : p_(p), entries_(length, 0) {}

ModVec::ModVec(Prime p, std::span<const long long> entries) : p_(p) {
    entries_.reserve(entries.size());
    for (long long e : entries) {
        entries_.push_back(static_cast<int>(mod(e, p.value())));
    }
}

ModVec::ModVec(Prime p, std::initializer_list<long long> entries)
    : ModVec(p, std::span<const long long>(entries.begin(), entries.size())) {}

void ModVec::set(std::size_t i, long long value) noexcept {
    entries_[i] = static_cast<int>(mod(value, p_.value()));
}

void ModVec::check_compatible(const ModVec& other) const {
    if (!(p_ == other.p_) || entries_.size() != other.entries_.size()) {
        throw std::invalid_argument("ModVec: dimension or prime mismatch");
    }
}

ModVec ModVec::operator+(const ModVec& other) const {
    check_compatible(other);
    ModVec out(p_, size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.set(i, entries_[i] + other.entries_[i]);
    }
    return out;
}

ModVec ModVec::operator-(const ModVec& other) const {
    check_compatible(other);
    ModVec out(p_, size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.set(i, entries_[i] - other.entries_[i]);
    }
    return out;
}

ModVec ModVec::operator-() const { return scaled(-1); }

ModVec ModVec::scaled(long long k) const {
    ModVec out(p_, size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.set(i, mod(k, p_.value()) * entries_[i]);
    }
    return out;
}

bool ModVec::is_zero() const noexcept {
    for (int e : entries_) {
        if (e != 0) {
            return false;
        }
    }
    return true;
}

long long dot(const ModVec& a, const ModVec& b) {
    if (!(a.prime() == b.prime()) || a.size() != b.size()) {
        throw std::invalid_argument("dot: dimension or prime mismatch");
    }
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += static_cast<long long>(a[i]) * b[i];
    }
    return total;
}

ModVec unit_vector(Prime p, std::size_t n, std::size_t k) {
    ModVec v(p, n);
    v.set(k, 1);
    return v;
}

PhasePoint::PhasePoint(ModVec first, ModVec second) : a1(std::move(first)), a2(std::move(second)) {
    if (!(a1.prime() == a2.prime()) || a1.size() != a2.size()) {
        throw std::invalid_argument("PhasePoint: a1 and a2 must share p and N");
    }
}

PhasePoint PhasePoint::origin(Prime p, std::size_t sites) {
    return PhasePoint(ModVec(p, sites), ModVec(p, sites));
}

PhasePoint PhasePoint::single(Prime p, long long x1, long long x2) {
    return PhasePoint(ModVec(p, {x1}), ModVec(p, {x2}));
}

PhasePoint PhasePoint::operator+(const PhasePoint& other) const {
    return PhasePoint(a1 + other.a1, a2 + other.a2);
}

PhasePoint PhasePoint::operator-(const PhasePoint& other) const {
    return PhasePoint(a1 - other.a1, a2 - other.a2);
}

PhasePoint PhasePoint::operator-() const { return PhasePoint(-a1, -a2); }

PhasePoint PhasePoint::site(std::size_t k) const {
    return PhasePoint::single(prime(), a1[k], a2[k]);
}

std::string PhasePoint::str() const {
    std::string s = "((";
    for (std::size_t i = 0; i < a1.size(); ++i) {
        s += (i ? "," : "") + std::to_string(a1[i]);
    }
    s += "),(";
    for (std::size_t i = 0; i < a2.size(); ++i) {
        s += (i ? "," : "") + std::to_string(a2[i]);
    }
    return s + "))";
}

bool delta_p(const PhasePoint& x, const PhasePoint& y) {
    if (!(x.prime() == y.prime()) || x.sites() != y.sites()) {
        throw std::invalid_argument("delta_p: dimension mismatch");
    }
    // Entries are canonical, so congruence is equality.
    return x == y;
}

PhasePoint symplectic_rotate(const PhasePoint& x) { return PhasePoint(x.a2, -x.a1); }

std::size_t ipow(std::size_t base, std::size_t exponent) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / base) {
            throw std::overflow_error("ipow overflow");
        }
        r *= base;
    }
    return r;
}

Space::Space(Prime p, std::size_t sites) : p_(p), sites_(sites), dim_(ipow(p.value(), sites)) {
    if (sites == 0) {
        throw std::invalid_argument("Space: N must be positive");
    }
}

std::size_t Space::index_of(const ModVec& v) const {
    if (!(v.prime() == p_) || v.size() != sites_) {
        throw std::invalid_argument("Space::index_of: shape mismatch");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sites_; ++i) {
        idx = idx * p_.value() + static_cast<std::size_t>(v[i]);
    }
    return idx;
}

ModVec Space::vec_at(std::size_t index) const {
    ModVec v(p_, sites_);
    for (std::size_t i = sites_; i-- > 0;) {
        v.set(i, static_cast<long long>(index % p_.value()));
        index /= p_.value();
    }
    return v;
}

std::size_t Space::index_of(const PhasePoint& x) const {
    return index_of(x.a1) * dim_ + index_of(x.a2);
}

PhasePoint Space::point_at(std::size_t index) const {
    return PhasePoint(vec_at(index / dim_), vec_at(index % dim_));
}

}  // namespace qps
