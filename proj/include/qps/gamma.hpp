#pragma once

// Structure constants Gamma_{a,b,c} = tr(B_a B_b B_c) of the Wigner (W) and
// Fourier-Wigner (FW) bases, and the antisymmetrized combinations that appear
// in the coefficient form of the von Neumann equation:
//
//   W:  K(a, b, c) = Gamma^W_{a,b,c}   - Gamma^W_{a,c,b}
//   FW: K(a, b, c) = Gamma^FW_{-a,b,c} - Gamma^FW_{-a,c,b}
//
// so that i d rho(a)/dt = p^{-2N} sum_{b,c} K(a, b, c) H(b) rho(c).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qps/errors.hpp"
#include "qps/operator.hpp"
#include "qps/point.hpp"
#include "qps/wigner.hpp"

namespace qps {

/// tr(B_a B_b B_c) by explicit matrix products.
Complex gamma_brute(const BasisSet& basis, std::size_t a, std::size_t b, std::size_t c);
Complex gamma_brute(Basis basis, const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);

/// Gamma^FW / p^N as an exact phase, or nullopt off the support a + b + c = 0.
std::optional<Phase> gamma_fw_phase(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);

/// Closed form of Gamma^FW: p^N omega^{2^{-1}(b2.c1 - b1.c2)} on the support for
/// odd p, and 2^N (-1)^{a2.b1} i^{a1.a2} i^{b1.b2} (-i)^{c1.c2} for p = 2.
Complex gamma_fw_closed(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);

/// The unsimplified form p^N omega^{2^{-1}(a1.a2 + b1.b2 + c1.c2)}
/// omega^{a2.b1 + (a2+b2).c1} on the support (omega^{2^{-1}} read as i at p = 2).
Complex gamma_fw_intermediate(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);

/// Gamma^W for odd p: omega^{2 (b1-a1).(c2-a2) - 2 (b2-a2).(c1-a1)}.
/// Throws std::domain_error for p = 2, which has no closed form.
Phase gamma_w_phase(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);
Complex gamma_w_closed(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c);

enum class GammaMethod {
    /// Closed form for FW; brute-force traces for W.
    Auto,
    Closed,
    Brute,
};

/// Values with magnitude at or below this are treated as zero.
inline constexpr double kGammaZeroTol = 1e-10;

struct GammaEntry {
    std::uint32_t alpha = 0;
    std::uint32_t beta = 0;
    std::uint32_t gamma = 0;
    Complex value;
};

/// Sparse antisymmetrized structure tensor (nonzeros only, ordered by
/// (alpha, beta, gamma)).
class GammaTensor {
  public:
    GammaTensor(const Space& space, Basis basis) : space_(space), basis_(basis) {}

    const Space& space() const noexcept { return space_; }
    Basis basis() const noexcept { return basis_; }
    const std::vector<GammaEntry>& entries() const noexcept { return entries_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    void push(const GammaEntry& entry) { entries_.push_back(entry); }

  private:
    Space space_;
    Basis basis_;
    std::vector<GammaEntry> entries_;
};

using GammaVisitor = std::function<void(std::size_t alpha, std::size_t beta, std::size_t gamma, Complex value)>;

/// Streams every nonzero of the antisymmetrized tensor, in (alpha, beta, gamma) order.
void for_each_antisymmetrized(Basis basis, const Space& space, const Limits& limits, GammaMethod method,
                              const GammaVisitor& visit);

std::uint64_t antisymmetrized_nnz(Basis basis, const Space& space, const Limits& limits = {},
                                  GammaMethod method = GammaMethod::Auto);

GammaTensor antisymmetrized_tensor(Basis basis, const Space& space, const Limits& limits = {},
                                   GammaMethod method = GammaMethod::Auto);

struct GammaComparison {
    std::uint64_t triples_checked = 0;
    double max_error = 0.0;
};

/// Compares the closed form against brute-force traces on every triple, or on
/// `samples` uniformly drawn triples when given.
GammaComparison compare_closed_to_brute(Basis basis, const Space& space, const Limits& limits = {},
                                        std::optional<std::uint64_t> samples = std::nullopt,
                                        std::uint64_t seed = 12345);

/// True when a closed form exists for this basis and prime.
bool has_closed_form(Basis basis, Prime p) noexcept;

}  // namespace qps
