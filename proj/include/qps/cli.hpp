#pragma once

// Command-line front end and file formats.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error,
// 3 resource cap exceeded, 4 numerical failure.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "qps/dynamics.hpp"
#include "qps/operator.hpp"
#include "qps/wigner.hpp"

namespace qps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitNumerical = 4;

inline constexpr std::uint64_t kDefaultSeed = 12345;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits, "%.17g".
std::string format_double(double x);

/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// {"dim": d, "entries": [[re, im], ...]} row-major.
std::string density_to_json(const Matrix& rho);
Matrix density_from_json(const std::string& text);

/// {"p": p, "n": N, "basis": "w"|"fw", "values": [[re, im], ...]}.
std::string grid_to_json(const CoeffGrid& grid, Basis basis);
std::pair<CoeffGrid, Basis> grid_from_json(const std::string& text);

/// Header "t,re_0,im_0,re_1,im_1,...", one row per sample.
std::string trajectory_to_csv(const Trajectory& trajectory);

/// (p, N) with p^N = dim; throws std::invalid_argument otherwise.
std::pair<Prime, std::size_t> infer_space(std::size_t dim);

using InitialState = std::variant<Matrix, std::vector<std::array<double, 3>>, std::pair<CoeffGrid, Basis>>;

/// Parsed `evolve` configuration. Schema violations throw std::invalid_argument
/// with the path of the offending field ("config.hamiltonian.j_z[0][1]: ...").
struct RunConfig {
    std::size_t sites = 0;
    SpinHamiltonianSpec hamiltonian;
    InitialState initial;
    double t_final = 0.0;
    double dt = 0.0;
    EvolveMethod method = EvolveMethod::Full;
    std::optional<std::string> out;
    std::uint64_t seed = kDefaultSeed;

    DensityState initial_state() const;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

}  // namespace qps::cli
