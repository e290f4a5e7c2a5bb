#include "qps/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qps/errors.hpp"
#include "qps/gamma.hpp"
#include "qps/heisenberg_weyl.hpp"
#include "qps/lines.hpp"

namespace qps::cli {

using nlohmann::json;

namespace {

// A position in a parsed JSON document, carrying its path for error messages.
class Field {
  public:
    Field(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }
    const json& raw() const noexcept { return *value_; }

    [[noreturn]] void fail(const std::string& message) const { throw std::invalid_argument(path_ + ": " + message); }

    void require_object() const {
        if (!value_->is_object()) {
            fail("expected an object");
        }
    }

    bool has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

    Field operator[](const std::string& key) const {
        require_object();
        if (!value_->contains(key)) {
            throw std::invalid_argument(path_ + "." + key + ": missing required field");
        }
        return {value_->at(key), path_ + "." + key};
    }

    std::size_t size() const {
        if (!value_->is_array()) {
            fail("expected an array");
        }
        return value_->size();
    }

    Field at(std::size_t i) const {
        size();
        return {value_->at(i), path_ + "[" + std::to_string(i) + "]"};
    }

    double number() const {
        if (!value_->is_number()) {
            fail("expected a number");
        }
        return value_->get<double>();
    }

    long long integer() const {
        if (!value_->is_number_integer()) {
            fail("expected an integer");
        }
        return value_->get<long long>();
    }

    std::string string() const {
        if (!value_->is_string()) {
            fail("expected a string");
        }
        return value_->get<std::string>();
    }

    Complex complex() const {
        if (size() != 2) {
            fail("expected a [re, im] pair");
        }
        return {at(0).number(), at(1).number()};
    }

    void allow_only(std::initializer_list<const char*> keys) const {
        require_object();
        for (const auto& item : value_->items()) {
            bool known = false;
            for (const char* k : keys) {
                known = known || item.key() == k;
            }
            if (!known) {
                throw std::invalid_argument(path_ + "." + item.key() + ": unknown field");
            }
        }
    }

  private:
    const json* value_;
    std::string path_;
};

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(what + ": malformed JSON (" + e.what() + ")");
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void append_pairs(std::string& s, const Complex* data, std::size_t count) {
    s += "[";
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            s += ",";
        }
        s += "\n  [" + format_double(data[i].real()) + ", " + format_double(data[i].imag()) + "]";
    }
    s += count > 0 ? "\n]" : "]";
}

Matrix density_from_field(const Field& f) {
    f.allow_only({"dim", "entries"});
    const long long dim = f["dim"].integer();
    if (dim < 1) {
        f["dim"].fail("must be positive");
    }
    const Field entries = f["entries"];
    const auto d = static_cast<std::size_t>(dim);
    if (entries.size() != d * d) {
        entries.fail("expected " + std::to_string(d * d) + " entries, got " + std::to_string(entries.size()));
    }
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < d * d; ++i) {
        m(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) = entries.at(i).complex();
    }
    return m;
}

Basis basis_from_tag(const Field& f) {
    try {
        return parse_basis(f.string());
    } catch (const std::invalid_argument& e) {
        f.fail(e.what());
    }
}

std::pair<CoeffGrid, Basis> grid_from_field(const Field& f, std::optional<Space> expected) {
    f.allow_only({"p", "n", "basis", "values"});
    std::optional<Space> space = expected;
    if (f.has("p") || f.has("n") || !space) {
        long long p = f["p"].integer();
        long long n = f["n"].integer();
        if (n < 1) {
            f["n"].fail("must be positive");
        }
        if (!is_prime(p)) {
            f["p"].fail("p must be prime (got " + std::to_string(p) + ")");
        }
        const Space parsed(Prime(p), static_cast<std::size_t>(n));
        if (space && !(*space == parsed)) {
            f.fail("grid p/n do not match the configuration");
        }
        space = parsed;
    }
    const Basis basis = basis_from_tag(f["basis"]);
    const Field values = f["values"];
    if (values.size() != space->grid_size()) {
        values.fail("expected " + std::to_string(space->grid_size()) + " values, got " +
                    std::to_string(values.size()));
    }
    CoeffGrid grid(*space);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = values.at(i).complex();
    }
    return {std::move(grid), basis};
}

std::string basis_tag(Basis basis) { return basis == Basis::Wigner ? "w" : "fw"; }

Eigen::MatrixXd real_matrix(const Field& f, std::size_t n) {
    if (f.size() != n) {
        f.fail("expected " + std::to_string(n) + " rows");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Field row = f.at(i);
        if (row.size() != n) {
            row.fail("expected " + std::to_string(n) + " columns");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.at(j).number();
        }
    }
    return m;
}

Limits effective_limits(std::size_t max_dim, std::uint64_t max_triples, bool dim_set, bool triples_set) {
    Limits limits = Limits::from_env();
    if (dim_set) {
        limits.max_dim = max_dim;
    }
    if (triples_set) {
        limits.max_triples = max_triples;
    }
    return limits;
}

std::size_t site_count(long long n) {
    if (n < 1) {
        throw std::invalid_argument("--n must be at least 1");
    }
    return static_cast<std::size_t>(n);
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// verify

struct VerifyArgs {
    long long p = 0;
    long long n = 1;
    std::string basis = "wigner";
    std::string what = "all";
    double tol = 1e-12;
    std::string json_path;
};

int cmd_verify(const VerifyArgs& args, const Limits& limits, std::ostream& out) {
    const Prime p(args.p);
    const std::size_t n = site_count(args.n);
    const Family family = parse_family(args.basis);
    if (args.what != "group" && args.what != "axioms" && args.what != "all") {
        throw std::invalid_argument("--what must be group, axioms or all");
    }
    if (args.what == "axioms" && n != 1) {
        throw std::invalid_argument("the axioms are defined on a single site; use --n 1");
    }

    json records = json::array();
    bool ok = true;
    const auto record = [&](const std::string& check, bool pass, const std::string& detail, json extra) {
        out << (pass ? "PASS " : "FAIL ") << check << ": " << detail << "\n";
        extra["check"] = check;
        extra["pass"] = pass;
        extra["p"] = p.value();
        records.push_back(std::move(extra));
        ok = ok && pass;
    };

    if (args.what == "group" || args.what == "all") {
        const Space space(p, n);
        limits.require_dim(space.dim(), "verify");
        const GroupLawReport r = verify_group_laws(space, limits);
        const std::string where = "N=" + std::to_string(n) + ", " + std::to_string(r.pairs_checked) + " pairs";
        record("compose", r.compose_failures == 0, where, {{"n", n}, {"failures", r.compose_failures}});
        record("dagger", r.dagger_failures == 0, where, {{"n", n}, {"failures", r.dagger_failures}});
        record("unitarity", r.unitarity_failures == 0, where, {{"n", n}, {"failures", r.unitarity_failures}});
        record("orthogonality", r.orthogonality_failures == 0, where,
               {{"n", n}, {"failures", r.orthogonality_failures}});
        if (p.value() != 2) {
            record("flip", r.flip_failures == 0, where, {{"n", n}, {"failures", r.flip_failures}});
        }
        for (std::size_t i = 0; i < r.violations.size() && i < 10; ++i) {
            out << "  " << r.violations[i] << "\n";
        }
    }

    if (args.what == "axioms" || args.what == "all") {
        if (n != 1) {
            out << "SKIP axioms: defined on a single site only\n";
        } else {
            const AxiomReport a = verify_wootters_axioms(p, family, args.tol);
            const std::string fam = to_string(family);
            record("W1 trace", a.w1(), fam + ", max error " + sci(a.trace_error),
                   {{"basis", fam}, {"max_error", a.trace_error}});
            record("W2 orthogonality", a.w2(), fam + ", max error " + sci(a.orthogonality_error),
                   {{"basis", fam}, {"max_error", a.orthogonality_error}});
            record("W3 lines", a.w3(),
                   fam + ", " + std::to_string(a.lines.classes_checked) + " classes, max error " +
                       sci(a.lines.max_error),
                   {{"basis", fam},
                    {"max_error", a.lines.max_error},
                    {"violations", a.lines.violations.size()}});
            for (std::size_t i = 0; i < a.lines.violations.size() && i < 10; ++i) {
                out << "  " << a.lines.violations[i].str() << "\n";
            }
            if (args.what == "all") {
                const IdentificationReport id = wootters_identification(p);
                record("identification symplectic", id.symplectic_error <= args.tol,
                       "A = inverse symplectic transform of FW, max error " + sci(id.symplectic_error),
                       {{"max_error", id.symplectic_error}});
                record("identification rotation", id.reversed_rotation_error <= args.tol,
                       "A(a1,a2) = W(-a2,a1), max error " + sci(id.reversed_rotation_error),
                       {{"max_error", id.reversed_rotation_error}});
            }
        }
    }

    if (!args.json_path.empty()) {
        write_atomic(args.json_path, records.dump(2) + "\n");
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// gamma

struct GammaArgs {
    long long p = 0;
    long long n = 1;
    std::string basis;
    std::string method = "auto";
    bool nnz = false;
    bool check_closed = false;
    std::string dump;
    long long samples = -1;
    std::uint64_t seed = kDefaultSeed;
};

GammaMethod parse_gamma_method(const std::string& text) {
    if (text == "auto") {
        return GammaMethod::Auto;
    }
    if (text == "closed") {
        return GammaMethod::Closed;
    }
    if (text == "brute") {
        return GammaMethod::Brute;
    }
    throw std::invalid_argument("--method must be auto, closed or brute");
}

int cmd_gamma(GammaArgs args, const Limits& limits, std::ostream& out) {
    const Prime p(args.p);
    const Space space(p, site_count(args.n));
    const Basis basis = parse_basis(args.basis);
    const GammaMethod method = parse_gamma_method(args.method);
    limits.require_dim(space.dim(), "gamma");
    if (!args.nnz && args.dump.empty() && !args.check_closed) {
        args.nnz = true;
    }

    if (!args.dump.empty()) {
        std::string text = "alpha,beta,gamma,re,im\n";
        std::uint64_t count = 0;
        for_each_antisymmetrized(basis, space, limits, method,
                                 [&](std::size_t a, std::size_t b, std::size_t c, Complex v) {
                                     text += std::to_string(a) + "," + std::to_string(b) + "," +
                                             std::to_string(c) + "," + format_double(v.real()) + "," +
                                             format_double(v.imag()) + "\n";
                                     ++count;
                                 });
        write_atomic(args.dump, text);
        if (args.nnz) {
            out << count << "\n";
        }
    } else if (args.nnz) {
        out << antisymmetrized_nnz(basis, space, limits, method) << "\n";
    }

    if (args.check_closed) {
        if (!has_closed_form(basis, p)) {
            throw std::invalid_argument("the Wigner basis has no closed form at p = 2");
        }
        std::optional<std::uint64_t> samples;
        if (args.samples >= 0) {
            samples = static_cast<std::uint64_t>(args.samples);
        }
        const GammaComparison cmp = compare_closed_to_brute(basis, space, limits, samples, args.seed);
        const bool pass = cmp.max_error <= 1e-10;
        out << (pass ? "PASS" : "FAIL") << " closed form vs brute force: " << cmp.triples_checked
            << " triples, max error " << sci(cmp.max_error) << "\n";
        if (!pass) {
            return kExitCheckFailed;
        }
    }
    return kExitOk;
}

// evolve

struct EvolveArgs {
    std::string config;
    std::string out;
    std::string method;
    std::string compare_out;
};

double max_site_divergence(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (std::size_t s = 0; s < a.states.size() && s < b.states.size(); ++s) {
        const MeanFieldState x = site_triples(a.states[s]);
        const MeanFieldState y = site_triples(b.states[s]);
        for (std::size_t k = 0; k < x.size(); ++k) {
            worst = std::max({worst, std::abs(x[k].x - y[k].x), std::abs(x[k].z - y[k].z),
                              std::abs(x[k].y - y[k].y)});
        }
    }
    return worst;
}

int cmd_evolve(const EvolveArgs& args, const Limits& limits, std::ostream& out) {
    const std::filesystem::path config_path(args.config);
    RunConfig cfg = parse_config(read_file(config_path), config_path.parent_path());
    if (!args.method.empty()) {
        cfg.method = parse_method(args.method);
    }
    const std::string out_path = !args.out.empty() ? args.out : cfg.out.value_or("");
    if (out_path.empty()) {
        throw std::invalid_argument("no output path: pass --out or set config.out");
    }
    limits.require_dim(ipow(2, cfg.sites), "evolve");

    const DensityState initial = cfg.initial_state();
    const Trajectory traj = evolve(initial, cfg.hamiltonian, cfg.t_final, cfg.dt, cfg.method);
    write_atomic(out_path, trajectory_to_csv(traj));

    const ConservationDiagnostics diag = diagnose(traj);
    out << "method: " << to_string(cfg.method) << "\n";
    out << "samples: " << traj.times.size() << "\n";
    out << "max trace drift: " << sci(diag.max_trace_drift) << "\n";
    out << "max hermiticity violation: " << sci(diag.max_hermiticity_violation) << "\n";
    out << "max purity drift: " << sci(diag.max_purity_drift) << "\n";

    if (!args.compare_out.empty()) {
        const EvolveMethod other =
            cfg.method == EvolveMethod::Full ? EvolveMethod::MeanField : EvolveMethod::Full;
        const Trajectory alt = evolve(initial, cfg.hamiltonian, cfg.t_final, cfg.dt, other);
        write_atomic(args.compare_out, trajectory_to_csv(alt));
        out << "comparison method: " << to_string(other) << "\n";
        out << "max single-site divergence: " << sci(max_site_divergence(traj, alt)) << "\n";
    }
    return kExitOk;
}

// transform

struct TransformArgs {
    std::string in;
    std::string from;
    std::string to;
    std::string out;
};

int cmd_transform(const TransformArgs& args, const Limits& limits, std::ostream& out) {
    const auto is_kind = [](const std::string& s) { return s == "matrix" || s == "w" || s == "fw"; };
    if (!is_kind(args.from) || !is_kind(args.to)) {
        throw std::invalid_argument("--from and --to must be matrix, w or fw");
    }
    const std::string text = read_file(args.in);
    std::string result;
    if (args.from == "matrix") {
        const Matrix m = density_from_json(text);
        const auto [p, n] = infer_space(static_cast<std::size_t>(m.rows()));
        const Space space(p, n);
        limits.require_dim(space.dim(), "transform");
        if (args.to == "matrix") {
            result = density_to_json(m);
        } else {
            const Basis basis = parse_basis(args.to);
            result = grid_to_json(coeffs_from_density(m, BasisSet(space, basis, limits)), basis);
        }
    } else {
        const auto [grid, basis] = grid_from_json(text);
        if (basis != parse_basis(args.from)) {
            throw std::invalid_argument(args.in + ": file holds a " + basis_tag(basis) + " grid, not " + args.from);
        }
        limits.require_dim(grid.space().dim(), "transform");
        if (args.to == "matrix") {
            result = density_to_json(density_from_coeffs(grid, BasisSet(grid.space(), basis, limits)).matrix());
        } else {
            const Basis target = parse_basis(args.to);
            if (target == basis) {
                result = grid_to_json(grid, basis);
            } else if (target == Basis::Wigner) {
                result = grid_to_json(fourier_grid(grid, Direction::Forward), target);
            } else {
                result = grid_to_json(fourier_grid(grid, Direction::Inverse), target);
            }
        }
    }
    if (args.out.empty()) {
        out << result;
    } else {
        write_atomic(args.out, result);
    }
    return kExitOk;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::invalid_argument("cannot write " + path.string());
        }
        os << content;
        os.flush();
        if (!os) {
            throw std::invalid_argument("cannot write " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::invalid_argument("cannot write " + path.string());
    }
}

std::string density_to_json(const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    std::vector<Complex> flat;
    flat.reserve(static_cast<std::size_t>(d * d));
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            flat.push_back(rho(r, c));
        }
    }
    std::string s = "{\"dim\": " + std::to_string(d) + ", \"entries\": ";
    append_pairs(s, flat.data(), flat.size());
    s += "}\n";
    return s;
}

Matrix density_from_json(const std::string& text) {
    const json j = parse_json(text, "density");
    return density_from_field(Field(j, "density"));
}

std::string grid_to_json(const CoeffGrid& grid, Basis basis) {
    std::string s = "{\"p\": " + std::to_string(grid.space().prime().value()) +
                    ", \"n\": " + std::to_string(grid.space().sites()) + ", \"basis\": \"" + basis_tag(basis) +
                    "\", \"values\": ";
    append_pairs(s, grid.values().data(), grid.size());
    s += "}\n";
    return s;
}

std::pair<CoeffGrid, Basis> grid_from_json(const std::string& text) {
    const json j = parse_json(text, "grid");
    return grid_from_field(Field(j, "grid"), std::nullopt);
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
    std::string s = "t";
    const std::size_t size = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    for (std::size_t i = 0; i < size; ++i) {
        s += ",re_" + std::to_string(i) + ",im_" + std::to_string(i);
    }
    s += "\n";
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        s += format_double(trajectory.times[k]);
        for (const auto& v : trajectory.states[k].values()) {
            s += "," + format_double(v.real()) + "," + format_double(v.imag());
        }
        s += "\n";
    }
    return s;
}

std::pair<Prime, std::size_t> infer_space(std::size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a prime power p^N with N >= 1");
    }
    std::size_t p = 2;
    while (dim % p != 0) {
        ++p;
    }
    std::size_t n = 0;
    std::size_t rest = dim;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (rest != 1) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a prime power p^N");
    }
    return {Prime(static_cast<long long>(p)), n};
}

DensityState RunConfig::initial_state() const {
    try {
        if (const auto* m = std::get_if<Matrix>(&initial)) {
            return DensityState::from_matrix(Space(Prime(2), sites), *m);
        }
        if (const auto* b = std::get_if<std::vector<std::array<double, 3>>>(&initial)) {
            return DensityState::from_bloch(*b);
        }
        const auto& [grid, basis] = std::get<std::pair<CoeffGrid, Basis>>(initial);
        return DensityState::from_grid(grid, basis);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config.initial: ") + e.what());
    }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    const json j = parse_json(text, "config");
    const Field root(j, "config");
    root.allow_only({"task", "p", "n", "hamiltonian", "initial", "t_final", "dt", "method", "out", "seed"});

    if (root.has("task") && root["task"].string() != "evolve") {
        root["task"].fail("expected \"evolve\"");
    }
    if (root.has("p") && root["p"].integer() != 2) {
        root["p"].fail("spin dynamics requires p = 2");
    }
    const long long n = root["n"].integer();
    if (n < 1) {
        root["n"].fail("must be at least 1");
    }
    if (n > 20) {
        root["n"].fail("too many sites");
    }

    RunConfig cfg;
    cfg.sites = static_cast<std::size_t>(n);
    cfg.hamiltonian = SpinHamiltonianSpec::zero(cfg.sites);
    if (root.has("hamiltonian")) {
        const Field h = root["hamiltonian"];
        h.allow_only({"j_perp", "j_z", "omega"});
        if (h.has("j_perp")) {
            cfg.hamiltonian.j_perp = real_matrix(h["j_perp"], cfg.sites);
        }
        if (h.has("j_z")) {
            cfg.hamiltonian.j_z = real_matrix(h["j_z"], cfg.sites);
        }
        if (h.has("omega")) {
            cfg.hamiltonian.omega = h["omega"].number();
        }
        try {
            cfg.hamiltonian.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config.hamiltonian." + std::string(e.what()));
        }
    }

    const Field init = root["initial"];
    init.allow_only({"bloch", "matrix", "matrix_file", "grid"});
    if (init.raw().size() != 1) {
        init.fail("expected exactly one of bloch, matrix, matrix_file, grid");
    }
    if (init.has("bloch")) {
        const Field b = init["bloch"];
        if (b.size() != cfg.sites) {
            b.fail("expected " + std::to_string(cfg.sites) + " Bloch vectors");
        }
        std::vector<std::array<double, 3>> vectors;
        for (std::size_t k = 0; k < cfg.sites; ++k) {
            const Field v = b.at(k);
            if (v.size() != 3) {
                v.fail("expected [x, y, z]");
            }
            vectors.push_back({v.at(0).number(), v.at(1).number(), v.at(2).number()});
        }
        cfg.initial = std::move(vectors);
    } else if (init.has("matrix") || init.has("matrix_file")) {
        Matrix m;
        std::string where;
        if (init.has("matrix")) {
            m = density_from_field(init["matrix"]);
            where = init["matrix"].path();
        } else {
            const Field file = init["matrix_file"];
            const std::filesystem::path path = base_dir / file.string();
            const json inner = parse_json(read_file(path), path.string());
            m = density_from_field(Field(inner, path.string()));
            where = file.path();
        }
        if (static_cast<std::size_t>(m.rows()) != ipow(2, cfg.sites)) {
            throw std::invalid_argument(where + ": dimension " + std::to_string(m.rows()) + " does not match n = " +
                                        std::to_string(cfg.sites));
        }
        cfg.initial = std::move(m);
    } else {
        cfg.initial = grid_from_field(init["grid"], Space(Prime(2), cfg.sites));
    }

    cfg.t_final = root["t_final"].number();
    if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) {
        root["t_final"].fail("must be non-negative and finite");
    }
    cfg.dt = root["dt"].number();
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        root["dt"].fail("must be positive and finite");
    }
    if (root.has("method")) {
        try {
            cfg.method = parse_method(root["method"].string());
        } catch (const std::invalid_argument& e) {
            root["method"].fail(e.what());
        }
    }
    if (root.has("out")) {
        cfg.out = root["out"].string();
    }
    if (root.has("seed")) {
        const long long seed = root["seed"].integer();
        if (seed < 0) {
            root["seed"].fail("must be non-negative");
        }
        cfg.seed = static_cast<std::uint64_t>(seed);
    }
    return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete Wigner and Fourier-Wigner phase-space toolkit"};
    app.require_subcommand(1);

    std::size_t max_dim = 0;
    std::uint64_t max_triples = 0;
    auto* dim_opt = app.add_option("--max-dim", max_dim, "Cap on the Hilbert-space dimension p^N");
    auto* triples_opt = app.add_option("--max-triples", max_triples, "Cap on structure-constant triples");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check group laws and the phase-space axioms");
    verify->add_option("--p", va.p, "Prime p")->required();
    verify->add_option("--n", va.n, "Number of sites")->capture_default_str();
    verify->add_option("--basis", va.basis, "wigner or wootters")->capture_default_str();
    verify->add_option("--what", va.what, "group, axioms or all")->capture_default_str();
    verify->add_option("--tol", va.tol, "Tolerance")->capture_default_str();
    verify->add_option("--json", va.json_path, "Write machine-readable records here");

    GammaArgs ga;
    auto* gamma = app.add_subcommand("gamma", "Structure constants");
    gamma->add_option("--p", ga.p, "Prime p")->required();
    gamma->add_option("--n", ga.n, "Number of sites")->capture_default_str();
    gamma->add_option("--basis", ga.basis, "w or fw")->required();
    gamma->add_option("--method", ga.method, "auto, closed or brute")->capture_default_str();
    gamma->add_flag("--nnz", ga.nnz, "Print the antisymmetrized nonzero count");
    gamma->add_option("--dump", ga.dump, "Write the sparse antisymmetrized tensor as CSV");
    gamma->add_flag("--check-closed", ga.check_closed, "Compare closed forms against brute-force traces");
    gamma->add_option("--samples", ga.samples, "Sample this many random triples instead of all");
    gamma->add_option("--seed", ga.seed, "Seed for sampling")->capture_default_str();

    EvolveArgs ea;
    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate spin dynamics");
    evolve_cmd->add_option("--config", ea.config, "JSON configuration")->required();
    evolve_cmd->add_option("--out", ea.out, "Trajectory CSV");
    evolve_cmd->add_option("--method", ea.method, "full or meanfield (overrides the config)");
    evolve_cmd->add_option("--compare-out", ea.compare_out, "Also run the other method and write it here");

    TransformArgs ta;
    auto* transform = app.add_subcommand("transform", "Convert between a matrix and coefficient grids");
    transform->add_option("--in", ta.in, "Input file")->required();
    transform->add_option("--from", ta.from, "matrix, w or fw")->required();
    transform->add_option("--to", ta.to, "matrix, w or fw")->required();
    transform->add_option("--out", ta.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Limits limits = effective_limits(max_dim, max_triples, dim_opt->count() > 0, triples_opt->count() > 0);
        if (verify->parsed()) {
            return cmd_verify(va, limits, out);
        }
        if (gamma->parsed()) {
            return cmd_gamma(ga, limits, out);
        }
        if (evolve_cmd->parsed()) {
            return cmd_evolve(ea, limits, out);
        }
        return cmd_transform(ta, limits, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace qps::cli
