#include "cren/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "cren/measures.hpp"
#include "cren/state_file.hpp"

namespace cren {

namespace {

constexpr double kInvarianceTol = 1e-10;

std::string dims_text(BipartiteDims dims) { return fmt::format("{}x{}", dims.a, dims.b); }

CommandOutput input_error(const std::string& message) {
    return {kExitInputError, "", "error: " + message + "\n"};
}

CommandOutput unsupported(const std::string& message) {
    return {kExitUnsupported, "", "error: " + message + "\n"};
}

std::string record(MeasureKind kind, const MeasureValue& v) {
    return fmt::format("measure: {}\nvalue: {}\nmethod: {}\ndims: {}\n", to_string(kind), v.value,
                       to_string(v.method), dims_text(v.dims_used));
}

// Closed form for a family member; the state must already be twirl-invariant.
CommandOutput closed_family_measure(MeasureKind kind, const DensityMatrix& rho) {
    if (rho.dims().a != rho.dims().b) {
        return unsupported(fmt::format("{} needs equal subsystem dims, got {}", to_string(kind),
                                       dims_text(rho.dims())));
    }
    const int d = rho.dims().a;
    const bool isotropic = kind == MeasureKind::CrenIsotropic;
    const DensityMatrix twirled = isotropic ? twirl_isotropic(rho) : twirl_werner(rho);
    const double defect = (twirled.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
    if (defect > kInvarianceTol) {
        return unsupported(fmt::format("state is not {} invariant (deviation {})",
                                       isotropic ? "isotropic" : "Werner", defect));
    }
    const double param = std::clamp(isotropic ? fidelity_param(rho) : werner_param(rho), 0.0, 1.0);
    const MeasureValue v = isotropic ? cren_isotropic(param, d) : cren_werner(param, d);
    return {kExitOk, record(kind, v) + fmt::format("parameter: {}\n", param), ""};
}

}  // namespace

std::optional<MeasureKind> parse_measure_kind(std::string_view name) {
    if (name == "negativity") return MeasureKind::Negativity;
    if (name == "cren-pure") return MeasureKind::CrenPure;
    if (name == "cren-opt") return MeasureKind::CrenOpt;
    if (name == "concurrence") return MeasureKind::Concurrence;
    if (name == "cren-isotropic") return MeasureKind::CrenIsotropic;
    if (name == "cren-werner") return MeasureKind::CrenWerner;
    return std::nullopt;
}

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Negativity: return "negativity";
        case MeasureKind::CrenPure: return "cren-pure";
        case MeasureKind::CrenOpt: return "cren-opt";
        case MeasureKind::Concurrence: return "concurrence";
        case MeasureKind::CrenIsotropic: return "cren-isotropic";
        case MeasureKind::CrenWerner: return "cren-werner";
    }
    return "unknown";
}

CommandOutput cmd_measure(const std::filesystem::path& path, const MeasureOptions& options) {
    StateFile file;
    try {
        file = read_state(path);
    } catch (const Error& e) {
        return input_error(fmt::format("{}: {}", path.string(), e.what()));
    }

    const MeasureKind kind = options.measure;
    try {
        switch (kind) {
            case MeasureKind::Negativity:
                return {kExitOk, record(kind, negativity(file.density())), ""};
            case MeasureKind::CrenPure:
                if (file.kind != StateFile::Kind::Pure) {
                    return unsupported("cren-pure needs a pure-state file");
                }
                return {kExitOk, record(kind, cren_pure(file.pure())), ""};
            case MeasureKind::Concurrence:
                if (file.dims != BipartiteDims{2, 2}) {
                    return unsupported("concurrence is defined for 2x2 systems, got " +
                                       dims_text(file.dims));
                }
                return {kExitOk, record(kind, wootters_concurrence(file.density())), ""};
            case MeasureKind::CrenIsotropic:
            case MeasureKind::CrenWerner:
                return closed_family_measure(kind, file.density());
            case MeasureKind::CrenOpt: {
                if (file.dims.min() < 2) {
                    return unsupported("cren-opt needs both subsystem dims >= 2, got " +
                                       dims_text(file.dims));
                }
                const CrenResult r = optimize_cren(file.density(), options.optimizer);
                const MeasureValue v{r.value, Method::ClosedForm, file.dims};
                CommandOutput out;
                out.out = fmt::format(
                    "measure: {}\nvalue: {}\nmethod: optimized\nbound: upper\ndims: {}\n"
                    "rank: {}\nensemble_size: {}\nrestarts: {}\niterations: {}\n"
                    "converged: {}\nseed: {}\n",
                    to_string(kind), v.value, dims_text(v.dims_used), r.rank, r.ensemble_size,
                    r.restarts_used, r.iterations, r.converged, r.seed);
                if (options.strict && !r.converged) {
                    out.exit_code = kExitNotConverged;
                    out.err = "error: optimizer hit the iteration cap before converging\n";
                }
                return out;
            }
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigInvalid) return input_error(e.what());
        return unsupported(e.what());
    }
    return unsupported("unknown measure");
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "isotropic") return Family::Isotropic;
    if (name == "werner") return Family::Werner;
    return std::nullopt;
}

std::string_view to_string(Family family) {
    return family == Family::Isotropic ? "isotropic" : "werner";
}

DensityMatrix family_state(Family family, int d, double param) {
    return family == Family::Isotropic ? isotropic_state(param, d) : werner_state(param, d);
}

CommandOutput cmd_family(Family family, int d, double param, const std::filesystem::path& out) {
    try {
        const DensityMatrix rho = family_state(family, d, param);
        const std::string label = fmt::format("{} d={} {}={}", to_string(family), d,
                                              family == Family::Isotropic ? "F" : "W", param);
        save_state(out, StateFile::from(rho, label));
        return {kExitOk, fmt::format("wrote {} ({})\n", out.string(), label), ""};
    } catch (const Error& e) {
        return input_error(e.what());
    }
}

std::optional<SweepMode> parse_sweep_mode(std::string_view name) {
    if (name == "closed") return SweepMode::Closed;
    if (name == "optimized") return SweepMode::Optimized;
    if (name == "both") return SweepMode::Both;
    return std::nullopt;
}

std::vector<double> parse_grid(std::string_view spec) {
    const auto bad = [&](const std::string& why) {
        return Error(ErrorCode::ParameterOutOfRange,
                     fmt::format("grid '{}': {}", std::string(spec), why));
    };
    double parts[3];
    std::size_t begin = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? spec.find(':', begin) : spec.size();
        if (end == std::string_view::npos) throw bad("expected start:stop:step");
        const std::string field(spec.substr(begin, end - begin));
        try {
            std::size_t used = 0;
            parts[i] = std::stod(field, &used);
            if (used != field.size()) throw bad("trailing characters in '" + field + "'");
        } catch (const std::logic_error&) {
            throw bad("cannot parse '" + field + "'");
        }
        begin = end + 1;
    }
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) throw bad("values must lie in [0, 1]");
    if (!(step > 0.0)) throw bad("step must be positive");
    std::vector<double> grid;
    for (long i = 0;; ++i) {
        const double x = std::round((start + i * step) * 1e12) / 1e12;
        if (x > stop + 1e-12) break;
        grid.push_back(std::min(x, 1.0));
        if (grid.size() > 100000) throw bad("too many points");
    }
    return grid;
}

std::vector<SweepRow> sweep(Family family, int d, const std::vector<double>& grid, SweepMode mode,
                            const OptimizerConfig& optimizer) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double p : grid) {
        const DensityMatrix rho = family_state(family, d, p);
        SweepRow row;
        row.parameter = p;
        row.negativity = negativity(rho).value;
        row.seed = optimizer.seed;
        row.cren_closed = family == Family::Isotropic ? cren_isotropic(p, d).value
                                                      : cren_werner(p, d).value;
        if (mode != SweepMode::Closed) {
            row.cren_optimized = optimize_cren(rho, optimizer).value;
        }
        if (mode == SweepMode::Both) row.abs_gap = std::abs(*row.cren_closed - *row.cren_optimized);
        row.method = mode == SweepMode::Closed      ? "closed_form"
                     : mode == SweepMode::Optimized ? "optimized"
                                                    : "closed_form+optimized";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows, SweepMode mode) {
    std::string csv = "parameter,negativity,cren_closed";
    if (mode != SweepMode::Closed) csv += ",cren_optimized";
    if (mode == SweepMode::Both) csv += ",abs_gap";
    csv += ",method,seed\n";
    for (const SweepRow& row : rows) {
        csv += fmt::format("{},{}", row.parameter, row.negativity);
        if (row.cren_closed) csv += fmt::format(",{}", *row.cren_closed);
        if (row.cren_optimized) csv += fmt::format(",{}", *row.cren_optimized);
        if (row.abs_gap) csv += fmt::format(",{}", *row.abs_gap);
        csv += fmt::format(",{},{}\n", row.method, row.seed);
    }
    return csv;
}

CommandOutput cmd_sweep(Family family, int d, std::string_view grid, SweepMode mode,
                        const std::filesystem::path& out, const OptimizerConfig& optimizer) {
    std::vector<double> points;
    try {
        if (d < 2) throw Error(ErrorCode::ParameterOutOfRange, fmt::format("d = {}", d));
        points = parse_grid(grid);
    } catch (const Error& e) {
        return input_error(e.what());
    }
    std::vector<SweepRow> rows;
    try {
        rows = sweep(family, d, points, mode, optimizer);
    } catch (const Error& e) {
        return e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::ParameterOutOfRange
                   ? input_error(e.what())
                   : unsupported(e.what());
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) return input_error("cannot write " + out.string());
    file << format_sweep_csv(rows, mode);
    return {kExitOk, fmt::format("wrote {} rows to {}\n", rows.size(), out.string()), ""};
}

}  // namespace cren
