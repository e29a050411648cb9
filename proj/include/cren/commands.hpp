#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cren/convexroof.hpp"

namespace cren {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitNotConverged = 4;

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Captured result of a command: exit status plus what goes to stdout/stderr.
struct CommandOutput {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

enum class MeasureKind {
    Negativity,
    CrenPure,
    CrenOpt,
    Concurrence,
    CrenIsotropic,  // closed form for states invariant under the isotropic twirl
    CrenWerner,     // closed form for states invariant under the Werner twirl
};

std::optional<MeasureKind> parse_measure_kind(std::string_view name);
std::string_view to_string(MeasureKind kind);

struct MeasureOptions {
    MeasureKind measure = MeasureKind::Negativity;
    OptimizerConfig optimizer;
    bool strict = false;  // non-convergence of cren-opt becomes exit 4
};

CommandOutput cmd_measure(const std::filesystem::path& path, const MeasureOptions& options);

enum class Family { Isotropic, Werner };

std::optional<Family> parse_family(std::string_view name);
std::string_view to_string(Family family);

/// Family member as a density matrix (parameter is F or W).
DensityMatrix family_state(Family family, int d, double param);

CommandOutput cmd_family(Family family, int d, double param, const std::filesystem::path& out);

enum class SweepMode { Closed, Optimized, Both };

std::optional<SweepMode> parse_sweep_mode(std::string_view name);

/// Parses "start:stop:step" into start + i*step for i = 0.. while <= stop.
/// Values are rounded to 12 decimals; throws ParameterOutOfRange on a bad grid.
std::vector<double> parse_grid(std::string_view spec);

struct SweepRow {
    double parameter = 0.0;
    double negativity = 0.0;
    std::optional<double> cren_closed;  // filled in every mode
    std::optional<double> cren_optimized;
    std::optional<double> abs_gap;
    std::string method;
    std::uint64_t seed = kDefaultSeed;

    /// The CREN value compared against the negativity: closed form when present.
    double cren() const { return cren_closed ? *cren_closed : cren_optimized.value_or(0.0); }
};

std::vector<SweepRow> sweep(Family family, int d, const std::vector<double>& grid, SweepMode mode,
                            const OptimizerConfig& optimizer);

/// Header plus one line per row, LF endings, '.' decimal separator.
std::string format_sweep_csv(const std::vector<SweepRow>& rows, SweepMode mode);

CommandOutput cmd_sweep(Family family, int d, std::string_view grid, SweepMode mode,
                        const std::filesystem::path& out, const OptimizerConfig& optimizer);

}  // namespace cren
