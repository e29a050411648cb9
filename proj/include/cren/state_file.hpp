#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cren/states.hpp"

namespace cren {

/// On-disk state description:
///   {"dims": [a, b], "kind": "pure" | "density",
///    "data": [[re, im], ...]  or  [[[re, im], ...], ...],  "label": "..."}
/// Density data is a row-major list of rows.
struct StateFile {
    enum class Kind { Pure, Density };

    BipartiteDims dims;
    Kind kind = Kind::Density;
    ComplexMatrix data;  // n x 1 for pure states, n x n for density matrices
    std::optional<std::string> label;

    bool operator==(const StateFile& other) const;

    /// Density matrix described by the file (projector for pure files).
    DensityMatrix density() const;
    PureState pure() const;

    static StateFile from(const PureState& psi, std::optional<std::string> label = {});
    static StateFile from(const DensityMatrix& rho, std::optional<std::string> label = {});
};

/// Throws MalformedFile (not JSON), SchemaViolation (wrong shape or types) or
/// ValidationFailure (state invariants), each naming the offending field.
StateFile parse_state(std::string_view text);
StateFile read_state(const std::filesystem::path& path);

/// Doubles are written in shortest round-trip form, so parse_state(write_state(x)) == x.
std::string write_state(const StateFile& file);
void save_state(const std::filesystem::path& path, const StateFile& file);

}  // namespace cren
