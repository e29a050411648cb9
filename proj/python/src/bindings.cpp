#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "cren/commands.hpp"
#include "cren/convexroof.hpp"
#include "cren/measures.hpp"
#include "cren/state_file.hpp"

namespace py = pybind11;
using namespace cren;

namespace {

using Dims = std::pair<int, int>;

BipartiteDims to_dims(const Dims& d) { return {d.first, d.second}; }
Dims from_dims(BipartiteDims d) { return {d.a, d.b}; }

py::dict measure_dict(const MeasureValue& v) {
    py::dict out;
    out["value"] = v.value;
    out["method"] = std::string(to_string(v.method));
    out["dims"] = from_dims(v.dims_used);
    return out;
}

Family family_of(const std::string& name) {
    const auto family = parse_family(name);
    if (!family) throw Error(ErrorCode::ParameterOutOfRange, "unknown family '" + name + "'");
    return *family;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Convex-roof extended negativity";

    static py::exception<Error> error_type(m, "CrenError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
            instance.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error_type.ptr(), instance.ptr());
        }
    });

    m.def("validate_density",
          [](const ComplexMatrix& rho, const Dims& dims) {
              return validate_density(rho, to_dims(dims)).matrix();
          },
          py::arg("rho"), py::arg("dims"), "Checks and returns the Hermitian part of rho.");
    m.def("partial_transpose",
          [](const ComplexMatrix& m, const Dims& dims) { return partial_transpose(m, to_dims(dims)); },
          py::arg("m"), py::arg("dims"));
    m.def("schmidt_coefficients",
          [](const ComplexVector& psi, const Dims& dims) {
              return schmidt_decompose(PureState(to_dims(dims), psi)).probabilities;
          },
          py::arg("psi"), py::arg("dims"), "Squared Schmidt coefficients, descending.");

    m.def("negativity",
          [](const ComplexMatrix& rho, const Dims& dims) {
              return measure_dict(negativity(validate_density(rho, to_dims(dims))));
          },
          py::arg("rho"), py::arg("dims"));
    m.def("pure_negativity", [](const RealVector& mu) { return pure_negativity(mu).value; },
          py::arg("mu"));
    m.def("cren_pure",
          [](const ComplexVector& psi, const Dims& dims) {
              return measure_dict(cren_pure(PureState(to_dims(dims), psi)));
          },
          py::arg("psi"), py::arg("dims"));
    m.def("g_function", &g_function, py::arg("rho"));
    m.def("f_function", &f_function, py::arg("rho"), py::arg("d"));
    m.def("cren_isotropic", [](double f, int d) { return cren_isotropic(f, d).value; },
          py::arg("fidelity"), py::arg("d"));
    m.def("cren_werner", [](double w, int d) { return cren_werner(w, d).value; }, py::arg("w"),
          py::arg("d"));
    m.def("wootters_concurrence",
          [](const ComplexMatrix& rho) {
              return wootters_concurrence(validate_density(rho, {2, 2})).value;
          },
          py::arg("rho"));

    m.def("isotropic_state", [](double f, int d) { return isotropic_state(f, d).matrix(); },
          py::arg("fidelity"), py::arg("d"));
    m.def("werner_state", [](double w, int d) { return werner_state(w, d).matrix(); },
          py::arg("w"), py::arg("d"));
    m.def("random_pure",
          [](const Dims& dims, std::uint64_t seed) {
              return random_pure(to_dims(dims), seed).amplitudes();
          },
          py::arg("dims"), py::arg("seed"));
    m.def("random_density",
          [](const Dims& dims, int rank, std::uint64_t seed) {
              return random_density(to_dims(dims), rank, seed).matrix();
          },
          py::arg("dims"), py::arg("rank"), py::arg("seed"));

    m.def("optimize_cren",
          [](const ComplexMatrix& rho, const Dims& dims, int ensemble_size, int restarts,
             int max_iterations, double step_tolerance, double value_tolerance, std::uint64_t seed) {
              OptimizerConfig config;
              config.ensemble_size = ensemble_size;
              config.restarts = restarts;
              config.max_iterations = max_iterations;
              config.step_tolerance = step_tolerance;
              config.value_tolerance = value_tolerance;
              config.seed = seed;
              const DensityMatrix state = validate_density(rho, to_dims(dims));
              std::optional<CrenResult> result;
              {
                  py::gil_scoped_release release;
                  result = optimize_cren(state, config);
              }
              const CrenResult& r = *result;
              py::list states;
              for (const PureState& s : r.witness.states()) states.append(s.amplitudes());
              py::dict out;
              out["value"] = r.value;
              out["weights"] = r.witness.weights();
              out["states"] = states;
              out["converged"] = r.converged;
              out["iterations"] = r.iterations;
              out["restarts"] = r.restarts_used;
              out["ensemble_size"] = r.ensemble_size;
              out["rank"] = r.rank;
              out["seed"] = r.seed;
              return out;
          },
          py::arg("rho"), py::arg("dims"), py::arg("ensemble_size") = 0, py::arg("restarts") = 16,
          py::arg("max_iterations") = 2000, py::arg("step_tolerance") = 1e-12,
          py::arg("value_tolerance") = 1e-7, py::arg("seed") = 42,
          "Numerical upper bound on the convex roof with its witness ensemble.");

    m.def("read_state",
          [](const std::filesystem::path& path) {
              const StateFile file = read_state(path);
              py::dict out;
              out["dims"] = from_dims(file.dims);
              out["kind"] = file.kind == StateFile::Kind::Pure ? "pure" : "density";
              out["rho"] = file.density().matrix();
              out["label"] = file.label;
              return out;
          },
          py::arg("path"), "Loads and validates a state file.");
    m.def("write_family",
          [](const std::string& family, int d, double param, const std::filesystem::path& out) {
              const CommandOutput r = cmd_family(family_of(family), d, param, out);
              if (r.exit_code != kExitOk) throw Error(ErrorCode::ValidationFailure, r.err);
          },
          py::arg("family"), py::arg("d"), py::arg("param"), py::arg("out"));
    m.def("sweep_csv",
          [](const std::string& family, int d, const std::string& grid, const std::string& mode,
             std::uint64_t seed) {
              const auto sweep_mode = parse_sweep_mode(mode);
              if (!sweep_mode) throw Error(ErrorCode::ParameterOutOfRange, "unknown mode '" + mode + "'");
              OptimizerConfig config;
              config.seed = seed;
              const auto rows = sweep(family_of(family), d, parse_grid(grid), *sweep_mode, config);
              return format_sweep_csv(rows, *sweep_mode);
          },
          py::arg("family"), py::arg("d"), py::arg("grid"), py::arg("mode") = "closed",
          py::arg("seed") = kDefaultSeed, "Sweep table as CSV text.");
}
