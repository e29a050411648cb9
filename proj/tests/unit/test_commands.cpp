#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cren/commands.hpp"
#include "cren/measures.hpp"
#include "cren/state_file.hpp"

using namespace cren;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CREN_TEST_DATA_DIR;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "cren_test_commands";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Value of "key: value" in a measure record.
std::string field(const std::string& record, const std::string& key) {
    const std::string tag = key + ": ";
    const auto pos = record.find(tag);
    if (pos == std::string::npos) return {};
    const auto end = record.find('\n', pos);
    return record.substr(pos + tag.size(), end - pos - tag.size());
}

MeasureOptions opts(MeasureKind kind) {
    MeasureOptions o;
    o.measure = kind;
    o.optimizer.restarts = 4;
    return o;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("measure negativity of the Bell file") {
    const CommandOutput r = cmd_measure(kData / "bell.json", opts(MeasureKind::Negativity));
    CHECK(r.exit_code == kExitOk);
    CHECK(std::stod(field(r.out, "value")) == doctest::Approx(1.0));
    CHECK(field(r.out, "method") == "partial_transpose");
    CHECK(field(r.out, "dims") == "2x2");
}

TEST_CASE("measure cren-pure and concurrence") {
    CHECK(std::stod(field(cmd_measure(kData / "bell.json", opts(MeasureKind::CrenPure)).out,
                          "value")) == doctest::Approx(1.0));
    CHECK(std::stod(field(cmd_measure(kData / "bell.json", opts(MeasureKind::Concurrence)).out,
                          "value")) == doctest::Approx(1.0));
    CHECK(cmd_measure(kData / "product.json", opts(MeasureKind::CrenPure)).exit_code ==
          kExitUnsupported);
    CHECK(cmd_measure(kData / "qutrits.json", opts(MeasureKind::Concurrence)).exit_code ==
          kExitUnsupported);
}

TEST_CASE("measure cren-opt on separable and Werner inputs") {
    const CommandOutput product = cmd_measure(kData / "product.json", opts(MeasureKind::CrenOpt));
    CHECK(product.exit_code == kExitOk);
    CHECK(std::stod(field(product.out, "value")) <= 5e-3);
    CHECK(field(product.out, "bound") == "upper");
    CHECK(field(product.out, "seed") == "42");
    CHECK(field(product.out, "restarts") == "4");
    CHECK_FALSE(field(product.out, "iterations").empty());

    const fs::path werner = scratch("werner_d3_w1.json");
    REQUIRE(cmd_family(Family::Werner, 3, 1.0, werner).exit_code == kExitOk);
    const CommandOutput w = cmd_measure(werner, opts(MeasureKind::CrenOpt));
    CHECK(std::abs(std::stod(field(w.out, "value")) - 0.5) <= 5e-3);
}

TEST_CASE("strict mode turns non-convergence into exit 4") {
    MeasureOptions o = opts(MeasureKind::CrenOpt);
    o.optimizer.restarts = 1;
    o.optimizer.max_iterations = 1;
    o.strict = true;
    const fs::path rho = scratch("mixed.json");
    save_state(rho, StateFile::from(random_density({2, 2}, 4, 3)));
    const CommandOutput r = cmd_measure(rho, o);
    CHECK(r.exit_code == kExitNotConverged);
    CHECK(field(r.out, "converged") == "false");
    o.strict = false;
    CHECK(cmd_measure(rho, o).exit_code == kExitOk);
}

TEST_CASE("measure input errors exit 2") {
    const CommandOutput bad = cmd_measure(kData / "bad_trace.json", opts(MeasureKind::Negativity));
    CHECK(bad.exit_code == kExitInputError);
    CHECK(bad.err.find("trace") != std::string::npos);
    CHECK(cmd_measure(kData / "truncated.json", opts(MeasureKind::Negativity)).exit_code ==
          kExitInputError);
    CHECK(cmd_measure(kData / "missing.json", opts(MeasureKind::Negativity)).exit_code ==
          kExitInputError);
}

TEST_CASE("family files") {
    const fs::path bell = scratch("iso_d2_f1.json");
    REQUIRE(cmd_family(Family::Isotropic, 2, 1.0, bell).exit_code == kExitOk);
    const StateFile iso = read_state(bell);
    CHECK((iso.data - maximally_entangled(2).projector()).cwiseAbs().maxCoeff() <= 1e-15);

    const fs::path singlet = scratch("wer_d2_w1.json");
    REQUIRE(cmd_family(Family::Werner, 2, 1.0, singlet).exit_code == kExitOk);
    ComplexVector s = ComplexVector::Zero(4);
    s[1] = 1.0 / std::sqrt(2.0);
    s[2] = -1.0 / std::sqrt(2.0);
    CHECK((read_state(singlet).data - s * s.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);

    const fs::path mixed = scratch("iso_d3_ninth.json");
    REQUIRE(cmd_family(Family::Isotropic, 3, 1.0 / 9.0, mixed).exit_code == kExitOk);
    CHECK((read_state(mixed).data - ComplexMatrix::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff() <=
          1e-15);

    CHECK(cmd_family(Family::Werner, 3, 1.5, scratch("bad.json")).exit_code == kExitInputError);
    CHECK(cmd_family(Family::Werner, 1, 0.5, scratch("bad.json")).exit_code == kExitInputError);
}

TEST_CASE("family files round-trip bit-exactly and recover their parameter") {
    for (Family fam : {Family::Isotropic, Family::Werner}) {
        for (int d : {2, 3, 4}) {
            for (double p : {0.0, 0.1, 0.37, 0.5, 0.75, 1.0}) {
                const fs::path path = scratch("roundtrip.json");
                REQUIRE(cmd_family(fam, d, p, path).exit_code == kExitOk);
                const StateFile file = read_state(path);
                CHECK(write_state(file) == slurp(path));
                CHECK(file.data == family_state(fam, d, p).matrix());
                const MeasureKind kind =
                    fam == Family::Isotropic ? MeasureKind::CrenIsotropic : MeasureKind::CrenWerner;
                const CommandOutput r = cmd_measure(path, opts(kind));
                REQUIRE(r.exit_code == kExitOk);
                CHECK(std::abs(std::stod(field(r.out, "parameter")) - p) <= 1e-12);
            }
        }
    }
}

TEST_CASE("closed-form family measures reject non-members") {
    const fs::path rho = scratch("generic.json");
    save_state(rho, StateFile::from(random_density({2, 2}, 4, 8)));
    CHECK(cmd_measure(rho, opts(MeasureKind::CrenIsotropic)).exit_code == kExitUnsupported);
    CHECK(cmd_measure(rho, opts(MeasureKind::CrenWerner)).exit_code == kExitUnsupported);
}

TEST_CASE("parse_grid") {
    const std::vector<double> g = parse_grid("0:1:0.1");
    REQUIRE(g.size() == 11);
    CHECK(g[3] == 0.3);
    CHECK(g.back() == 1.0);
    CHECK(parse_grid("0.5:0.5:0.1").size() == 1);
    CHECK_THROWS_AS(parse_grid("0:1"), Error);
    CHECK_THROWS_AS(parse_grid("0:1.5:0.1"), Error);
    CHECK_THROWS_AS(parse_grid("0.5:0.2:0.1"), Error);
    CHECK_THROWS_AS(parse_grid("0:1:0"), Error);
    CHECK_THROWS_AS(parse_grid("0:1:x"), Error);
    CHECK_THROWS_AS(parse_grid("0:1:0.1:2"), Error);
}

TEST_CASE("isotropic sweep: negativity equals CREN") {
    const auto rows = sweep(Family::Isotropic, 3, parse_grid("0:1:0.1"), SweepMode::Closed, {});
    REQUIRE(rows.size() == 11);
    for (const SweepRow& r : rows) {
        CHECK(std::abs(r.negativity - r.cren()) <= 1e-10);
        CHECK_FALSE(r.cren_optimized.has_value());
    }
}

TEST_CASE("werner sweep: gap for d = 3, none for d = 2") {
    const auto rows = sweep(Family::Werner, 3, {0.75}, SweepMode::Closed, {});
    CHECK(rows[0].negativity == doctest::Approx(1.0 / 6.0));
    CHECK(rows[0].cren() == doctest::Approx(0.25));
    for (const SweepRow& r : sweep(Family::Werner, 2, parse_grid("0:1:0.05"), SweepMode::Closed, {})) {
        CHECK(std::abs(r.negativity - r.cren()) <= 1e-10);
    }
}

TEST_CASE("sweep CSV layout") {
    OptimizerConfig cfg;
    cfg.restarts = 2;
    const auto rows = sweep(Family::Werner, 2, {0.6, 0.9}, SweepMode::Both, cfg);
    const std::string csv = format_sweep_csv(rows, SweepMode::Both);
    CHECK(csv.rfind("parameter,negativity,cren_closed,cren_optimized,abs_gap,method,seed\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    for (const SweepRow& r : rows) {
        CHECK(*r.abs_gap <= 5e-3);
        CHECK(r.cren() >= r.negativity - 1e-10);
    }
    CHECK(format_sweep_csv(rows, SweepMode::Closed).rfind("parameter,negativity,cren_closed,method,seed\n", 0) == 0);
    const auto opt = sweep(Family::Werner, 2, {0.6}, SweepMode::Optimized, cfg);
    CHECK(format_sweep_csv(opt, SweepMode::Optimized)
              .rfind("parameter,negativity,cren_closed,cren_optimized,method,seed\n", 0) == 0);
    CHECK(opt[0].cren() == *opt[0].cren_closed);
    CHECK(std::abs(*opt[0].cren_optimized - *opt[0].cren_closed) <= 5e-3);
    CHECK_FALSE(opt[0].abs_gap.has_value());
}

TEST_CASE("cmd_sweep output is deterministic") {
    OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 11;
    const fs::path a = scratch("sweep_a.csv");
    const fs::path b = scratch("sweep_b.csv");
    REQUIRE(cmd_sweep(Family::Isotropic, 2, "0.5:1:0.25", SweepMode::Both, a, cfg).exit_code == kExitOk);
    REQUIRE(cmd_sweep(Family::Isotropic, 2, "0.5:1:0.25", SweepMode::Both, b, cfg).exit_code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find(",11\n") != std::string::npos);
    CHECK(cmd_sweep(Family::Isotropic, 2, "0:2:0.5", SweepMode::Closed, a, cfg).exit_code ==
          kExitInputError);
}

TEST_CASE("name parsing") {
    CHECK(parse_measure_kind("cren-opt") == MeasureKind::CrenOpt);
    CHECK_FALSE(parse_measure_kind("entropy").has_value());
    CHECK(parse_family("werner") == Family::Werner);
    CHECK(parse_sweep_mode("both") == SweepMode::Both);
    CHECK_FALSE(parse_sweep_mode("all").has_value());
}

}  // TEST_SUITE
