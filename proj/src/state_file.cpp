#include "cren/state_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cren {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaViolation, what); }

Complex parse_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema(where + ": expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

int parse_dim(const json& v, const char* name) {
    if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
        schema(std::string("dims: ") + name + " must be a positive integer");
    }
    return v.get<int>();
}

}  // namespace

bool StateFile::operator==(const StateFile& other) const {
    return dims == other.dims && kind == other.kind && label == other.label &&
           data.rows() == other.data.rows() && data.cols() == other.data.cols() &&
           data == other.data;
}

DensityMatrix StateFile::density() const {
    if (kind == Kind::Pure) return DensityMatrix::from_pure(pure());
    return validate_density(data, dims);
}

PureState StateFile::pure() const {
    if (kind != Kind::Pure) throw Error(ErrorCode::SchemaViolation, "kind: not a pure state");
    return PureState(dims, data.col(0));
}

StateFile StateFile::from(const PureState& psi, std::optional<std::string> label) {
    return {psi.dims(), Kind::Pure, psi.amplitudes(), std::move(label)};
}

StateFile StateFile::from(const DensityMatrix& rho, std::optional<std::string> label) {
    return {rho.dims(), Kind::Density, rho.matrix(), std::move(label)};
}

StateFile parse_state(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedFile, e.what());
    }
    if (!doc.is_object()) schema("top level: expected an object");

    StateFile out;
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2) {
        schema("dims: expected [dA, dB]");
    }
    out.dims = {parse_dim(doc["dims"][0], "dA"), parse_dim(doc["dims"][1], "dB")};
    const int n = out.dims.total();

    if (!doc.contains("kind") || !doc["kind"].is_string()) schema("kind: expected a string");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "pure") {
        out.kind = StateFile::Kind::Pure;
    } else if (kind == "density") {
        out.kind = StateFile::Kind::Density;
    } else {
        schema("kind: expected \"pure\" or \"density\", got \"" + kind + "\"");
    }

    if (doc.contains("label")) {
        if (!doc["label"].is_string()) schema("label: expected a string");
        out.label = doc["label"].get<std::string>();
    }

    if (!doc.contains("data") || !doc["data"].is_array()) schema("data: expected an array");
    const json& data = doc["data"];
    if (static_cast<int>(data.size()) != n) {
        schema("data: expected " + std::to_string(n) + " entries, got " +
               std::to_string(data.size()));
    }
    if (out.kind == StateFile::Kind::Pure) {
        out.data.resize(n, 1);
        for (int i = 0; i < n; ++i) {
            out.data(i, 0) = parse_pair(data[i], "data[" + std::to_string(i) + "]");
        }
    } else {
        out.data.resize(n, n);
        for (int i = 0; i < n; ++i) {
            const json& row = data[i];
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                schema("data[" + std::to_string(i) + "]: expected a row of " + std::to_string(n) +
                       " entries");
            }
            for (int j = 0; j < n; ++j) {
                out.data(i, j) =
                    parse_pair(row[j], "data[" + std::to_string(i) + "][" + std::to_string(j) + "]");
            }
        }
    }

    try {
        if (out.kind == StateFile::Kind::Pure) {
            (void)out.pure();
        } else {
            (void)validate_density(out.data, out.dims);
        }
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailure, std::string("data: ") + e.what());
    }
    return out;
}

StateFile read_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedFile, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

std::string write_state(const StateFile& file) {
    json doc = json::object();
    doc["dims"] = json::array({file.dims.a, file.dims.b});
    doc["kind"] = file.kind == StateFile::Kind::Pure ? "pure" : "density";
    json data = json::array();
    if (file.kind == StateFile::Kind::Pure) {
        for (Eigen::Index i = 0; i < file.data.rows(); ++i) data.push_back(pair(file.data(i, 0)));
    } else {
        for (Eigen::Index i = 0; i < file.data.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < file.data.cols(); ++j) row.push_back(pair(file.data(i, j)));
            data.push_back(std::move(row));
        }
    }
    doc["data"] = std::move(data);
    if (file.label) doc["label"] = *file.label;
    return doc.dump() + "\n";
}

void save_state(const std::filesystem::path& path, const StateFile& file) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MalformedFile, "cannot write " + path.string());
    out << write_state(file);
    if (!out) throw Error(ErrorCode::MalformedFile, "write failed for " + path.string());
}

}  // namespace cren
