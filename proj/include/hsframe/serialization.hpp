#pragma once

// JSON / CSV wire formats. Complex scalars are [re, im] pairs and matrices are
// row lists of such pairs.
//
//   vector frame : {"n": int, "vectors": [[[re,im],...],...]}
//   HS-frame     : {"n": int, "m": int, "maps": [{"coeff": matrix},...]}   (coeff is m^2 x n)
//   g-frame      : {"n": int, "dims": [int,...], "maps": [{"coeff": matrix},...]}   (coeff is d_j x n)
//   gen spec     : {"kind": ..., "n", "m", "N", "dims", "seed", "of": spec}
//   report       : {"theorem","lhs","rhs","residual","bound","margin","pass","scale"}

#include <array>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsframe/frame_gen.hpp"
#include "hsframe/hs_frame.hpp"
#include "hsframe/identity_suite.hpp"
#include "hsframe/sweep.hpp"
#include "hsframe/vector_frame.hpp"

namespace hsframe {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline std::int64_t positive_int(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw FormatError(std::string("field '") + key + "' must be a positive integer");
    }
    return v.get<std::int64_t>();
}

inline double number(const Json& v, const char* what) {
    if (!v.is_number()) {
        throw FormatError(std::string(what) + ": expected a number");
    }
    return v.get<double>();
}

} // namespace detail

inline Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw FormatError("complex value must be a [re, im] pair");
    }
    return {detail::number(j[0], "complex real part"), detail::number(j[1], "complex imaginary part")};
}

inline Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
        throw FormatError("matrix must be a non-empty list of non-empty rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw FormatError("matrix rows must all have the same length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

inline Json vector_to_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v[i]));
    }
    return out;
}

inline ComplexVector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("vector must be a non-empty list of [re, im] pairs");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Frames

inline Json to_json(const VectorFrame& f) {
    Json vectors = Json::array();
    for (const auto& v : f.vectors()) {
        vectors.push_back(vector_to_json(v));
    }
    return Json{{"n", f.dim()}, {"vectors", std::move(vectors)}};
}

inline Json to_json(const HSFrame& f) {
    Json maps = Json::array();
    for (const auto& g : f.maps()) {
        maps.push_back(Json{{"coeff", matrix_to_json(g.coeff())}});
    }
    return Json{{"n", f.dim()}, {"m", f.side()}, {"maps", std::move(maps)}};
}

inline Json to_json(const GFrame& f) {
    Json maps = Json::array();
    for (const auto& l : f.maps()) {
        maps.push_back(Json{{"coeff", matrix_to_json(l)}});
    }
    return Json{{"n", f.dim()}, {"dims", f.dims()}, {"maps", std::move(maps)}};
}

inline Json to_json(const GeneratedFrame& g) {
    return std::visit([](const auto& f) { return to_json(f); }, g);
}

inline VectorFrame vector_frame_from_json(const Json& j) {
    const auto n = detail::positive_int(j, "n");
    const Json& vs = detail::field(j, "vectors");
    if (!vs.is_array() || vs.empty()) {
        throw FormatError("'vectors' must be a non-empty list");
    }
    std::vector<ComplexVector> vectors;
    for (const auto& v : vs) {
        vectors.push_back(vector_from_json(v));
    }
    try {
        return VectorFrame(n, std::move(vectors));
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
}

namespace detail {

inline std::vector<ComplexMatrix> coefficient_list(const Json& j) {
    const Json& maps = field(j, "maps");
    if (!maps.is_array() || maps.empty()) {
        throw FormatError("'maps' must be a non-empty list");
    }
    std::vector<ComplexMatrix> out;
    for (const auto& m : maps) {
        out.push_back(matrix_from_json(field(m, "coeff")));
    }
    return out;
}

} // namespace detail

inline HSFrame hs_frame_from_json(const Json& j) {
    const auto n = detail::positive_int(j, "n");
    const auto m = detail::positive_int(j, "m");
    const auto blocks = detail::coefficient_list(j);
    try {
        return HSFrame::from_coefficients(n, m, blocks);
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
}

inline GFrame g_frame_from_json(const Json& j) {
    const auto n = detail::positive_int(j, "n");
    const Json& dims = detail::field(j, "dims");
    auto maps = detail::coefficient_list(j);
    if (!dims.is_array() || dims.size() != maps.size()) {
        throw FormatError("'dims' must list one dimension per map");
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!dims[i].is_number_integer() || dims[i].get<std::int64_t>() != maps[i].rows()) {
            throw FormatError("'dims' entry does not match the row count of its map");
        }
    }
    try {
        return GFrame(n, std::move(maps));
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
}

/// Dispatches on the keys present: "vectors" (vector frame), "dims" (g-frame), "m" (HS-frame).
inline GeneratedFrame frame_from_json(const Json& j) {
    if (!j.is_object()) {
        throw FormatError("frame must be a JSON object");
    }
    if (j.contains("vectors")) {
        return vector_frame_from_json(j);
    }
    if (j.contains("dims")) {
        return g_frame_from_json(j);
    }
    if (j.contains("m")) {
        return hs_frame_from_json(j);
    }
    throw FormatError("frame object has none of 'vectors', 'dims', 'm'");
}

// ---------------------------------------------------------------------------
// GenSpec

inline GenKind parse_gen_kind(const std::string& s) {
    for (GenKind k : {GenKind::gaussian_vector, GenKind::harmonic, GenKind::gaussian_hs, GenKind::gaussian_g,
                      GenKind::parsevalize}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    throw FormatError("unknown generator kind '" + s + "'");
}

inline Json to_json(const GenSpec& s) {
    Json j{{"kind", to_string(s.kind)}, {"seed", s.seed}};
    switch (s.kind) {
        case GenKind::parsevalize: j["of"] = to_json(*s.inner); break;
        case GenKind::gaussian_g:
            j["n"] = s.n;
            j["dims"] = s.dims;
            break;
        case GenKind::gaussian_hs:
            j["n"] = s.n;
            j["m"] = s.m;
            j["N"] = s.count;
            break;
        default:
            j["n"] = s.n;
            j["N"] = s.count;
    }
    return j;
}

inline GenSpec gen_spec_from_json(const Json& j, std::optional<std::uint64_t> default_seed = std::nullopt) {
    if (!j.is_object()) {
        throw FormatError("gen spec must be a JSON object");
    }
    const Json& kind = detail::field(j, "kind");
    if (!kind.is_string()) {
        throw FormatError("'kind' must be a string");
    }
    GenSpec s;
    s.kind = parse_gen_kind(kind.get<std::string>());
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0)) {
            throw FormatError("'seed' must be a nonnegative integer");
        }
        s.seed = j["seed"].get<std::uint64_t>();
    } else if (default_seed) {
        s.seed = *default_seed;
    }
    switch (s.kind) {
        case GenKind::parsevalize:
            s.inner = std::make_shared<const GenSpec>(gen_spec_from_json(detail::field(j, "of"), s.seed));
            break;
        case GenKind::gaussian_g: {
            s.n = detail::positive_int(j, "n");
            const Json& dims = detail::field(j, "dims");
            if (!dims.is_array() || dims.empty()) {
                throw FormatError("'dims' must be a non-empty list");
            }
            for (const auto& d : dims) {
                if (!d.is_number_integer() || d.get<std::int64_t>() < 1) {
                    throw FormatError("'dims' entries must be positive integers");
                }
                s.dims.push_back(d.get<Eigen::Index>());
            }
            break;
        }
        case GenKind::gaussian_hs:
            s.n = detail::positive_int(j, "n");
            s.m = detail::positive_int(j, "m");
            s.count = static_cast<std::size_t>(detail::positive_int(j, "N"));
            break;
        default:
            s.n = detail::positive_int(j, "n");
            s.count = static_cast<std::size_t>(detail::positive_int(j, "N"));
    }
    try {
        s.validate();
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reports

inline Json optional_number(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const CheckReport& r) {
    return Json{{"theorem", r.theorem},
                {"lhs", complex_to_json(r.lhs)},
                {"rhs", complex_to_json(r.rhs)},
                {"residual", r.residual},
                {"bound", optional_number(r.bound)},
                {"margin", optional_number(r.margin)},
                {"pass", r.pass},
                {"scale", r.scale}};
}

/// A report plus its sweep coordinates.
inline Json to_json(const SweepRecord& rec) {
    Json j = to_json(rec.report);
    j["trial"] = rec.trial;
    j["K"] = rec.subset;
    j["f_index"] = rec.f_index ? Json(*rec.f_index) : Json(nullptr);
    j["lambda"] = optional_number(rec.lambda);
    return j;
}

inline Json to_json(const TheoremSummary& s) {
    return Json{{"worst_residual", s.worst_residual},
                {"worst_margin", optional_number(s.worst_margin)},
                {"checks_run", s.checks_run},
                {"pass", s.pass}};
}

inline Json summary_to_json(const std::map<std::string, TheoremSummary>& summary) {
    Json j = Json::object();
    for (const auto& [name, s] : summary) {
        j[name] = to_json(s);
    }
    return j;
}

/// Shortest round-trip decimal form.
inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

inline constexpr const char* kCsvHeader =
    "theorem,trial,K,f_index,lambda,lhs_re,lhs_im,rhs_re,rhs_im,residual,bound,margin,pass";

inline std::string csv_row(const SweepRecord& rec) {
    const CheckReport& r = rec.report;
    std::ostringstream os;
    os << r.theorem << ',' << rec.trial << ',' << rec.subset << ',';
    if (rec.f_index) {
        os << *rec.f_index;
    }
    os << ',';
    if (rec.lambda) {
        os << format_double(*rec.lambda);
    }
    os << ',' << format_double(r.lhs.real()) << ',' << format_double(r.lhs.imag()) << ','
       << format_double(r.rhs.real()) << ',' << format_double(r.rhs.imag()) << ',' << format_double(r.residual)
       << ',';
    if (r.bound) {
        os << format_double(*r.bound);
    }
    os << ',';
    if (r.margin) {
        os << format_double(*r.margin);
    }
    os << ',' << (r.pass ? "true" : "false");
    return os.str();
}

// ---------------------------------------------------------------------------
// SuiteConfig

inline std::vector<double> parse_lambda_grid(const std::string& s) {
    std::vector<double> grid;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char* begin = item.data();
        const char* end = begin + item.size();
        while (begin < end && *begin == ' ') {
            ++begin;
        }
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc() || res.ptr != end) {
            throw FormatError("lambda grid entry '" + item + "' is not a number");
        }
        if (!(v >= 0.0 && v <= 1.0)) {
            throw FormatError("lambda grid entry " + item + " is outside [0, 1]");
        }
        grid.push_back(v);
    }
    if (grid.empty()) {
        throw FormatError("lambda grid is empty");
    }
    return grid;
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") {
        return OutputFormat::json;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    throw FormatError("format must be 'json' or 'csv'");
}

inline SuiteConfig suite_config_from_json(const Json& j, std::optional<std::uint64_t> default_seed = std::nullopt) {
    if (!j.is_object()) {
        throw FormatError("suite config must be a JSON object");
    }
    SuiteConfig c;
    if (default_seed) {
        c.seed = *default_seed;
    }
    try {
        if (j.contains("seed")) {
            c.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("gen")) {
            c.gen = gen_spec_from_json(j["gen"], c.seed);
        }
        if (j.contains("trials")) {
            c.trials = static_cast<std::size_t>(detail::positive_int(j, "trials"));
        }
        if (j.contains("theorems")) {
            c.theorems.clear();
            for (const auto& t : j["theorems"]) {
                c.theorems.push_back(parse_theorem(t.get<std::string>()));
            }
        }
        if (j.contains("lambda_grid")) {
            c.lambda_grid.clear();
            for (const auto& l : j["lambda_grid"]) {
                c.lambda_grid.push_back(detail::number(l, "lambda_grid"));
            }
        }
        if (j.contains("subset_mode")) {
            c.subset_mode = SubsetMode::parse(j["subset_mode"].get<std::string>());
        }
        if (j.contains("tolerances")) {
            const Json& t = j["tolerances"];
            if (t.contains("tol_eq")) {
                c.tolerances.tol_eq = detail::number(t["tol_eq"], "tol_eq");
            }
            if (t.contains("tol_ineq")) {
                c.tolerances.tol_ineq = detail::number(t["tol_ineq"], "tol_ineq");
            }
        }
        if (j.contains("format")) {
            c.format = parse_format(j["format"].get<std::string>());
        }
        if (j.contains("test_vectors")) {
            c.test_vectors = static_cast<std::size_t>(detail::positive_int(j, "test_vectors"));
        }
        if (j.contains("dual_scale")) {
            c.dual_scale = detail::number(j["dual_scale"], "dual_scale");
        }
        c.validate();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(e.what());
    } catch (const Json::exception& e) {
        throw FormatError(e.what());
    }
    return c;
}

} // namespace hsframe
