#pragma once

// JSON formats. Rationals are written as strings ("p/q" or an integer),
// F_p entries as integers. Output key order is fixed, so equal values give
// byte-identical text.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "factoperad/braids.hpp"
#include "factoperad/cubes.hpp"
#include "factoperad/error.hpp"
#include "factoperad/factsys.hpp"
#include "factoperad/field.hpp"
#include "factoperad/limits.hpp"
#include "factoperad/report.hpp"

namespace factoperad::io {

using json = nlohmann::ordered_json;

/// "Q" or "Fp:<p>".
struct FieldSpec {
    bool prime = false;
    std::uint64_t p = 0;

    std::string name() const { return prime ? "Fp:" + std::to_string(p) : "Q"; }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline FieldSpec parse_field_spec(const std::string& text)
{
    if (text == "Q")
        return {};
    if (text.rfind("Fp:", 0) == 0) {
        try {
            std::size_t used = 0;
            long long p = std::stoll(text.substr(3), &used);
            if (used == text.size() - 3 && p > 1)
                return {true, static_cast<std::uint64_t>(p)};
        } catch (const std::exception&) {
        }
    }
    throw ParseError("field must be Q or Fp:<prime>, got '" + text + "'");
}

inline std::string context(const std::string& where, const std::string& what)
{
    return where.empty() ? what : where + ": " + what;
}

inline const json& require(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(context(where, std::string("missing key '") + key + "'"));
    return j.at(key);
}

inline int require_int(const json& j, const char* key, const std::string& where)
{
    const json& v = require(j, key, where);
    if (!v.is_number_integer())
        throw ParseError(context(where, std::string("'") + key + "' must be an integer"));
    return v.get<int>();
}

inline mpq_class rational_from_json(const json& j, const std::string& where)
{
    try {
        if (j.is_number_integer())
            return parse_rational(j.dump());
        if (j.is_string())
            return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw ParseError(context(where, e.what()));
    }
    throw ParseError(context(where, "expected a rational as a string or integer, got " + j.dump()));
}

inline json rational_to_json(const mpq_class& q) { return format_rational(q); }

/// Field recorded in a matrix file; `fallback` when the file has none.
inline FieldSpec field_of(const json& j, const FieldSpec& fallback, const std::string& where = "")
{
    if (!j.is_object() || !j.contains("field"))
        return fallback;
    const json& f = j.at("field");
    if (!f.is_string())
        throw ParseError(context(where, "'field' must be \"Q\" or \"Fp\""));
    if (f == "Q")
        return {};
    if (f == "Fp") {
        int p = require_int(j, "p", where);
        if (p < 2)
            throw ParseError(context(where, "'p' must be a prime"));
        return {true, static_cast<std::uint64_t>(p)};
    }
    throw ParseError(context(where, "unknown field " + f.dump()));
}

inline json field_to_json(const RationalField&) { return json{{"field", "Q"}}; }
inline json field_to_json(const PrimeField& f) { return json{{"field", "Fp"}, {"p", f.modulus()}}; }

template <class Field>
json entry_to_json(const Field& f, const typename Field::value_type& v)
{
    if constexpr (std::is_same_v<Field, PrimeField>)
        return v;
    else
        return f.format(v);
}

template <class Field>
json matrix_to_json(const Matrix<Field>& m)
{
    json out = field_to_json(m.field());
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(entry_to_json(m.field(), m(i, k)));
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    return out;
}

/// Reads {"field", "p"?, "entries"}; a bare nested array is also accepted.
template <class Field>
Matrix<Field> matrix_from_json(const json& j, const Field& field, const std::string& where = "")
{
    const json& entries = j.is_array() ? j : require(j, "entries", where);
    if (!entries.is_array() || entries.empty())
        throw ParseError(context(where, "'entries' must be a non-empty array of rows"));
    const std::size_t rows = entries.size();
    std::size_t cols = 0;
    std::vector<typename Field::value_type> data;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = entries[i];
        if (!row.is_array())
            throw ParseError(context(where, "row " + std::to_string(i + 1) + " is not an array"));
        if (i == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError(context(where, "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                                " entries, expected " + std::to_string(cols)));
        for (std::size_t k = 0; k < row.size(); ++k) {
            const std::string at = context(where, "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
            try {
                data.push_back(field.from_rational(rational_from_json(row[k], at)));
            } catch (const DivisionByZero& e) {
                throw ParseError(context(at, e.what()));
            }
        }
    }
    if (cols == 0)
        throw ParseError(context(where, "matrix has no columns"));
    return Matrix<Field>(field, rows, cols, std::move(data));
}

template <class Field>
Matrix<Field> square_matrix_from_json(const json& j, const Field& field, const std::string& where = "")
{
    auto m = matrix_from_json(j, field, where);
    if (!m.is_square())
        throw ParseError(context(where, "matrix is " + m.shape() + ", expected a square matrix"));
    return m;
}

/// Side of a square braiding matrix of size rank^2.
inline std::size_t rank_of_braiding(std::size_t size, const std::string& where = "")
{
    std::size_t r = 1;
    while (r * r < size)
        ++r;
    if (r * r != size)
        throw ParseError(context(where, "braiding of size " + std::to_string(size) + " is not rank^2 x rank^2"));
    return r;
}

// embeddings

inline json embedding_to_json(const LinearEmbedding& phi)
{
    json out = json::array();
    for (const auto& s : phi.squares())
        out.push_back(json{{"a", rational_to_json(s.a)}, {"x", rational_to_json(s.x)}, {"y", rational_to_json(s.y)}});
    return out;
}

inline LinearEmbedding embedding_from_json(const json& j, const std::string& where = "")
{
    if (!j.is_array())
        throw ParseError(context(where, "an embedding is an array of {a, x, y} records"));
    std::vector<Square> squares;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = context(where, "square " + std::to_string(i + 1));
        mpq_class a = rational_from_json(require(j[i], "a", at), at);
        mpq_class x = rational_from_json(require(j[i], "x", at), at);
        mpq_class y = rational_from_json(require(j[i], "y", at), at);
        squares.push_back(Square{a, x, y});
    }
    return LinearEmbedding(std::move(squares));
}

// braids

inline json order_to_json(const Permutation& p)
{
    json out = json::array();
    for (int v : p.images())
        out.push_back(v + 1);
    return out;
}

inline Permutation order_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(context(where, "an order is an array of 1-based slots"));
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw ParseError(context(where, "order entries must be integers"));
        v.push_back(x.get<int>() - 1);
    }
    try {
        return Permutation(std::move(v));
    } catch (const InvalidArgument& e) {
        throw ParseError(context(where, e.what()));
    }
}

inline json braid_to_json(const ColoredBraid& b)
{
    return json{{"strands", b.strands()},
                {"word", b.word()},
                {"source_order", order_to_json(b.source_order())},
                {"target_order", order_to_json(b.target_order())}};
}

/// Reads a colored braid; a bare word array is taken with identity source
/// order and the induced target order, on `strands` strands.
inline ColoredBraid braid_from_json(const json& j, int strands = -1, const std::string& where = "")
{
    auto word_of = [&](const json& w) {
        if (!w.is_array())
            throw ParseError(context(where, "'word' must be an array of nonzero integers"));
        BraidWord word;
        for (const auto& g : w) {
            if (!g.is_number_integer() || g.get<int>() == 0)
                throw ParseError(context(where, "braid letters must be nonzero integers"));
            word.push_back(g.get<int>());
        }
        return word;
    };
    try {
        if (j.is_array()) {
            BraidWord word = word_of(j);
            int n = strands;
            if (n < 0) {
                n = 1;
                for (int g : word)
                    n = std::max(n, std::abs(g) + 1);
            }
            return ColoredBraid::from_word(n, std::move(word), Permutation::identity(n));
        }
        int n = require_int(j, "strands", where);
        BraidWord word = word_of(require(j, "word", where));
        Permutation source = j.contains("source_order") ? order_from_json(j.at("source_order"), where)
                                                        : Permutation::identity(n);
        if (!j.contains("target_order"))
            return ColoredBraid::from_word(n, std::move(word), std::move(source));
        return ColoredBraid(n, std::move(word), std::move(source), order_from_json(j.at("target_order"), where));
    } catch (const InvalidArgument& e) {
        throw ParseError(context(where, e.what()));
    }
}

// systems and towers

/// Resolves a file reference inside another file.
using Loader = std::function<json(const std::string&)>;

template <class Field>
json object_to_json(const BraidedObject<Field>& obj)
{
    return matrix_to_json(obj.braiding());
}

template <class Field>
BraidedObject<Field> object_from_json(const json& j, const Field& field, bool koszul, const std::string& where = "")
{
    auto r = square_matrix_from_json(j, field, where);
    const std::size_t rank = rank_of_braiding(r.rows(), where);
    return make_braided_object(rank, std::move(r), koszul);
}

template <class Field>
json system_to_json(const FactorizedSystem<Field>& s)
{
    json gauge = json::array();
    for (int k = 1; k <= s.depth(); ++k)
        gauge.push_back(matrix_to_json(s.gauge(k)));
    return json{{"object", object_to_json(s.object())},
                {"koszul", s.object().koszul()},
                {"depth", s.depth()},
                {"gauge", std::move(gauge)},
                {"unit", entry_to_json(s.field(), s.unit()(0, 0))}};
}

/// "object" is an inline matrix or a path resolved through `load`;
/// missing gauge entries are identities and a missing unit is 1.
template <class Field>
FactorizedSystem<Field> system_from_json(const json& j, const Field& field, const Loader& load = {},
                                         const std::string& where = "")
{
    const json* obj_json = &require(j, "object", where);
    json loaded;
    if (obj_json->is_string()) {
        if (!load)
            throw ParseError(context(where, "object reference '" + obj_json->get<std::string>() + "' cannot be resolved"));
        loaded = load(obj_json->get<std::string>());
        obj_json = &loaded;
    }
    bool koszul = true;
    if (j.contains("koszul")) {
        if (!j.at("koszul").is_boolean())
            throw ParseError(context(where, "'koszul' must be true or false"));
        koszul = j.at("koszul").get<bool>();
    }
    auto obj = object_from_json(*obj_json, field, koszul, context(where, "object"));
    const int depth = require_int(j, "depth", where);
    if (depth < 0)
        throw ParseError(context(where, "'depth' must be non-negative"));
    std::vector<Matrix<Field>> gauge;
    if (j.contains("gauge")) {
        const json& g = j.at("gauge");
        if (!g.is_array())
            throw ParseError(context(where, "'gauge' must be an array of matrices"));
        for (std::size_t k = 0; k < g.size(); ++k)
            gauge.push_back(square_matrix_from_json(g[k], field, context(where, "gauge " + std::to_string(k + 1))));
    }
    std::optional<Matrix<Field>> unit;
    if (j.contains("unit"))
        unit = Matrix<Field>(field, 1, 1, {field.from_rational(rational_from_json(j.at("unit"), context(where, "unit")))});
    return FactorizedSystem<Field>(std::move(obj), depth, std::move(gauge), unit);
}

template <class Field>
json tower_to_json(const ProjectiveSystem<Field>& t)
{
    json levels = json::array();
    for (const auto& level : t.levels())
        levels.push_back(system_to_json(level));
    json transitions = json::object();
    for (const auto& [key, comps] : t.transitions()) {
        json list = json::array();
        for (const auto& m : comps)
            list.push_back(matrix_to_json(m));
        transitions[std::to_string(key.first) + "," + std::to_string(key.second)] = std::move(list);
    }
    return json{{"levels", std::move(levels)}, {"transitions", std::move(transitions)}};
}

template <class Field>
ProjectiveSystem<Field> tower_from_json(const json& j, const Field& field, const Loader& load = {},
                                        const std::string& where = "")
{
    const json& lv = require(j, "levels", where);
    if (!lv.is_array())
        throw ParseError(context(where, "'levels' must be an array of systems"));
    std::vector<FactorizedSystem<Field>> levels;
    for (std::size_t d = 0; d < lv.size(); ++d)
        levels.push_back(system_from_json(lv[d], field, load, context(where, "level " + std::to_string(d))));
    std::map<std::pair<int, int>, std::vector<Matrix<Field>>> transitions;
    if (j.contains("transitions")) {
        const json& tr = j.at("transitions");
        if (!tr.is_object())
            throw ParseError(context(where, "'transitions' must map \"d,e\" to matrix lists"));
        for (const auto& [key, list] : tr.items()) {
            const std::string at = context(where, "transition " + key);
            int d = 0, e = 0;
            char comma = 0;
            std::istringstream in(key);
            if (!(in >> d >> comma >> e) || comma != ',' || !in.eof())
                throw ParseError(context(at, "key must have the form \"d,e\""));
            if (!list.is_array())
                throw ParseError(context(at, "expected an array of matrices"));
            std::vector<Matrix<Field>> comps;
            for (std::size_t k = 0; k < list.size(); ++k)
                comps.push_back(square_matrix_from_json(list[k], field, context(at, "degree " + std::to_string(k))));
            transitions[{d, e}] = std::move(comps);
        }
    }
    return ProjectiveSystem<Field>(std::move(levels), std::move(transitions));
}

// reports

inline json violation_to_json(const Violation& v)
{
    auto embedded = [](const std::string& text) { return text.empty() ? json() : json::parse(text); };
    json out{{"axiom", v.axiom},
             {"degree", v.degree},
             {"embedding", embedded(v.embedding)},
             {"braid", embedded(v.braid)},
             {"message", v.message}};
    if (!v.lhs.empty() || !v.rhs.empty()) {
        out["entry"] = json::array({v.row + 1, v.col + 1});
        out["lhs"] = v.lhs;
        out["rhs"] = v.rhs;
    }
    return out;
}

inline json verdict_to_json(const Verdict& verdict)
{
    json out = json::array();
    for (const auto& v : verdict.violations)
        out.push_back(violation_to_json(v));
    return out;
}

/// Outcome of one command.
struct RunReport {
    std::string command;
    std::vector<std::string> inputs;
    json parameters = json::object();
    std::string status = "ok";  // ok | violation | error
    json details = json::array();
    std::optional<double> timing_ms;

    json to_json() const
    {
        json out{{"command", command}, {"inputs", inputs}, {"parameters", parameters}, {"status", status},
                 {"details", details}};
        if (timing_ms)
            out["timing_ms"] = *timing_ms;
        return out;
    }
};

// files

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace detail {

inline void dump_to(std::string& out, const json& j, int indent)
{
    const std::string pad(indent, ' '), inner(indent + 2, ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            out += first ? "" : ",\n";
            first = false;
            out += inner + json(key).dump() + ": ";
            dump_to(out, value, indent + 2);
        }
        out += "\n" + pad + "}";
        return;
    }
    if (j.is_array() && !j.empty()) {
        bool flat = true;
        for (const auto& x : j)
            flat = flat && x.is_primitive();
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i)
                out += (i ? ", " : "") + j[i].dump();
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += (i ? ",\n" : "") + inner;
            dump_to(out, j[i], indent + 2);
        }
        out += "\n" + pad + "]";
        return;
    }
    out += j.dump();
}

}  // namespace detail

/// Indented text with arrays of scalars (matrix rows, words) on one line.
inline std::string dump(const json& j)
{
    std::string out;
    detail::dump_to(out, j, 0);
    return out + "\n";
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << text;
}

/// Loader resolving references relative to the directory of `file`.
inline Loader relative_loader(const std::string& file)
{
    const std::filesystem::path base = std::filesystem::path(file).parent_path();
    return [base](const std::string& ref) {
        std::filesystem::path p(ref);
        return read_json_file((p.is_absolute() ? p : base / p).string());
    };
}

}  // namespace factoperad::io
