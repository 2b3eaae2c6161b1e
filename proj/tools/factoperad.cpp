// factoperad: command-line front end.
//
// Exit codes: 0 ok, 1 verified false (or degenerate input), 2 usage or
// parse error, 3 internal error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "factoperad/io.hpp"

namespace {

using namespace factoperad;
using io::json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInternal = 3 };

struct Options {
    std::string field = "Q";
    bool field_given = false;
    int depth = 3;
    int depth_cap = -1;
    int height = -1;
    std::uint64_t seed = 0;
    std::string perturb;
    std::string koszul = "on";
    std::string orientation = "ccw";
    int strands = -1;
    std::string output;
    bool timing = false;
    std::vector<std::string> inputs;
    std::vector<std::string> gauges;
};

/// What a command produced: an artifact to write, a report status, or both.
struct Result {
    std::optional<json> artifact;
    std::string status = "ok";
    json details = json::array();
    json parameters = json::object();
};

io::FieldSpec resolve_field(const json& file, const Options& o, const std::string& where)
{
    const io::FieldSpec flag = io::parse_field_spec(o.field);
    const io::FieldSpec found = io::field_of(file, flag, where);
    if (o.field_given && !(found == flag))
        throw ParseError(where + " is over " + found.name() + " but --field is " + flag.name());
    return found;
}

template <class Fn>
Result with_field(const io::FieldSpec& spec, Fn&& fn)
{
    if (spec.prime) {
        PrimeField f(spec.p);
        return fn(f);
    }
    return fn(RationalField{});
}

bool koszul_flag(const Options& o) { return o.koszul == "on"; }

const json& object_part(const json& system)
{
    if (system.is_object() && system.contains("object") && system.at("object").is_object())
        return system.at("object");
    return system;
}

Result cmd_yb_check(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    json j = io::read_json_file(path);
    return with_field(resolve_field(j, o, path), [&](const auto& f) {
        auto m = io::square_matrix_from_json(j, f, path);
        const std::size_t rank = io::rank_of_braiding(m.rows(), path);
        Result r;
        r.parameters = {{"field", f.name()}, {"rank", rank}};
        auto check = check_yang_baxter(m, rank);
        if (!check) {
            r.status = "violation";
            json v{{"axiom", "yang-baxter"}, {"message", check.message}};
            if (check.invertible) {
                v["entry"] = json::array({check.row + 1, check.col + 1});
                v["lhs"] = check.lhs;
                v["rhs"] = check.rhs;
            }
            r.details.push_back(std::move(v));
        }
        return r;
    });
}

Result cmd_compose(const Options& o)
{
    if (o.inputs.size() < 1)
        throw ParseError("compose needs an outer embedding file");
    std::vector<LinearEmbedding> embs;
    for (const auto& path : o.inputs) {
        embs.push_back(io::embedding_from_json(io::read_json_file(path), path));
        require_valid(embs.back(), path);
    }
    std::vector<LinearEmbedding> inners(embs.begin() + 1, embs.end());
    Result r;
    r.artifact = io::embedding_to_json(compose(embs.front(), inners));
    return r;
}

Result cmd_straighten(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    auto phi = io::embedding_from_json(io::read_json_file(path), path);
    require_valid(phi, path);
    StraightenOptions so;
    so.orientation = o.orientation == "cw" ? Orientation::cw : Orientation::ccw;
    Result r;
    r.parameters = {{"orientation", o.orientation}};
    if (!o.perturb.empty()) {
        try {
            so.perturbation = parse_rational(o.perturb);
        } catch (const Error& e) {
            throw ParseError(std::string("--perturb: ") + e.what());
        }
        r.parameters["perturb"] = format_rational(*so.perturbation);
    }
    r.artifact = io::braid_to_json(straighten(phi, so));
    return r;
}

Result cmd_build(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    json j = io::read_json_file(path);
    return with_field(resolve_field(j, o, path), [&](const auto& f) {
        auto obj = io::object_from_json(object_part(j), f, koszul_flag(o), path);
        using M = std::decay_t<decltype(obj.braiding())>;
        std::vector<M> gauge;
        for (const auto& g : o.gauges)
            gauge.push_back(io::square_matrix_from_json(io::read_json_file(g), f, g));
        Result r;
        r.parameters = {{"field", f.name()}, {"depth", o.depth}, {"koszul", koszul_flag(o)}};
        r.artifact = io::system_to_json(FactorizedSystem(obj, o.depth, std::move(gauge)));
        return r;
    });
}

Result cmd_verify(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    json j = io::read_json_file(path);
    json obj = j.contains("object") && j.at("object").is_string() ? io::relative_loader(path)(j.at("object"))
                                                                  : object_part(j);
    return with_field(resolve_field(obj, o, path), [&](const auto& f) {
        auto s = io::system_from_json(j, f, io::relative_loader(path), path);
        VerifyOptions vo;
        vo.depth_cap = o.depth_cap >= 0 ? o.depth_cap : std::min(3, s.depth());
        vo.seed = o.seed;
        if (vo.depth_cap > s.depth())
            throw InvalidArgument("--depth-cap " + std::to_string(vo.depth_cap) + " exceeds the system depth " +
                                  std::to_string(s.depth()));
        Result r;
        r.parameters = {{"field", f.name()}, {"depth_cap", vo.depth_cap}, {"seed", vo.seed}};
        Verdict v = verify_factorization(s, vo);
        if (!v) {
            r.status = "violation";
            r.details = io::verdict_to_json(v);
        }
        return r;
    });
}

Result cmd_tower(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    json j = io::read_json_file(path);
    json obj = j.contains("object") && j.at("object").is_string() ? io::relative_loader(path)(j.at("object"))
                                                                  : object_part(j);
    return with_field(resolve_field(obj, o, path), [&](const auto& f) {
        auto s = io::system_from_json(j, f, io::relative_loader(path), path);
        Result r;
        const int h = o.height >= 0 ? o.height : std::min(3, s.depth());
        r.parameters = {{"field", f.name()}, {"height", h}};
        r.artifact = io::tower_to_json(tower_of(s, h));
        return r;
    });
}

Result cmd_assemble(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    json j = io::read_json_file(path);
    const json& levels = io::require(j, "levels", path);
    if (!levels.is_array() || levels.empty())
        throw ParseError(path + ": 'levels' must be a non-empty array");
    json obj = levels[0].contains("object") && levels[0].at("object").is_string()
                   ? io::relative_loader(path)(levels[0].at("object"))
                   : object_part(levels[0]);
    return with_field(resolve_field(obj, o, path), [&](const auto& f) {
        auto t = io::tower_from_json(j, f, io::relative_loader(path), path);
        VerifyOptions vo;
        vo.seed = o.seed;
        Result r;
        r.parameters = {{"field", f.name()}, {"height", t.height()}, {"seed", vo.seed}};
        Verdict v = verify_tower(t, vo);
        if (!v) {
            r.status = "violation";
            r.details = io::verdict_to_json(v);
            return r;
        }
        r.artifact = io::system_to_json(assemble(t, vo));
        return r;
    });
}

Result cmd_braid_matrix(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    const std::string& braid_path = o.inputs.at(1);
    json j = io::read_json_file(path);
    auto braid = io::braid_from_json(io::read_json_file(braid_path), o.strands, braid_path);
    if (o.strands >= 0 && braid.strands() != o.strands)
        throw ParseError(braid_path + ": braid has " + std::to_string(braid.strands()) + " strands but --n is " +
                         std::to_string(o.strands));
    return with_field(resolve_field(object_part(j), o, path), [&](const auto& f) {
        auto obj = io::object_from_json(object_part(j), f, koszul_flag(o), path);
        Result r;
        r.parameters = {{"field", f.name()}, {"strands", braid.strands()}, {"koszul", koszul_flag(o)}};
        r.artifact = io::matrix_to_json(eval_braid(obj, braid));
        return r;
    });
}

json error_details(const char* kind, const std::string& message)
{
    return json::array({json{{"error", kind}, {"message", message}}});
}

int run(const std::string& command, Result (*fn)(const Options&), const Options& o)
{
    io::RunReport report;
    report.command = command;
    report.inputs = o.inputs;
    report.inputs.insert(report.inputs.end(), o.gauges.begin(), o.gauges.end());
    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    std::optional<json> artifact;
    try {
        Result r = fn(o);
        report.parameters = r.parameters;
        report.status = r.status;
        report.details = r.details;
        artifact = r.artifact;
        code = r.status == "ok" ? kOk : kViolation;
    } catch (const AxiomViolation& e) {
        report.status = "violation";
        report.details = io::verdict_to_json(Verdict{{e.violation}});
        code = kViolation;
    } catch (const DegenerateMotion& e) {
        report.status = "error";
        report.details = error_details("DegenerateMotion", e.what());
        code = kViolation;
    } catch (const Error& e) {
        report.status = "error";
        report.details = error_details("InvalidInput", e.what());
        code = kUsage;
    } catch (const std::exception& e) {
        report.status = "error";
        report.details = error_details("Internal", e.what());
        code = kInternal;
    }
    if (o.timing)
        report.timing_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::string text;
    try {
        if (artifact && code == kOk && o.output.empty()) {
            text = io::dump(*artifact);
        } else {
            if (artifact && code == kOk)
                io::write_text_file(o.output, io::dump(*artifact));
            text = io::dump(report.to_json());
        }
    } catch (const Error& e) {
        report.status = "error";
        report.details = error_details("InvalidInput", e.what());
        text = io::dump(report.to_json());
        code = kUsage;
    }
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact factorized local systems over braided vector spaces"};
    app.require_subcommand(1);
    Options o;

    auto field_opt = [&](CLI::App* sub) {
        sub->add_option("--field", o.field, "Q or Fp:<p>, for files without a field")->default_val("Q");
    };
    auto output_opt = [&](CLI::App* sub) {
        sub->add_option("-o,--output", o.output, "write the result here and print a report");
    };
    auto koszul_opt = [&](CLI::App* sub) {
        sub->add_option("--koszul", o.koszul, "sign the braiding")->check(CLI::IsMember({"on", "off"}));
    };
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--timing", o.timing, "include timing_ms in the report");
        return sub;
    };

    auto* yb = common(app.add_subcommand("yb-check", "check the Yang-Baxter equation for a braiding matrix"));
    yb->add_option("matrix", o.inputs, "matrix file")->required()->expected(1);
    field_opt(yb);

    auto* comp = common(app.add_subcommand("compose", "operadic composition of linear embeddings"));
    comp->add_option("embeddings", o.inputs, "outer embedding, then one inner per slot")->required();
    output_opt(comp);

    auto* str = common(app.add_subcommand("straighten", "braid of the motion to the standard vertical position"));
    str->add_option("embedding", o.inputs, "embedding file")->required()->expected(1);
    str->add_option("--perturb", o.perturb, "shift centre i by (i * eps, 0) first");
    str->add_option("--orientation", o.orientation, "crossing sign convention")
        ->check(CLI::IsMember({"ccw", "cw"}));
    output_opt(str);

    auto* build = common(app.add_subcommand("build", "canonical system of a braided object"));
    build->add_option("object", o.inputs, "braiding matrix file")->required()->expected(1);
    build->add_option("--depth", o.depth, "depth")->check(CLI::NonNegativeNumber);
    build->add_option("--gauge", o.gauges, "gauge matrices m_1, m_2, ...");
    field_opt(build);
    koszul_opt(build);
    output_opt(build);

    auto* verify = common(app.add_subcommand("verify", "check the factorization axioms"));
    verify->add_option("system", o.inputs, "system file")->required()->expected(1);
    verify->add_option("--depth-cap", o.depth_cap, "highest degree checked (default min(3, depth))")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", o.seed, "seed of the generic embeddings");
    field_opt(verify);

    auto* tower = common(app.add_subcommand("tower", "tower of truncations of a system"));
    tower->add_option("system", o.inputs, "system file")->required()->expected(1);
    tower->add_option("--height", o.height, "tower height (default min(3, depth))")->check(CLI::NonNegativeNumber);
    field_opt(tower);
    output_opt(tower);

    auto* assemble_cmd = common(app.add_subcommand("assemble", "inverse limit of a verified tower"));
    assemble_cmd->add_option("tower", o.inputs, "tower file")->required()->expected(1);
    assemble_cmd->add_option("--seed", o.seed, "seed of the generic embeddings");
    field_opt(assemble_cmd);
    output_opt(assemble_cmd);

    auto* bm = common(app.add_subcommand("braid-matrix", "matrix of a braid on V^(x)n"));
    bm->add_option("files", o.inputs, "braiding matrix file, then braid file")->required()->expected(2);
    bm->add_option("--n", o.strands, "number of strands")->check(CLI::PositiveNumber);
    field_opt(bm);
    koszul_opt(bm);
    output_opt(bm);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    for (auto* sub : app.get_subcommands())
        if (auto* opt = sub->get_option_no_throw("--field"); opt && opt->count())
            o.field_given = true;

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "yb-check")
        return run(name, cmd_yb_check, o);
    if (name == "compose")
        return run(name, cmd_compose, o);
    if (name == "straighten")
        return run(name, cmd_straighten, o);
    if (name == "build")
        return run(name, cmd_build, o);
    if (name == "verify")
        return run(name, cmd_verify, o);
    if (name == "tower")
        return run(name, cmd_tower, o);
    if (name == "assemble")
        return run(name, cmd_assemble, o);
    if (name == "braid-matrix")
        return run(name, cmd_braid_matrix, o);
    return kInternal;
}
