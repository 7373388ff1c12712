#include "kolam/engine.hpp"
#include "kolam/error.hpp"
#include "kolam/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace kolam;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("unreadable-file", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("invalid-json", path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("unwritable-file", "cannot write " + path);
    out << text;
}

struct Inputs {
    std::string dots_file;
    std::string policy = "all-pairs";
    int j = 1;
    bool strict = false;
    std::string style_file;

    void attach(CLI::App* app) {
        app->add_option("--dots", dots_file, "JSON file with the dot set")->required();
        app->add_option("--policy", policy, "all-pairs | nn | cutoff=<d>");
        app->add_option("--j", j, "junctions per dot pair")->check(CLI::PositiveNumber);
        app->add_flag("--strict", strict, "fail M2 on tangential contacts");
        app->add_option("--style", style_file, "JSON file with style overrides");
    }

    // The same request body the HTTP service receives.
    Json request() const {
        Json r = Json::object();
        r["dots"] = to_json(dots_from_json(read_json(dots_file)));
        r["policy"] = to_json(parse_policy_flag(policy, j));
        if (!style_file.empty()) r["style"] = read_json(style_file);
        if (strict) r["strict"] = true;
        return r;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulli kolam engine"};
    app.require_subcommand(1);

    Inputs gen_in;
    std::string assignment, svg_path, doc_path;
    std::optional<std::uint64_t> seed;
    auto* gen = app.add_subcommand("generate", "build one kolam and write its document and SVG");
    gen_in.attach(gen);
    auto* assign_opt = gen->add_option("--assignment", assignment, "bond letters in junction order, e.g. BDX");
    gen->add_option("--seed", seed, "draw the bonds at random from this seed")->excludes(assign_opt);
    gen->add_option("--svg", svg_path, "SVG output path");
    gen->add_option("--doc", doc_path, "document JSON output path (stdout when neither --svg nor --doc)");

    Inputs en_in;
    bool symmetric = false, classify = false;
    std::string census_path;
    auto* en = app.add_subcommand("enumerate", "count and enumerate every kolam of a parent");
    en_in.attach(en);
    en->add_flag("--symmetric", symmetric, "symmetry-equivalent junctions share a bond");
    en->add_flag("--classify", classify, "group assignments into symmetry classes");
    en->add_option("--census", census_path, "CSV census output path");

    Inputs par_in;
    auto* par = app.add_subcommand("junctions", "print junctions, rotation system and symmetry classes");
    par->alias("parent");
    par_in.attach(par);

    int n = 1, cj = 1, b = 3;
    auto* count = app.add_subcommand("count", "K = b^(J N (N-1) / 2)");
    count->add_option("--n", n, "number of dots")->required();
    count->add_option("--j", cj, "junctions per pair");
    count->add_option("--b", b, "bond kinds");

    std::string edit_doc, edits_file, edit_out;
    bool edit_strict = false;
    auto* edit = app.add_subcommand("edit", "add, remove or move dots of a finished document");
    edit->add_option("--doc", edit_doc, "input document JSON")->required();
    edit->add_option("--edits", edits_file, "JSON array of edits")->required();
    edit->add_option("--out", edit_out, "output document path (stdout by default)");
    edit->add_flag("--strict", edit_strict, "reject edits that leave a dot uncircumscribed");

    int port = 8080;
    std::string host = "127.0.0.1", static_dir;
    auto* serve = app.add_subcommand("serve", "run the HTTP JSON service");
    serve->add_option("--port", port, "TCP port");
    serve->add_option("--host", host, "bind address");
    serve->add_option("--static", static_dir, "directory served at /");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Json request = gen_in.request();
            if (!assignment.empty()) request["assignment"] = assignment;
            if (seed) request["seed"] = *seed;
            const KolamDocument doc = engine::kolam_document(request);
            const std::string text = dump(to_json(doc));
            if (!doc_path.empty()) write_text(doc_path, text);
            if (!svg_path.empty()) write_text(svg_path, emit_svg(doc));
            if (doc_path.empty() && svg_path.empty()) {
                std::cout << text;
            } else {
                const ValidationReport& r = doc.report;
                std::cout << "assignment=" << doc.provenance.assignment << " orbits=" << r.orbit_count
                          << " crossings=" << r.crossing_count << " M1=" << (r.m1_pass ? "pass" : "fail")
                          << " M2=" << (r.m2_pass ? "pass" : "fail") << " M3=" << (r.m3_pass ? "pass" : "fail")
                          << '\n';
            }
        } else if (en->parsed()) {
            const Json request = en_in.request();
            const auto parent = make_parent(dots_from_json(request["dots"]), policy_from_json(request["policy"]));
            EnumerationConstraints constraints;
            const PointGroup group = detect_point_group(parent->dots);
            if (symmetric) constraints.symmetric_under = group;
            const AssignmentSpace space(parent->junctions, constraints, parent->dots.symmetry_tolerance());
            if (!census_path.empty()) {
                std::ostringstream csv;
                write_census_csv(csv, {});
                EnumerationOptions options;
                if (request.contains("style")) options.style = style_from_json(request["style"]);
                options.validation.strict = en_in.strict;
                enumerate_assignments(parent, constraints, [&](const EnumeratedKolam& e) {
                    const CensusRow row = census_row(e);
                    write_census_csv(csv, std::span<const CensusRow>(&row, 1), false);
                    return true;
                }, options);
                write_text(census_path, csv.str());
            }
            if (classify) {
                Json r = request;
                r["classify"] = true;
                r["geometric"] = false;
                r["page_size"] = 1;
                for (const Json& t : engine::enumerate(r)["types"]) {
                    std::cout << t["label"].get<std::string>() << " (" << t["multiplicity"].get<int>() << ") "
                              << t["representative"].get<std::string>() << '\n';
                }
            }
            std::cout << "K=" << space.size();
            if (symmetric) std::cout << ", g=" << space.g();
            std::cout << '\n';
        } else if (par->parsed()) {
            std::cout << dump(engine::junctions(par_in.request()));
        } else if (count->parsed()) {
            std::cout << "K=" << count_kolams(n, cj, b) << '\n';
        } else if (edit->parsed()) {
            Json request = Json::object();
            request["document"] = read_json(edit_doc);
            request["edits"] = read_json(edits_file);
            if (edit_strict) request["strict"] = true;
            const std::string text = dump(engine::edit_dots(request));
            if (edit_out.empty()) std::cout << text;
            else write_text(edit_out, text);
        } else if (serve->parsed()) {
            Service service(static_dir);
            std::cerr << "listening on " << host << ':' << port << '\n';
            if (!service.listen(host, port)) {
                std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
                return 1;
            }
        }
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
        return 2;
    } catch (const KolamError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}
