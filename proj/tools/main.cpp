#include <iostream>

#include <CLI11.hpp>

#include "pretop/commands.hpp"

using namespace pretop;
using namespace pretop::cli;

namespace {

int emit(const Report& r, const std::string& format, bool strict) {
    if (format == "machine")
        std::cout << r.to_json().dump(2) << "\n";
    else
        std::cout << r.to_text();
    return r.exit_code(strict);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite checker for predicative-topos structure"};
    app.require_subcommand(1);
    app.fallthrough();

    std::vector<std::string> files;
    std::string format = "text";
    CmdOptions opt;
    app.add_option("-f,--file", files, "description files")->required(false);
    app.add_option("--format", format, "text|machine")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--bound", opt.bound, "object-size bound for sweeps");
    app.add_option("--depth", opt.depth, "generation depth");
    app.add_option("--cap", opt.cap, "chain cap");
    app.add_flag("--strict", opt.strict, "treat bounded verdicts as failures");

    std::string name, extra, stage;

    auto* c_cat = app.add_subcommand("check-category", "validate a category");
    c_cat->add_option("name", name)->required();
    auto* c_site = app.add_subcommand("check-site", "axioms (C), (M), (L) and collection");
    c_site->add_option("name", name)->required();
    auto* c_sat = app.add_subcommand("saturate", "generate the sieve topology");
    c_sat->add_option("site", name)->required();
    auto* c_shf = app.add_subcommand("sheafify", "double plus construction");
    c_shf->add_option("site", name)->required();
    c_shf->add_option("presheaf", extra)->required();
    auto* c_wt = app.add_subcommand("wtype", "chain of a polynomial signature");
    c_wt->add_option("sig", name)->required();
    auto* c_amc = app.add_subcommand("amc-square", "covering strong-collection square on a map");
    c_amc->add_option("map", name)->required();
    auto* c_rp = app.add_subcommand("rp-roundtrip", "representation square and its class");
    c_rp->add_option("map", name)->required();
    c_rp->add_option("rep", extra)->required();
    std::string carrier, relation;
    auto* c_cmp = app.add_subcommand("complete", "completion recognition checks");
    c_cmp->add_option("which", name)->required();
    c_cmp->add_option("--carrier", carrier, "named set for a user instance");
    c_cmp->add_option("--relation", relation, "named relation for a user instance");
    auto* c_ev = app.add_subcommand("eval", "evaluate a formula in a structure");
    c_ev->add_option("formula", name)->required();
    c_ev->add_option("structure", extra)->required();
    c_ev->add_option("--stage", stage, "forcing stage (presheaf structures)");

    CLI11_PARSE(app, argc, argv);

    try {
        Workspace ws = parse_workspace(files);
        Report r;
        if (c_cat->parsed()) r = cmd_check_category(ws, name);
        if (c_site->parsed()) r = cmd_check_site(ws, name, opt);
        if (c_sat->parsed()) r = cmd_saturate(ws, name, opt);
        if (c_shf->parsed()) r = cmd_sheafify(ws, name, extra, opt);
        if (c_wt->parsed()) r = cmd_wtype(ws, name, opt);
        if (c_amc->parsed()) r = cmd_amc_square(ws, name, opt);
        if (c_rp->parsed()) r = cmd_rp_roundtrip(ws, name, extra, opt);
        if (c_cmp->parsed()) r = cmd_complete(ws, name, opt, carrier, relation);
        if (c_ev->parsed()) r = cmd_eval(ws, name, extra, stage, opt);
        return emit(r, format, opt.strict);
    } catch (const Error& e) {
        Report r;
        r.command = "error";
        r.verdict = "input-error";
        r.witnesses.push_back(e.what());
        emit(r, format, opt.strict);
        return 3;
    }
}
