#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bfk/burnside.hpp"
#include "bfk/genetics.hpp"
#include "bfk/io.hpp"
#include "bfk/rational.hpp"
#include "bfk/scenarios.hpp"
#include "bfk/units.hpp"

using namespace bfk;

namespace {

// exit codes
constexpr int kPass = 0, kFail = 1, kUsage = 2, kCap = 3;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

GroupPtr group_arg(const std::string& name) { return build_group(name, product_cap()); }

int group_list(int p, int max_order, bool json) {
    Json out = Json::array();
    for (const auto& name : catalog_names(p, max_order)) {
        auto g = group_arg(name);
        if (json)
            out.push_back(group_to_json(g));
        else
            std::cout << name << "\t" << g->order() << "\n";
    }
    if (json)
        std::cout << out.dump(2) << "\n";
    return kPass;
}

int group_info(const std::string& name, bool json) {
    auto g = group_arg(name);
    const auto& classes = g->subgroup_classes();
    const Rank1Type t = classify_rank1(*g);
    Json j = group_to_json(g);
    j["exponent"] = g->exponent();
    j["center_order"] = g->center().size();
    j["subgroup_classes"] = classes.size();
    j["normal_subgroups"] = g->normal_subgroups().size();
    j["rank1_type"] = to_string(t);
    if (json) {
        std::cout << j.dump(2) << "\n";
        return kPass;
    }
    std::cout << g->name() << ": order " << g->order() << ", prime " << g->prime() << ", exponent " << g->exponent()
              << ", |Z| = " << g->center().size() << "\n"
              << classes.size() << " subgroup classes, " << g->normal_subgroups().size() << " normal subgroups"
              << ", normal p-rank one type: " << to_string(t) << "\n";
    return kPass;
}

int basis_genetic(const std::string& name, bool json) {
    auto g = group_arg(name);
    const GeneticBasis b = genetic_basis(g);
    Json rows = Json::array();
    for (const auto& e : b.entries) {
        Json r = {{"class", e.class_index},
                  {"order", e.local.q.size()},
                  {"normalizer_order", e.local.normalizer.size()},
                  {"quotient_type", to_string(e.local.quotient_type)}};
        if (!json)
            std::cout << "class " << e.class_index << "\t|Q| = " << e.local.q.size()
                      << "\t|N(Q)| = " << e.local.normalizer.size() << "\t" << to_string(e.local.quotient_type)
                      << "\n";
        rows.push_back(r);
    }
    if (json)
        std::cout << Json{{"group", g->name()}, {"d", b.d}, {"entries", rows}}.dump(2) << "\n";
    else
        std::cout << b.entries.size() << " genetic subgroups, d = " << b.d << "\n";
    return kPass;
}

int burnside_marks(const std::string& name, bool json) {
    auto g = group_arg(name);
    const Matrix& m = marks_matrix(g);
    if (json) {
        std::cout << Json{{"group", g->name()}, {"marks", matrix_to_json(m)}}.dump() << "\n";
        return kPass;
    }
    for (const auto& row : m.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            std::cout << (c ? "\t" : "") << row[c];
        std::cout << "\n";
    }
    return kPass;
}

int biset_compose(const std::string& f, const std::string& g, const std::string& method) {
    const Morphism v = morphism_from_json(read_json_file(f));
    const Morphism u = morphism_from_json(read_json_file(g));
    if (!(v.source() == u.target()))
        throw std::invalid_argument("source of " + f + " (" + v.source()->name() + ") differs from target of " + g +
                                    " (" + u.target()->name() + ")");
    if (method == "both") {
        const Morphism a = compose_orbit(v, u), b = compose_mackey(v, u);
        const bool same = a == b;
        std::cout << Json{{"agree", same}, {"result", morphism_to_json(b)}}.dump(2) << "\n";
        return same ? kPass : kFail;
    }
    const Morphism w = method == "orbit" ? compose_orbit(v, u) : compose_mackey(v, u);
    std::cout << morphism_to_json(w).dump(2) << "\n";
    return kPass;
}

int rational_kmod(const std::string& name, bool json) {
    auto g = group_arg(name);
    const KModDelta k = k_mod_delta(g);
    const int d = genetic_basis(g).d;
    if (json)
        std::cout << Json{{"group", g->name()}, {"invariants", invariants_to_json(k.invariants)}, {"d", d},
                          {"images_span", k.images_span}}
                         .dump(2)
                  << "\n";
    else
        std::cout << g->name() << ": K/B_delta = " << to_string(k.invariants) << ", d = " << d << "\n";
    return kPass;
}

int rational_check(const std::string& functor, const std::string& name, bool json) {
    auto f = make_functor(functor);
    auto g = group_arg(name);
    const RationalityReport r = rationality_check(*f, g);
    if (json)
        std::cout << Json{{"functor", f->label()},        {"group", g->name()},
                          {"rational", r.rational},       {"basis_size", r.basis_size},
                          {"kernel", invariants_to_json(r.kernel)}, {"cokernel", invariants_to_json(r.cokernel)}}
                         .dump(2)
                  << "\n";
    else
        std::cout << f->label() << " at " << g->name() << ": " << (r.rational ? "rational" : "not rational")
                  << " (kernel " << to_string(r.kernel) << ", cokernel " << to_string(r.cokernel) << ")\n";
    return r.rational ? kPass : kFail;
}

int units_cmd(int max_order, bool json) {
    auto s = find_scenario("units-report");
    ScenarioParams prm;
    prm.p = 2;
    prm.max_order = max_order;
    const ScenarioResult r = run_scenario(*s, prm);
    if (json)
        std::cout << r.details.dump(2) << "\n";
    else
        for (const auto& line : r.lines)
            std::cout << line << "\n";
    return r.passed ? kPass : kFail;
}

int verify(const std::string& id, const ScenarioParams& prm, bool json) {
    const Scenario* s = find_scenario(id);
    if (!s) {
        std::cerr << "unknown scenario '" << id << "'; known:";
        for (const auto& sc : scenarios())
            std::cerr << " " << sc.id;
        std::cerr << "\n";
        return kUsage;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioResult r = run_scenario(*s, prm);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (json) {
        Json j = report_json(*s, prm, r);
        j["seconds"] = secs;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << s->id << ": " << s->statement << "\n";
        for (const auto& line : r.lines)
            std::cout << line << "\n";
        std::cout << (r.passed ? "PASS" : "FAIL") << " (" << secs << " s)\n";
    }
    return r.passed ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double Burnside algebra and rational biset functors of p-groups"};
    app.require_subcommand(1);
    bool json = false;
    std::size_t cap = 0;
    app.add_option("--product-cap", cap, "largest order allowed for internal products");

    auto* group = app.add_subcommand("group", "catalog groups");
    group->require_subcommand(1);
    int list_p = 2, list_max = 32;
    auto* glist = group->add_subcommand("list", "list catalog groups");
    glist->add_option("-p,--prime", list_p)->check(CLI::PositiveNumber);
    glist->add_option("--max-order", list_max);
    glist->add_flag("--json", json);
    std::string gname;
    auto* ginfo = group->add_subcommand("info", "basic invariants of a group");
    ginfo->add_option("group", gname)->required();
    ginfo->add_flag("--json", json);

    auto* basis = app.add_subcommand("basis", "bases");
    basis->require_subcommand(1);
    auto* bgen = basis->add_subcommand("genetic", "a genetic basis");
    bgen->add_option("group", gname)->required();
    bgen->add_flag("--json", json);

    auto* burn = app.add_subcommand("burnside", "Burnside ring");
    burn->require_subcommand(1);
    auto* marks = burn->add_subcommand("marks", "table of marks");
    marks->add_option("group", gname)->required();
    marks->add_flag("--json", json);

    auto* biset = app.add_subcommand("biset", "biset morphisms");
    biset->require_subcommand(1);
    std::string f1, f2, method = "mackey";
    auto* comp = biset->add_subcommand("compose", "compose f o g from JSON files");
    comp->add_option("f", f1)->required();
    comp->add_option("g", f2)->required();
    comp->add_option("--method", method)->check(CLI::IsMember({"orbit", "mackey", "both"}));

    auto* rat = app.add_subcommand("rational", "rational functors");
    rat->require_subcommand(1);
    auto* kmod = rat->add_subcommand("kmod", "invariants of K/B_delta");
    kmod->add_option("group", gname)->required();
    kmod->add_flag("--json", json);
    std::string functor;
    auto* rcheck = rat->add_subcommand("check", "rationality of a functor at a group");
    rcheck->add_option("--functor", functor, "B, K, RQ, BmodBdelta, shift:H or shift:H:inner")->required();
    rcheck->add_option("--group", gname)->required();
    rcheck->add_flag("--json", json);

    auto* un = app.add_subcommand("units", "Burnside unit groups");
    un->require_subcommand(1);
    int units_max = 16;
    auto* urep = un->add_subcommand("report", "units and candidate exponential images");
    urep->add_option("--max-order", units_max);
    urep->add_flag("--json", json);

    std::string scenario;
    ScenarioParams prm;
    auto* ver = app.add_subcommand("verify", "run a named scenario");
    ver->add_option("scenario", scenario)->required();
    ver->add_option("-p,--prime", prm.p);
    ver->add_option("--max-order", prm.max_order);
    ver->add_option("--seed", prm.seed);
    ver->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    if (cap != 0)
        set_product_cap(cap);

    try {
        if (*glist)
            return group_list(list_p, list_max, json);
        if (*ginfo)
            return group_info(gname, json);
        if (*bgen)
            return basis_genetic(gname, json);
        if (*marks)
            return burnside_marks(gname, json);
        if (*comp)
            return biset_compose(f1, f2, method);
        if (*kmod)
            return rational_kmod(gname, json);
        if (*rcheck)
            return rational_check(functor, gname, json);
        if (*urep)
            return units_cmd(units_max, json);
        if (*ver)
            return verify(scenario, prm, json);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const UnitsError& e) {
        std::cerr << e.what() << "\n";
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
