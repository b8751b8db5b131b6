#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gsig/checks.hpp"
#include "gsig/class_number.hpp"
#include "gsig/signature.hpp"

using namespace gsig;

namespace {

int order_cap() {
    if (const char* env = std::getenv("GSIG_CAP_ORDER")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) return static_cast<int>(cap);
    }
    return kDefaultOrderCap;
}

// either a single element (label or id) generating a cyclic subgroup, or a
// comma-separated id list generating a subgroup
Subgroup parse_subgroup(const FiniteGroup& g, const std::string& text) {
    if (text.find(',') == std::string::npos) return cyclic_subgroup(g, g.element_by_name(text));
    std::vector<int> gens;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw spec_error("empty id in subgroup list");
        gens.push_back(g.element_by_name(tok.substr(b, e - b + 1)));
    }
    return generated_subgroup(g, gens);
}

ThetaContext context_for(const GroupPtr& g, const std::string& variant,
                         const std::string& table_file) {
    RelationSpec v = parse_variant(variant);
    if (table_file.empty()) return make_theta_context(g, v);
    std::ifstream in(table_file);
    if (!in) throw spec_error("cannot open table file '" + table_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return make_theta_context(g, v, char_table_from_json(g, buf.str()));
}

nlohmann::ordered_json coset_json(const ThetaContext& ctx, const std::vector<Int>& img) {
    nlohmann::ordered_json j;
    auto coset = nlohmann::json::array();
    for (const Int& x : img) coset.push_back(x.get_str());
    j["coset"] = coset;
    auto coords = nlohmann::json::array();
    for (const Int& c : quotient_coordinates(ctx.a_group, img)) coords.push_back(c.get_str());
    j["a_coordinates"] = coords;
    auto factors = nlohmann::json::array();
    for (const Int& f : ctx.a_group.group.factors) factors.push_back(f.get_str());
    j["a_factors"] = factors;
    return j;
}

std::string join_ints(const std::vector<Int>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string join_labels(const FiniteGroup& g, const std::vector<int>& ids) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < ids.size(); ++i) os << (i ? ", " : "") << g.labels[ids[i]];
    os << "]";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with singular orbit data of finite group actions on surfaces"};
    app.require_subcommand(1);

    std::string group_spec, data_text, variant = "e", format = "text", table_file, target;

    auto* bg = app.add_subcommand("bg", "structure of the group of singular orbit data");
    bg->add_option("group", group_spec)->required();
    bg->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* gr = app.add_subcommand("group", "build a group and export its table");
    gr->add_option("group", group_spec)->required();
    gr->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* th = app.add_subcommand("theta", "signature image of a datum");
    th->add_option("group", group_spec)->required();
    th->add_option("data", data_text)->required();
    th->add_option("--variant", variant);
    th->add_option("--table", table_file);
    th->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* ix = app.add_subcommand("index", "signature report for a group");
    ix->add_option("group", group_spec)->required();
    ix->add_option("--variant", variant);
    ix->add_option("--table", table_file);
    ix->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string report_kind;
    long report_p = 0;
    auto* rp = app.add_subcommand("report", "prime-order and p x p reports");
    rp->add_option("kind", report_kind)->required()->check(CLI::IsMember({"cp", "cpcp"}));
    rp->add_option("p", report_p)->required();
    rp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* rs = app.add_subcommand("restrict", "restrict a datum to a subgroup");
    rs->add_option("group", group_spec)->required();
    rs->add_option("data", data_text)->required();
    rs->add_option("--to", target, "generator label/id or comma-separated id list")->required();
    rs->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string into_spec;
    auto* in = app.add_subcommand("induce", "push a datum forward along an embedding");
    in->add_option("group", group_spec)->required();
    in->add_option("data", data_text)->required();
    in->add_option("--into", into_spec)->required();
    in->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* re = app.add_subcommand("realize", "surface-kernel witness for a datum");
    re->add_option("group", group_spec)->required();
    re->add_option("data", data_text)->required();
    re->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    long cn_p = 0;
    auto* cn = app.add_subcommand("class-number", "relative class number of the p-th cyclotomic field");
    cn->add_option("p", cn_p)->required();
    cn->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string level = "quick";
    auto* vf = app.add_subcommand("verify", "run the verification suite");
    vf->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bg->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            BGStructure st = bg_structure(g);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["group"] = g->spec;
                j["free_rank"] = st.free_rank;
                j["two_torsion"] = st.two_torsion;
                auto basis = nlohmann::json::array();
                for (const OrbitData& b : st.basis) basis.push_back(data_to_text(b));
                j["basis"] = basis;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "group: " << g->spec << "\n";
                std::cout << "structure: Z^" << st.free_rank << " x (Z/2)^" << st.two_torsion
                          << "\n";
                for (int i = 0; i < st.free_rank; ++i)
                    std::cout << "free generator:    " << data_to_text(st.basis[i]) << "\n";
                for (int i = 0; i < st.two_torsion; ++i)
                    std::cout << "order-2 generator: " << data_to_text(st.basis[st.free_rank + i])
                              << "\n";
            }
        } else if (gr->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            if (format == "json") {
                std::cout << group_to_json(*g) << "\n";
            } else {
                std::cout << "group: " << g->spec << "\n";
                std::cout << "order: " << g->order << "\n";
                std::cout << "classes:";
                for (int c = 0; c < g->classes.count(); ++c)
                    std::cout << " " << g->labels[g->classes.reps[c]] << "(" << g->classes.sizes[c]
                              << ")";
                std::cout << "\nexponent: " << g->exponent << "\n";
            }
        } else if (th->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            ThetaContext ctx = context_for(g, variant, table_file);
            OrbitData d = parse_data(g, data_text);
            std::vector<Int> img = theta(ctx, d);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["group"] = g->spec;
                j["variant"] = variant_name(ctx.variant);
                j["data"] = data_to_text(d);
                j.update(coset_json(ctx, img));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "coset representative: " << join_ints(img) << "\n";
                std::cout << "a-coordinates:        "
                          << join_ints(quotient_coordinates(ctx.a_group, img)) << "  in "
                          << ctx.a_group.group.to_string() << "\n";
            }
        } else if (ix->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            SignatureReport rep = index_report(context_for(g, variant, table_file));
            std::cout << (format == "json" ? report_to_json(rep) : report_to_text(rep)) << "\n";
        } else if (rp->parsed()) {
            SignatureReport rep = report_kind == "cp" ? cp_report(report_p) : cpcp_report(report_p);
            std::cout << (format == "json" ? report_to_json(rep) : report_to_text(rep)) << "\n";
        } else if (rs->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            OrbitData d = parse_data(g, data_text);
            SubgroupContext sub = materialize(g, parse_subgroup(*g, target));
            OrbitData r = restrict_data(d, sub);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["group"] = g->spec;
                j["data"] = data_to_text(d);
                j["subgroup"] = sub.to_parent;
                j["restricted"] = data_to_text(r);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "subgroup members: " << join_labels(*g, sub.to_parent) << "\n";
                std::cout << "restricted datum: " << data_to_text(r) << "\n";
            }
        } else if (in->parsed()) {
            GroupPtr h = build_group(group_spec, order_cap());
            GroupPtr g = build_group(into_spec, order_cap());
            OrbitData d = parse_data(h, data_text);
            auto mono = find_monomorphism(h, g);
            if (!mono) throw data_error("no embedding of the source group into the target");
            OrbitData out = pushforward(*mono, d);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["source"] = h->spec;
                j["target"] = g->spec;
                auto imgs = nlohmann::json::array();
                for (int gen : h->generators) imgs.push_back(g->labels[mono->apply(gen)]);
                j["generator_images"] = imgs;
                j["induced"] = data_to_text(out);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "embedding: ";
                for (size_t i = 0; i < h->generators.size(); ++i)
                    std::cout << (i ? ", " : "") << h->labels[h->generators[i]] << " -> "
                              << g->labels[mono->apply(h->generators[i])];
                std::cout << "\ninduced datum: " << data_to_text(out) << "\n";
            }
        } else if (re->parsed()) {
            GroupPtr g = build_group(group_spec, order_cap());
            OrbitData d = parse_data(g, data_text);
            RealizationWitness w = realize(d);
            if (!verify_witness(d, w)) throw std::logic_error("witness failed verification");
            if (format == "json") {
                nlohmann::ordered_json j;
                j["group"] = g->spec;
                j["data"] = data_to_text(d);
                j["h"] = w.h;
                j["genus"] = genus(d, w.h);
                j["a_images"] = w.a_images;
                j["b_images"] = w.b_images;
                j["xi_images"] = w.xi_images;
                j["verified"] = true;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "quotient genus h: " << w.h << "\n";
                std::cout << "surface genus g:  " << genus(d, w.h) << "\n";
                std::cout << "a images:  " << join_labels(*g, w.a_images) << "\n";
                std::cout << "b images:  " << join_labels(*g, w.b_images) << "\n";
                std::cout << "xi images: " << join_labels(*g, w.xi_images) << "\n";
                std::cout << "verified:  true\n";
            }
        } else if (cn->parsed()) {
            ClassNumberResult r = h_minus(cn_p);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["p"] = r.p;
                j["h_minus"] = r.h_minus.get_str();
                j["methods"] = r.methods;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "p:       " << r.p << "\n";
                std::cout << "h_minus: " << r.h_minus.get_str() << "\n";
                std::cout << "methods: maillet, bernoulli (agree)\n";
            }
        } else if (vf->parsed()) {
            bool ok = true;
            for (const CriterionResult& cr : run_verification(level == "full")) {
                for (const CheckResult& c : cr.checks) {
                    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
                    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
                    std::cout << "\n";
                }
                std::cout << (cr.pass ? "PASS" : "FAIL") << "  == " << cr.name << " ==\n";
                ok &= cr.pass;
            }
            std::cout << (ok ? "all checks passed" : "there were failures") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const spec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const table_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
