#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "gcm/cgx.hpp"
#include "gcm/io.hpp"
#include "gcm/mn.hpp"
#include "gcm/model.hpp"
#include "gcm/selfsim.hpp"

using namespace gcm;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kBound = 3 };

struct Common {
    bool json = false;
    int depth = 3;
    int verify = 0;
    unsigned seed = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--json", c.json, "machine-readable output");
    app->add_option("--depth", c.depth, "depth or length bound")->check(CLI::NonNegativeNumber);
    app->add_option("--verify", c.verify, "verification size (0 = off)")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", c.seed, "accepted for interface stability; all searches are exhaustive");
}

// Text lines and a JSON record; one of them is printed at the end.
struct Out {
    std::ostringstream text;
    Json json = Json::object();
    int code = kOk;

    void line(const std::string& s) { text << s << "\n"; }
    void flush(bool as_json) const {
        if (as_json)
            std::cout << dump_json(json);
        else
            std::cout << text.str();
    }
};

void report_lines(Out& out, const Report& r) {
    for (const auto& v : r.violations) out.line("  - " + v);
}

// ---------------------------------------------------------------- validate

void cmd_validate(const std::string& path, const Common& opt, Out& out) {
    Document doc = read_document(path);
    Report r;
    Json extra = Json::object();
    const Json& p = doc.payload;
    if (doc.kind == "category") {
        r = validate_category(category_from_json(p));
    } else if (doc.kind == "groupoid") {
        r = validate_groupoid(groupoid_from_json(p));
    } else if (doc.kind == "correspondence") {
        Correspondence c = correspondence_from_json(p);
        r.merge(validate_groupoid(*c.H), "H: ");
        r.merge(validate_groupoid(*c.G), "G: ");
        if (r.ok()) r = validate_correspondence(c);
        if (r.ok()) {
            Classification k = classify(c);
            extra["proper"] = k.proper;
            extra["regular"] = k.regular;
            extra["tight"] = k.tight;
        }
    } else if (doc.kind == "diagram") {
        r = validate_diagram(diagram_from_json(p));
    } else if (doc.kind == "complex_of_groups") {
        ComplexOfGroups c = cgx_from_json(p);
        r = validate_cgx(c);
        if (r.ok()) extra["bridson_haefliger"] = is_bridson_haefliger(c);
    } else if (doc.kind == "selfsimilar") {
        r = validate_selfsim(selfsim_from_json(p));
    } else if (doc.kind == "mn") {
        MNDocument d = mn_from_json(p);
        r = validate_mn_action(d.action, d.m, d.n);
        Report cond = check_conditions(to_partial_action(d.action, d.m, d.n));
        Diagram emn = make_emn(d.m, d.n);
        bool via_diagram = validate_action(emn, mn_to_faction(emn, d.action)).ok();
        extra["conditions_1_to_5"] = cond.ok();
        extra["diagram_action"] = via_diagram;
        if (cond.ok() != r.ok() || via_diagram != r.ok()) r.add("validators disagree");
    } else if (doc.kind == "action") {
        ActionDocument a = action_from_json(p);
        r = validate_diagram(a.diagram);
        if (r.ok()) r = validate_action(a.diagram, a.action);
    }
    (void)opt;
    out.json = {{"kind", doc.kind}, {"valid", r.ok()}, {"violations", r.violations}};
    for (auto& [k, v] : extra.items()) out.json[k] = v;
    out.line(fmt::format("{}: {}", doc.kind, r.ok() ? "valid" : "INVALID"));
    report_lines(out, r);
    for (auto& [k, v] : extra.items()) out.line(fmt::format("{}: {}", k, v.dump()));
    if (!r.ok()) out.code = kViolation;
}

// ---------------------------------------------------------------- compose

void cmd_compose(const std::string& a, const std::string& b, Out& out) {
    Document da = read_document(a), db = read_document(b);
    if (da.kind != "correspondence" || db.kind != "correspondence")
        throw SchemaError("compose expects two correspondence files");
    Correspondence x = correspondence_from_json(da.payload), y = correspondence_from_json(db.payload);
    Report r;
    r.merge(validate_correspondence(x), "first: ");
    r.merge(validate_correspondence(y), "second: ");
    if (r.ok() && !same_groupoid(*x.G, *y.H)) r.add("right groupoid of the first differs from left groupoid of the second");
    if (!r.ok()) {
        out.json = {{"composable", false}, {"violations", r.violations}};
        out.line("not composable");
        report_lines(out, r);
        out.code = kViolation;
        return;
    }
    Composite xy = compose(x, y);
    Document res{"correspondence", correspondence_to_json(xy.c)};
    out.json = Json::parse(dump_document(res));
    out.text << dump_document(res);
}

// ---------------------------------------------------------------- model

void write_artifact(const std::string& path, const Document& doc) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path);
    f << dump_document(doc);
}

void verify_into(Out& out, const Diagram& d, const GroupoidModel& m, int n) {
    if (n <= 0) return;
    try {
        VerifyStats st = verify_model(d, m, n);
        out.line(fmt::format("verify {}: ok ({} classes, {} hom pairs)", n, st.classes, st.hom_pairs));
        out.json["verify"] = {{"size", n}, {"ok", true}, {"classes", st.classes}, {"hom_pairs", st.hom_pairs}};
    } catch (const Mismatch& e) {
        out.line(fmt::format("verify {}: MISMATCH {} witness={}", n, e.what(), e.witness));
        out.json["verify"] = {{"size", n}, {"ok", false}, {"reason", e.what()}, {"witness", e.witness}};
        out.code = kViolation;
    }
}

void groupoid_summary(Out& out, const FinGroupoid& g) {
    out.line(fmt::format("groupoid: {} objects, {} arrows", g.num_objects(), g.num_arrows()));
    out.line("presentation: " + presentation_str(canonical(presentation_of(g))));
    out.json["groupoid"] = groupoid_to_json(g);
    out.json["presentation"] = presentation_str(canonical(presentation_of(g)));
}

void model_fallback(Out& out, const Diagram& d, const std::string& reason, const std::string& out_path) {
    GermGroupoid q;
    try {
        q = effective_quotient(d);
    } catch (const NotTight& e) {
        throw NotSupported(reason + "; no effective-quotient fallback: " + e.what());
    }
    std::cerr << "warning: " << reason << "; emitting the effective quotient\n";
    out.line("model: effective quotient");
    out.json["model"] = "effective_quotient";
    out.json["warning"] = reason;
    groupoid_summary(out, q.groupoid);
    write_artifact(out_path, {"groupoid", groupoid_to_json(q.groupoid)});
}

void cmd_model_diagram(const Diagram& d, const Common& opt, const std::string& out_path, Out& out) {
    Report r = validate_diagram(d);
    if (!r.ok()) {
        out.line("diagram: INVALID");
        report_lines(out, r);
        out.json = {{"valid", false}, {"violations", r.violations}};
        out.code = kViolation;
        return;
    }
    bool discrete = true;
    for (int g = 0; g < d.num_arrows(); ++g) discrete = discrete && d.is_identity(g);

    if (discrete) {
        FinGroupoid L = model_discrete_shape(d);
        out.line("model: disjoint union");
        out.json["model"] = "disjoint_union";
        groupoid_summary(out, L);
        write_artifact(out_path, {"groupoid", groupoid_to_json(L)});
        verify_into(out, d, discrete_model(d), opt.verify);
        return;
    }
    if (d.shape.kind == ShapeKind::Group) {
        GradedGroupoid g = model_group_shape(d);
        out.line("model: graded groupoid");
        out.json["model"] = "graded";
        groupoid_summary(out, g.L);
        write_artifact(out_path, {"groupoid", groupoid_to_json(g.L)});
        verify_into(out, d, graded_model(d, g), opt.verify);
        return;
    }
    if (d.shape.is_free()) {
        try {
            GroupoidModel m = free_point_model(d);
            out.line("model: free groupoid");
            out.line("presentation: " + presentation_str(m.U));
            out.json["model"] = "free_groupoid";
            out.json["presentation"] = presentation_str(m.U);
            verify_into(out, d, m, opt.verify);
            return;
        } catch (const NotSupported&) {
        }
    }
    OreResult ore = ore_check(d.shape, opt.depth);
    if (ore.status == OreResult::IsOre && d.shape.kind == ShapeKind::FreeMonoid && d.shape.gen_names.size() == 1) {
        OreUniversal o = ore_universal_action(d, opt.depth, 2);
        PairModel pm(o);
        auto arrows = pm.arrows(opt.depth);
        out.line(fmt::format("model: pair groupoid (depth {})", opt.depth));
        out.line(fmt::format("points: {} ({})", o.points.size(), o.exact ? "closed" : "truncated"));
        Json pts = Json::array(), arr = Json::array();
        for (const auto& z : o.points) {
            out.line("  " + point_str(o.s, z));
            pts.push_back(point_str(o.s, z));
        }
        out.line(fmt::format("arrows: {}", arrows.size()));
        for (const auto& a : arrows) {
            out.line("  " + pm.str(a) + (pm.is_unit(a) ? " unit" : ""));
            arr.push_back(pm.str(a));
        }
        out.json["model"] = "pair_groupoid";
        out.json["depth"] = opt.depth;
        out.json["points"] = pts;
        out.json["closed"] = o.exact;
        out.json["arrows"] = arr;
        if (opt.verify > 0) {
            Diagram t = tighten(o);
            Report term = terminality_check(t, tight_universal_action(t), opt.verify);
            out.line(fmt::format("verify {}: tightened universal action {}", opt.verify, term.ok() ? "terminal" : "NOT terminal"));
            report_lines(out, term);
            out.json["verify"] = {{"size", opt.verify}, {"ok", term.ok()}, {"violations", term.violations}};
            if (!term.ok()) out.code = kViolation;
        }
        return;
    }
    std::string reason = ore.status == OreResult::NotOre ? "shape is not Ore: " + ore.describe(d.shape)
                                                         : "no exact model construction for this shape";
    model_fallback(out, d, reason, out_path);
}

void cmd_model(const std::string& path, const Common& opt, const std::string& out_path, Out& out) {
    Document doc = read_document(path);
    if (doc.kind == "diagram") return cmd_model_diagram(diagram_from_json(doc.payload), opt, out_path, out);
    if (doc.kind == "complex_of_groups") {
        ComplexOfGroups c = cgx_from_json(doc.payload);
        Report r = validate_cgx(c);
        if (!r.ok()) {
            out.line("complex of groups: INVALID");
            report_lines(out, r);
            out.json = {{"valid", false}, {"violations", r.violations}};
            out.code = kViolation;
            return;
        }
        std::string u = presentation_str(model_presentation(c)), pi = presentation_str(fundamental_group(c));
        out.line("model: complex of groups");
        out.line("groupoid presentation: " + u);
        out.line("fundamental group: " + pi);
        out.json["model"] = "complex_of_groups";
        out.json["presentation"] = u;
        out.json["fundamental_group"] = pi;
        verify_into(out, cgx_diagram(c), cgx_model(c), opt.verify);
        return;
    }
    throw SchemaError("model expects a diagram or complex_of_groups file");
}

// ---------------------------------------------------------------- selfsim

void cmd_selfsim(const std::string& path, const std::vector<std::string>& args, const Common& opt, Out& out) {
    if (args.empty()) throw CLI::ValidationError("selfsim", "missing operation");
    Document doc = read_document(path);
    if (doc.kind != "selfsimilar") throw SchemaError("selfsim expects a selfsimilar file");
    SelfSimilar s = selfsim_from_json(doc.payload);
    Report r = validate_selfsim(s);
    if (!r.ok()) {
        out.line("selfsimilar: INVALID");
        report_lines(out, r);
        out.json = {{"valid", false}, {"violations", r.violations}};
        out.code = kViolation;
        return;
    }
    const std::string& op = args[0];
    auto need = [&](size_t k) {
        if (args.size() != k + 1) throw CLI::ValidationError(op, fmt::format("expects {} arguments", k));
    };
    auto nf = [&](const std::string& t) {
        NormalForm x = parse_nf(s, t);
        if (!nf_valid(s, x)) throw ParseError("not a normal form: " + t);
        return x;
    };
    out.json["op"] = op;
    if (op == "nf-mul") {
        need(2);
        std::string res = nf_str(s, nf_mul(s, nf(args[1]), nf(args[2])));
        out.line(res);
        out.json["result"] = res;
    } else if (op == "act") {
        need(2);
        NormalForm t = nf(args[1]);
        std::optional<std::string> res;
        if (args[2].find('^') != std::string::npos) {
            RationalPoint z = parse_point(s, args[2]);
            if (auto w = act_on_point(s, t, z)) res = point_str(s, *w);
        } else {
            if (auto w = act_on_path(s, t, parse_path(s, args[2]))) res = path_str(s, *w);
        }
        out.line(res ? *res : "undefined");
        out.json["result"] = res ? Json(*res) : Json(nullptr);
    } else if (op == "germ") {
        need(3);
        RationalPoint z = parse_point(s, args[3]);
        bool eq = germ_equal(s, nf(args[1]), nf(args[2]), z);
        out.line(eq ? "equal" : "different");
        out.json["equal"] = eq;
    } else if (op == "effective") {
        need(0);
        EffectiveResult e = effective_check(s);
        Json kernel = Json::array();
        for (int g : e.kernel) kernel.push_back(s.G->name(g));
        if (e.effective)
            out.line("EFFECTIVE");
        else
            out.line("NOT EFFECTIVE witness=" + s.G->name(e.witness));
        out.line("kernel: " + kernel.dump());
        out.json["effective"] = e.effective;
        out.json["witness"] = e.effective ? Json(nullptr) : Json(s.G->name(e.witness));
        out.json["kernel"] = kernel;
    } else if (op == "slices") {
        need(2);
        auto parts = slice_intersections(s, nf(args[1]), nf(args[2]), opt.depth);
        Json arr = Json::array();
        for (const auto& t : parts) {
            out.line(nf_str(s, t));
            arr.push_back(nf_str(s, t));
        }
        if (parts.empty()) out.line("empty");
        out.json["slices"] = arr;
    } else {
        throw CLI::ValidationError("selfsim", "unknown operation '" + op + "'");
    }
}

// ---------------------------------------------------------------- cgx

void cmd_cgx(const std::string& path, const Common& opt, Out& out) {
    Document doc = read_document(path);
    if (doc.kind != "complex_of_groups") throw SchemaError("cgx expects a complex_of_groups file");
    ComplexOfGroups c = cgx_from_json(doc.payload);
    Report r = validate_cgx(c);
    out.line(fmt::format("complex of groups: {}", r.ok() ? "valid" : "INVALID"));
    report_lines(out, r);
    out.json["valid"] = r.ok();
    out.json["violations"] = r.violations;
    if (!r.ok()) {
        out.code = kViolation;
        return;
    }
    Presentation pi = canonical_renaming(fundamental_group(c)), iso = canonical_renaming(isotropy_at_infinity(c));
    bool same = same_presentation(pi, iso);
    out.line(fmt::format("bridson-haefliger: {}", is_bridson_haefliger(c) ? "yes" : "no"));
    out.line("fundamental group: " + presentation_str(pi));
    out.line("isotropy at infinity: " + presentation_str(iso));
    out.line(fmt::format("presentations agree: {}", same ? "yes" : "no"));
    out.json["bridson_haefliger"] = is_bridson_haefliger(c);
    out.json["fundamental_group"] = presentation_str(pi);
    out.json["isotropy_at_infinity"] = presentation_str(iso);
    out.json["agree"] = same;
    if (!same) out.code = kViolation;
    if (opt.verify > 0) {
        Json counts = Json::array();
        for (int k = 1; k <= opt.verify; ++k) {
            long long a = count_homs(pi, k), b = count_homs(iso, k);
            out.line(fmt::format("homs into S{}: {} / {}", k, a, b));
            counts.push_back({k, a, b});
            if (a != b) out.code = kViolation;
        }
        out.json["hom_counts"] = counts;
    }
}

// ---------------------------------------------------------------- mn

void cmd_mn(const std::string& path, int m, int n, const Common& opt, Out& out) {
    if (!path.empty()) {
        Document doc = read_document(path);
        if (doc.kind != "mn") throw SchemaError("mn expects an mn file");
        MNDocument d = mn_from_json(doc.payload);
        Report r = validate_mn_action(d.action, d.m, d.n);
        PartialFreeAction p = to_partial_action(d.action, d.m, d.n);
        Report cond = check_conditions(p);
        out.line(fmt::format("({},{}) action: {}", d.m, d.n, r.ok() ? "valid" : "INVALID"));
        report_lines(out, r);
        out.line(fmt::format("conditions (1)-(5): {}", cond.ok() ? "hold" : "fail"));
        report_lines(out, cond);
        out.json = {{"m", d.m}, {"n", d.n}, {"valid", r.ok()}, {"violations", r.violations},
                    {"conditions", cond.ok()}, {"condition_violations", cond.violations}};
        if (!r.ok()) out.code = kViolation;
        if (r.ok()) {
            Json cfg = Json::object();
            for (int y = 0; y < d.action.size; ++y) {
                MNConfiguration c = config_of_point(p, y, opt.depth);
                std::vector<std::string> ws;
                for (const auto& w : c.words) ws.push_back(free_word_str(w, d.m, d.n));
                out.line(fmt::format("{}: {}", d.names[y], join(ws, " ")));
                cfg[d.names[y]] = ws;
            }
            out.json["configurations"] = cfg;
        }
        return;
    }
    if (m < 1 || n < 1) throw CLI::ValidationError("mn", "give a file or --m and --n");
    Json levels = Json::array();
    for (int d = 0; d <= opt.depth; ++d) {
        auto om = omega_depth(m, n, d);
        bool surj = d < opt.depth ? restriction_surjective(m, n, d) : true;
        MNGroupoid G(m, n, d);
        int arrows = (int)G.arrows().size(), undetermined = 0;
        for (const auto& a : G.arrows()) {
            try {
                G.range(a);
            } catch (const DepthInsufficient&) {
                ++undetermined;
            }
        }
        out.line(fmt::format("depth {}: {} configurations, {} arrows, {} ranges undetermined{}", d, om.size(), arrows,
                             undetermined, d < opt.depth ? fmt::format(", restriction from {} {}", d + 1, surj ? "onto" : "NOT onto") : ""));
        levels.push_back({{"depth", d}, {"configurations", om.size()}, {"arrows", arrows}, {"undetermined", undetermined},
                          {"surjective_from_next", surj}});
        if (!surj) out.code = kViolation;
    }
    out.json = {{"m", m}, {"n", n}, {"levels", levels}};
    if (opt.verify > 0) {
        Diagram emn = make_emn(m, n);
        auto acts = enumerate_actions(emn, opt.verify);
        out.line(fmt::format("actions on at most {} points: {}", opt.verify, acts.size()));
        out.json["actions"] = acts.size();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite groupoid correspondences and their models"};
    app.require_subcommand(1);

    Common opt;
    std::string file, file2, out_path;
    std::vector<std::string> args;
    int m = 0, n = 0;

    auto* validate = app.add_subcommand("validate", "validate a document");
    validate->add_option("file", file)->required();
    add_common(validate, opt);

    auto* comp = app.add_subcommand("compose", "compose two correspondences");
    comp->add_option("first", file)->required();
    comp->add_option("second", file2)->required();
    add_common(comp, opt);

    auto* model = app.add_subcommand("model", "construct a groupoid model");
    model->add_option("file", file)->required();
    model->add_option("--out", out_path, "write the model groupoid document here");
    add_common(model, opt);

    auto* ss = app.add_subcommand("selfsim", "self-similar calculus: nf-mul, act, germ, effective, slices");
    ss->add_option("file", file)->required();
    ss->add_option("args", args, "operation and its arguments")->required();
    add_common(ss, opt);

    auto* cgx = app.add_subcommand("cgx", "complexes of groups");
    cgx->add_option("file", file)->required();
    add_common(cgx, opt);

    auto* mn = app.add_subcommand("mn", "(m,n)-systems");
    mn->add_option("file", file);
    mn->add_option("--m", m);
    mn->add_option("--n", n);
    add_common(mn, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    Out out;
    try {
        if (*validate) cmd_validate(file, opt, out);
        if (*comp) cmd_compose(file, file2, out);
        if (*model) cmd_model(file, opt, out_path, out);
        if (*ss) cmd_selfsim(file, args, opt, out);
        if (*cgx) cmd_cgx(file, opt, out);
        if (*mn) cmd_mn(file, m, n, opt, out);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kUsage;
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return kBound;
    } catch (const DepthInsufficient& e) {
        std::cerr << "depth insufficient: " << e.what() << "\n";
        return kBound;
    } catch (const OracleIncomplete& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return kBound;
    } catch (const Mismatch& e) {
        std::cerr << "mismatch: " << e.what() << " witness=" << e.witness << "\n";
        return kViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    }
    out.flush(opt.json);
    return out.code;
}
