// Acceptance driver: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "corpus.hpp"
#include "gcm/cgx.hpp"
#include "gcm/mn.hpp"
#include "gcm/model.hpp"

using namespace gcm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail.clear();
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

bool same_as_composite(const Correspondence& a, const Correspondence& b, const std::vector<int>& f) {
    return check_isomorphism(a, b, f).ok();
}

// ---------------------------------------------------------------- 1

Outcome correspondence_algebra() {
    Outcome out;
    auto corpus = corpus::correspondences();
    int composites = 0, triples = 0, pairs = 0;
    for (const auto& [name, X] : corpus) {
        if (X.n > 16) out.fail(name + " exceeds 16 elements");
        if (!validate_correspondence(X).ok()) out.fail(name + " invalid");
        Composite xg = compose(X, identity_correspondence(X.G));
        if (!same_as_composite(xg.c, X, right_unitor(X, xg))) out.fail(name + ": right unitor");
        Composite hx = compose(identity_correspondence(X.H), X);
        if (!same_as_composite(hx.c, X, left_unitor(X, hx))) out.fail(name + ": left unitor");

        const FinGroupoid& G = *X.G;
        const FinGroupoid& H = *X.H;
        OrbitSpace orb = right_orbits(X);
        for (int a = 0; a < X.n; ++a)
            for (int b = 0; b < X.n; ++b) {
                if (orb.proj[a] != orb.proj[b]) continue;
                ++pairs;
                int g = inner_product(X, a, b);
                if (G.dst(g) != X.s[a] || G.src(g) != X.s[b] || X.right(a, g) != b) out.fail(name + ": clause 1");
                if (a == b && g != G.unit(X.s[a])) out.fail(name + ": clause 2");
                if (inner_product(X, b, a) != G.inv[g]) out.fail(name + ": clause 3");
                for (int h = 0; h < H.num_arrows(); ++h) {
                    if (H.src(h) != X.r[a]) continue;
                    for (int g1 = 0; g1 < G.num_arrows(); ++g1) {
                        if (G.dst(g1) != X.s[a]) continue;
                        for (int g2 = 0; g2 < G.num_arrows(); ++g2) {
                            if (G.dst(g2) != X.s[b]) continue;
                            int lhs = inner_product(X, X.right(X.left(h, a), g1), X.right(X.left(h, b), g2));
                            int rhs = G.mul(G.mul(G.inv[g1], g), g2);
                            if (lhs != rhs) out.fail(name + ": clause 4");
                        }
                    }
                }
            }
    }
    for (const auto& [nx, X] : corpus)
        for (const auto& [ny, Y] : corpus) {
            if (X.G != Y.H) continue;
            Composite xy = compose(X, Y);
            ++composites;
            if (!validate_correspondence(xy.c).ok()) out.fail(nx + "∘" + ny + " invalid");
            Classification cx = classify(X), cy = classify(Y), cxy = classify(xy.c);
            if (cx.tight && cy.tight && !cxy.tight) out.fail(nx + "∘" + ny + " not tight");
            for (const auto& [nz, Z] : corpus) {
                if (Y.G != Z.H) continue;
                Composite xy_z = compose(xy.c, Z);
                Composite yz = compose(Y, Z);
                Composite x_yz = compose(X, yz.c);
                ++triples;
                if (!same_as_composite(xy_z.c, x_yz.c, associator(xy_z, xy, x_yz, yz)))
                    out.fail("associator " + nx + "," + ny + "," + nz);
            }
        }
    if (out.pass)
        out.detail = fmt::format("{} correspondences, {} composites, {} triples, {} inner products", corpus.size(),
                                 composites, triples, pairs);
    return out;
}

// ---------------------------------------------------------------- 2

// one-generator free monoid over two points with X_t the identity correspondence
Diagram two_point_loop() {
    auto V = corpus::space({"p", "q"});
    return corpus::n_shape(V, identity_correspondence(V), 1);
}

FAction first_action_of_size(const Diagram& d, int size) {
    for (const auto& a : enumerate_actions(d, size))
        if (a.n == size) return a;
    throw Error("no action of the requested size");
}

int tripped(const Diagram& d, const std::vector<int>& piece, const std::vector<int>& anchor, const Theta& th) {
    try {
        action_from_theta(d, piece, anchor, th);
    } catch (const ConditionFailed& e) {
        return e.which;
    }
    return 0;
}

Outcome theta_round_trip() {
    Outcome out;
    struct Case {
        std::string name;
        Diagram d;
        int size;
    };
    std::vector<Case> cases = {{"n_point", corpus::n_point(3), 6},
                               {"discrete", corpus::discrete_z2_z3(), 6},
                               {"group_z2", corpus::group_z2(), 6},
                               {"map", corpus::map_diagram(), 6},
                               {"arrow2", corpus::arrow_diagram(2), 6},
                               {"two_point_loop", two_point_loop(), 6},
                               {"e2", corpus::e2_diagram(2), 6}};
    int total = 0;
    for (const auto& c : cases) {
        for (const auto& a : enumerate_actions(c.d, c.size)) {
            ++total;
            if (!validate_action(c.d, a).ok()) out.fail(c.name + ": enumerated action invalid");
            try {
                if (action_from_theta(c.d, a.piece, a.anchor, theta_from_action(c.d, a)) != a)
                    out.fail(c.name + ": round trip differs");
            } catch (const ConditionFailed& e) {
                out.fail(c.name + ": " + e.what());
            }
        }
    }

    std::vector<int> hit;
    {
        Diagram d = corpus::n_point(2);
        FAction a = first_action_of_size(d, 2);
        Theta th = theta_from_action(d, a);
        int t = d.find(d.shape.generator(0));
        int tt = d.compose(t, t);
        // ϑ_t must be the swap for the injection to matter
        for (const auto& b : enumerate_actions(d, 2))
            if (b.n == 2 && theta_from_action(d, b)[t][0].map != std::vector<int>{0, 1}) th = theta_from_action(d, b), a = b;
        th[tt][0] = th[t][0];
        hit.push_back(tripped(d, a.piece, a.anchor, th));
    }
    {
        Diagram d = corpus::arrow_diagram(2);
        FAction a = first_action_of_size(d, 3);
        Theta th = theta_from_action(d, a);
        int g = -1;
        for (int i = 0; i < d.num_arrows(); ++i)
            if (!d.is_identity(i)) g = i;
        th[g][1] = th[g][0];
        hit.push_back(tripped(d, a.piece, a.anchor, th));
    }
    {
        Diagram d = corpus::arrow_diagram(1);
        // Y_x = {0, 1} over x, Y_y = {2}; only 0 is hit
        int x = d.shape.cat.find_object("x"), y = d.shape.cat.find_object("y");
        std::vector<int> piece = {x, x, y}, anchor = {0, 0, 0};
        Theta th(d.num_arrows());
        for (int g = 0; g < d.num_arrows(); ++g) {
            th[g].assign(d.corr[g].n, PartialBijection::empty(3));
            if (d.is_identity(g))
                for (int y2 = 0; y2 < 3; ++y2)
                    if (piece[y2] == d.src(g)) th[g][0].map[y2] = y2;
        }
        for (int g = 0; g < d.num_arrows(); ++g)
            if (!d.is_identity(g)) th[g][0].map[2] = 0;
        hit.push_back(tripped(d, piece, anchor, th));
    }
    {
        Diagram d = two_point_loop();
        FAction a;
        for (const auto& b : enumerate_actions(d, 2))
            if (b.n == 2 && b.anchor[0] != b.anchor[1]) a = b;
        Theta th = theta_from_action(d, a);
        std::vector<int> anchor = a.anchor;
        std::swap(anchor[0], anchor[1]);
        if (anchor == a.anchor) out.fail("anchor injection is vacuous");
        hit.push_back(tripped(d, a.piece, anchor, th));
    }
    for (int k = 0; k < 4; ++k)
        if (hit[k] != k + 1) out.fail(fmt::format("injection {} tripped condition {}", k + 1, hit[k]));
    if (out.pass) out.detail = fmt::format("{} actions round-tripped, injections trip 1,2,3,4", total);
    return out;
}

// ---------------------------------------------------------------- 3

Outcome tight_terminality() {
    Outcome out;
    std::vector<std::pair<std::string, Diagram>> ds = {{"discrete", corpus::discrete_z2_z3()},
                                                       {"group_z2", corpus::group_z2()},
                                                       {"map", corpus::map_diagram()}};
    for (const auto& nc : corpus::complexes())
        if (nc.name == "twist") ds.push_back({"cgx_twist", cgx_diagram(nc.c)});
    for (const auto& [name, d] : ds) {
        try {
            FAction u = tight_universal_action(d);
            Report r = terminality_check(d, u, 4);
            if (!r.ok()) out.fail(name + ": " + r.str());
        } catch (const Error& e) {
            out.fail(name + ": " + e.what());
        }
    }
    if (out.pass) out.detail = fmt::format("{} tight diagrams, sizes ≤ 4", ds.size());
    return out;
}

// ---------------------------------------------------------------- 4

Outcome model_bijection() {
    Outcome out;
    std::vector<std::string> notes;
    auto run = [&](const std::string& name, const Diagram& d, const GroupoidModel& m) {
        try {
            VerifyStats st = verify_model(d, m, 4);
            notes.push_back(fmt::format("{} {} classes", name, st.classes));
        } catch (const Error& e) {
            out.fail(name + ": " + e.what());
        }
    };
    Diagram disc = corpus::discrete_z2_z3();
    run("discrete", disc, discrete_model(disc));
    Diagram gz = corpus::group_z2();
    GradedGroupoid L = model_group_shape(gz);
    if (L.L.num_arrows() != 4) out.fail("graded groupoid has wrong order");
    run("graded", gz, graded_model(gz, L));
    Diagram np = corpus::n_point(4);
    run("Z", np, corpus::cyclic_model(np, false));
    try {
        verify_model(np, corpus::cyclic_model(np, true), 4);
        out.fail("Z/2 accepted");
    } catch (const Mismatch& e) {
        if (e.witness.empty()) out.fail("Z/2 mismatch without witness");
        else notes.push_back("Z/2 rejected, witness " + e.witness);
    }
    if (out.pass) out.detail = join(notes, ", ");
    return out;
}

// ---------------------------------------------------------------- 5

Outcome pair_vs_germ() {
    Outcome out;
    std::vector<std::string> notes;
    for (int which = 1; which <= 2; ++which) {
        Diagram d = which == 1 ? corpus::e1_diagram(3) : corpus::e2_diagram(3);
        OreUniversal o = ore_universal_action(d, 2, 2);
        PairModel pm(o);
        const SelfSimilar& s = pm.data();
        auto arrows = pm.arrows(4);
        std::vector<std::pair<NormalForm, RationalPoint>> germs;
        for (const auto& p : arrows) germs.push_back(pm.germ(p));
        long eq_checked = 0, mul_checked = 0;
        std::string tag = fmt::format("E{}", which);
        for (size_t i = 0; i < arrows.size(); ++i) {
            const auto& [t, z] = germs[i];
            auto img = act_on_point(s, t, z);
            if (!img || *img != pm.range(arrows[i])) out.fail(tag + ": range of " + pm.str(arrows[i]));
            if (pm.is_unit(arrows[i]) != germ_equal(s, t, NormalForm{false, Path{z.pre.range, {}}, s.G->unit(z.pre.range), Path{z.pre.range, {}}}, z))
                out.fail(tag + ": unit test at " + pm.str(arrows[i]));
            for (size_t j = 0; j < arrows.size(); ++j) {
                const auto& [t2, z2] = germs[j];
                if (z2 == z) {
                    ++eq_checked;
                    if (pm.equal(arrows[i], arrows[j]) != germ_equal(s, t, t2, z))
                        out.fail(tag + ": equality " + pm.str(arrows[i]) + " vs " + pm.str(arrows[j]));
                }
                // arrows[i] after arrows[j]
                if (pm.source(arrows[i]) == pm.range(arrows[j])) {
                    ++mul_checked;
                    PairArrow p = pm.mul(arrows[i], arrows[j]);
                    auto [tp, zp] = pm.germ(p);
                    if (zp != z2 || !germ_equal(s, tp, nf_mul(s, t, t2), z2))
                        out.fail(tag + ": product " + pm.str(arrows[i]) + "·" + pm.str(arrows[j]));
                }
            }
        }
        notes.push_back(fmt::format("{}: {} points, {} arrows, {} equalities, {} products", tag, o.points.size(),
                                    arrows.size(), eq_checked, mul_checked));
        if (which == 2) {
            RationalPoint z0 = normalize_point(s, RationalPoint{Path{0, {}}, {s.find_edge("0")}});
            int a = s.G->cat.find_arrow("a");
            PairArrow pa{Path{0, {}}, a, z0, Path{0, {}}};
            if (pm.is_unit(pa)) out.fail("E2: [a,0^∞] is a unit in the pair model");
            // pointwise germs of ϑ_a on the sampled points
            std::vector<int> img;
            for (const auto& z : o.points) {
                auto w = act_on_point(s, NormalForm{false, Path{0, {}}, a, Path{0, {}}}, z);
                auto it = std::find(o.points.begin(), o.points.end(), *w);
                img.push_back(it == o.points.end() ? -1 : (int)(it - o.points.begin()));
            }
            GermGroupoid gg = germ_groupoid({{"a", PartialBijection{img}}}, (int)o.points.size());
            bool all_units = true;
            for (int g = 0; g < gg.groupoid.num_arrows(); ++g) all_units = all_units && gg.groupoid.is_unit(g);
            if (!all_units) out.fail("E2: pointwise germ of ϑ_a is not a unit");
            else notes.push_back("E2 [a,0^∞] nonunit, germ quotient unit");
        }
    }
    if (out.pass) out.detail = join(notes, "; ");
    return out;
}

// ---------------------------------------------------------------- 6

Outcome normal_forms() {
    Outcome out;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, SelfSimilar>> data = {{"E1", corpus::e1()}, {"EP", corpus::exel_pardo()}};
    for (const auto& [name, s] : data) {
        if (!validate_selfsim(s).ok()) out.fail(name + " invalid");
        auto elems = all_normal_forms(s, 2);
        elems.push_back(nf_zero());
        std::vector<std::vector<NormalForm>> prod(elems.size(), std::vector<NormalForm>(elems.size()));
        std::map<NormalForm, int> index;
        for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = (int)i;
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j) prod[i][j] = nf_mul(s, elems[i], elems[j]);
        auto mul = [&](const NormalForm& a, const NormalForm& b) {
            auto ia = index.find(a), ib = index.find(b);
            if (ia != index.end() && ib != index.end()) return prod[ia->second][ib->second];
            return nf_mul(s, a, b);
        };
        long assoc = 0;
        for (size_t i = 0; i < elems.size(); ++i) {
            const NormalForm& t = elems[i];
            NormalForm ts = nf_star(s, t);
            if (nf_star(s, ts) != t) out.fail(name + ": ** at " + nf_str(s, t));
            if (mul(mul(t, ts), t) != t) out.fail(name + ": tt*t at " + nf_str(s, t));
            if (mul(mul(ts, t), ts) != ts) out.fail(name + ": t*tt* at " + nf_str(s, t));
            for (size_t j = 0; j < elems.size(); ++j) {
                const NormalForm& u = elems[j];
                if (nf_star(s, prod[i][j]) != mul(nf_star(s, u), ts)) out.fail(name + ": (tu)* at " + nf_str(s, t));
                NormalForm e = mul(ts, t), f = mul(nf_star(s, u), u);
                if (mul(e, f) != mul(f, e)) out.fail(name + ": idempotents do not commute");
                for (size_t k = 0; k < elems.size(); ++k) {
                    ++assoc;
                    if (mul(prod[i][j], elems[k]) != mul(elems[i], prod[j][k]))
                        out.fail(name + ": associativity at " + nf_str(s, t) + "," + nf_str(s, u) + "," +
                                 nf_str(s, elems[k]));
                }
            }
        }
        std::vector<Path> words;
        for (int len = 0; len <= 5; ++len)
            for (const auto& w : all_paths(s, len)) words.push_back(w);
        long reps = 0;
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j)
                for (const auto& z : words) {
                    ++reps;
                    std::optional<Path> inner = act_on_path(s, elems[j], z);
                    std::optional<Path> lhs = inner ? act_on_path(s, elems[i], *inner) : std::nullopt;
                    if (lhs != act_on_path(s, prod[i][j], z))
                        out.fail(name + ": representation at " + nf_str(s, elems[i]) + "," + nf_str(s, elems[j]) +
                                 " on " + path_str(s, z));
                }
        notes.push_back(fmt::format("{}: {} elements, {} triples, {} actions on {} words", name, elems.size(), assoc,
                                    reps, words.size()));
        if (!out.pass) break;
    }
    if (out.pass) out.detail = join(notes, "; ");
    return out;
}

// ---------------------------------------------------------------- 7

Outcome complexes_of_groups() {
    Outcome out;
    std::vector<std::string> notes;
    for (const auto& [name, c] : corpus::complexes()) {
        if (!validate_cgx(c).ok()) out.fail(name + " invalid");
        Presentation p = canonical_renaming(fundamental_group(c));
        Presentation q = canonical_renaming(isotropy_at_infinity(c));
        if (!same_presentation(p, q))
            out.fail(name + ": " + presentation_str(p) + " vs " + presentation_str(q));
        std::vector<long long> counts;
        for (int k = 1; k <= 5; ++k) {
            long long a = count_homs(p, k), b = count_homs(q, k);
            if (a != b) out.fail(fmt::format("{}: hom counts differ at {}", name, k));
            counts.push_back(a);
        }
        if (name == "arrow" && count_homs(fundamental_group(c), 3) != 6) out.fail("arrow: count_homs(·,3) ≠ 6");
        notes.push_back(fmt::format("{} [{}]", name, fmt::join(counts, ",")));
    }
    if (out.pass) out.detail = join(notes, ", ");
    return out;
}

// ---------------------------------------------------------------- 8

Outcome ore_machinery() {
    Outcome out;
    std::vector<std::string> notes;
    auto expect_ore = [&](const std::string& name, const PresentedShape& sh) {
        if (ore_check(sh, 4).status != OreResult::IsOre) out.fail(name + " not certified");
    };
    expect_ore("N", PresentedShape::free_monoid({"t"}, 4));
    expect_ore("N^2", PresentedShape::free_commutative({"a", "b"}, 4));
    expect_ore("N^3", PresentedShape::free_commutative({"a", "b", "c"}, 3));
    expect_ore("Z/2", PresentedShape::group(FinGroupoid::from_group(FinGroup::cyclic(2)).cat));
    expect_ore("S3", PresentedShape::group(
                         FinGroupoid::from_group(FinGroup::product(FinGroup::cyclic(3), FinGroup::cyclic(2))).cat));
    PresentedShape free2 = PresentedShape::free_monoid({"a", "b"}, 4);
    OreResult r = ore_check(free2, 4);
    if (r.status != OreResult::NotOre || r.witness.empty()) out.fail("free monoid on 2 generators not refuted");
    else notes.push_back("refuted " + r.describe(free2));
    GroupoidCompletion comp = groupoid_completion(PresentedShape::free_monoid({"t"}, 5), 5);
    if (comp.num_classes() != 11) out.fail(fmt::format("completion of N has {} classes", comp.num_classes()));
    PresentedShape idem = PresentedShape::finite(monoid_category({"1", "t"}, {0, 1, 1, 1}));
    GroupoidCompletion ci = groupoid_completion(idem, 3);
    if (ci.num_classes() != 1) out.fail(fmt::format("completion of {{1,t}} has {} classes", ci.num_classes()));
    if (out.pass) notes.push_back("N completion 11 classes, idempotent completion trivial");
    if (out.pass) out.detail = join(notes, ", ");
    return out;
}

// ---------------------------------------------------------------- 9

std::vector<PartialBijection> partial_injections(int k) {
    std::vector<PartialBijection> out;
    std::vector<int> m(k, -1);
    std::function<void(int)> rec = [&](int y) {
        if (y == k) {
            PartialBijection p{m};
            if (p.is_injective()) out.push_back(p);
            return;
        }
        for (int t = -1; t < k; ++t) {
            m[y] = t;
            rec(y + 1);
        }
    };
    rec(0);
    return out;
}

Outcome mn_systems() {
    Outcome out;
    std::vector<std::string> notes;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            if (m == n) continue;
            auto acts = enumerate_actions(make_emn(m, n), 6);
            if (acts.size() != 1 || acts[0].n != 0) out.fail(fmt::format("({},{}) has a nonempty action", m, n));
        }
    Diagram d11 = make_emn(1, 1);
    long total = 0, valid = 0;
    for (int k = 0; k <= 4; ++k) {
        auto P = partial_injections(k);
        for (const auto& a : P)
            for (const auto& b : P) {
                PartialFreeAction p{1, 1, {a, b}};
                MNAction x = from_partial_action(p);
                bool v1 = validate_mn_action(x, 1, 1).ok(), v2 = check_conditions(p).ok();
                ++total;
                if (v1 != v2) out.fail("validators disagree at size " + std::to_string(k));
                if (v1) {
                    ++valid;
                    if (!validate_action(d11, mn_to_faction(d11, x)).ok()) out.fail("diagram action rejected");
                    if (to_partial_action(x, 1, 1) != p) out.fail("partial action round trip");
                }
            }
    }
    notes.push_back(fmt::format("(1,1): {} instances, {} valid", total, valid));
    std::vector<std::array<int, 3>> surj = {{1, 1, 3}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}};
    for (auto [m, n, depth] : surj)
        for (int dd = 0; dd <= depth; ++dd)
            if (!restriction_surjective(m, n, dd)) out.fail(fmt::format("({},{}) restriction at {}", m, n, dd));
    notes.push_back("restrictions surjective");
    if (out.pass) out.detail = join(notes, ", ");
    return out;
}

// ---------------------------------------------------------------- 10

struct RunResult {
    int status = 0;
    std::string out;
    bool operator==(const RunResult&) const = default;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + GCM_CLI_PATH + "\" " + args + " 2>&1";
    RunResult r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return {-1, ""};
    std::array<char, 4096> buf;
    size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), k);
    r.status = pclose(f);
    return r;
}

std::vector<std::string> cli_commands() {
    namespace fs = std::filesystem;
    std::string dir = GCM_DATA_DIR;
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<std::string> cmds;
    auto q = [](const std::string& p) { return "\"" + p + "\""; };
    for (const auto& f : files) {
        cmds.push_back("validate " + q(f));
        cmds.push_back("validate --json " + q(f));
    }
    cmds.push_back("compose " + q(dir + "/corr_e1.json") + " " + q(dir + "/corr_e1.json"));
    cmds.push_back("compose --json " + q(dir + "/corr_map_3_2.json") + " " + q(dir + "/corr_map_2_3.json"));
    for (const auto& f : {"diagram_discrete", "diagram_group_z2", "diagram_n_point", "diagram_map", "diagram_non_ore",
                          "cgx_twist"})
        cmds.push_back(std::string("model --verify 3 ") + q(dir + "/" + f + ".json"));
    cmds.push_back("selfsim " + q(dir + "/selfsim_e1.json") + " nf-mul \"(ε,a,ε)\" \"((0),1,ε)\"");
    cmds.push_back("selfsim " + q(dir + "/selfsim_e2.json") + " effective");
    cmds.push_back("selfsim --json " + q(dir + "/selfsim_ep.json") + " effective");
    cmds.push_back("selfsim " + q(dir + "/selfsim_e1.json") + " act \"(ε,a,ε)\" \"0^∞\"");
    cmds.push_back("selfsim " + q(dir + "/selfsim_ep.json") + " slices \"(ε_1,1,ε_1)\" \"(ε_1,(a,1),ε_1)\" --depth 1");
    for (const auto& f : {"cgx_arrow", "cgx_free_product", "cgx_loop", "cgx_twist"})
        cmds.push_back(std::string("cgx --verify 3 ") + q(dir + "/" + f + ".json"));
    cmds.push_back("mn --m 1 --n 2 --depth 2");
    cmds.push_back("mn --json --m 1 --n 1 --depth 3 --verify 3");
    cmds.push_back("mn " + q(dir + "/mn_11.json"));
    return cmds;
}

Outcome determinism() {
    Outcome out;
    auto cmds = cli_commands();
    std::vector<RunResult> first, second(cmds.size()), third(cmds.size());
    for (const auto& c : cmds) first.push_back(run_cli(c));
    for (size_t i = 0; i < cmds.size(); ++i) second[i] = run_cli(cmds[i]);
    std::vector<std::future<void>> workers;
    for (int w = 0; w < 4; ++w)
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (size_t i = w; i < cmds.size(); i += 4) third[i] = run_cli(cmds[i]);
        }));
    for (auto& w : workers) w.get();
    for (size_t i = 0; i < cmds.size(); ++i) {
        if (first[i].out.empty()) out.fail("no output from: " + cmds[i]);
        if (!(first[i] == second[i])) out.fail("rerun differs: " + cmds[i]);
        if (!(first[i] == third[i])) out.fail("parallel run differs: " + cmds[i]);
    }
    if (out.pass) out.detail = fmt::format("{} commands × 3 runs", cmds.size());
    return out;
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria = {correspondence_algebra, theta_round_trip, tight_terminality,
                                                      model_bijection,        pair_vs_germ,     normal_forms,
                                                      complexes_of_groups,    ore_machinery,    mn_systems,
                                                      determinism};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::cout << fmt::format("criterion {}: {} ({:.1f}s) {}", i + 1, o.pass ? "PASS" : "FAIL", sec, o.detail)
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
