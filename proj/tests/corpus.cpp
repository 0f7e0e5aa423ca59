#include "corpus.hpp"

#include <memory>

namespace gcm::corpus {

GroupoidPtr point(const std::string& name) { return std::make_shared<const FinGroupoid>(FinGroupoid::space({name})); }

GroupoidPtr group(const FinGroup& g) { return std::make_shared<const FinGroupoid>(FinGroupoid::from_group(g)); }

GroupoidPtr space(const std::vector<std::string>& points) {
    return std::make_shared<const FinGroupoid>(FinGroupoid::space(points));
}

namespace {

// element letter*2 + g of A × Z/2
Correspondence letters_over_z2(bool flip) {
    auto G = group(FinGroup::cyclic(2));
    return make_correspondence(
        G, G, {"0.1", "0.a", "1.1", "1.a"}, {0, 0, 0, 0}, {0, 0, 0, 0},
        [flip](int h, int x) {
            int a = x / 2, g = x % 2;
            if (h == 1) {
                if (flip) a ^= 1;
                g ^= 1;
            }
            return a * 2 + g;
        },
        [](int x, int k) { return (x / 2) * 2 + ((x % 2) ^ k); });
}

}  // namespace

Correspondence e1_corr() { return letters_over_z2(true); }
Correspondence e2_corr() { return letters_over_z2(false); }

SelfSimilar e1() { return selfsim_from_group(FinGroup::cyclic(2), {"0", "1"}, {0, 1, 1, 0}, {0, 0, 1, 1}); }
SelfSimilar e2() { return selfsim_from_group(FinGroup::cyclic(2), {"0", "1"}, {0, 1, 0, 1}, {0, 0, 1, 1}); }

SelfSimilar exel_pardo() {
    return selfsim_from_graph(FinGroup::cyclic(2), {"0", "1"}, {0, 1, 0, 1}, {"e1", "e2", "e3"}, {0, 0, 1}, {0, 0, 0},
                              {0, 1, 2, 1, 0, 2}, {0, 0, 0, 1, 1, 0});
}

Diagram n_shape(GroupoidPtr G, const Correspondence& X, int bound) {
    return extend_from_generators(PresentedShape::free_monoid({"t"}, bound), {G}, {X});
}

Diagram n_point(int bound) {
    auto pt = point();
    return n_shape(pt, identity_correspondence(pt), bound);
}

Diagram e1_diagram(int bound) { return n_shape(e1_corr().G, e1_corr(), bound); }
Diagram e2_diagram(int bound) { return n_shape(e2_corr().G, e2_corr(), bound); }

Diagram discrete_z2_z3() {
    CategoryBuilder b;
    b.add_object("x");
    b.add_object("y");
    return diagram_from_tables(PresentedShape::finite(b.build()),
                               {group(FinGroup::cyclic(2)), group(FinGroup::cyclic(3, "b"))}, {}, {});
}

Diagram group_z2() {
    auto z2 = group(FinGroup::cyclic(2));
    auto shape = PresentedShape::group(FinGroupoid::from_group(FinGroup::cyclic(2, "c")).cat);
    Diagram skel = diagram_skeleton(shape, {z2});
    int c = -1;
    for (int i = 0; i < skel.num_arrows(); ++i)
        if (!skel.is_identity(i)) c = i;
    return diagram_from_tables(shape, {z2}, {{c, identity_correspondence(z2)}}, {{{c, c}, {1, 0, 0, 1}}});
}

Diagram map_diagram() {
    CategoryBuilder b;
    int x = b.add_object("x"), y = b.add_object("y");
    b.add_arrow("g", y, x);
    auto shape = PresentedShape::finite(b.build());
    auto Gx = space({"p", "q"}), Gy = space({"r"});
    Diagram skel = diagram_skeleton(shape, {Gx, Gy});
    int g = -1;
    for (int i = 0; i < skel.num_arrows(); ++i)
        if (!skel.is_identity(i)) g = i;
    return diagram_from_tables(shape, {Gx, Gy}, {{g, from_map(Gx, Gy, {0, 0})}}, {});
}

Diagram arrow_diagram(int k) {
    CategoryBuilder b;
    int x = b.add_object("x"), y = b.add_object("y");
    b.add_arrow("g", y, x);
    auto shape = PresentedShape::finite(b.build());
    auto px = point("p"), py = point("q");
    Diagram skel = diagram_skeleton(shape, {px, py});
    int g = -1;
    for (int i = 0; i < skel.num_arrows(); ++i)
        if (!skel.is_identity(i)) g = i;
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("x" + std::to_string(i + 1));
    Correspondence X = make_correspondence(
        px, py, names, std::vector<int>(k, 0), std::vector<int>(k, 0), [](int, int e) { return e; },
        [](int e, int) { return e; });
    return diagram_from_tables(shape, {px, py}, {{g, X}}, {});
}

Diagram non_ore_tight(int bound) {
    auto V = space({"1", "2"});
    return extend_from_generators(PresentedShape::free_monoid({"a", "b"}, bound), {V},
                                  {from_map(V, V, {1, 0}), from_map(V, V, {0, 0})});
}

GroupoidModel cyclic_model(const Diagram& d, bool with_relator) {
    GroupoidModel m;
    std::vector<Word> rels;
    if (with_relator) rels.push_back(Word{{0, 1}, {0, 1}});
    m.U = Presentation::group({"t"}, rels);
    m.object_to_piece = {{0, 0}};
    std::vector<int> len;
    for (const auto& a : d.arrows) len.push_back((int)a.word.size());
    m.psi = [len](int g, int, int) { return Word(len[g], Letter{0, 1}); };
    return m;
}

namespace {

ComplexOfGroups make(FinCategory C, std::vector<FinGroup> gs, std::vector<std::vector<int>> phi,
                     std::map<std::pair<int, int>, int> tw = {}) {
    ComplexOfGroups c;
    c.C = std::move(C);
    c.groups = std::move(gs);
    c.phi = std::move(phi);
    c.twist = std::move(tw);
    return c;
}

}  // namespace

std::vector<NamedComplex> complexes() {
    std::vector<NamedComplex> out;
    {
        CategoryBuilder b;
        int x = b.add_object("x"), y = b.add_object("y");
        b.add_arrow("g", y, x);
        auto C = b.build();
        std::vector<std::vector<int>> phi(C.num_arrows(), std::vector<int>{0});
        out.push_back({"arrow", make(C, {FinGroup::trivial(), FinGroup::trivial()}, phi)});
    }
    {
        CategoryBuilder b;
        b.add_object("x");
        b.add_object("y");
        out.push_back({"free_product", make(b.build(), {FinGroup::cyclic(2, "a"), FinGroup::cyclic(3, "b")}, {{0, 1}, {0, 1, 2}})});
    }
    {
        CategoryBuilder b;
        int x = b.add_object("x"), y = b.add_object("y"), z = b.add_object("z");
        int g = b.add_arrow("g", y, x), h = b.add_arrow("h", z, y), gh = b.add_arrow("gh", z, x);
        b.set_compose(g, h, gh);
        auto C = b.build();
        std::vector<std::vector<int>> phi(C.num_arrows(), std::vector<int>{0, 1});
        out.push_back({"twist", make(C, {FinGroup::cyclic(2, "a"), FinGroup::cyclic(2, "b"), FinGroup::cyclic(2, "c")}, phi,
                                     {{{g, h}, 1}})});
    }
    {
        CategoryBuilder b;
        int x = b.add_object("x");
        int t = b.add_arrow("t", x, x);
        b.set_compose(t, t, b.build().identity[0]);
        auto C = b.build();
        std::vector<std::vector<int>> phi(C.num_arrows());
        phi[C.identity[0]] = {0, 1, 2};
        phi[t] = {0, 2, 1};
        out.push_back({"loop", make(C, {FinGroup::cyclic(3, "b")}, phi)});
    }
    return out;
}

std::vector<NamedCorr> correspondences() {
    std::vector<NamedCorr> out;
    auto z2 = group(FinGroup::cyclic(2));
    out.push_back({"id_z2", identity_correspondence(z2)});
    out.push_back({"e1", e1_corr()});
    out.push_back({"e2", e2_corr()});
    out.push_back({"e1_iterate2", iterate(e1(), 2)});
    auto V3 = space({"1", "2", "3"}), V2 = space({"a", "b"});
    out.push_back({"map_3_2", from_map(V3, V2, {0, 1, 1})});
    out.push_back({"map_2_3", from_map(V2, V3, {2, 0})});
    auto P3 = std::make_shared<const FinGroupoid>(FinGroupoid::pair({"1", "2", "3"}));
    out.push_back({"id_pair3", identity_correspondence(P3)});
    return out;
}

}  // namespace gcm::corpus
