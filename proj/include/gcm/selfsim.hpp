#ifndef GCM_SELFSIM_HPP
#define GCM_SELFSIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "gcm/corr.hpp"

namespace gcm {

// Self-similar groupoid action on a graph. Vertices are the objects of G; an arrow g
// acts on edges e with r(e) = src(g), and g|_e : s(e) → s(g·e). The group case has one
// vertex; the Exel–Pardo case uses G = Γ⋉V.
struct SelfSimilar {
    GroupoidPtr G;
    std::vector<std::string> edge_names;
    std::vector<int> er, es;  // range and source vertex per edge
    std::vector<int> act;     // act[g*|E| + e], -1 unless src(g) = r(e)
    std::vector<int> res;     // res[g*|E| + e]

    int num_edges() const { return (int)edge_names.size(); }
    int num_vertices() const { return G->num_objects(); }
    int act_on(int g, int e) const { return act[(size_t)g * num_edges() + e]; }
    int restrict_to(int g, int e) const { return res[(size_t)g * num_edges() + e]; }
    int find_edge(const std::string& name) const;
};

// letters A, act[g*|A| + a], res[g*|A| + a] ∈ G
SelfSimilar selfsim_from_group(const FinGroup& group, const std::vector<std::string>& letters,
                               const std::vector<int>& act, const std::vector<int>& res);
// Γ acting on vertices (vact[g*|V|+v]) and edges (eact, eres indexed g*|E|+e)
SelfSimilar selfsim_from_graph(const FinGroup& gamma, const std::vector<std::string>& vertices,
                               const std::vector<int>& vact, const std::vector<std::string>& edges,
                               const std::vector<int>& er, const std::vector<int>& es,
                               const std::vector<int>& eact, const std::vector<int>& eres);

Report validate_selfsim(const SelfSimilar& s);

// Finite path e1 e2 … ek with s(e_i) = r(e_{i+1}); range is r(e1), or the vertex when empty.
struct Path {
    int range = 0;
    std::vector<int> edges;
    auto operator<=>(const Path&) const = default;
};

int path_source(const SelfSimilar& s, const Path& w);
bool is_path(const SelfSimilar& s, const Path& w);
Path concat(const Path& a, const Path& b);
// image g·w and restriction g|_w
std::pair<Path, int> act_path(const SelfSimilar& s, int g, const Path& w);
std::vector<Path> all_paths(const SelfSimilar& s, int length);
std::string path_str(const SelfSimilar& s, const Path& w);
// "(e1,e2)", "e1e2" with one-letter edges, "ε" or "ε_v"
Path parse_path(const SelfSimilar& s, const std::string& text);

// w1 g w2*, with g: s(w2) → s(w1)
struct NormalForm {
    bool zero = false;
    Path w1;
    int g = 0;
    Path w2;
    auto operator<=>(const NormalForm&) const = default;
};

NormalForm nf_zero();
bool nf_valid(const SelfSimilar& s, const NormalForm& t);
NormalForm nf_mul(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2);
NormalForm nf_star(const SelfSimilar& s, const NormalForm& t);
std::string nf_str(const SelfSimilar& s, const NormalForm& t);
NormalForm parse_nf(const SelfSimilar& s, const std::string& text);
// nonzero normal forms with |w1|, |w2| ≤ max_len
std::vector<NormalForm> all_normal_forms(const SelfSimilar& s, int max_len);

std::optional<Path> act_on_path(const SelfSimilar& s, const NormalForm& t, const Path& z);

// eventually periodic infinite path pre·period^∞
struct RationalPoint {
    Path pre;
    std::vector<int> period;
    auto operator<=>(const RationalPoint&) const = default;
};

int point_letter(const RationalPoint& z, int i);
// primitive period, then shortest preperiod
RationalPoint normalize_point(const SelfSimilar& s, RationalPoint z);
RationalPoint drop_prefix(const SelfSimilar& s, const RationalPoint& z, int k);
bool point_valid(const SelfSimilar& s, const RationalPoint& z);
std::pair<RationalPoint, int> act_point_by(const SelfSimilar& s, int g, const RationalPoint& z);
std::optional<RationalPoint> act_on_point(const SelfSimilar& s, const NormalForm& t, const RationalPoint& z);
std::string point_str(const SelfSimilar& s, const RationalPoint& z);
RationalPoint parse_point(const SelfSimilar& s, const std::string& text);
// normalized points with preperiod ≤ max_pre and period ≤ max_period, on capable cycles
std::vector<RationalPoint> rational_points(const SelfSimilar& s, int max_pre, int max_period);

bool germ_equal(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2, const RationalPoint& z);

// vertices and edges lying on infinite paths
std::vector<char> capable_vertices(const SelfSimilar& s);

struct EffectiveResult {
    bool effective = true;
    int witness = -1;
    std::vector<int> kernel;
};

EffectiveResult effective_check(const SelfSimilar& s);

// α_{t1} ∩ α_{t2} as a disjoint union of slices α_σ; throws DepthInsufficient
std::vector<NormalForm> slice_intersections(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2, int depth);

// n-fold iterate with carrier P^n × G, element (w,g) with dst(g) = s(w)
Correspondence iterate(const SelfSimilar& s, int n);

// element calculus for transformation_groupoid; images must stay among the given points
GermCalculus selfsim_calculus(const SelfSimilar& s, const std::vector<NormalForm>& elems,
                              const std::vector<RationalPoint>& points);

}  // namespace gcm

#endif
