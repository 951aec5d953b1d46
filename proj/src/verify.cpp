#include <hypercolor/verify.hpp>

#include <algorithm>
#include <map>

namespace hypercolor
{
    auto to_string(ViolationKind kind) -> std::string
    {
        switch (kind) {
            case ViolationKind::none: return "ok";
            case ViolationKind::wrong_length: return "wrong_length";
            case ViolationKind::uncolored_vertex: return "uncolored_vertex";
            case ViolationKind::color_not_in_list: return "color_not_in_list";
            case ViolationKind::monochromatic_edge3: return "monochromatic_edge3";
            case ViolationKind::monochromatic_edge2: return "monochromatic_edge2";
        }
        return "unknown";
    }

    auto Verdict::describe() const -> std::string
    {
        std::string s = to_string(violation);
        if (vertex)
            s += " at vertex " + std::to_string(*vertex);
        if (edge) {
            s += " on edge {";
            auto vs = edge->vertices();
            for (std::size_t i = 0 ; i < vs.size() ; ++i)
                s += (i ? "," : "") + std::to_string(vs[i]);
            s += "}";
        }
        return s;
    }

    namespace
    {
        auto check(const Hypergraph & h, const ListAssignment * lists, std::span<const Color> coloring, bool total) -> Verdict
        {
            Verdict v;
            auto n = h.vertex_count();
            if (coloring.size() != n || (lists && lists->vertex_count() != n)) {
                v.violation = ViolationKind::wrong_length;
                return v;
            }
            for (Vertex u = 0 ; u < n ; ++u) {
                if (coloring[u] == uncolored) {
                    if (total) {
                        v.violation = ViolationKind::uncolored_vertex;
                        v.vertex = u;
                        return v;
                    }
                    continue;
                }
                if (lists && ! lists->allows(u, coloring[u])) {
                    v.violation = ViolationKind::color_not_in_list;
                    v.vertex = u;
                    return v;
                }
            }
            for (auto & e : h.edges3()) {
                auto c = coloring[e[0]];
                if (c != uncolored && coloring[e[1]] == c && coloring[e[2]] == c) {
                    v.violation = ViolationKind::monochromatic_edge3;
                    v.edge = Edge::of(e);
                    return v;
                }
            }
            for (auto & e : h.edges2()) {
                auto c = coloring[e[0]];
                if (c != uncolored && coloring[e[1]] == c) {
                    v.violation = ViolationKind::monochromatic_edge2;
                    v.edge = Edge::of(e);
                    return v;
                }
            }
            return v;
        }
    }

    auto verify_coloring(const Hypergraph & h, const ListAssignment & lists, std::span<const Color> coloring) -> Verdict
    {
        return check(h, &lists, coloring, true);
    }

    auto verify_partial_coloring(const Hypergraph & h, const ListAssignment & lists, std::span<const Color> coloring) -> Verdict
    {
        return check(h, &lists, coloring, false);
    }

    auto is_proper(const Hypergraph & h, std::span<const Color> coloring) -> bool
    {
        return check(h, nullptr, coloring, true).ok();
    }

    auto independent_set_from_coloring(const Hypergraph & h, std::span<const Color> coloring) -> std::vector<Vertex>
    {
        if (! is_proper(h, coloring))
            throw ContractError("independent_set_from_coloring needs a proper total coloring");
        std::map<Color, std::vector<Vertex>> classes;
        for (Vertex u = 0 ; u < coloring.size() ; ++u)
            classes[coloring[u]].push_back(u);
        std::vector<Vertex> best;
        for (auto & [c, members] : classes)
            if (members.size() > best.size())
                best = members;
        return best;
    }

    auto is_independent(const Hypergraph & h, std::span<const Vertex> set) -> bool
    {
        std::vector<bool> in(h.vertex_count(), false);
        for (auto u : set)
            in.at(u) = true;
        for (auto & e : h.edges3())
            if (in[e[0]] && in[e[1]] && in[e[2]])
                return false;
        for (auto & e : h.edges2())
            if (in[e[0]] && in[e[1]])
                return false;
        return true;
    }
}
