#include <hypercolor/triangles.hpp>

#include <algorithm>
#include <set>

namespace hypercolor
{
    auto to_string(TriangleKind kind) -> std::string
    {
        switch (kind) {
            case TriangleKind::C3: return "C3";
            case TriangleKind::F5: return "F5";
            case TriangleKind::K4minus: return "K4minus";
            case TriangleKind::mixed: return "mixed";
            case TriangleKind::graph: return "graph";
        }
        return "unknown";
    }

    auto TriangleWitness::key() const -> std::pair<std::array<Vertex, 3>, std::array<Edge, 3>>
    {
        auto vs = vertices;
        auto es = edges;
        std::sort(vs.begin(), vs.end());
        std::sort(es.begin(), es.end());
        return {vs, es};
    }

    auto classify(const std::array<Edge, 3> & edges) -> TriangleKind
    {
        int threes = 0;
        for (auto & e : edges)
            threes += e.arity == 3;
        if (threes == 0)
            return TriangleKind::graph;
        if (threes < 3)
            return TriangleKind::mixed;

        std::vector<Vertex> all;
        for (auto & e : edges)
            all.insert(all.end(), e.v.begin(), e.v.end());
        std::sort(all.begin(), all.end());
        auto spanned = std::unique(all.begin(), all.end()) - all.begin();
        // three triples forming a triangle span four, five or six vertices
        switch (spanned) {
            case 4: return TriangleKind::K4minus;
            case 5: return TriangleKind::F5;
            default: return TriangleKind::C3;
        }
    }

    auto is_triangle(const std::array<Vertex, 3> & x, const std::array<Edge, 3> & e) -> bool
    {
        auto [u, v, w] = x;
        if (u == v || v == w || u == w)
            return false;
        if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2])
            return false;
        if (! (e[0].contains(u) && e[0].contains(v) && e[1].contains(v) && e[1].contains(w)
                    && e[2].contains(w) && e[2].contains(u)))
            return false;
        for (auto y : x)
            if (e[0].contains(y) && e[1].contains(y) && e[2].contains(y))
                return false;
        return true;
    }

    PairCoverIndex::PairCoverIndex(std::size_t n) :
        _adjacent(n)
    {
    }

    PairCoverIndex::PairCoverIndex(const Hypergraph & h) :
        PairCoverIndex(h, {})
    {
    }

    PairCoverIndex::PairCoverIndex(const Hypergraph & h, std::span<const Pair> extra2) :
        _adjacent(h.vertex_count())
    {
        _cover.reserve(h.edges3().size() * 3 + h.edges2().size() + extra2.size());
        auto push = [&] (const Edge & e) {
            auto vs = e.vertices();
            for (std::size_t i = 0 ; i < vs.size() ; ++i)
                for (std::size_t j = i + 1 ; j < vs.size() ; ++j) {
                    auto & bucket = _cover[pair_key(vs[i], vs[j])];
                    if (bucket.empty()) {
                        _adjacent[vs[i]].push_back(vs[j]);
                        _adjacent[vs[j]].push_back(vs[i]);
                    }
                    bucket.push_back(e);
                }
        };
        for (auto & e : h.edges2())
            push(Edge::of(e));
        for (auto & t : h.edges3())
            push(Edge::of(t));
        for (auto & p : extra2) {
            auto e = Edge::of(make_pair_edge(p[0], p[1]));
            if (e.v[1] >= h.vertex_count() || e.v[0] == e.v[1])
                throw InputError("extra 2-edge outside the vertex range");
            auto it = _cover.find(pair_key(e.v[0], e.v[1]));
            if (it != _cover.end() && std::find(it->second.begin(), it->second.end(), e) != it->second.end())
                continue;
            push(e);
        }
        for (auto & row : _adjacent)
            std::sort(row.begin(), row.end());
        for (auto & [key, bucket] : _cover)
            std::sort(bucket.begin(), bucket.end());
    }

    auto PairCoverIndex::add(const Edge & e) -> bool
    {
        auto vs = e.vertices();
        for (auto x : vs)
            if (x >= _adjacent.size())
                throw InputError("edge vertex out of range");
        auto & first = _cover[pair_key(vs[0], vs[1])];
        if (std::find(first.begin(), first.end(), e) != first.end())
            return false;
        for (std::size_t i = 0 ; i < vs.size() ; ++i)
            for (std::size_t j = i + 1 ; j < vs.size() ; ++j) {
                auto & bucket = _cover[pair_key(vs[i], vs[j])];
                if (bucket.empty()) {
                    auto & ra = _adjacent[vs[i]];
                    ra.insert(std::lower_bound(ra.begin(), ra.end(), vs[j]), vs[j]);
                    auto & rb = _adjacent[vs[j]];
                    rb.insert(std::lower_bound(rb.begin(), rb.end(), vs[i]), vs[i]);
                }
                bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), e), e);
            }
        return true;
    }

    auto PairCoverIndex::cover(Vertex a, Vertex b) const -> std::span<const Edge>
    {
        auto it = _cover.find(pair_key(a, b));
        if (it == _cover.end())
            return {};
        return it->second;
    }

    namespace
    {
        // All witnesses on the vertex triple u < v < w, deduplicated by key and sorted.
        auto witnesses_on(const PairCoverIndex & index, Vertex u, Vertex v, Vertex w,
                std::vector<TriangleWitness> & out, std::size_t limit) -> void
        {
            auto uv = index.cover(u, v), vw = index.cover(v, w), wu = index.cover(w, u);
            if (uv.empty() || vw.empty() || wu.empty())
                return;

            std::set<std::array<Edge, 3>> seen;
            std::vector<TriangleWitness> local;
            for (auto & e : uv)
                for (auto & f : vw) {
                    if (f == e)
                        continue;
                    for (auto & g : wu) {
                        std::array<Edge, 3> edges{e, f, g};
                        if (! is_triangle({u, v, w}, edges))
                            continue;
                        auto sorted = edges;
                        std::sort(sorted.begin(), sorted.end());
                        if (! seen.insert(sorted).second)
                            continue;
                        local.push_back(TriangleWitness{{u, v, w}, edges, classify(edges)});
                    }
                }

            std::sort(local.begin(), local.end(), [] (auto & a, auto & b) { return a.key() < b.key(); });
            for (auto & t : local) {
                if (out.size() >= limit)
                    return;
                out.push_back(t);
            }
        }
    }

    auto find_triangles(const PairCoverIndex & index, std::size_t limit) -> std::vector<TriangleWitness>
    {
        std::vector<TriangleWitness> out;
        if (limit == 0)
            return out;
        auto n = index.vertex_count();
        for (Vertex u = 0 ; u < n ; ++u) {
            auto nu = index.adjacent(u);
            for (auto vi = std::upper_bound(nu.begin(), nu.end(), u) ; vi != nu.end() ; ++vi) {
                auto v = *vi;
                auto nv = index.adjacent(v);
                for (auto wi = std::upper_bound(nv.begin(), nv.end(), v) ; wi != nv.end() ; ++wi) {
                    auto w = *wi;
                    if (! std::binary_search(nu.begin(), nu.end(), w))
                        continue;
                    witnesses_on(index, u, v, w, out, limit);
                    if (out.size() >= limit)
                        return out;
                }
            }
        }
        return out;
    }

    auto find_triangles(const Hypergraph & h, std::size_t limit) -> std::vector<TriangleWitness>
    {
        return find_triangles(PairCoverIndex(h), limit);
    }

    auto is_triangle_free(const PairCoverIndex & index) -> bool
    {
        return find_triangles(index, 1).empty();
    }

    auto is_triangle_free(const Hypergraph & h) -> bool
    {
        return is_triangle_free(PairCoverIndex(h));
    }

    auto PairCoverIndex::triangle_through(const Edge & e) const -> std::optional<TriangleWitness>
    {
        return search_through(e, false);
    }

    auto PairCoverIndex::closes_triangle(const Edge & e) const -> bool
    {
        return search_through(e, true).has_value();
    }

    auto PairCoverIndex::closes_triangle_at(const Edge & e, Vertex a, Vertex b, Vertex w) const -> bool
    {
        for (auto & f : cover(b, w))
            for (auto & g : cover(w, a))
                if (f != e && g != e && is_triangle({a, b, w}, {e, f, g}))
                    return true;
        return false;
    }

    auto PairCoverIndex::search_through(const Edge & e, bool first) const -> std::optional<TriangleWitness>
    {
        auto vs = e.vertices();
        std::optional<TriangleWitness> best;
        for (std::size_t i = 0 ; i < vs.size() ; ++i)
            for (std::size_t j = i + 1 ; j < vs.size() ; ++j) {
                auto a = vs[i], b = vs[j];
                // e covers the pair (a, b); look for w closing it with two indexed edges
                auto na = adjacent(a), nb = adjacent(b);
                std::vector<Vertex> both;
                std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(both));
                for (auto w : both) {
                    if (w == a || w == b)
                        continue;
                    for (auto & f : cover(b, w))
                        for (auto & g : cover(w, a)) {
                            if (f == e || g == e)
                                continue;
                            std::array<Edge, 3> edges{e, f, g};
                            if (! is_triangle({a, b, w}, edges))
                                continue;
                            TriangleWitness t{{a, b, w}, edges, classify(edges)};
                            if (first)
                                return t;
                            if (! best || t.key() < best->key())
                                best = t;
                        }
                }
            }
        return best;
    }
}
