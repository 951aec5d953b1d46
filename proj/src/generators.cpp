#include <hypercolor/generators.hpp>
#include <hypercolor/counter_rng.hpp>
#include <hypercolor/triangles.hpp>

#include <algorithm>
#include <bit>
#include <optional>
#include <random>

namespace hypercolor
{
    auto to_string(GeneratorKind kind) -> std::string
    {
        switch (kind) {
            case GeneratorKind::partial_steiner: return "partial_steiner";
            case GeneratorKind::random3: return "random3";
            case GeneratorKind::random_rank3: return "random_rank3";
            case GeneratorKind::triangle_free_filtered: return "triangle_free_filtered";
        }
        return "?";
    }

    auto parse_generator_kind(const std::string & text) -> GeneratorKind
    {
        for (auto k : {GeneratorKind::partial_steiner, GeneratorKind::random3, GeneratorKind::random_rank3,
                 GeneratorKind::triangle_free_filtered})
            if (text == to_string(k))
                return k;
        throw InputError("unknown generator '" + text + "'");
    }

    namespace
    {
        // modulo draws keep streams identical across standard libraries
        struct Rng
        {
            std::mt19937_64 engine;

            auto below(std::size_t k) -> std::size_t { return static_cast<std::size_t>(engine() % k); }
        };

        auto choose3(std::size_t n) -> std::size_t
        {
            return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3;
        }

        // Vertices whose 3-degree is still below the cap, sampled uniformly.
        struct OpenSet
        {
            std::vector<Vertex> members;
            std::vector<std::size_t> slot;

            explicit OpenSet(std::size_t n) : members(n), slot(n)
            {
                for (Vertex u = 0 ; u < n ; ++u)
                    members[u] = slot[u] = u;
            }

            auto close(Vertex u) -> void
            {
                auto i = slot[u];
                if (i >= members.size() || members[i] != u)
                    return;
                auto last = members.back();
                members[i] = last;
                slot[last] = i;
                members.pop_back();
                slot[u] = static_cast<std::size_t>(-1);
            }
        };

        auto pick3(Rng & rng, const std::vector<Vertex> & from) -> Triple
        {
            auto k = from.size();
            auto a = rng.below(k), b = rng.below(k - 1), c = rng.below(k - 2);
            if (b >= a)
                ++b;
            auto lo = std::min(a, b), hi = std::max(a, b);
            if (c >= lo)
                ++c;
            if (c >= hi)
                ++c;
            return make_triple(from[a], from[b], from[c]);
        }

        // Exhaustive completion of a Steiner triple system by always covering the
        // smallest uncovered pair; only used for the full-system target at small n.
        auto complete_steiner(std::size_t n, Rng & rng, HypergraphBuilder & out) -> bool
        {
            std::vector<std::vector<std::uint8_t>> covered(n, std::vector<std::uint8_t>(n, 0));
            std::vector<Triple> chosen;
            std::size_t steps = 0;

            auto recurse = [&] (auto & self) -> bool {
                if (++steps > 5'000'000)
                    return false;
                Vertex a = 0, b = 0;
                bool found = false;
                for (Vertex x = 0 ; x < n && ! found ; ++x)
                    for (Vertex y = x + 1 ; y < n ; ++y)
                        if (! covered[x][y]) {
                            a = x;
                            b = y;
                            found = true;
                            break;
                        }
                if (! found)
                    return true;
                std::vector<Vertex> thirds;
                for (Vertex w = 0 ; w < n ; ++w)
                    if (w != a && w != b && ! covered[std::min(a, w)][std::max(a, w)] && ! covered[std::min(b, w)][std::max(b, w)])
                        thirds.push_back(w);
                for (std::size_t i = thirds.size() ; i > 1 ; --i)
                    std::swap(thirds[i - 1], thirds[rng.below(i)]);
                for (auto w : thirds) {
                    auto t = make_triple(a, b, w);
                    auto mark = [&] (std::uint8_t v) {
                        covered[t[0]][t[1]] = covered[t[0]][t[2]] = covered[t[1]][t[2]] = v;
                    };
                    mark(1);
                    chosen.push_back(t);
                    if (self(self))
                        return true;
                    chosen.pop_back();
                    mark(0);
                }
                return false;
            };
            if (! recurse(recurse))
                return false;
            for (auto & t : chosen)
                out.add_edge3(t[0], t[1], t[2]);
            return true;
        }

        auto partial_steiner(const GeneratorSpec & spec, Rng & rng) -> Hypergraph
        {
            auto n = spec.n;
            auto pairs = n < 2 ? 0 : n * (n - 1) / 2;
            if (spec.edges3 > pairs / 3)
                throw InputError("partial_steiner: at most n(n-1)/6 = " + std::to_string(pairs / 3) + " triples fit");
            if (spec.edges3 > 0 && spec.edges3 * 3 == pairs) {
                if (n % 6 != 1 && n % 6 != 3)
                    throw InputError("partial_steiner: a full system needs n = 1 or 3 mod 6");
                HypergraphBuilder b(n);
                if (! complete_steiner(n, rng, b))
                    throw GeneratorTimeout("partial_steiner: search for a full system gave up", 0, 0);
                return b.build();
            }

            auto cap = spec.target_delta ? spec.target_delta : n;
            auto stall_limit = spec.max_stall ? spec.max_stall : 200 * std::max<std::size_t>(n, 10);
            HypergraphBuilder b(n);
            OpenSet open(n);
            std::size_t stall = 0;
            while (open.members.size() >= 3 && (spec.edges3 == 0 || b.edge_count3() < spec.edges3)) {
                auto t = pick3(rng, open.members);
                if (b.codegree(t[0], t[1]) || b.codegree(t[0], t[2]) || b.codegree(t[1], t[2])) {
                    if (++stall > stall_limit)
                        break;
                    continue;
                }
                stall = 0;
                b.add_edge3(t[0], t[1], t[2]);
                for (auto x : t)
                    if (b.degree3(x) >= cap)
                        open.close(x);
            }
            if (spec.edges3 && b.edge_count3() < spec.edges3)
                throw GeneratorTimeout("partial_steiner: stalled at " + std::to_string(b.edge_count3()) + " of "
                    + std::to_string(spec.edges3) + " triples", b.edge_count3(), 0);
            return b.build();
        }

        auto add_random_pairs(HypergraphBuilder & b, std::size_t count, Rng & rng, std::size_t stall_limit) -> void
        {
            auto n = b.vertex_count();
            auto pairs = n < 2 ? 0 : n * (n - 1) / 2;
            if (count > pairs)
                throw InputError("requested more 2-edges than vertex pairs");
            std::size_t stall = 0;
            while (b.edge_count2() < count) {
                auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
                if (u == v || ! b.add_edge2(u, v)) {
                    if (++stall > stall_limit)
                        throw GeneratorTimeout("stalled while adding 2-edges", b.edge_count3(), b.edge_count2());
                    continue;
                }
                stall = 0;
            }
        }

        auto random_uniform(const GeneratorSpec & spec, Rng & rng, bool with_pairs) -> Hypergraph
        {
            auto n = spec.n;
            if (spec.edges3 > choose3(n))
                throw InputError("requested more triples than C(n,3)");
            if (spec.edges3 > 0 && n < 3)
                throw InputError("triples need n >= 3");
            auto cap = spec.target_delta ? spec.target_delta : n * n;
            auto stall_limit = spec.max_stall ? spec.max_stall : 200 * std::max<std::size_t>(n, 10);
            auto wanted = spec.edges3;
            if (wanted == 0 && spec.target_delta)
                wanted = choose3(n);

            HypergraphBuilder b(n);
            OpenSet open(n);
            std::size_t stall = 0;
            while (b.edge_count3() < wanted && open.members.size() >= 3) {
                auto t = pick3(rng, open.members);
                if (! b.add_edge3(t[0], t[1], t[2])) {
                    if (++stall > stall_limit)
                        break;
                    continue;
                }
                stall = 0;
                for (auto x : t)
                    if (b.degree3(x) >= cap)
                        open.close(x);
            }
            if (spec.edges3 && b.edge_count3() < spec.edges3)
                throw GeneratorTimeout("stalled at " + std::to_string(b.edge_count3()) + " triples", b.edge_count3(), 0);
            if (with_pairs)
                add_random_pairs(b, spec.edges2, rng, stall_limit);
            return b.build();
        }

        // Shadow adjacency as bit rows so the common neighbours of a pair are a word-wise
        // AND. Every triangle through a new edge has its third vertex among them.
        class ShadowBits
        {
        public:
            ShadowBits(const PairCoverIndex & index, std::size_t n) :
                _index(index), _words((n + 63) / 64), _bits(n * _words, 0)
            {
            }

            auto add(const Edge & e) -> void
            {
                auto vs = e.vertices();
                for (auto a : vs)
                    for (auto b : vs)
                        if (a != b)
                            _bits[a * _words + b / 64] |= std::uint64_t{1} << (b % 64);
            }

            auto closes_triangle(const Edge & e) const -> bool
            {
                auto vs = e.vertices();
                for (std::size_t i = 0 ; i < vs.size() ; ++i)
                    for (std::size_t j = i + 1 ; j < vs.size() ; ++j) {
                        auto a = vs[i], b = vs[j];
                        for (std::size_t k = 0 ; k < _words ; ++k) {
                            auto common = _bits[a * _words + k] & _bits[b * _words + k];
                            for ( ; common ; common &= common - 1) {
                                auto w = static_cast<Vertex>(k * 64 + std::countr_zero(common));
                                if (w != a && w != b && _index.closes_triangle_at(e, a, b, w))
                                    return true;
                            }
                        }
                    }
                return false;
            }

        private:
            const PairCoverIndex & _index;
            std::size_t _words;
            std::vector<std::uint64_t> _bits;
        };

        auto triangle_free(const GeneratorSpec & spec, Rng & rng) -> Hypergraph
        {
            auto n = spec.n;
            if (spec.edges3 > choose3(n))
                throw InputError("requested more triples than C(n,3)");
            if (spec.edges2 > (n < 2 ? 0 : n * (n - 1) / 2))
                throw InputError("requested more 2-edges than vertex pairs");
            auto cap = spec.target_delta ? spec.target_delta : n * n;
            auto stall_limit = spec.max_stall ? spec.max_stall : 200 * std::max<std::size_t>(n, 10);
            auto wanted3 = spec.edges3 ? spec.edges3 : (spec.target_delta ? choose3(n) : 0);

            HypergraphBuilder b(n);
            PairCoverIndex index(n);
            // n^2 bits; beyond this the sorted-row search in the index is used alone
            std::optional<ShadowBits> shadow;
            if (n <= 16384)
                shadow.emplace(index, n);
            OpenSet open(n);
            std::size_t stall = 0;
            auto want3 = [&] { return b.edge_count3() < wanted3 && open.members.size() >= 3; };
            auto want2 = [&] { return b.edge_count2() < spec.edges2 && n >= 2; };

            while (want3() || want2()) {
                bool triple = want3() && (! want2() || rng.below(2) == 0);
                Edge e;
                if (triple)
                    e = Edge::of(pick3(rng, open.members));
                else {
                    auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
                    if (u == v) {
                        if (++stall > stall_limit)
                            break;
                        continue;
                    }
                    e = Edge::of(make_pair_edge(u, v));
                }
                bool fresh = triple ? ! b.contains3(e.v[0], e.v[1], e.v[2]) : ! b.contains2(e.v[0], e.v[1]);
                if (! fresh || (shadow ? shadow->closes_triangle(e) : index.closes_triangle(e))) {
                    if (++stall > stall_limit)
                        break;
                    continue;
                }
                stall = 0;
                index.add(e);
                if (shadow)
                    shadow->add(e);
                if (triple) {
                    b.add_edge3(e.v[0], e.v[1], e.v[2]);
                    for (auto x : e.vertices())
                        if (b.degree3(x) >= cap)
                            open.close(x);
                }
                else
                    b.add_edge2(e.v[0], e.v[1]);
            }
            if ((spec.edges3 && b.edge_count3() < spec.edges3) || b.edge_count2() < spec.edges2)
                throw GeneratorTimeout("triangle_free_filtered: stalled at " + std::to_string(b.edge_count3()) + " triples and "
                    + std::to_string(b.edge_count2()) + " pairs", b.edge_count3(), b.edge_count2());
            return b.build();
        }
    }

    auto generate(const GeneratorSpec & spec) -> Hypergraph
    {
        if (spec.edges2 && (spec.kind == GeneratorKind::partial_steiner || spec.kind == GeneratorKind::random3))
            throw InputError(to_string(spec.kind) + " produces no 2-edges");
        Rng rng{std::mt19937_64(mix64(spec.seed ^ mix64(static_cast<std::uint64_t>(spec.kind))))};
        switch (spec.kind) {
            case GeneratorKind::partial_steiner: return partial_steiner(spec, rng);
            case GeneratorKind::random3: return random_uniform(spec, rng, false);
            case GeneratorKind::random_rank3: return random_uniform(spec, rng, true);
            case GeneratorKind::triangle_free_filtered: return triangle_free(spec, rng);
        }
        throw InputError("unknown generator");
    }
}
