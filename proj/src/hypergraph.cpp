#include <hypercolor/hypergraph.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hypercolor
{
    auto make_pair_edge(Vertex a, Vertex b) -> Pair
    {
        if (a > b)
            std::swap(a, b);
        return {a, b};
    }

    auto make_triple(Vertex a, Vertex b, Vertex c) -> Triple
    {
        Triple t{a, b, c};
        std::sort(t.begin(), t.end());
        return t;
    }

    namespace
    {
        auto edge_text(const Pair & e) -> std::string
        {
            return "{" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "}";
        }

        auto edge_text(const Triple & e) -> std::string
        {
            return "{" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "}";
        }

        auto build_csr(std::size_t n, const std::vector<std::vector<std::uint32_t>> & rows,
                std::vector<std::uint32_t> & offsets, std::vector<std::uint32_t> & data) -> void
        {
            offsets.assign(n + 1, 0);
            for (std::size_t u = 0 ; u < n ; ++u)
                offsets[u + 1] = offsets[u] + static_cast<std::uint32_t>(rows[u].size());
            data.clear();
            data.reserve(offsets[n]);
            for (auto & row : rows)
                data.insert(data.end(), row.begin(), row.end());
        }
    }

    Hypergraph::Hypergraph(std::size_t n, std::vector<Pair> edges2, std::vector<Triple> edges3) :
        _n(n),
        _edges2(std::move(edges2)),
        _edges3(std::move(edges3))
    {
        for (auto & e : _edges2) {
            e = make_pair_edge(e[0], e[1]);
            if (e[0] == e[1])
                throw InputError("2-edge " + edge_text(e) + " repeats a vertex");
            if (e[1] >= n)
                throw InputError("2-edge " + edge_text(e) + " has a vertex >= n = " + std::to_string(n));
        }
        for (auto & e : _edges3) {
            e = make_triple(e[0], e[1], e[2]);
            if (e[0] == e[1] || e[1] == e[2])
                throw InputError("3-edge " + edge_text(e) + " repeats a vertex");
            if (e[2] >= n)
                throw InputError("3-edge " + edge_text(e) + " has a vertex >= n = " + std::to_string(n));
        }

        std::sort(_edges2.begin(), _edges2.end());
        std::sort(_edges3.begin(), _edges3.end());
        if (auto it = std::adjacent_find(_edges2.begin(), _edges2.end()) ; it != _edges2.end())
            throw InputError("duplicate 2-edge " + edge_text(*it));
        if (auto it = std::adjacent_find(_edges3.begin(), _edges3.end()) ; it != _edges3.end())
            throw InputError("duplicate 3-edge " + edge_text(*it));

        std::vector<std::vector<std::uint32_t>> inc(n), adj(n);
        _codegree.reserve(_edges3.size() * 3);
        for (std::uint32_t i = 0 ; i < _edges3.size() ; ++i) {
            auto & [a, b, c] = _edges3[i];
            inc[a].push_back(i);
            inc[b].push_back(i);
            inc[c].push_back(i);
            ++_codegree[pair_key(a, b)];
            ++_codegree[pair_key(a, c)];
            ++_codegree[pair_key(b, c)];
        }
        for (auto & [a, b] : _edges2) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto & row : adj)
            std::sort(row.begin(), row.end());

        build_csr(n, inc, _inc3_offsets, _inc3);
        build_csr(n, adj, _adj2_offsets, _adj2);
    }

    auto Hypergraph::check_vertex(Vertex u) const -> void
    {
        if (u >= _n)
            throw InputError("vertex " + std::to_string(u) + " out of range (n = " + std::to_string(_n) + ")");
    }

    auto Hypergraph::degree3(Vertex u) const -> std::size_t
    {
        check_vertex(u);
        return _inc3_offsets[u + 1] - _inc3_offsets[u];
    }

    auto Hypergraph::degree2(Vertex u) const -> std::size_t
    {
        check_vertex(u);
        return _adj2_offsets[u + 1] - _adj2_offsets[u];
    }

    auto Hypergraph::codegree(Vertex u, Vertex v) const -> std::size_t
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw InputError("codegree needs two distinct vertices, got " + std::to_string(u) + " twice");
        auto it = _codegree.find(pair_key(u, v));
        return it == _codegree.end() ? 0 : it->second;
    }

    auto Hypergraph::incident3(Vertex u) const -> std::span<const std::uint32_t>
    {
        check_vertex(u);
        return std::span<const std::uint32_t>(_inc3).subspan(_inc3_offsets[u], _inc3_offsets[u + 1] - _inc3_offsets[u]);
    }

    auto Hypergraph::neighbours2(Vertex u) const -> std::span<const Vertex>
    {
        check_vertex(u);
        return std::span<const Vertex>(_adj2).subspan(_adj2_offsets[u], _adj2_offsets[u + 1] - _adj2_offsets[u]);
    }

    auto Hypergraph::neighbours3(Vertex u) const -> std::vector<Vertex>
    {
        std::vector<Vertex> result;
        for (auto i : incident3(u))
            for (auto x : _edges3[i])
                if (x != u)
                    result.push_back(x);
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        return result;
    }

    auto Hypergraph::common3(Vertex u, Vertex v) const -> std::vector<Vertex>
    {
        if (u == v)
            throw InputError("common3 needs two distinct vertices");
        check_vertex(v);
        std::vector<Vertex> result;
        for (auto i : incident3(u)) {
            auto & e = _edges3[i];
            if (e[0] == v || e[1] == v || e[2] == v)
                for (auto x : e)
                    if (x != u && x != v)
                        result.push_back(x);
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    auto Hypergraph::has_edge2(Vertex u, Vertex v) const -> bool
    {
        if (u >= _n || v >= _n || u == v)
            return false;
        auto row = neighbours2(u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    auto Hypergraph::has_edge3(Vertex a, Vertex b, Vertex c) const -> bool
    {
        if (a >= _n || b >= _n || c >= _n)
            return false;
        return std::binary_search(_edges3.begin(), _edges3.end(), make_triple(a, b, c));
    }

    auto Hypergraph::profile() const -> DegreeProfile
    {
        DegreeProfile p;
        for (Vertex u = 0 ; u < _n ; ++u) {
            p.delta3 = std::max<std::size_t>(p.delta3, _inc3_offsets[u + 1] - _inc3_offsets[u]);
            p.delta2 = std::max<std::size_t>(p.delta2, _adj2_offsets[u + 1] - _adj2_offsets[u]);
        }
        for (auto & [key, count] : _codegree)
            p.codegree_max = std::max<std::size_t>(p.codegree_max, count);
        return p;
    }

    auto Hypergraph::codegree_pairs() const -> std::vector<std::pair<Pair, std::size_t>>
    {
        std::vector<std::pair<Pair, std::size_t>> result;
        result.reserve(_codegree.size());
        for (auto & [key, count] : _codegree)
            result.push_back({Pair{static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)}, count});
        std::sort(result.begin(), result.end());
        return result;
    }

    auto Hypergraph::induce(const std::vector<bool> & keep) const -> Hypergraph
    {
        if (keep.size() != _n)
            throw InputError("induce: mask has " + std::to_string(keep.size()) + " entries, expected " + std::to_string(_n));
        std::vector<Pair> e2;
        std::vector<Triple> e3;
        for (auto & e : _edges2)
            if (keep[e[0]] && keep[e[1]])
                e2.push_back(e);
        for (auto & e : _edges3)
            if (keep[e[0]] && keep[e[1]] && keep[e[2]])
                e3.push_back(e);
        return Hypergraph(_n, std::move(e2), std::move(e3));
    }

    auto Hypergraph::induce(std::span<const Vertex> keep) const -> Hypergraph
    {
        std::vector<bool> mask(_n, false);
        for (auto u : keep) {
            check_vertex(u);
            mask[u] = true;
        }
        return induce(mask);
    }

    auto Hypergraph::without_edges2() const -> Hypergraph
    {
        return Hypergraph(_n, {}, _edges3);
    }

    auto HypergraphBuilder::check(Vertex u) const -> void
    {
        if (u >= _n)
            throw InputError("vertex " + std::to_string(u) + " out of range (n = " + std::to_string(_n) + ")");
    }

    auto HypergraphBuilder::add_edge2(Vertex a, Vertex b) -> bool
    {
        check(a);
        check(b);
        if (a == b)
            throw InputError("2-edge repeats vertex " + std::to_string(a));
        if (! _pairs2.insert(pair_key(a, b)).second)
            return false;
        _edges2.push_back(make_pair_edge(a, b));
        if (_degree2.empty())
            _degree2.assign(_n, 0);
        ++_degree2[a];
        ++_degree2[b];
        return true;
    }

    auto HypergraphBuilder::add_edge3(Vertex a, Vertex b, Vertex c) -> bool
    {
        check(a);
        check(b);
        check(c);
        if (a == b || b == c || a == c)
            throw InputError("3-edge repeats a vertex");
        auto t = make_triple(a, b, c);
        if (! _triples.insert(t).second)
            return false;
        _edges3.push_back(t);
        ++_codegree[pair_key(t[0], t[1])];
        ++_codegree[pair_key(t[0], t[2])];
        ++_codegree[pair_key(t[1], t[2])];
        if (_degree3.empty())
            _degree3.assign(_n, 0);
        ++_degree3[a];
        ++_degree3[b];
        ++_degree3[c];
        return true;
    }

    auto HypergraphBuilder::contains2(Vertex a, Vertex b) const -> bool
    {
        return _pairs2.contains(pair_key(a, b));
    }

    auto HypergraphBuilder::contains3(Vertex a, Vertex b, Vertex c) const -> bool
    {
        return _triples.contains(make_triple(a, b, c));
    }

    auto HypergraphBuilder::codegree(Vertex a, Vertex b) const -> std::size_t
    {
        auto it = _codegree.find(pair_key(a, b));
        return it == _codegree.end() ? 0 : it->second;
    }

    auto HypergraphBuilder::build() const -> Hypergraph
    {
        return Hypergraph(_n, _edges2, _edges3);
    }

    namespace
    {
        auto parse_number(std::string_view token, std::size_t line) -> std::uint64_t
        {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size())
                throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
            return value;
        }

        auto tokenize(std::string_view line) -> std::vector<std::string_view>
        {
            if (auto hash = line.find('#') ; hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::vector<std::string_view> tokens;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                auto start = i;
                while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                if (i > start)
                    tokens.push_back(line.substr(start, i - start));
            }
            return tokens;
        }
    }

    auto parse_hypergraph(std::string_view text) -> Hypergraph
    {
        std::size_t line_no = 0, pos = 0;
        bool have_header = false;
        std::size_t n = 0, m2 = 0, m3 = 0;
        std::size_t last_line = 0;
        std::vector<Pair> e2;
        std::vector<Triple> e3;
        std::unordered_set<std::uint64_t> seen2;
        std::unordered_set<Triple, TripleHash> seen3;

        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            auto line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;

            auto tokens = tokenize(line);
            if (tokens.empty())
                continue;
            last_line = line_no;

            if (! have_header) {
                if (tokens.size() != 3)
                    throw ParseError(line_no, "header must be 'n m2 m3'");
                n = parse_number(tokens[0], line_no);
                m2 = parse_number(tokens[1], line_no);
                m3 = parse_number(tokens[2], line_no);
                if (n > std::numeric_limits<Vertex>::max())
                    throw ParseError(line_no, "vertex count too large");
                have_header = true;
                continue;
            }

            auto arity = parse_number(tokens[0], line_no);
            if ((arity != 2 && arity != 3) || tokens.size() != arity + 1)
                throw ParseError(line_no, "edge lines are '2 u v' or '3 u v w'");
            std::array<Vertex, 3> v{};
            for (std::size_t k = 0 ; k < arity ; ++k) {
                auto x = parse_number(tokens[k + 1], line_no);
                if (x >= n)
                    throw ParseError(line_no, "vertex " + std::to_string(x) + " >= n = " + std::to_string(n));
                v[k] = static_cast<Vertex>(x);
            }
            if (arity == 2) {
                if (v[0] == v[1])
                    throw ParseError(line_no, "2-edge repeats a vertex");
                if (! seen2.insert(pair_key(v[0], v[1])).second)
                    throw ParseError(line_no, "duplicate 2-edge");
                e2.push_back(make_pair_edge(v[0], v[1]));
            }
            else {
                auto t = make_triple(v[0], v[1], v[2]);
                if (t[0] == t[1] || t[1] == t[2])
                    throw ParseError(line_no, "3-edge repeats a vertex");
                if (! seen3.insert(t).second)
                    throw ParseError(line_no, "duplicate 3-edge");
                e3.push_back(t);
            }
        }

        if (! have_header)
            throw ParseError(line_no, "missing header 'n m2 m3'");
        if (e2.size() != m2 || e3.size() != m3)
            throw ParseError(last_line, "header announces " + std::to_string(m2) + " 2-edges and " + std::to_string(m3)
                    + " 3-edges, found " + std::to_string(e2.size()) + " and " + std::to_string(e3.size()));

        return Hypergraph(n, std::move(e2), std::move(e3));
    }

    auto serialize_hypergraph(const Hypergraph & h) -> std::string
    {
        std::ostringstream out;
        out << h.vertex_count() << ' ' << h.edges2().size() << ' ' << h.edges3().size() << '\n';
        for (auto & e : h.edges2())
            out << "2 " << e[0] << ' ' << e[1] << '\n';
        for (auto & e : h.edges3())
            out << "3 " << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
        return out.str();
    }

    auto read_text_file(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InputError("cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto read_hypergraph_file(const std::string & path) -> Hypergraph
    {
        return parse_hypergraph(read_text_file(path));
    }

    auto write_hypergraph_file(const Hypergraph & h, const std::string & path) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw InputError("cannot write '" + path + "'");
        out << serialize_hypergraph(h);
    }
}
