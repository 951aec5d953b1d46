#include <hypercolor/lists.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hypercolor
{
    auto ListAssignment::uniform(std::size_t n, std::size_t colors) -> ListAssignment
    {
        ListAssignment result;
        result.palette = colors;
        std::vector<Color> all(colors);
        for (std::size_t c = 0 ; c < colors ; ++c)
            all[c] = static_cast<Color>(c);
        result.lists.assign(n, all);
        return result;
    }

    auto ListAssignment::allows(Vertex u, Color c) const -> bool
    {
        if (u >= lists.size())
            return false;
        return std::binary_search(lists[u].begin(), lists[u].end(), c);
    }

    auto ListAssignment::uniform_size() const -> std::size_t
    {
        if (lists.empty())
            return 0;
        auto size = lists.front().size();
        for (auto & l : lists)
            if (l.size() != size)
                return 0;
        return size;
    }

    auto ListAssignment::validate() -> void
    {
        for (std::size_t u = 0 ; u < lists.size() ; ++u) {
            auto & l = lists[u];
            std::sort(l.begin(), l.end());
            if (std::adjacent_find(l.begin(), l.end()) != l.end())
                throw InputError("list of vertex " + std::to_string(u) + " repeats a color");
            if (! l.empty() && l.back() >= palette)
                throw InputError("list of vertex " + std::to_string(u) + " uses a color outside the palette");
        }
    }

    auto parse_lists(std::string_view text) -> ListAssignment
    {
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t line_no = 0;
        ListAssignment result;
        std::size_t n = 0;
        bool have_header = false;

        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#') ; hash != std::string::npos)
                line.resize(hash);
            std::istringstream fields(line);
            std::vector<long long> values;
            std::string token;
            while (fields >> token) {
                long long v = 0;
                auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
                if (ec != std::errc{} || ptr != token.data() + token.size() || v < 0)
                    throw ParseError(line_no, "expected a non-negative integer, got '" + token + "'");
                values.push_back(v);
            }
            if (values.empty())
                continue;
            if (! have_header) {
                if (values.size() != 2)
                    throw ParseError(line_no, "header must be 'n palette'");
                n = static_cast<std::size_t>(values[0]);
                result.palette = static_cast<std::size_t>(values[1]);
                have_header = true;
                continue;
            }
            if (static_cast<std::size_t>(values[0]) + 1 != values.size())
                throw ParseError(line_no, "list line must be 'k c1 ... ck'");
            if (result.lists.size() >= n)
                throw ParseError(line_no, "more lists than vertices");
            std::vector<Color> l;
            for (std::size_t i = 1 ; i < values.size() ; ++i) {
                if (static_cast<std::size_t>(values[i]) >= result.palette)
                    throw ParseError(line_no, "color " + std::to_string(values[i]) + " outside the palette");
                l.push_back(static_cast<Color>(values[i]));
            }
            result.lists.push_back(std::move(l));
        }
        if (! have_header)
            throw ParseError(line_no, "missing header 'n palette'");
        if (result.lists.size() != n)
            throw ParseError(line_no, "expected " + std::to_string(n) + " lists, found " + std::to_string(result.lists.size()));
        result.validate();
        return result;
    }

    auto serialize_lists(const ListAssignment & lists) -> std::string
    {
        std::ostringstream out;
        out << lists.lists.size() << ' ' << lists.palette << '\n';
        for (auto & l : lists.lists) {
            out << l.size();
            for (auto c : l)
                out << ' ' << c;
            out << '\n';
        }
        return out.str();
    }
}
