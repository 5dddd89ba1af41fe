#include <skolem/demos.hpp>
#include <skolem/error.hpp>
#include <skolem/synthesis.hpp>

#include <set>
#include <sstream>

namespace skolem {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line)
{
    const auto c = line.find(';');
    return trim(c == std::string::npos ? line : line.substr(0, c));
}

[[noreturn]] void fail_line(const SourceText& src, std::size_t line, const std::string& msg)
{
    throw ParseError(src.origin, line, 1, msg);
}

bool is_binary(const std::string& s) { return s.find_first_not_of("01") == std::string::npos; }

struct Search {
    const std::vector<std::pair<std::string, std::string>>& tiles;
    std::vector<std::size_t> live;  // indices of tiles other than (eps, eps)
    const std::string& u;
    std::set<std::pair<std::size_t, std::size_t>> dead;
    std::vector<std::size_t> path;

    bool fits(const std::string& side, std::size_t at) const
    {
        return at + side.size() <= u.size() && u.compare(at, side.size(), side) == 0;
    }

    /// Each live tile advances i + j, so the state graph is acyclic.
    bool dfs(std::size_t i, std::size_t j)
    {
        if (i == u.size() && j == u.size() && ! path.empty())
            return true;
        if (dead.count({i, j}))
            return false;
        for (std::size_t t : live) {
            const auto& [alpha, beta] = tiles[t];
            if (! fits(alpha, i) || ! fits(beta, j))
                continue;
            path.push_back(t + 1);
            if (dfs(i + alpha.size(), j + beta.size()))
                return true;
            path.pop_back();
        }
        dead.insert({i, j});
        return false;
    }
};

}  // namespace

void validate(const PcpInstance& pcp)
{
    if (pcp.tiles.empty())
        throw DomainError("PCP instance has no tiles");
    for (const auto& [a, b] : pcp.tiles)
        if (! is_binary(a) || ! is_binary(b))
            throw DomainError("PCP tile '" + a + "," + b + "' is not over {0,1}");
}

PcpInstance parse_pcp(const SourceText& src)
{
    PcpInstance out;
    std::istringstream in(src.content);
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string text = strip_comment(raw);
        if (text.empty())
            continue;
        const auto comma = text.find(',');
        if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
            fail_line(src, line, "expected 'alpha,beta'");
        std::string a = trim(text.substr(0, comma));
        std::string b = trim(text.substr(comma + 1));
        if (! is_binary(a) || ! is_binary(b))
            fail_line(src, line, "tile sides must be binary strings");
        out.tiles.emplace_back(std::move(a), std::move(b));
    }
    if (out.tiles.empty())
        throw ParseError(src.origin, 1, 1, "no tiles");
    return out;
}

std::optional<std::vector<std::size_t>> pcp_witness(const PcpInstance& pcp, const std::string& u)
{
    validate(pcp);
    if (! is_binary(u))
        return std::nullopt;
    Search s{pcp.tiles, {}, u, {}, {}};
    for (std::size_t t = 0; t < pcp.tiles.size(); ++t) {
        if (pcp.tiles[t].first.empty() && pcp.tiles[t].second.empty()) {
            if (u.empty())
                return std::vector<std::size_t>{t + 1};
            continue;
        }
        s.live.push_back(t);
    }
    if (s.dfs(0, 0))
        return s.path;
    return std::nullopt;
}

bool pcp_oracle(const PcpInstance& pcp, const std::string& u) { return pcp_witness(pcp, u).has_value(); }

std::optional<PcpSolution> pcp_search(const PcpInstance& pcp, std::size_t max_len)
{
    validate(pcp);
    for (std::size_t len = 0; len <= max_len && len < 64; ++len) {
        const std::uint64_t count = std::uint64_t{1} << len;
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            std::string u(len, '0');
            for (std::size_t i = 0; i < len; ++i)
                if (bits >> (len - 1 - i) & 1)
                    u[i] = '1';
            if (auto w = pcp_witness(pcp, u))
                return PcpSolution{u, *w};
        }
    }
    return std::nullopt;
}

std::size_t PolynomialSpec::unknowns() const
{
    return monomials.empty() ? 0 : monomials.front().exponents.size() - 1;
}

Integer PolynomialSpec::eval(const Integer& x, const std::vector<Integer>& y) const
{
    if (y.size() != unknowns())
        throw ArityError("polynomial has " + std::to_string(unknowns()) + " unknowns, got "
            + std::to_string(y.size()));
    Integer sum = 0;
    for (const auto& m : monomials) {
        Integer term = m.coeff * boost::multiprecision::pow(x, m.exponents[0]);
        for (std::size_t i = 0; i < y.size() && term != 0; ++i)
            term *= boost::multiprecision::pow(y[i], m.exponents[i + 1]);
        sum += term;
    }
    return sum;
}

PolynomialSpec parse_polynomial(const SourceText& src)
{
    PolynomialSpec out;
    std::istringstream in(src.content);
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string text = strip_comment(raw);
        if (text.empty())
            continue;
        std::istringstream fields(text);
        std::vector<std::string> words;
        for (std::string w; fields >> w;)
            words.push_back(w);
        if (words.size() < 3)
            fail_line(src, line, "expected 'coeff e_x e_y1 ... e_yk' with k >= 1");
        Monomial m;
        auto c = parse_rational(words[0]);
        if (! c || ! is_integral(*c))
            fail_line(src, line, "coefficient must be an integer");
        m.coeff = boost::multiprecision::numerator(*c);
        for (std::size_t i = 1; i < words.size(); ++i) {
            const auto& w = words[i];
            if (w.empty() || w.size() > 9 || w.find_first_not_of("0123456789") != std::string::npos)
                fail_line(src, line, "exponent must be a nonnegative integer");
            m.exponents.push_back(static_cast<std::uint32_t>(std::stoul(w)));
        }
        if (! out.monomials.empty() && m.exponents.size() != out.monomials.front().exponents.size())
            fail_line(src, line, "monomials disagree on the number of unknowns");
        out.monomials.push_back(std::move(m));
    }
    if (out.monomials.empty())
        throw ParseError(src.origin, 1, 1, "no monomials");
    return out;
}

DiophResult dioph_search(const PolynomialSpec& p, const Integer& x, std::uint64_t fuel)
{
    if (p.unknowns() == 0)
        throw DomainError("polynomial needs at least one unknown");
    DiophResult out;
    DiagonalTuples tuples(p.unknowns());
    while (out.tried < fuel) {
        ++out.tried;
        std::vector<Integer> y(tuples.current().begin(), tuples.current().end());
        if (p.eval(x, y) == 0) {
            out.roots = std::move(y);
            return out;
        }
        tuples.next();
    }
    return out;
}

}  // namespace skolem
