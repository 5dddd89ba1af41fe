#pragma once

#include <skolem/number.hpp>
#include <skolem/syntax.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skolem {

/// Post correspondence instance over {0,1}.
struct PcpInstance {
    std::vector<std::pair<std::string, std::string>> tiles;
};

/// Throws DomainError on an empty tile list or a non-binary character.
void validate(const PcpInstance& pcp);

/// One tile per line as `alpha,beta`; either side may be empty. Blank lines
/// and `;` comments are skipped.
PcpInstance parse_pcp(const SourceText& src);

/// Whether a nonempty index sequence spells `u` on both sides.
bool pcp_oracle(const PcpInstance& pcp, const std::string& u);

/// As pcp_oracle, returning the lexicographically least (1-based) index
/// sequence when one exists.
std::optional<std::vector<std::size_t>> pcp_witness(const PcpInstance& pcp, const std::string& u);

struct PcpSolution {
    std::string word;
    std::vector<std::size_t> indices;
};

/// Shortest solution word of length at most `max_len`, lexicographically
/// least among those of that length.
std::optional<PcpSolution> pcp_search(const PcpInstance& pcp, std::size_t max_len);

struct Monomial {
    Integer coeff;
    /// Exponent of x followed by the exponents of y1..yk.
    std::vector<std::uint32_t> exponents;
};

/// Integer polynomial P(x, y1, ..., yk), k >= 1.
struct PolynomialSpec {
    std::vector<Monomial> monomials;

    std::size_t unknowns() const;
    Integer eval(const Integer& x, const std::vector<Integer>& y) const;
};

/// One monomial per line as `coeff e_x e_y1 ... e_yk`.
PolynomialSpec parse_polynomial(const SourceText& src);

struct DiophResult {
    /// Empty when the fuel ran out first.
    std::optional<std::vector<Integer>> roots;
    std::uint64_t tried = 0;

    bool found() const { return roots.has_value(); }
};

/// Tries the first `fuel` y-tuples in diagonal order. Never answers "no".
DiophResult dioph_search(const PolynomialSpec& p, const Integer& x, std::uint64_t fuel);

}  // namespace skolem
