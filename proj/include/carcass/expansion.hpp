#pragma once

#include "carcass/preimage_grid.hpp"
#include "carcass/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace carcass {

enum class Finiteness {
    finite,     // the implicit tail is all zeros; bits carry no trailing zero
    truncated,  // prefix of an infinite expansion, cut at the stored depth
};

/// A point encoded against a map's grid hierarchy: bit x_i records which
/// child interval contains the point at refinement step i. bits always start
/// with the sentinel x_0 = 0. For the tent map this is the binary expansion.
struct GExpansion {
    std::vector<int> bits;  // x_0, x_1, ...
    Finiteness finiteness = Finiteness::finite;

    std::size_t explicit_bits() const { return bits.size(); }

    /// x_i with zero-padding past the stored bits of a finite expansion.
    /// Throws BitsExhaustedError past the prefix of a truncated one.
    int bit(std::size_t i) const;
};

/// First `depth` bits (x_0 included) of the expansion of x. A point that is
/// a grid point at level <= depth comes back in its exact finite form, which
/// may be shorter than depth. Needs grid levels only up to n0 + 1.
GExpansion encode(const PreimageGrid& grid, const Rational& x, unsigned depth);

/// The level-(n+1) interval [mu_{n+1,k_n}, mu_{n+1,k_n+1}] selected by the
/// first n bits after x_0. When every explicit bit of a finite expansion has
/// been consumed the point itself is pinned and the degenerate interval
/// [mu, mu] is returned.
std::pair<Rational, Rational> decode(const PreimageGrid& grid, const GExpansion& e, unsigned n);

/// The expansion of g(x) from the expansion of x: drop x_1, and reflect
/// everything after it when x_1 = 1. Finite inputs stay exact: reflecting a
/// zero tail yields a ones tail, which is re-canonicalised by incrementing
/// the remaining bits.
GExpansion shift(const GExpansion& e);

/// -1 / 0 / +1 in lexicographic order, finite expansions zero-padded.
/// Truncated expansions compare equal when they agree through their prefix.
int lex_compare(const GExpansion& a, const GExpansion& b);

/// Parity of sum_{i=1}^{n} |x_i - x_{i-1}|.
int alpha_parity(const GExpansion& e, std::size_t n);

/// The (n0-1)-bit window index p_i = sum_{j=i-n0+2}^{i} Rot^{x_{i+1-n0}}(x_j) 2^{i-j}
/// that the width product reads its subdivision ratios through.
std::uint64_t p_index(const GExpansion& e, std::size_t i, unsigned n0);

/// Text form "0.x_1x_2...x_n".
std::string expansion_text(const GExpansion& e);
GExpansion parse_expansion(const std::string& text,
                           Finiteness finiteness = Finiteness::finite);

}  // namespace carcass
