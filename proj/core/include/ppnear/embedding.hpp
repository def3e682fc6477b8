#pragma once

#include "ppnear/group.hpp"
#include "ppnear/mealy.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ppnear {

/// Data realizing G as a homomorphic image of a subgroup S of K^n.
///
/// `S` lists the tuples of the subgroup; `beta[i]` is the image in G of
/// `S[i]`; `alpha_section[g]` is the index in `S` of the chosen preimage of g.
/// Whether G actually lies in the variety of K is the caller's business;
/// validate_scheme() checks everything that is checkable from the tables.
struct EncodingScheme {
    FiniteGroup K;
    std::size_t n;
    std::vector<std::vector<Element>> S;
    std::vector<Element> beta;
    std::vector<std::size_t> alpha_section;
    FiniteGroup G;
};

/// A scheme whose invariants have been verified, plus lookup tables.
class ValidatedScheme {
public:
    [[nodiscard]] const EncodingScheme& scheme() const noexcept { return scheme_; }
    [[nodiscard]] const FiniteGroup& K() const noexcept { return scheme_.K; }
    [[nodiscard]] const FiniteGroup& G() const noexcept { return scheme_.G; }
    [[nodiscard]] std::size_t n() const noexcept { return scheme_.n; }

    /// Index of `tuple` in S, or -1.
    [[nodiscard]] std::ptrdiff_t find(const std::vector<Element>& tuple) const;
    [[nodiscard]] bool is_prefix(const std::vector<Element>& partial) const;
    [[nodiscard]] const std::vector<Element>& section_tuple(Element g) const
    {
        return scheme_.S[scheme_.alpha_section[g]];
    }

private:
    friend ValidatedScheme validate_scheme(EncodingScheme s);
    explicit ValidatedScheme(EncodingScheme s);

    EncodingScheme scheme_;
    std::map<std::vector<Element>, std::size_t> index_;
    std::set<std::vector<Element>> prefixes_;
};

/// Checks (exhaustively) that S is a subgroup of K^n, beta a surjective
/// homomorphism S -> G, and alpha_section a section of beta with
/// alpha_section(0) the zero tuple. Each failure has its own Errc.
[[nodiscard]] ValidatedScheme validate_scheme(EncodingScheme s);

/// The infinite sequence prefix . period . period . ...
struct PeriodicSequence {
    std::vector<Element> prefix;
    std::vector<Element> period;

    /// 1-based access.
    [[nodiscard]] Element at(std::size_t i) const;
    friend bool operator==(const PeriodicSequence&, const PeriodicSequence&) = default;
};

/// e(g): the section tuple of g repeated forever.
[[nodiscard]] PeriodicSequence encode(const ValidatedScheme& s, Element g);

/// d(y): beta of the first n-block from which y is n-periodic; 0 when y
/// never becomes n-periodic or that block is outside S.
[[nodiscard]] Element decode(const ValidatedScheme& s, const PeriodicSequence& y);

/// Machine over K implementing f in M0(G) on encoded inputs.
///
/// It waits through whole blocks of zeros, recognizes the first nonzero
/// block s in S while still emitting 0, then emits F(s) = section(f(beta(s)))
/// componentwise as long as s keeps repeating. Any input that leaves this
/// grammar drives it into an absorbing error state that emits 0. Only
/// reachable states are built.
[[nodiscard]] MealyMachine build_embedding_automaton(const ValidatedScheme& s, const FunctionTable& f);

/// d(a(e(g))) for a machine formed from `depth` chained built automata.
/// Runs a on (depth + 2) * n symbols of e(g) and requires the last two
/// output blocks to agree (Errc::cycling_not_reached otherwise).
[[nodiscard]] Element embedded_apply(const ValidatedScheme& s, const MealyMachine& a, Element g,
                                     std::size_t depth);

struct EmbeddingReport {
    std::size_t maps_checked = 0;
    std::size_t pairs_checked = 0;
    bool pointwise = true;
    bool additive = true;
    bool multiplicative = true;
    bool injective = true;
    std::vector<std::string> failures;

    [[nodiscard]] bool ok() const noexcept
    {
        return pointwise && additive && multiplicative && injective;
    }
};

/// Runs the embedding over every f in M0(G) (guarded at 10^4 maps), checks
/// the additive and multiplicative identities on `sample_pairs` ordered pairs
/// (all pairs when there are fewer), and pairwise non-equivalence of the
/// built machines. Pair sampling is deterministic in `seed`.
[[nodiscard]] EmbeddingReport verify_embedding(const ValidatedScheme& s,
                                               std::size_t sample_pairs = 64,
                                               std::uint64_t seed = 1);

} // namespace ppnear
