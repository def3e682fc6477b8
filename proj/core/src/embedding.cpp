#include "ppnear/embedding.hpp"

#include "ppnear/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

namespace ppnear {

namespace {

std::string tuple_string(const std::vector<Element>& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

constexpr std::size_t kMaxFailures = 10;

} // namespace

ValidatedScheme::ValidatedScheme(EncodingScheme s) : scheme_(std::move(s))
{
    for (std::size_t i = 0; i < scheme_.S.size(); ++i) {
        index_.emplace(scheme_.S[i], i);
        for (std::size_t len = 0; len < scheme_.n; ++len)
            prefixes_.emplace(scheme_.S[i].begin(), scheme_.S[i].begin() + static_cast<std::ptrdiff_t>(len));
    }
}

std::ptrdiff_t ValidatedScheme::find(const std::vector<Element>& tuple) const
{
    const auto it = index_.find(tuple);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool ValidatedScheme::is_prefix(const std::vector<Element>& partial) const
{
    return prefixes_.contains(partial);
}

ValidatedScheme validate_scheme(EncodingScheme s)
{
    const auto& K = s.K;
    const auto& G = s.G;
    if (s.n == 0)
        throw Error(Errc::invalid_argument, "scheme block length n must be >= 1");
    if (s.S.empty())
        throw Error(Errc::not_subgroup, "S is empty");

    std::map<std::vector<Element>, std::size_t> index;
    for (std::size_t i = 0; i < s.S.size(); ++i) {
        const auto& t = s.S[i];
        if (t.size() != s.n)
            throw Error(Errc::malformed_table, "S tuple " + tuple_string(t) + " does not have length " +
                                                   std::to_string(s.n));
        for (Element x : t)
            if (!K.contains(x))
                throw Error(Errc::invalid_element, "S tuple " + tuple_string(t) + " has entries outside K");
        if (!index.emplace(t, i).second)
            throw Error(Errc::malformed_table, "S lists " + tuple_string(t) + " twice");
    }

    const std::vector<Element> zero(s.n, 0);
    if (!index.contains(zero))
        throw Error(Errc::not_subgroup, "S does not contain the zero tuple");
    std::vector<std::size_t> sum(s.S.size() * s.S.size());
    for (std::size_t a = 0; a < s.S.size(); ++a) {
        std::vector<Element> neg(s.n);
        for (std::size_t c = 0; c < s.n; ++c)
            neg[c] = K.neg(s.S[a][c]);
        if (!index.contains(neg))
            throw Error(Errc::not_subgroup, "S is not closed under negation at " + tuple_string(s.S[a]));
        for (std::size_t b = 0; b < s.S.size(); ++b) {
            std::vector<Element> t(s.n);
            for (std::size_t c = 0; c < s.n; ++c)
                t[c] = K.add(s.S[a][c], s.S[b][c]);
            const auto it = index.find(t);
            if (it == index.end())
                throw Error(Errc::not_subgroup, "S is not closed: " + tuple_string(s.S[a]) + " + " +
                                                    tuple_string(s.S[b]) + " = " + tuple_string(t));
            sum[a * s.S.size() + b] = it->second;
        }
    }

    if (s.beta.size() != s.S.size())
        throw Error(Errc::malformed_table, "beta must have one entry per element of S");
    for (Element y : s.beta)
        if (!G.contains(y))
            throw Error(Errc::invalid_element, "beta value " + std::to_string(y) + " not in G");
    if (s.alpha_section.size() != G.order())
        throw Error(Errc::malformed_table, "alpha_section must have one entry per element of G");
    for (std::size_t i : s.alpha_section)
        if (i >= s.S.size())
            throw Error(Errc::malformed_table, "alpha_section index " + std::to_string(i) + " out of range");

    for (std::size_t a = 0; a < s.S.size(); ++a)
        for (std::size_t b = 0; b < s.S.size(); ++b)
            if (s.beta[sum[a * s.S.size() + b]] != G.add(s.beta[a], s.beta[b]))
                throw Error(Errc::not_homomorphism, "beta(s + t) != beta(s) + beta(t) for s = " +
                                                        tuple_string(s.S[a]) + ", t = " +
                                                        tuple_string(s.S[b]));

    std::vector<bool> hit(G.order(), false);
    for (Element y : s.beta)
        hit[y] = true;
    for (Element g = 0; g < G.order(); ++g)
        if (!hit[g])
            throw Error(Errc::not_surjective, "beta misses element " + std::to_string(g) + " of G");

    for (Element g = 0; g < G.order(); ++g)
        if (s.beta[s.alpha_section[g]] != g)
            throw Error(Errc::not_section, "beta(alpha_section(" + std::to_string(g) + ")) != " +
                                               std::to_string(g));
    if (s.S[s.alpha_section[0]] != zero)
        throw Error(Errc::not_section, "alpha_section must send 0 to the zero tuple");

    return ValidatedScheme(std::move(s));
}

Element PeriodicSequence::at(std::size_t i) const
{
    if (i == 0)
        throw Error(Errc::invalid_argument, "sequence positions are 1-based");
    if (i <= prefix.size())
        return prefix[i - 1];
    if (period.empty())
        throw Error(Errc::invalid_argument, "periodic sequence needs a nonempty period");
    return period[(i - prefix.size() - 1) % period.size()];
}

PeriodicSequence encode(const ValidatedScheme& s, Element g)
{
    if (!s.G().contains(g))
        throw Error(Errc::invalid_element, "element " + std::to_string(g) + " not in G");
    return {{}, s.section_tuple(g)};
}

Element decode(const ValidatedScheme& s, const PeriodicSequence& y)
{
    if (y.period.empty())
        throw Error(Errc::invalid_argument, "periodic sequence needs a nonempty period");
    const std::size_t n = s.n();
    const std::size_t len = y.period.size();

    // The periodic part is n-periodic iff the period is invariant under a shift by n.
    for (std::size_t j = 0; j < len; ++j)
        if (y.period[j] != y.period[(j + n) % len])
            return 0;

    const std::size_t p = y.prefix.size();
    for (std::size_t m = 0;; ++m) {
        const std::size_t from = m * n + 1;
        bool cycles = true;
        for (std::size_t i = from; i <= p && cycles; ++i)
            cycles = y.at(i) == y.at(i + n);
        if (!cycles)
            continue;
        std::vector<Element> block(n);
        for (std::size_t c = 0; c < n; ++c)
            block[c] = y.at(from + c);
        const auto idx = s.find(block);
        return idx < 0 ? Element{0} : s.scheme().beta[static_cast<std::size_t>(idx)];
    }
}

MealyMachine build_embedding_automaton(const ValidatedScheme& s, const FunctionTable& f)
{
    if (!(f.group() == s.G()))
        throw Error(Errc::group_mismatch, "f must be a map on G = " + s.G().label());
    if (!f.is_zero_preserving())
        throw Error(Errc::not_zero_preserving, "embedding needs a zero-preserving f");

    const auto& sc = s.scheme();
    const std::size_t n = sc.n;
    const std::size_t order = sc.K.order();

    // F = section o f o beta, as S-index -> S-index.
    std::vector<std::size_t> image(sc.S.size());
    for (std::size_t i = 0; i < sc.S.size(); ++i)
        image[i] = sc.alpha_section[f(sc.beta[i])];

    enum Kind { waiting, running, error };
    // (kind, partial block while waiting, recognized S index, position in block)
    using Key = std::tuple<int, std::vector<Element>, std::size_t, std::size_t>;
    std::map<Key, State> ids;
    std::vector<Key> keys;
    auto intern = [&](Key k) {
        const auto [it, inserted] = ids.emplace(k, static_cast<State>(keys.size()));
        if (inserted)
            keys.push_back(std::move(k));
        return it->second;
    };

    const Key sink{error, {}, 0, 0};
    intern(Key{waiting, {}, 0, 0});
    std::vector<State> trans;
    std::vector<Element> out;
    for (std::size_t q = 0; q < keys.size(); ++q) {
        const auto [kind, buf, sidx, pos] = keys[q];
        for (Element k = 0; k < order; ++k) {
            Key next = sink;
            Element y = 0;
            if (kind == waiting) {
                auto b = buf;
                b.push_back(k);
                if (b.size() < n) {
                    if (s.is_prefix(b))
                        next = Key{waiting, std::move(b), 0, 0};
                } else if (const auto idx = s.find(b); idx >= 0) {
                    const bool zero_block = std::all_of(b.begin(), b.end(), [](Element e) { return e == 0; });
                    next = zero_block ? Key{waiting, {}, 0, 0}
                                      : Key{running, {}, static_cast<std::size_t>(idx), 0};
                }
            } else if (kind == running) {
                y = sc.S[image[sidx]][pos];
                if (k == sc.S[sidx][pos])
                    next = Key{running, {}, sidx, (pos + 1) % n};
            }
            trans.push_back(intern(std::move(next)));
            out.push_back(y);
        }
    }
    return MealyMachine(sc.K, keys.size(), 0, std::move(trans), std::move(out));
}

Element embedded_apply(const ValidatedScheme& s, const MealyMachine& a, Element g, std::size_t depth)
{
    if (depth == 0)
        throw Error(Errc::invalid_argument, "depth must be >= 1");
    if (!(a.group() == s.K()))
        throw Error(Errc::group_mismatch, "machine must be over K = " + s.K().label());

    const std::size_t n = s.n();
    const auto e = encode(s, g);
    std::vector<Element> x((depth + 2) * n);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = e.at(i + 1);
    auto y = evaluate(a, x);

    const auto tail = y.end() - static_cast<std::ptrdiff_t>(n);
    if (!std::equal(tail - static_cast<std::ptrdiff_t>(n), tail, tail))
        throw Error(Errc::cycling_not_reached,
                    "output has not started cycling after " + std::to_string(x.size()) +
                        " symbols; depth " + std::to_string(depth) + " is too small");

    PeriodicSequence out{{y.begin(), tail}, {tail, y.end()}};
    return decode(s, out);
}

EmbeddingReport verify_embedding(const ValidatedScheme& s, std::size_t sample_pairs, std::uint64_t seed)
{
    const auto& G = s.G();
    const auto maps = all_zero_preserving_maps(G, 10000);
    std::vector<MealyMachine> built;
    built.reserve(maps.size());
    for (const auto& f : maps)
        built.push_back(build_embedding_automaton(s, f));

    EmbeddingReport r;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (r.failures.size() < kMaxFailures)
            r.failures.push_back(what);
    };
    auto map_string = [](const FunctionTable& f) { return tuple_string(f.values()); };

    for (std::size_t i = 0; i < maps.size(); ++i) {
        ++r.maps_checked;
        for (Element g = 0; g < G.order(); ++g) {
            const Element got = embedded_apply(s, built[i], g, 1);
            if (got != maps[i](g))
                fail(r.pointwise, "f = " + map_string(maps[i]) + ", g = " + std::to_string(g) +
                                      ": decoded " + std::to_string(got) + ", expected " +
                                      std::to_string(maps[i](g)));
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t total = maps.size() * maps.size();
    if (total <= sample_pairs) {
        for (std::size_t a = 0; a < maps.size(); ++a)
            for (std::size_t b = 0; b < maps.size(); ++b)
                pairs.emplace_back(a, b);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
        for (std::size_t i = 0; i < sample_pairs; ++i)
            pairs.emplace_back(pick(rng), pick(rng));
    }

    for (const auto& [a, b] : pairs) {
        ++r.pairs_checked;
        const auto sum = add(built[a], built[b]);
        const auto prod = compose(built[a], built[b]);
        for (Element g = 0; g < G.order(); ++g) {
            const Element want_sum = G.add(maps[a](g), maps[b](g));
            if (embedded_apply(s, sum, g, 1) != want_sum)
                fail(r.additive, "additive identity fails for f1 = " + map_string(maps[a]) +
                                     ", f2 = " + map_string(maps[b]) + ", g = " + std::to_string(g));
            const Element want_prod = maps[a](maps[b](g));
            if (embedded_apply(s, prod, g, 2) != want_prod)
                fail(r.multiplicative, "multiplicative identity fails for f1 = " + map_string(maps[a]) +
                                           ", f2 = " + map_string(maps[b]) + ", g = " + std::to_string(g));
        }
    }

    // Pairwise equivalence is quadratic; beyond 256 maps the pointwise check
    // already separates distinct f through decoding.
    if (maps.size() <= 256) {
        for (std::size_t a = 0; a < maps.size(); ++a)
            for (std::size_t b = a + 1; b < maps.size(); ++b)
                if (equivalent(built[a], built[b]))
                    fail(r.injective, "build(" + map_string(maps[a]) + ") is equivalent to build(" +
                                          map_string(maps[b]) + ")");
    } else if (!r.pointwise) {
        r.injective = false;
    }
    return r;
}

} // namespace ppnear
