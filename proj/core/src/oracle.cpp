#include "ppnear/oracle.hpp"

#include "ppnear/error.hpp"
#include "ppnear/radical.hpp"

#include "json_format.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace ppnear {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kSubgroupLimit = 100;
constexpr std::size_t kDistributivityExhaustive = 16;
constexpr std::size_t kSampleCount = 10000;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > kSaturated / a)
        return kSaturated;
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp && r != kSaturated; ++i)
        r = sat_mul(r, base);
    return r;
}

std::size_t ipow(std::size_t base, std::size_t exp)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i)
        r *= base;
    return r;
}

void require_n(std::size_t n)
{
    if (n == 0)
        throw Error(Errc::invalid_argument, "n must be >= 1");
}

// One free value per slot; every position listed in a slot receives it.
using Slot = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<TriangularMap> enumerate_slots(const FiniteGroup& g, std::size_t n, const std::vector<Slot>& slots,
                                           std::size_t guard, const char* what)
{
    const std::uint64_t count = sat_pow(g.order(), slots.size());
    if (count > guard)
        throw Error(Errc::size_guard, std::string(what) + " over " + g.label() + " with n = " +
                                          std::to_string(n) + " has " +
                                          (count == kSaturated ? std::string("more than 2^64")
                                                               : std::to_string(count)) +
                                          " elements, above the guard of " + std::to_string(guard));

    std::vector<std::vector<Element>> comps(n);
    for (std::size_t i = 0; i < n; ++i)
        comps[i].assign(ipow(g.order(), i + 1), 0);

    std::vector<Element> digits(slots.size(), 0);
    std::vector<TriangularMap> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t c = 0; c < count; ++c) {
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (const auto& [comp, idx] : slots[s])
                comps[comp][idx] = digits[s];
        out.emplace_back(g, comps);
        for (std::size_t s = slots.size(); s-- > 0;) {
            if (++digits[s] < g.order())
                break;
            digits[s] = 0;
        }
    }
    return out;
}

std::vector<Slot> pp_slots(std::size_t order, std::size_t n)
{
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t idx = 1; idx < ipow(order, i + 1); ++idx)
            slots.push_back({{i, idx}});
    return slots;
}

std::vector<Slot> ker_alpha_slots(std::size_t order, std::size_t n)
{
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t idx = order; idx < ipow(order, i + 1); ++idx)
            slots.push_back({{i, idx}});
    return slots;
}

std::vector<Slot> delaying_slots(std::size_t order, std::size_t n)
{
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t prefix = 1; prefix < ipow(order, i); ++prefix) {
            Slot s;
            for (std::size_t t = 0; t < order; ++t)
                s.emplace_back(i, prefix * order + t);
            slots.push_back(std::move(s));
        }
    return slots;
}

TriangularMap random_from_slots(const FiniteGroup& g, std::size_t n, const std::vector<Slot>& slots,
                                std::mt19937_64& rng)
{
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
    auto t = TriangularMap::zero(g, n);
    auto comps = t.components();
    for (const auto& s : slots) {
        const Element v = pick(rng);
        for (const auto& [comp, idx] : s)
            comps[comp][idx] = v;
    }
    return {g, std::move(comps)};
}

using Bits = std::vector<bool>;

LeftIdealSet to_set(const Bits& bits)
{
    LeftIdealSet s;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            s.members.push_back(i);
    return s;
}

Bits to_bits(const LeftIdealSet& s, std::size_t size)
{
    Bits b(size, false);
    for (auto i : s.members)
        b.at(i) = true;
    return b;
}

bool proper_subset(const LeftIdealSet& a, const LeftIdealSet& b)
{
    return a.size() < b.size() && std::includes(b.members.begin(), b.members.end(), a.members.begin(),
                                                a.members.end());
}

void require_small(const FiniteNearring& nr, const char* what)
{
    if (nr.size() > kSubgroupLimit)
        throw Error(Errc::size_guard, std::string(what) + " is limited to nearrings with at most " +
                                          std::to_string(kSubgroupLimit) + " elements (got " +
                                          std::to_string(nr.size()) + ")");
}

Bits closure(const FiniteNearring& nr, const std::vector<std::size_t>& gens)
{
    Bits in(nr.size(), false);
    std::vector<std::size_t> list{nr.zero_index()};
    in[nr.zero_index()] = true;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (auto gen : gens) {
            const auto s = nr.add(list[i], gen);
            if (!in[s]) {
                in[s] = true;
                list.push_back(s);
            }
        }
    return in;
}

bool is_n_subgroup(const FiniteNearring& nr, const LeftIdealSet& h)
{
    const auto bits = to_bits(h, nr.size());
    for (std::size_t x = 0; x < nr.size(); ++x)
        for (auto y : h.members)
            if (!bits[nr.mul(x, y)])
                return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// TriangularMap

TriangularMap::TriangularMap(FiniteGroup group, std::vector<std::vector<Element>> components)
    : group_(std::move(group)), components_(std::move(components))
{
    if (components_.empty())
        throw Error(Errc::invalid_argument, "triangular map needs n >= 1 components");
    std::size_t expected = 1;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        expected *= group_.order();
        if (components_[i].size() != expected)
            throw Error(Errc::malformed_table, "component " + std::to_string(i + 1) + " must have " +
                                                   std::to_string(expected) + " entries");
        for (Element v : components_[i])
            if (!group_.contains(v))
                throw Error(Errc::invalid_element, "component value " + std::to_string(v) + " not in group");
        if (components_[i][0] != 0)
            throw Error(Errc::not_zero_symmetric,
                        "component " + std::to_string(i + 1) + " does not map the zero prefix to 0");
    }
}

TriangularMap TriangularMap::zero(const FiniteGroup& g, std::size_t n)
{
    require_n(n);
    std::vector<std::vector<Element>> comps(n);
    for (std::size_t i = 0; i < n; ++i)
        comps[i].assign(ipow(g.order(), i + 1), 0);
    return {g, std::move(comps)};
}

TriangularMap TriangularMap::identity(const FiniteGroup& g, std::size_t n)
{
    require_n(n);
    std::vector<std::vector<Element>> comps(n);
    for (std::size_t i = 0; i < n; ++i) {
        comps[i].resize(ipow(g.order(), i + 1));
        for (std::size_t idx = 0; idx < comps[i].size(); ++idx)
            comps[i][idx] = static_cast<Element>(idx % g.order());
    }
    return {g, std::move(comps)};
}

std::vector<Element> TriangularMap::apply(std::span<const Element> x) const
{
    if (x.size() != n())
        throw Error(Errc::invalid_argument, "input must have length " + std::to_string(n()));
    std::vector<Element> y(n());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n(); ++i) {
        if (!group_.contains(x[i]))
            throw Error(Errc::invalid_element, "input " + std::to_string(x[i]) + " not in group");
        idx = idx * group_.order() + x[i];
        y[i] = components_[i][idx];
    }
    return y;
}

TriangularMap operator+(const TriangularMap& a, const TriangularMap& b)
{
    if (!(a.group() == b.group()) || a.n() != b.n())
        throw Error(Errc::group_mismatch, "triangular maps live in different nearrings");
    auto comps = a.components();
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t idx = 0; idx < comps[i].size(); ++idx)
            comps[i][idx] = a.group().add(comps[i][idx], b.components()[i][idx]);
    return {a.group(), std::move(comps)};
}

TriangularMap negate(const TriangularMap& a)
{
    auto comps = a.components();
    for (auto& c : comps)
        for (auto& v : c)
            v = a.group().neg(v);
    return {a.group(), std::move(comps)};
}

TriangularMap compose(const TriangularMap& a, const TriangularMap& b)
{
    if (!(a.group() == b.group()) || a.n() != b.n())
        throw Error(Errc::group_mismatch, "triangular maps live in different nearrings");
    const std::size_t order = a.group().order();
    auto comps = a.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t idx = 0; idx < comps[i].size(); ++idx) {
            // Prefix of length j + 1 of the argument has index idx / order^(i - j).
            std::size_t inner = 0;
            for (std::size_t j = 0; j <= i; ++j) {
                const std::size_t prefix = idx / ipow(order, i - j);
                inner = inner * order + b.components()[j][prefix];
            }
            comps[i][idx] = a.components()[i][inner];
        }
    }
    return {a.group(), std::move(comps)};
}

bool in_ker_alpha(const TriangularMap& t)
{
    for (const auto& c : t.components())
        for (Element x = 0; x < t.group().order(); ++x)
            if (c[x] != 0)
                return false;
    return true;
}

bool is_delaying(const TriangularMap& t)
{
    const std::size_t order = t.group().order();
    for (const auto& c : t.components())
        for (std::size_t idx = 0; idx < c.size(); ++idx)
            if (c[idx] != c[idx - idx % order])
                return false;
    return true;
}

bool LeftIdealSet::contains(std::size_t i) const
{
    return std::binary_search(members.begin(), members.end(), i);
}

// ---------------------------------------------------------------------------
// FiniteNearring

FiniteNearring FiniteNearring::from_elements(FiniteGroup g, std::size_t n, std::vector<TriangularMap> elements)
{
    require_n(n);
    if (elements.empty())
        throw Error(Errc::invalid_argument, "nearring must be nonempty");

    FiniteNearring nr(std::move(g), n);
    nr.elements_ = std::move(elements);
    for (std::size_t i = 0; i < nr.elements_.size(); ++i) {
        const auto& e = nr.elements_[i];
        if (!(e.group() == nr.group_) || e.n() != n)
            throw Error(Errc::group_mismatch, "element " + std::to_string(i) + " is not in PP_n(G)");
        if (!nr.index_.emplace(e.components(), i).second)
            throw Error(Errc::invalid_argument, "element " + std::to_string(i) + " is listed twice");
    }

    const auto zero = nr.index_of(TriangularMap::zero(nr.group_, n));
    const auto one = nr.index_of(TriangularMap::identity(nr.group_, n));
    if (!zero || !one)
        throw Error(Errc::invalid_argument, "nearring must contain the zero and identity maps");
    nr.zero_ = *zero;
    nr.identity_ = *one;

    const std::size_t size = nr.elements_.size();
    if (size <= kTableLimit) {
        nr.add_.resize(size * size);
        nr.mul_.resize(size * size);
        nr.neg_.resize(size);
        for (std::size_t a = 0; a < size; ++a) {
            nr.neg_[a] = nr.lookup(negate(nr.elements_[a]));
            for (std::size_t b = 0; b < size; ++b) {
                nr.add_[a * size + b] = nr.lookup(nr.elements_[a] + nr.elements_[b]);
                nr.mul_[a * size + b] = nr.lookup(compose(nr.elements_[a], nr.elements_[b]));
            }
        }
    } else {
        std::mt19937_64 rng(0);
        std::uniform_int_distribution<std::size_t> pick(0, size - 1);
        for (std::size_t s = 0; s < kSampleCount; ++s) {
            const auto a = pick(rng), b = pick(rng);
            (void)nr.add(a, b);
            (void)nr.mul(a, b);
            (void)nr.neg(a);
        }
    }

    auto right_distributive = [&](std::size_t a, std::size_t b, std::size_t c) {
        return nr.mul(nr.add(a, b), c) == nr.add(nr.mul(a, c), nr.mul(b, c));
    };
    if (size <= kDistributivityExhaustive) {
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = 0; b < size; ++b)
                for (std::size_t c = 0; c < size; ++c)
                    if (!right_distributive(a, b, c))
                        throw Error(Errc::invalid_argument, "right distributivity fails");
    } else {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<std::size_t> pick(0, size - 1);
        for (std::size_t s = 0; s < kSampleCount; ++s)
            if (!right_distributive(pick(rng), pick(rng), pick(rng)))
                throw Error(Errc::invalid_argument, "right distributivity fails");
    }
    return nr;
}

std::optional<std::size_t> FiniteNearring::index_of(const TriangularMap& t) const
{
    if (!(t.group() == group_) || t.n() != n_)
        return std::nullopt;
    const auto it = index_.find(t.components());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t FiniteNearring::lookup(const TriangularMap& t) const
{
    const auto idx = index_of(t);
    if (!idx)
        throw Error(Errc::invalid_argument, "element set is not closed under the nearring operations");
    return *idx;
}

std::size_t FiniteNearring::add(std::size_t a, std::size_t b) const
{
    if (!add_.empty())
        return add_.at(a * size() + b);
    return lookup(element(a) + element(b));
}

std::size_t FiniteNearring::neg(std::size_t a) const
{
    if (!neg_.empty())
        return neg_.at(a);
    return lookup(negate(element(a)));
}

std::size_t FiniteNearring::mul(std::size_t a, std::size_t b) const
{
    if (!mul_.empty())
        return mul_.at(a * size() + b);
    return lookup(compose(element(a), element(b)));
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t pp_n_size(const FiniteGroup& g, std::size_t n)
{
    require_n(n);
    return sat_pow(g.order(), pp_slots(g.order(), n).size());
}

std::uint64_t ker_alpha_size(const FiniteGroup& g, std::size_t n)
{
    require_n(n);
    return sat_pow(g.order(), ker_alpha_slots(g.order(), n).size());
}

std::uint64_t delaying_size(const FiniteGroup& g, std::size_t n)
{
    require_n(n);
    return sat_pow(g.order(), delaying_slots(g.order(), n).size());
}

FiniteNearring enumerate_pp_n(const FiniteGroup& g, std::size_t n, std::size_t guard)
{
    require_n(n);
    auto elements = enumerate_slots(g, n, pp_slots(g.order(), n), guard, "PP_n(G)");
    return FiniteNearring::from_elements(g, n, std::move(elements));
}

std::vector<TriangularMap> enumerate_ker_alpha_maps(const FiniteGroup& g, std::size_t n, std::size_t guard)
{
    require_n(n);
    return enumerate_slots(g, n, ker_alpha_slots(g.order(), n), guard, "ker alpha_n");
}

std::vector<TriangularMap> enumerate_delaying_maps(const FiniteGroup& g, std::size_t n, std::size_t guard)
{
    require_n(n);
    return enumerate_slots(g, n, delaying_slots(g.order(), n), guard, "D_n");
}

// ---------------------------------------------------------------------------
// Machines <-> triangular maps

TriangularMap restrict_machine(const MealyMachine& m, std::size_t n)
{
    require_n(n);
    if (!is_zero_symmetric(m))
        throw Error(Errc::not_zero_symmetric, "only zero-symmetric machines restrict into PP_n(G)");
    const std::size_t order = m.group().order();
    std::vector<std::vector<Element>> comps(n);
    std::vector<State> level{m.start()};  // state after each prefix of the current length
    for (std::size_t i = 0; i < n; ++i) {
        comps[i].resize(level.size() * order);
        std::vector<State> next(level.size() * order);
        for (std::size_t p = 0; p < level.size(); ++p)
            for (Element x = 0; x < order; ++x) {
                comps[i][p * order + x] = m.output(level[p], x);
                next[p * order + x] = m.next(level[p], x);
            }
        level = std::move(next);
    }
    return {m.group(), std::move(comps)};
}

MealyMachine triangular_to_machine(const TriangularMap& t)
{
    const std::size_t order = t.group().order();
    const std::size_t n = t.n();
    // Histories of length L occupy [offset[L], offset[L] + order^L).
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t len = 1; len <= n; ++len)
        offset[len] = offset[len - 1] + ipow(order, len - 1);
    const std::size_t sink = offset[n];
    const std::size_t states = sink + 1;

    std::vector<State> trans(states * order, static_cast<State>(sink));
    std::vector<Element> out(states * order, 0);
    for (std::size_t len = 0; len < n; ++len)
        for (std::size_t h = 0; h < ipow(order, len); ++h) {
            const std::size_t q = offset[len] + h;
            for (Element x = 0; x < order; ++x) {
                const std::size_t child = h * order + x;
                out[q * order + x] = t.component(len + 1)[child];
                if (len + 1 < n)
                    trans[q * order + x] = static_cast<State>(offset[len + 1] + child);
            }
        }
    return MealyMachine(t.group(), states, 0, std::move(trans), std::move(out));
}

// ---------------------------------------------------------------------------
// Ideals and J_2

bool is_additive_subgroup(const FiniteNearring& nr, const LeftIdealSet& s)
{
    if (!s.contains(nr.zero_index()))
        return false;
    const auto bits = to_bits(s, nr.size());
    for (auto a : s.members) {
        if (!bits[nr.neg(a)])
            return false;
        for (auto b : s.members)
            if (!bits[nr.add(a, b)])
                return false;
    }
    return true;
}

bool is_left_ideal(const FiniteNearring& nr, const LeftIdealSet& s)
{
    if (!is_additive_subgroup(nr, s))
        return false;
    const auto bits = to_bits(s, nr.size());
    for (std::size_t a = 0; a < nr.size(); ++a)
        for (auto l : s.members)
            if (!bits[nr.add(nr.add(a, l), nr.neg(a))])
                return false;
    for (std::size_t x = 0; x < nr.size(); ++x)
        for (std::size_t m = 0; m < nr.size(); ++m) {
            const auto xm = nr.mul(x, m);
            for (auto l : s.members)
                if (!bits[nr.add(nr.mul(x, nr.add(m, l)), nr.neg(xm))])
                    return false;
        }
    return true;
}

bool is_ideal(const FiniteNearring& nr, const LeftIdealSet& s)
{
    if (!is_left_ideal(nr, s))
        return false;
    const auto bits = to_bits(s, nr.size());
    for (auto l : s.members)
        for (std::size_t m = 0; m < nr.size(); ++m)
            if (!bits[nr.mul(l, m)])
                return false;
    return true;
}

LeftIdealSet ker_alpha_subset(const FiniteNearring& nr)
{
    LeftIdealSet s;
    for (std::size_t i = 0; i < nr.size(); ++i)
        if (in_ker_alpha(nr.element(i)))
            s.members.push_back(i);
    if (nr.size() <= FiniteNearring::kTableLimit && !is_left_ideal(nr, s))
        throw Error(Errc::invalid_argument, "internal: ker alpha is not a left ideal");
    return s;
}

LeftIdealSet delaying_subset(const FiniteNearring& nr)
{
    LeftIdealSet s;
    for (std::size_t i = 0; i < nr.size(); ++i)
        if (is_delaying(nr.element(i)))
            s.members.push_back(i);
    return s;
}

std::vector<LeftIdealSet> enumerate_subgroups(const FiniteNearring& nr)
{
    require_small(nr, "subgroup enumeration");
    std::set<Bits> seen;
    std::vector<std::pair<Bits, std::vector<std::size_t>>> work;
    const Bits trivial = closure(nr, {});
    seen.insert(trivial);
    work.emplace_back(trivial, std::vector<std::size_t>{});
    for (std::size_t w = 0; w < work.size(); ++w) {
        for (std::size_t a = 0; a < nr.size(); ++a) {
            if (work[w].first[a])
                continue;
            auto gens = work[w].second;
            gens.push_back(a);
            auto h = closure(nr, gens);
            if (seen.insert(h).second)
                work.emplace_back(std::move(h), std::move(gens));
        }
    }

    std::vector<LeftIdealSet> out;
    out.reserve(seen.size());
    for (const auto& b : seen)
        out.push_back(to_set(b));
    std::sort(out.begin(), out.end(), [](const LeftIdealSet& x, const LeftIdealSet& y) {
        return x.size() != y.size() ? x.size() < y.size() : x.members < y.members;
    });
    return out;
}

std::vector<LeftIdealSet> enumerate_left_ideals(const FiniteNearring& nr)
{
    std::vector<LeftIdealSet> out;
    for (auto& s : enumerate_subgroups(nr))
        if (is_left_ideal(nr, s))
            out.push_back(std::move(s));
    return out;
}

LeftIdealSet quotient_annihilator(const FiniteNearring& nr, const LeftIdealSet& l)
{
    const auto bits = to_bits(l, nr.size());
    LeftIdealSet ann;
    for (std::size_t x = 0; x < nr.size(); ++x) {
        bool kills = true;
        for (std::size_t m = 0; m < nr.size() && kills; ++m)
            kills = bits[nr.mul(x, m)];
        if (kills)
            ann.members.push_back(x);
    }
    return ann;
}

LeftIdealSet j2_bruteforce(const FiniteNearring& nr)
{
    require_small(nr, "J2 brute force");
    const auto subgroups = enumerate_subgroups(nr);
    std::vector<LeftIdealSet> n_subgroups;
    for (const auto& h : subgroups)
        if (is_n_subgroup(nr, h))
            n_subgroups.push_back(h);

    LeftIdealSet whole;
    for (std::size_t i = 0; i < nr.size(); ++i)
        whole.members.push_back(i);

    Bits j2(nr.size(), true);
    for (const auto& l : subgroups) {
        if (l.size() == nr.size() || !is_left_ideal(nr, l))
            continue;
        // N/L has a nontrivial proper N-subgroup iff some N-subgroup H of N
        // sits strictly between L and N.
        const bool type2 = std::none_of(n_subgroups.begin(), n_subgroups.end(), [&](const LeftIdealSet& h) {
            return proper_subset(l, h) && h.size() < nr.size();
        });
        if (!type2)
            continue;
        const auto ann = to_bits(quotient_annihilator(nr, l), nr.size());
        for (std::size_t i = 0; i < nr.size(); ++i)
            j2[i] = j2[i] && ann[i];
    }
    return to_set(j2);
}

std::optional<std::size_t> find_quasiregular_witness(const FiniteNearring& nr, std::size_t x)
{
    const auto one = nr.identity_index();
    const auto u = nr.add(one, nr.neg(x));
    for (std::size_t m = 0; m < nr.size(); ++m)
        if (nr.mul(m, u) == one)
            return m;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sandwich report

SandwichReport sandwich_report(const FiniteGroup& g, std::size_t n, std::size_t identity_limit)
{
    require_n(n);
    SandwichReport r;
    r.group = g.label();
    r.n = n;
    r.pp_size = pp_n_size(g, n);
    r.delaying_size = delaying_size(g, n);
    r.ker_alpha_size = ker_alpha_size(g, n);
    r.property_x = g.order() >= 2 && property_x_solve(g).has_value();

    const std::size_t order = g.order();
    std::mt19937_64 rng(2024);
    auto members_of = [](const std::vector<TriangularMap>& all, const LeftIdealSet& s) {
        std::vector<TriangularMap> out;
        for (auto i : s.members)
            out.push_back(all[i]);
        return out;
    };

    // Either all members (when few enough) or a deterministic random sample.
    auto collect = [&](std::uint64_t count, const std::vector<Slot>& slots, bool& sampled) {
        if (count <= identity_limit)
            return enumerate_slots(g, n, slots, identity_limit, "subset");
        sampled = true;
        std::vector<TriangularMap> out;
        for (std::size_t i = 0; i < identity_limit; ++i)
            out.push_back(random_from_slots(g, n, slots, rng));
        return out;
    };

    std::vector<TriangularMap> dmaps;
    std::vector<TriangularMap> kmaps;
    bool d_sampled = false;
    if (r.pp_size <= 5000) {
        const auto nr = enumerate_pp_n(g, n);
        r.enumerated = true;
        const auto d = delaying_subset(nr);
        const auto k = ker_alpha_subset(nr);
        r.delaying_members = d.members;
        r.ker_alpha_members = k.members;
        r.delaying_in_ker_alpha = std::includes(k.members.begin(), k.members.end(), d.members.begin(),
                                                d.members.end());
        if (nr.size() <= kSubgroupLimit) {
            const auto j = j2_bruteforce(nr);
            r.j2_members = j.members;
            r.delaying_in_j2 = std::includes(j.members.begin(), j.members.end(), d.members.begin(),
                                             d.members.end());
            r.j2_in_ker_alpha = std::includes(k.members.begin(), k.members.end(), j.members.begin(),
                                              j.members.end());
        } else {
            r.partial = true;
            r.notes.push_back("J2 not computed: |PP_n(G)| = " + std::to_string(nr.size()) +
                              " exceeds the brute-force limit of " + std::to_string(kSubgroupLimit));
        }
        dmaps = members_of(nr.elements(), d);
        kmaps = members_of(nr.elements(), k);
    } else {
        r.partial = true;
        r.notes.push_back("PP_n(G) not enumerated: " +
                          (r.pp_size == kSaturated ? std::string("more than 2^64") : std::to_string(r.pp_size)) +
                          " elements exceeds the guard of 5000; J2 not computed");
        dmaps = collect(r.delaying_size, delaying_slots(order, n), d_sampled);
        r.delaying_in_ker_alpha = std::all_of(dmaps.begin(), dmaps.end(),
                                              [](const TriangularMap& t) { return in_ker_alpha(t); });
        if (d_sampled)
            r.notes.push_back("D_n containment checked on a sample of " + std::to_string(dmaps.size()));
    }

    if (dmaps.size() > identity_limit)
        dmaps.erase(dmaps.begin() + static_cast<std::ptrdiff_t>(identity_limit), dmaps.end());
    for (const auto& t : dmaps) {
        const auto m = triangular_to_machine(t);
        ++r.delaying_checked;
        if (quasiregular_witness_check(m, invert_one_minus(m)))
            ++r.delaying_witnessed;
    }

    if (r.property_x) {
        if (!r.enumerated)
            kmaps = collect(r.ker_alpha_size, ker_alpha_slots(order, n), r.identity_sampled);
        else if (kmaps.size() > identity_limit) {
            std::shuffle(kmaps.begin(), kmaps.end(), rng);
            kmaps.erase(kmaps.begin() + static_cast<std::ptrdiff_t>(identity_limit), kmaps.end());
            r.identity_sampled = true;
        }
        for (const auto& t : kmaps) {
            ++r.identity_checked;
            if (radical_identity_check(g, triangular_to_machine(t)))
                ++r.identity_passed;
        }
    } else {
        r.notes.push_back(g.label() + " lacks property X; radical identity not applicable");
    }
    return r;
}

namespace {

std::string verdict(const std::optional<bool>& v)
{
    return v ? (*v ? "yes" : "NO") : "not computed";
}

} // namespace

std::string SandwichReport::to_text() const
{
    std::ostringstream os;
    os << "sandwich report for PP_" << n << "(" << group << ")" << (partial ? " [partial report]" : "") << "\n";
    os << "  |PP_n|            " << (pp_size == kSaturated ? std::string(">2^64") : std::to_string(pp_size)) << "\n";
    os << "  |D_n|             " << delaying_size << "\n";
    os << "  |ker alpha_n|     " << ker_alpha_size << "\n";
    os << "  |J2|              " << (j2_members ? std::to_string(j2_members->size()) : "not computed") << "\n";
    if (j2_members) {
        os << "  J2 members       ";
        for (auto i : *j2_members)
            os << " " << i;
        os << "\n";
    }
    os << "  D <= ker alpha    " << (delaying_in_ker_alpha ? "yes" : "NO") << "\n";
    os << "  D <= J2           " << verdict(delaying_in_j2) << "\n";
    os << "  J2 <= ker alpha   " << verdict(j2_in_ker_alpha) << "\n";
    os << "  D quasiregular    " << delaying_witnessed << "/" << delaying_checked << " with m(1-n)=1 witness\n";
    os << "  property X        " << (property_x ? "yes" : "no") << "\n";
    if (property_x)
        os << "  radical identity  " << identity_passed << "/" << identity_checked
           << (identity_sampled ? " (sampled)" : "") << "\n";
    for (const auto& note : notes)
        os << "  note: " << note << "\n";
    return os.str();
}

std::string SandwichReport::to_json() const
{
    nlohmann::json j;
    j["group"] = group;
    j["n"] = n;
    j["pp_size"] = pp_size;
    j["enumerated"] = enumerated;
    j["partial"] = partial;
    j["delaying_size"] = delaying_size;
    j["ker_alpha_size"] = ker_alpha_size;
    j["delaying_members"] = delaying_members ? nlohmann::json(*delaying_members) : nlohmann::json(nullptr);
    j["ker_alpha_members"] = ker_alpha_members ? nlohmann::json(*ker_alpha_members) : nlohmann::json(nullptr);
    j["j2_members"] = j2_members ? nlohmann::json(*j2_members) : nlohmann::json(nullptr);
    j["j2_size"] = j2_members ? nlohmann::json(j2_members->size()) : nlohmann::json(nullptr);
    j["delaying_in_ker_alpha"] = delaying_in_ker_alpha;
    j["delaying_in_j2"] = delaying_in_j2 ? nlohmann::json(*delaying_in_j2) : nlohmann::json(nullptr);
    j["j2_in_ker_alpha"] = j2_in_ker_alpha ? nlohmann::json(*j2_in_ker_alpha) : nlohmann::json(nullptr);
    j["delaying_checked"] = delaying_checked;
    j["delaying_witnessed"] = delaying_witnessed;
    j["property_x"] = property_x;
    j["identity_checked"] = identity_checked;
    j["identity_passed"] = identity_passed;
    j["identity_sampled"] = identity_sampled;
    j["notes"] = notes;
    return detail::format_json(j);
}

} // namespace ppnear
