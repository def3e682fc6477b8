#include "ppnear/group.hpp"

#include "ppnear/error.hpp"

#include <algorithm>
#include <numeric>

namespace ppnear {

GroupSpec GroupSpec::cyclic(std::size_t n)
{
    GroupSpec s;
    s.kind = Kind::cyclic;
    s.n = n;
    return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors)
{
    GroupSpec s;
    s.kind = Kind::product;
    s.factors = std::move(factors);
    return s;
}

GroupSpec GroupSpec::table(std::vector<std::vector<Element>> add)
{
    GroupSpec s;
    s.kind = Kind::table;
    s.add = std::move(add);
    return s;
}

FiniteGroup FiniteGroup::validated(std::size_t order, std::vector<Element> add, std::string label,
                                   GroupSpec spec)
{
    if (order == 0)
        throw Error(Errc::malformed_table, "group must have at least one element");
    if (add.size() != order * order)
        throw Error(Errc::malformed_table, "addition table is not square");
    for (Element v : add)
        if (v >= order)
            throw Error(Errc::malformed_table,
                        "addition table entry " + std::to_string(v) + " is out of range");

    auto at = [&](std::size_t a, std::size_t b) { return add[a * order + b]; };

    for (std::size_t x = 0; x < order; ++x)
        if (at(0, x) != x || at(x, 0) != x)
            throw Error(Errc::missing_identity,
                        "element 0 is not a two-sided identity (fails at " + std::to_string(x) +
                            ")");

    std::vector<Element> neg(order);
    for (std::size_t x = 0; x < order; ++x) {
        bool found = false;
        for (std::size_t y = 0; y < order && !found; ++y) {
            if (at(x, y) == 0 && at(y, x) == 0) {
                neg[x] = static_cast<Element>(y);
                found = true;
            }
        }
        if (!found)
            throw Error(Errc::missing_inverse,
                        "element " + std::to_string(x) + " has no two-sided inverse");
    }

    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
            for (std::size_t c = 0; c < order; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    throw Error(Errc::non_associative,
                                "table is not associative at (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ", " + std::to_string(c) + ")");

    bool abelian = true;
    for (std::size_t a = 0; a < order && abelian; ++a)
        for (std::size_t b = a + 1; b < order && abelian; ++b)
            abelian = at(a, b) == at(b, a);

    auto impl = std::make_shared<Impl>();
    impl->order = order;
    impl->add = std::move(add);
    impl->neg = std::move(neg);
    impl->abelian = abelian;
    impl->label = std::move(label);
    impl->spec = std::move(spec);
    return FiniteGroup(std::move(impl));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n)
{
    if (n == 0)
        throw Error(Errc::invalid_argument, "cyclic group order must be at least 1");
    std::vector<Element> add(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            add[a * n + b] = static_cast<Element>((a + b) % n);
    return validated(n, std::move(add), "Z" + std::to_string(n), GroupSpec::cyclic(n));
}

FiniteGroup FiniteGroup::product(std::span<const FiniteGroup> factors)
{
    if (factors.empty())
        throw Error(Errc::invalid_argument, "direct product needs at least one factor");

    std::size_t order = 1;
    for (const auto& f : factors)
        order *= f.order();

    // Decompose an index into per-factor coordinates, first factor most significant.
    auto split = [&](std::size_t idx) {
        std::vector<std::size_t> coords(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            coords[i] = idx % factors[i].order();
            idx /= factors[i].order();
        }
        return coords;
    };

    std::vector<Element> add(order * order);
    for (std::size_t a = 0; a < order; ++a) {
        const auto ca = split(a);
        for (std::size_t b = 0; b < order; ++b) {
            const auto cb = split(b);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < factors.size(); ++i)
                idx = idx * factors[i].order() +
                      factors[i].add(static_cast<Element>(ca[i]), static_cast<Element>(cb[i]));
            add[a * order + b] = static_cast<Element>(idx);
        }
    }

    std::string label;
    std::vector<GroupSpec> specs;
    for (const auto& f : factors) {
        if (!label.empty())
            label += "x";
        label += f.label();
        specs.push_back(f.spec());
    }
    return validated(order, std::move(add), std::move(label), GroupSpec::product(std::move(specs)));
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Element>>& table)
{
    const std::size_t order = table.size();
    std::vector<Element> add;
    add.reserve(order * order);
    for (const auto& row : table) {
        if (row.size() != order)
            throw Error(Errc::malformed_table, "addition table is not square");
        add.insert(add.end(), row.begin(), row.end());
    }
    return validated(order, std::move(add), "table" + std::to_string(order),
                     GroupSpec::table(table));
}

FiniteGroup FiniteGroup::from_spec(const GroupSpec& spec)
{
    switch (spec.kind) {
    case GroupSpec::Kind::cyclic:
        return cyclic(spec.n);
    case GroupSpec::Kind::product: {
        std::vector<FiniteGroup> factors;
        factors.reserve(spec.factors.size());
        for (const auto& f : spec.factors)
            factors.push_back(from_spec(f));
        return product(factors);
    }
    case GroupSpec::Kind::table:
        return from_table(spec.add);
    }
    throw Error(Errc::invalid_argument, "unknown group kind");
}

Element FiniteGroup::multiple(Element x, std::size_t m) const noexcept
{
    Element acc = 0;
    for (std::size_t i = 0; i < m; ++i)
        acc = add(acc, x);
    return acc;
}

std::vector<std::vector<Element>> FiniteGroup::add_table() const
{
    std::vector<std::vector<Element>> rows(order());
    for (std::size_t a = 0; a < order(); ++a)
        rows[a].assign(impl_->add.begin() + static_cast<std::ptrdiff_t>(a * order()),
                       impl_->add.begin() + static_cast<std::ptrdiff_t>((a + 1) * order()));
    return rows;
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) noexcept
{
    return a.impl_ == b.impl_ || (a.impl_->order == b.impl_->order && a.impl_->add == b.impl_->add);
}

std::size_t element_order(const FiniteGroup& g, Element x)
{
    if (!g.contains(x))
        throw Error(Errc::invalid_element, "element " + std::to_string(x) + " not in group");
    std::size_t m = 1;
    for (Element acc = x; acc != 0; acc = g.add(acc, x))
        ++m;
    return m;
}

namespace {

// Orbit c, c+k, c+2k, ... in generation order (length = order of k).
std::vector<Element> orbit(const FiniteGroup& g, Element c, Element k)
{
    std::vector<Element> out{c};
    for (Element x = g.add(c, k); x != c; x = g.add(x, k))
        out.push_back(x);
    return out;
}

} // namespace

std::vector<std::vector<Element>> cosets_of_cyclic(const FiniteGroup& g, Element k)
{
    if (!g.contains(k))
        throw Error(Errc::invalid_element, "element " + std::to_string(k) + " not in group");
    std::vector<bool> seen(g.order(), false);
    std::vector<std::vector<Element>> cosets;
    for (Element c = 0; c < g.order(); ++c) {
        if (seen[c])
            continue;
        auto coset = orbit(g, c, k);
        for (Element x : coset)
            seen[x] = true;
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

FunctionTable::FunctionTable(FiniteGroup group, std::vector<Element> values)
    : group_(std::move(group)), values_(std::move(values))
{
    if (values_.size() != group_.order())
        throw Error(Errc::malformed_table, "function table has " + std::to_string(values_.size()) +
                                               " entries, group has order " +
                                               std::to_string(group_.order()));
    for (Element v : values_)
        if (!group_.contains(v))
            throw Error(Errc::invalid_element,
                        "function value " + std::to_string(v) + " not in group");
}

FunctionTable FunctionTable::identity(const FiniteGroup& g)
{
    std::vector<Element> v(g.order());
    std::iota(v.begin(), v.end(), Element{0});
    return {g, std::move(v)};
}

FunctionTable FunctionTable::zero(const FiniteGroup& g) { return constant(g, 0); }

FunctionTable FunctionTable::constant(const FiniteGroup& g, Element c)
{
    return {g, std::vector<Element>(g.order(), c)};
}

FunctionTable FunctionTable::negation(const FiniteGroup& g)
{
    std::vector<Element> v(g.order());
    for (Element x = 0; x < g.order(); ++x)
        v[x] = g.neg(x);
    return {g, std::move(v)};
}

bool FunctionTable::is_constant() const noexcept
{
    return std::all_of(values_.begin(), values_.end(), [&](Element v) { return v == values_[0]; });
}

FunctionTable operator+(const FunctionTable& f, const FunctionTable& g)
{
    if (!(f.group() == g.group()))
        throw Error(Errc::group_mismatch, "cannot add functions over different groups");
    std::vector<Element> v(f.values().size());
    for (Element x = 0; x < v.size(); ++x)
        v[x] = f.group().add(f(x), g(x));
    return {f.group(), std::move(v)};
}

FunctionTable compose(const FunctionTable& f, const FunctionTable& g)
{
    if (!(f.group() == g.group()))
        throw Error(Errc::group_mismatch, "cannot compose functions over different groups");
    std::vector<Element> v(f.values().size());
    for (Element x = 0; x < v.size(); ++x)
        v[x] = f(g(x));
    return {f.group(), std::move(v)};
}

std::vector<FunctionTable> all_zero_preserving_maps(const FiniteGroup& g, std::size_t limit)
{
    const std::size_t order = g.order();
    std::size_t count = 1;
    for (std::size_t i = 1; i < order; ++i) {
        count *= order;
        if (count > limit)
            throw Error(Errc::size_guard, "M0(" + g.label() + ") has more than " +
                                              std::to_string(limit) + " elements");
    }

    std::vector<FunctionTable> maps;
    maps.reserve(count);
    std::vector<Element> v(order, 0);
    for (std::size_t c = 0; c < count; ++c) {
        maps.emplace_back(g, v);
        // Odometer over v[1..], last entry fastest.
        for (std::size_t i = order; i-- > 1;) {
            if (++v[i] < order)
                break;
            v[i] = 0;
        }
    }
    return maps;
}

bool satisfies_property_x(const FiniteGroup& g, Element k, const FunctionTable& f)
{
    if (!(f.group() == g) || !g.contains(k))
        return false;
    for (Element x = 0; x < g.order(); ++x)
        if (g.sub(f(g.add(x, k)), f(x)) != x)
            return false;
    return true;
}

std::optional<PropertyXWitness> property_x_solve(const FiniteGroup& g)
{
    if (g.order() < 2)
        throw Error(Errc::invalid_argument, "property X needs a group of order at least 2");

    for (Element k = 1; k < g.order(); ++k) {
        std::vector<Element> f(g.order(), 0);
        bool consistent = true;
        for (const auto& coset : cosets_of_cyclic(g, k)) {
            // Least element as representative, f(rep) = 0; the coset of 0 gets f(0) = 0.
            const auto path = orbit(g, coset.front(), k);
            f[path[0]] = 0;
            for (std::size_t j = 0; j + 1 < path.size(); ++j)
                f[path[j + 1]] = g.add(path[j], f[path[j]]);
            // Wrap-around: x_{m-1} + ... + x_1 + x_0 must vanish.
            Element wrap = 0;
            for (Element x : path)
                wrap = g.add(x, wrap);
            if (wrap != 0) {
                consistent = false;
                break;
            }
        }
        if (!consistent)
            continue;
        FunctionTable table(g, std::move(f));
        if (!satisfies_property_x(g, k, table))
            throw Error(Errc::invalid_argument, "internal: property X witness failed verification");
        return PropertyXWitness{k, std::move(table)};
    }
    return std::nullopt;
}

std::optional<PropertyXWitness> property_x_brute(const FiniteGroup& g)
{
    const std::size_t order = g.order();
    if (order > 6)
        throw Error(Errc::group_too_large, "brute-force property X search is limited to order <= 6 (got " +
                                               std::to_string(order) + ")");
    if (order < 2)
        throw Error(Errc::invalid_argument, "property X needs a group of order at least 2");

    std::size_t total = 1;
    for (std::size_t i = 0; i < order; ++i)
        total *= order;

    for (Element k = 1; k < order; ++k) {
        std::vector<Element> f(order, 0);
        for (std::size_t c = 0; c < total; ++c) {
            bool ok = true;
            for (Element x = 0; x < order && ok; ++x)
                ok = g.sub(f[g.add(x, k)], f[x]) == x;
            if (ok)
                return PropertyXWitness{k, FunctionTable(g, f)};
            for (std::size_t i = order; i-- > 0;) {
                if (++f[i] < order)
                    break;
                f[i] = 0;
            }
        }
    }
    return std::nullopt;
}

} // namespace ppnear
