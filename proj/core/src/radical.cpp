#include "ppnear/radical.hpp"

#include "ppnear/error.hpp"

#include <algorithm>

namespace ppnear {

MealyMachine alpha(const MealyMachine& m)
{
    const std::size_t order = m.group().order();
    std::vector<State> trans(m.transitions().size());
    for (State q = 0; q < m.state_count(); ++q)
        std::fill_n(trans.begin() + static_cast<std::ptrdiff_t>(q * order), order, m.next(q, 0));
    return MealyMachine(m.group(), m.state_count(), m.start(), std::move(trans), m.outputs());
}

bool in_ker_alpha(const MealyMachine& m) { return equivalent(alpha(m), zero_machine(m.group())); }

MealyMachine f_ij_machine(const FunctionTable& f, std::size_t i, std::size_t j)
{
    if (!f.is_zero_preserving())
        throw Error(Errc::not_zero_preserving, "f^{i,j} needs a zero-preserving f");
    if (i == 0)
        throw Error(Errc::invalid_argument, "f^{i,j} positions are 1-based; i must be >= 1");

    const auto& g = f.group();
    const std::size_t order = g.order();
    // State p handles position p + 1; state i - 1 is the first application.
    const std::size_t states = j == 0 ? i + 1 : i - 1 + j;
    const std::size_t fire = i - 1;

    std::vector<State> trans(states * order);
    std::vector<Element> out(states * order, 0);
    for (std::size_t q = 0; q < states; ++q) {
        std::size_t next = q + 1;
        if (j == 0 && q == i)
            next = i;
        else if (j > 0 && q + 1 == states)
            next = fire;
        std::fill_n(trans.begin() + static_cast<std::ptrdiff_t>(q * order), order,
                    static_cast<State>(next));
        if (q == fire)
            std::copy(f.values().begin(), f.values().end(),
                      out.begin() + static_cast<std::ptrdiff_t>(q * order));
    }
    return MealyMachine(g, states, 0, std::move(trans), std::move(out));
}

bool quasiregular_witness_check(const MealyMachine& n, const MealyMachine& m)
{
    const auto one = identity_machine(n.group());
    return equivalent(compose(m, subtract(one, n)), one);
}

MealyMachine invert_one_minus(const MealyMachine& n)
{
    if (!is_zero_symmetric(n))
        throw Error(Errc::not_zero_symmetric, "invert_one_minus needs a zero-symmetric machine");
    if (!is_delaying(n))
        throw Error(Errc::not_delaying,
                    "invert_one_minus needs a delaying machine (constant state output maps)");

    const auto t = trim(n);
    const auto& g = t.group();
    const std::size_t order = g.order();
    std::vector<State> trans(t.transitions().size());
    std::vector<Element> out(t.outputs().size());
    for (State q = 0; q < t.state_count(); ++q) {
        const Element c = t.output(q, 0);
        for (Element y = 0; y < order; ++y) {
            // g -> g - c inverts to y -> y + c.
            const Element x = g.add(y, c);
            out[q * order + y] = x;
            trans[q * order + y] = t.next(q, x);
        }
    }
    return MealyMachine(g, t.state_count(), t.start(), std::move(trans), std::move(out));
}

MealyMachine kernel_generator_c(const FiniteGroup& g, Element k)
{
    if (!g.contains(k))
        throw Error(Errc::invalid_element, "k = " + std::to_string(k) + " not in group");
    if (k == 0)
        throw Error(Errc::invalid_argument, "kernel generator needs a nonzero k");

    const std::size_t order = g.order();
    // State 0 = a (waiting), state 1 = b (emitting k).
    std::vector<State> trans(2 * order, 1);
    trans[0] = 0;
    std::vector<Element> out(2 * order, 0);
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(order), out.end(), k);
    return MealyMachine(g, 2, 0, std::move(trans), std::move(out));
}

bool radical_identity_check(const FiniteGroup& g, const MealyMachine& d)
{
    if (!(d.group() == g))
        throw Error(Errc::group_mismatch, "machine is not over " + g.label());
    const auto witness = property_x_solve(g);
    if (!witness)
        throw Error(Errc::no_property_x, g.label() + " does not have property X");
    if (!in_ker_alpha(d))
        throw Error(Errc::not_in_ker_alpha, "machine is not in the kernel of alpha");

    const auto f = from_function(witness->f);
    const auto c = kernel_generator_c(g, witness->k);
    return equivalent(subtract(compose(f, add(d, c)), compose(f, d)), d);
}

AmnesiacDecomposition decompose_amnesiac(const MealyMachine& m)
{
    if (!equivalent(alpha(m), m))
        throw Error(Errc::not_amnesiac, "machine is not fixed by alpha");

    const auto path = zero_reachable_states(m);
    const State repeat = m.next(path.back(), 0);
    const auto entry = static_cast<std::size_t>(std::find(path.begin(), path.end(), repeat) - path.begin());

    AmnesiacDecomposition d;
    for (std::size_t i = 0; i < path.size(); ++i)
        (i < entry ? d.transient : d.cycle).push_back(m.output_map(path[i]));
    return d;
}

MealyMachine reconstruct_from_decomposition(const AmnesiacDecomposition& d)
{
    if (d.cycle.empty())
        throw Error(Errc::invalid_argument, "decomposition cycle must be nonempty");

    const auto& g = d.cycle.front().group();
    const std::size_t order = g.order();
    const std::size_t states = d.transient.size() + d.cycle.size();
    std::vector<State> trans(states * order);
    std::vector<Element> out;
    out.reserve(states * order);

    std::size_t q = 0;
    for (const auto* part : {&d.transient, &d.cycle})
        for (const auto& f : *part) {
            if (!(f.group() == g))
                throw Error(Errc::group_mismatch, "decomposition maps are over different groups");
            const std::size_t next = q + 1 == states ? d.transient.size() : q + 1;
            std::fill_n(trans.begin() + static_cast<std::ptrdiff_t>(q * order), order,
                        static_cast<State>(next));
            out.insert(out.end(), f.values().begin(), f.values().end());
            ++q;
        }
    return MealyMachine(g, states, 0, std::move(trans), std::move(out));
}

} // namespace ppnear
