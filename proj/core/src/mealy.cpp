#include "ppnear/mealy.hpp"

#include "ppnear/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace ppnear {

namespace {

constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();

void require_same_group(const MealyMachine& a, const MealyMachine& b, const char* op)
{
    if (!(a.group() == b.group()))
        throw Error(Errc::group_mismatch, std::string(op) + ": machines are over different groups (" +
                                              a.group().label() + " vs " + b.group().label() + ")");
}

// Reachable part of the synchronous product of a and b. `step` maps
// (qa, qb, g) to (next_a, next_b, output).
template <class Step>
MealyMachine product_machine(const MealyMachine& a, const MealyMachine& b, Step step)
{
    const std::size_t order = a.group().order();
    const std::size_t nb = b.state_count();
    std::vector<std::size_t> index(a.state_count() * nb, kUnseen);
    std::vector<std::pair<State, State>> pairs;
    std::vector<State> trans;
    std::vector<Element> out;

    auto intern = [&](State qa, State qb) {
        auto& slot = index[static_cast<std::size_t>(qa) * nb + qb];
        if (slot == kUnseen) {
            slot = pairs.size();
            pairs.emplace_back(qa, qb);
        }
        return static_cast<State>(slot);
    };

    intern(a.start(), b.start());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [qa, qb] = pairs[i];
        for (Element g = 0; g < order; ++g) {
            const auto [na, nb2, y] = step(qa, qb, g);
            trans.push_back(intern(na, nb2));
            out.push_back(y);
        }
    }
    return MealyMachine(a.group(), pairs.size(), 0, std::move(trans), std::move(out));
}

struct StepResult {
    State next_a;
    State next_b;
    Element output;
};

} // namespace

MealyMachine::MealyMachine(FiniteGroup group, std::size_t state_count, State start,
                           std::vector<State> trans, std::vector<Element> out)
    : group_(std::move(group)), states_(state_count), start_(start), trans_(std::move(trans)),
      out_(std::move(out))
{
    if (states_ == 0)
        throw Error(Errc::invalid_state, "machine needs at least one state");
    if (start_ >= states_)
        throw Error(Errc::invalid_state, "start state " + std::to_string(start_) + " out of range");
    const std::size_t cells = states_ * group_.order();
    if (trans_.size() != cells || out_.size() != cells)
        throw Error(Errc::malformed_table, "transition/output tables must be state_count x order");
    for (State q : trans_)
        if (q >= states_)
            throw Error(Errc::invalid_state, "transition target " + std::to_string(q) + " out of range");
    for (Element y : out_)
        if (!group_.contains(y))
            throw Error(Errc::invalid_element, "output " + std::to_string(y) + " not in group");
}

FunctionTable MealyMachine::output_map(State q) const
{
    if (q >= states_)
        throw Error(Errc::invalid_state, "state " + std::to_string(q) + " out of range");
    const auto begin = out_.begin() + static_cast<std::ptrdiff_t>(q * group_.order());
    return {group_, std::vector<Element>(begin, begin + static_cast<std::ptrdiff_t>(group_.order()))};
}

std::vector<Element> evaluate(const MealyMachine& m, std::span<const Element> x)
{
    std::vector<Element> y;
    y.reserve(x.size());
    State q = m.start();
    for (Element g : x) {
        if (!m.group().contains(g))
            throw Error(Errc::invalid_element,
                        "input " + std::to_string(g) + " not in group " + m.group().label());
        y.push_back(m.output(q, g));
        q = m.next(q, g);
    }
    return y;
}

std::vector<Element> evaluate_restricted(const MealyMachine& m, std::span<const Element> x)
{
    if (x.empty())
        throw Error(Errc::invalid_argument, "restricted action needs n >= 1");
    // Outputs 1..n never see the zero padding.
    return evaluate(m, x);
}

MealyMachine from_function(const FunctionTable& f)
{
    const auto& g = f.group();
    return MealyMachine(g, 1, 0, std::vector<State>(g.order(), 0), f.values());
}

MealyMachine identity_machine(const FiniteGroup& g) { return from_function(FunctionTable::identity(g)); }

MealyMachine zero_machine(const FiniteGroup& g) { return from_function(FunctionTable::zero(g)); }

MealyMachine add(const MealyMachine& a, const MealyMachine& b)
{
    require_same_group(a, b, "add");
    const auto& g = a.group();
    return product_machine(a, b, [&](State qa, State qb, Element x) {
        return StepResult{a.next(qa, x), b.next(qb, x), g.add(a.output(qa, x), b.output(qb, x))};
    });
}

MealyMachine negate(const MealyMachine& a)
{
    std::vector<Element> out(a.outputs());
    for (auto& y : out)
        y = a.group().neg(y);
    return MealyMachine(a.group(), a.state_count(), a.start(), a.transitions(), std::move(out));
}

MealyMachine subtract(const MealyMachine& a, const MealyMachine& b) { return add(a, negate(b)); }

MealyMachine compose(const MealyMachine& a, const MealyMachine& b)
{
    require_same_group(a, b, "compose");
    return product_machine(a, b, [&](State qa, State qb, Element x) {
        const Element h = b.output(qb, x);
        return StepResult{a.next(qa, h), b.next(qb, x), a.output(qa, h)};
    });
}

std::optional<std::vector<Element>> distinguishing_input(const MealyMachine& a, const MealyMachine& b)
{
    require_same_group(a, b, "equivalent");
    const std::size_t order = a.group().order();
    const std::size_t nb = b.state_count();

    struct Visit {
        State qa;
        State qb;
        std::size_t parent;
        Element via;
    };
    std::vector<bool> seen(a.state_count() * nb, false);
    std::vector<Visit> visits;
    visits.push_back({a.start(), b.start(), kUnseen, 0});
    seen[static_cast<std::size_t>(a.start()) * nb + b.start()] = true;

    for (std::size_t i = 0; i < visits.size(); ++i) {
        const auto [qa, qb, parent, via] = visits[i];
        for (Element g = 0; g < order; ++g) {
            if (a.output(qa, g) != b.output(qb, g)) {
                std::vector<Element> witness{g};
                for (std::size_t v = i; visits[v].parent != kUnseen; v = visits[v].parent)
                    witness.push_back(visits[v].via);
                std::reverse(witness.begin(), witness.end());
                return witness;
            }
        }
        for (Element g = 0; g < order; ++g) {
            const State na = a.next(qa, g);
            const State nbq = b.next(qb, g);
            const auto key = static_cast<std::size_t>(na) * nb + nbq;
            if (!seen[key]) {
                seen[key] = true;
                visits.push_back({na, nbq, i, g});
            }
        }
    }
    return std::nullopt;
}

bool equivalent(const MealyMachine& a, const MealyMachine& b)
{
    return !distinguishing_input(a, b).has_value();
}

MealyMachine trim(const MealyMachine& a)
{
    const std::size_t order = a.group().order();
    std::vector<std::size_t> index(a.state_count(), kUnseen);
    std::vector<State> order_seen{a.start()};
    index[a.start()] = 0;
    for (std::size_t i = 0; i < order_seen.size(); ++i)
        for (Element g = 0; g < order; ++g) {
            const State n = a.next(order_seen[i], g);
            if (index[n] == kUnseen) {
                index[n] = order_seen.size();
                order_seen.push_back(n);
            }
        }

    std::vector<State> trans;
    std::vector<Element> out;
    trans.reserve(order_seen.size() * order);
    out.reserve(order_seen.size() * order);
    for (State q : order_seen)
        for (Element g = 0; g < order; ++g) {
            trans.push_back(static_cast<State>(index[a.next(q, g)]));
            out.push_back(a.output(q, g));
        }
    return MealyMachine(a.group(), order_seen.size(), 0, std::move(trans), std::move(out));
}

std::vector<State> zero_reachable_states(const MealyMachine& a)
{
    std::vector<bool> seen(a.state_count(), false);
    std::vector<State> path;
    for (State q = a.start(); !seen[q]; q = a.next(q, 0)) {
        seen[q] = true;
        path.push_back(q);
    }
    return path;
}

bool is_zero_symmetric(const MealyMachine& a)
{
    const auto path = zero_reachable_states(a);
    return std::all_of(path.begin(), path.end(), [&](State q) { return a.output(q, 0) == 0; });
}

bool is_delaying(const MealyMachine& a)
{
    const auto t = trim(a);
    const std::size_t order = t.group().order();
    for (State q = 0; q < t.state_count(); ++q)
        for (Element g = 1; g < order; ++g)
            if (t.output(q, g) != t.output(q, 0))
                return false;
    return true;
}

} // namespace ppnear
