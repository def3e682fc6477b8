#pragma once

#include "ppnear/group.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ppnear {

using State = std::uint32_t;

/// A finite Mealy machine (Q, t, f, s) whose input and output alphabet is the
/// group G. Q is {0, ..., state_count-1}; transitions and outputs are dense
/// state_count x |G| tables.
///
/// Machines are the representation of prefix-preserving maps G^N -> G^N.
/// Two machines denote the same map iff equivalent() says so; structural
/// equality (operator==) compares tables and is only used for byte-level
/// round trips.
class MealyMachine {
public:
    /// `trans` and `out` are row-major: entry (q, g) lives at q * |G| + g.
    MealyMachine(FiniteGroup group, std::size_t state_count, State start,
                 std::vector<State> trans, std::vector<Element> out);

    [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
    [[nodiscard]] std::size_t state_count() const noexcept { return states_; }
    [[nodiscard]] State start() const noexcept { return start_; }

    [[nodiscard]] State next(State q, Element g) const noexcept
    {
        return trans_[static_cast<std::size_t>(q) * group_.order() + g];
    }
    [[nodiscard]] Element output(State q, Element g) const noexcept
    {
        return out_[static_cast<std::size_t>(q) * group_.order() + g];
    }

    /// The state output map g -> f(q, g).
    [[nodiscard]] FunctionTable output_map(State q) const;

    [[nodiscard]] const std::vector<State>& transitions() const noexcept { return trans_; }
    [[nodiscard]] const std::vector<Element>& outputs() const noexcept { return out_; }

    friend bool operator==(const MealyMachine& a, const MealyMachine& b) noexcept
    {
        return a.states_ == b.states_ && a.start_ == b.start_ && a.trans_ == b.trans_ &&
               a.out_ == b.out_ && a.group_ == b.group_;
    }

private:
    FiniteGroup group_;
    std::size_t states_;
    State start_;
    std::vector<State> trans_;
    std::vector<Element> out_;
};

/// Runs the state-sequence recurrence q_1 = s, q_{i+1} = t(q_i, x_i), y_i = f(q_i, x_i).
[[nodiscard]] std::vector<Element> evaluate(const MealyMachine& m, std::span<const Element> x);

/// Restricted action on G^n: evaluate on (x_1..x_n, 0, 0, ...) and keep the
/// first n outputs. Requires n >= 1.
[[nodiscard]] std::vector<Element> evaluate_restricted(const MealyMachine& m,
                                                       std::span<const Element> x);

/// One-state machine applying f at every position.
[[nodiscard]] MealyMachine from_function(const FunctionTable& f);
[[nodiscard]] MealyMachine identity_machine(const FiniteGroup& g);
[[nodiscard]] MealyMachine zero_machine(const FiniteGroup& g);

/// Pointwise sum, built on the reachable part of the product automaton.
[[nodiscard]] MealyMachine add(const MealyMachine& a, const MealyMachine& b);
[[nodiscard]] MealyMachine negate(const MealyMachine& a);
/// add(a, negate(b)).
[[nodiscard]] MealyMachine subtract(const MealyMachine& a, const MealyMachine& b);
/// compose(a, b) evaluates as a(b(x)).
[[nodiscard]] MealyMachine compose(const MealyMachine& a, const MealyMachine& b);

/// Shortest input on which a and b produce different outputs (the last
/// position is where they first disagree), or nullopt if the machines are
/// equivalent. Breadth-first over reachable state pairs.
[[nodiscard]] std::optional<std::vector<Element>> distinguishing_input(const MealyMachine& a,
                                                                       const MealyMachine& b);
[[nodiscard]] bool equivalent(const MealyMachine& a, const MealyMachine& b);

/// Restriction to states reachable from start, renumbered in BFS order.
[[nodiscard]] MealyMachine trim(const MealyMachine& a);

/// States visited by the all-zero input (start first, in visiting order).
[[nodiscard]] std::vector<State> zero_reachable_states(const MealyMachine& a);

/// True iff every 0-reachable state maps 0 to 0, which is equivalent to
/// a(0, 0, ...) = (0, 0, ...).
[[nodiscard]] bool is_zero_symmetric(const MealyMachine& a);

/// True iff every reachable state output map is constant (Moore machine).
[[nodiscard]] bool is_delaying(const MealyMachine& a);

} // namespace ppnear
