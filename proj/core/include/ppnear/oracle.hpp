#pragma once

#include "ppnear/group.hpp"
#include "ppnear/mealy.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppnear {

/// An element of the restricted nearring PP_n(G): component f_i : G^i -> G
/// for i = 1..n, with f_i(0, ..., 0) = 0.
///
/// Component i is a dense table of |G|^i entries; the argument
/// (x_1, ..., x_i) has index ((x_1 * |G| + x_2) * |G| + ...) + x_i.
class TriangularMap {
public:
    TriangularMap(FiniteGroup group, std::vector<std::vector<Element>> components);

    static TriangularMap zero(const FiniteGroup& g, std::size_t n);
    static TriangularMap identity(const FiniteGroup& g, std::size_t n);

    [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
    [[nodiscard]] std::size_t n() const noexcept { return components_.size(); }
    /// 1-based component.
    [[nodiscard]] const std::vector<Element>& component(std::size_t i) const { return components_.at(i - 1); }
    [[nodiscard]] const std::vector<std::vector<Element>>& components() const noexcept { return components_; }

    /// Applies the map to x in G^n.
    [[nodiscard]] std::vector<Element> apply(std::span<const Element> x) const;

    friend bool operator==(const TriangularMap& a, const TriangularMap& b) noexcept
    {
        return a.components_ == b.components_ && a.group_ == b.group_;
    }

private:
    FiniteGroup group_;
    std::vector<std::vector<Element>> components_;
};

[[nodiscard]] TriangularMap operator+(const TriangularMap& a, const TriangularMap& b);
[[nodiscard]] TriangularMap negate(const TriangularMap& a);
/// compose(a, b) = a o b.
[[nodiscard]] TriangularMap compose(const TriangularMap& a, const TriangularMap& b);

/// f_i(0, ..., 0, t) = 0 for every i and t.
[[nodiscard]] bool in_ker_alpha(const TriangularMap& t);
/// f_i does not depend on x_i (so f_1 = 0).
[[nodiscard]] bool is_delaying(const TriangularMap& t);

/// Subset of a finite nearring, as sorted indices into its element list.
struct LeftIdealSet {
    std::vector<std::size_t> members;

    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
    [[nodiscard]] bool contains(std::size_t i) const;
    friend bool operator==(const LeftIdealSet&, const LeftIdealSet&) = default;
    friend auto operator<=>(const LeftIdealSet&, const LeftIdealSet&) = default;
};

/// A finite nearring of triangular maps under pointwise addition and composition.
///
/// Closure under +, - and composition is checked on construction, together
/// with right distributivity: exhaustively for small nearrings, on a fixed
/// pseudo-random sample for large ones. Operation tables are cached when
/// the nearring has at most kTableLimit elements.
class FiniteNearring {
public:
    static constexpr std::size_t kTableLimit = 256;

    static FiniteNearring from_elements(FiniteGroup g, std::size_t n, std::vector<TriangularMap> elements);

    [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] const TriangularMap& element(std::size_t i) const { return elements_.at(i); }
    [[nodiscard]] const std::vector<TriangularMap>& elements() const noexcept { return elements_; }
    [[nodiscard]] std::size_t zero_index() const noexcept { return zero_; }
    [[nodiscard]] std::size_t identity_index() const noexcept { return identity_; }
    [[nodiscard]] std::optional<std::size_t> index_of(const TriangularMap& t) const;

    [[nodiscard]] std::size_t add(std::size_t a, std::size_t b) const;
    [[nodiscard]] std::size_t neg(std::size_t a) const;
    [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const;

private:
    FiniteNearring(FiniteGroup g, std::size_t n) : group_(std::move(g)), n_(n) {}
    std::size_t lookup(const TriangularMap& t) const;

    FiniteGroup group_;
    std::size_t n_;
    std::vector<TriangularMap> elements_;
    std::map<std::vector<std::vector<Element>>, std::size_t> index_;
    std::size_t zero_ = 0;
    std::size_t identity_ = 0;
    std::vector<std::size_t> add_;
    std::vector<std::size_t> neg_;
    std::vector<std::size_t> mul_;
};

/// |PP_n(G)|, |ker alpha_n| and |D_n| as exact counts, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t pp_n_size(const FiniteGroup& g, std::size_t n);
[[nodiscard]] std::uint64_t ker_alpha_size(const FiniteGroup& g, std::size_t n);
[[nodiscard]] std::uint64_t delaying_size(const FiniteGroup& g, std::size_t n);

/// All of PP_n(G) in canonical order (zero first). Throws Errc::size_guard
/// when the count exceeds `guard`.
[[nodiscard]] FiniteNearring enumerate_pp_n(const FiniteGroup& g, std::size_t n, std::size_t guard = 5000);

/// The ker alpha_n and D_n members of PP_n(G), enumerated directly (without
/// building PP_n(G)), in the same canonical order.
[[nodiscard]] std::vector<TriangularMap> enumerate_ker_alpha_maps(const FiniteGroup& g, std::size_t n,
                                                                  std::size_t guard = 100000);
[[nodiscard]] std::vector<TriangularMap> enumerate_delaying_maps(const FiniteGroup& g, std::size_t n,
                                                                 std::size_t guard = 100000);

/// Tabulates the restricted action of a zero-symmetric machine on G^n.
[[nodiscard]] TriangularMap restrict_machine(const MealyMachine& m, std::size_t n);

/// Prefix-history machine: one state per input history of length < n plus a
/// sink that emits 0. restrict_machine(triangular_to_machine(t), n) == t.
[[nodiscard]] MealyMachine triangular_to_machine(const TriangularMap& t);

[[nodiscard]] bool is_additive_subgroup(const FiniteNearring& nr, const LeftIdealSet& s);
[[nodiscard]] bool is_left_ideal(const FiniteNearring& nr, const LeftIdealSet& s);
/// Left ideal that is also closed under right multiplication (IN in I).
[[nodiscard]] bool is_ideal(const FiniteNearring& nr, const LeftIdealSet& s);

/// ker alpha restricted to nr; verified to be a left ideal.
[[nodiscard]] LeftIdealSet ker_alpha_subset(const FiniteNearring& nr);
[[nodiscard]] LeftIdealSet delaying_subset(const FiniteNearring& nr);

/// Every additive subgroup of nr (|N| <= 100), sorted.
[[nodiscard]] std::vector<LeftIdealSet> enumerate_subgroups(const FiniteNearring& nr);
/// Every left ideal of nr (|N| <= 100), sorted; includes {0} and N.
[[nodiscard]] std::vector<LeftIdealSet> enumerate_left_ideals(const FiniteNearring& nr);

/// (N/L : 0) = { x : x m in L for all m }.
[[nodiscard]] LeftIdealSet quotient_annihilator(const FiniteNearring& nr, const LeftIdealSet& l);

/// J_2 from its definition: intersect the annihilators of all quotients N/L
/// (L a proper left ideal) that have no N-subgroup strictly between 0 and
/// N/L. Since N has an identity, every monogenic N-group is isomorphic to
/// such a quotient, so this covers all type-2 N-groups. |N| <= 100.
[[nodiscard]] LeftIdealSet j2_bruteforce(const FiniteNearring& nr);

/// Some m with m(1 - x) = 1, by exhaustive search.
[[nodiscard]] std::optional<std::size_t> find_quasiregular_witness(const FiniteNearring& nr, std::size_t x);

struct SandwichReport {
    std::string group;
    std::size_t n = 0;
    std::uint64_t pp_size = 0;
    bool enumerated = false;   // PP_n(G) materialized as a FiniteNearring
    bool partial = false;
    std::uint64_t delaying_size = 0;
    std::uint64_t ker_alpha_size = 0;
    std::optional<std::vector<std::size_t>> delaying_members;
    std::optional<std::vector<std::size_t>> ker_alpha_members;
    std::optional<std::vector<std::size_t>> j2_members;
    bool delaying_in_ker_alpha = false;
    std::optional<bool> delaying_in_j2;
    std::optional<bool> j2_in_ker_alpha;
    std::size_t delaying_witnessed = 0;  // lifted D_n members with invert_one_minus witness
    std::size_t delaying_checked = 0;
    bool property_x = false;
    std::size_t identity_checked = 0;
    std::size_t identity_passed = 0;
    bool identity_sampled = false;
    std::vector<std::string> notes;

    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_json() const;
};

/// Sizes of D_n, ker alpha_n and (when |PP_n(G)| <= 100) J_2, the
/// containment verdicts, quasiregular witnesses for D_n, and, for groups
/// with property X, the radical identity over ker alpha_n lifted to machines
/// (all members up to `identity_limit`, a deterministic sample beyond).
[[nodiscard]] SandwichReport sandwich_report(const FiniteGroup& g, std::size_t n,
                                             std::size_t identity_limit = 10000);

} // namespace ppnear
