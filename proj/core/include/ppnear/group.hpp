#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppnear {

/// Group elements are dense indices 0..order-1; index 0 is always the identity.
using Element = std::uint32_t;

/// Recipe a FiniteGroup was built from. Kept on the group so machine and
/// scheme files can reproduce the exact element numbering.
struct GroupSpec {
    enum class Kind { cyclic, product, table };

    Kind kind = Kind::cyclic;
    std::size_t n = 0;                       // cyclic
    std::vector<GroupSpec> factors;          // product
    std::vector<std::vector<Element>> add;   // table

    static GroupSpec cyclic(std::size_t n);
    static GroupSpec product(std::vector<GroupSpec> factors);
    static GroupSpec table(std::vector<std::vector<Element>> add);

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// A finite group given by its full Cayley table.
///
/// Instances are immutable and cheap to copy (the tables are shared). Every
/// constructor validates the group axioms exhaustively and throws
/// ppnear::Error on failure, so a FiniteGroup value is always a group.
///
/// Direct products number their elements row-major: for G1 x G2 the pair
/// (a, b) has index a * |G2| + b.
class FiniteGroup {
public:
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup product(std::span<const FiniteGroup> factors);
    static FiniteGroup from_table(const std::vector<std::vector<Element>>& add);
    static FiniteGroup from_spec(const GroupSpec& spec);

    [[nodiscard]] std::size_t order() const noexcept { return impl_->order; }
    [[nodiscard]] bool contains(Element x) const noexcept { return x < impl_->order; }

    [[nodiscard]] Element add(Element a, Element b) const noexcept
    {
        return impl_->add[static_cast<std::size_t>(a) * impl_->order + b];
    }
    [[nodiscard]] Element neg(Element a) const noexcept { return impl_->neg[a]; }
    /// a - b, i.e. a + (-b).
    [[nodiscard]] Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }
    /// m * x, the m-fold sum x + ... + x (0 for m == 0).
    [[nodiscard]] Element multiple(Element x, std::size_t m) const noexcept;

    [[nodiscard]] bool is_abelian() const noexcept { return impl_->abelian; }
    [[nodiscard]] const std::string& label() const noexcept { return impl_->label; }
    [[nodiscard]] const GroupSpec& spec() const noexcept { return impl_->spec; }
    [[nodiscard]] std::vector<std::vector<Element>> add_table() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) noexcept;

private:
    struct Impl {
        std::size_t order = 0;
        std::vector<Element> add;
        std::vector<Element> neg;
        bool abelian = true;
        std::string label;
        GroupSpec spec;
    };

    explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static FiniteGroup validated(std::size_t order, std::vector<Element> add, std::string label,
                                 GroupSpec spec);

    std::shared_ptr<const Impl> impl_;
};

/// Least m >= 1 with m * x == 0.
[[nodiscard]] std::size_t element_order(const FiniteGroup& g, Element x);

/// Left cosets x + <k>. Each coset is sorted ascending; cosets are ordered
/// by their least element.
[[nodiscard]] std::vector<std::vector<Element>> cosets_of_cyclic(const FiniteGroup& g, Element k);

/// A total map G -> G, i.e. an element of M(G).
class FunctionTable {
public:
    FunctionTable(FiniteGroup group, std::vector<Element> values);

    static FunctionTable identity(const FiniteGroup& g);
    static FunctionTable zero(const FiniteGroup& g);
    static FunctionTable constant(const FiniteGroup& g, Element c);
    static FunctionTable negation(const FiniteGroup& g);

    [[nodiscard]] Element operator()(Element x) const { return values_[x]; }
    [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
    [[nodiscard]] const std::vector<Element>& values() const noexcept { return values_; }
    [[nodiscard]] bool is_zero_preserving() const noexcept { return values_[0] == 0; }
    [[nodiscard]] bool is_constant() const noexcept;

    friend bool operator==(const FunctionTable& a, const FunctionTable& b) noexcept
    {
        return a.values_ == b.values_ && a.group_ == b.group_;
    }

private:
    FiniteGroup group_;
    std::vector<Element> values_;
};

/// Pointwise sum (f + g)(x) = f(x) + g(x).
[[nodiscard]] FunctionTable operator+(const FunctionTable& f, const FunctionTable& g);
/// (f o g)(x) = f(g(x)).
[[nodiscard]] FunctionTable compose(const FunctionTable& f, const FunctionTable& g);

/// Every zero-preserving map of g, in lexicographic order of value tables.
/// Throws Errc::size_guard when there would be more than `limit` of them.
[[nodiscard]] std::vector<FunctionTable> all_zero_preserving_maps(const FiniteGroup& g,
                                                                  std::size_t limit = 10000);

/// A pair (k, f) with f(x + k) - f(x) = x for every x.
struct PropertyXWitness {
    Element k;
    FunctionTable f;
};

[[nodiscard]] bool satisfies_property_x(const FiniteGroup& g, Element k, const FunctionTable& f);

/// Coset propagation solver. Tries each nonzero k in ascending order; along
/// the orbit x, x+k, x+2k, ... the equation forces f(x+k) = x + f(x), so k
/// works iff the left-accumulated orbit sum vanishes on every coset of <k>.
/// The returned f has f(0) = 0 and is verified before being returned.
[[nodiscard]] std::optional<PropertyXWitness> property_x_solve(const FiniteGroup& g);

/// Exhaustive search over all k and all f : G -> G (order <= 6 only).
[[nodiscard]] std::optional<PropertyXWitness> property_x_brute(const FiniteGroup& g);

} // namespace ppnear
