#include "ppnear/error.hpp"
#include "ppnear/mealy.hpp"
#include "ppnear/oracle.hpp"
#include "ppnear/radical.hpp"

#include "support/generators.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <bit>

using namespace ppnear;
using Seq = std::vector<Element>;

namespace {

const FiniteGroup& z2()
{
    static const auto g = FiniteGroup::cyclic(2);
    return g;
}

const FiniteGroup& z3()
{
    static const auto g = FiniteGroup::cyclic(3);
    return g;
}

LeftIdealSet all_of(const FiniteNearring& nr)
{
    LeftIdealSet s;
    for (std::size_t i = 0; i < nr.size(); ++i)
        s.members.push_back(i);
    return s;
}

bool subset(const LeftIdealSet& a, const LeftIdealSet& b)
{
    return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

// Brute-force oracle over bitmasks for nearrings with at most 16 elements.
// Tables come from TriangularMap arithmetic and linear search, and every
// subset of N is examined, so nothing is shared with the closure-based
// enumeration in the library.
class MaskOracle {
public:
    explicit MaskOracle(const std::vector<TriangularMap>& elems) : size_(elems.size())
    {
        auto find = [&](const TriangularMap& t) {
            const auto it = std::find(elems.begin(), elems.end(), t);
            EXPECT_NE(it, elems.end());
            return static_cast<std::size_t>(it - elems.begin());
        };
        add_.assign(size_ * size_, 0);
        mul_.assign(size_ * size_, 0);
        neg_.assign(size_, 0);
        for (std::size_t a = 0; a < size_; ++a) {
            neg_[a] = find(negate(elems[a]));
            if (elems[a] == TriangularMap::zero(elems[a].group(), elems[a].n()))
                zero_ = a;
            for (std::size_t b = 0; b < size_; ++b) {
                add_[a * size_ + b] = find(elems[a] + elems[b]);
                mul_[a * size_ + b] = find(compose(elems[a], elems[b]));
            }
        }
    }

    static bool has(std::uint32_t mask, std::size_t i) { return (mask >> i) & 1u; }

    [[nodiscard]] bool subgroup(std::uint32_t m) const
    {
        if (!has(m, zero_))
            return false;
        for (std::size_t a = 0; a < size_; ++a)
            if (has(m, a)) {
                if (!has(m, neg_[a]))
                    return false;
                for (std::size_t b = 0; b < size_; ++b)
                    if (has(m, b) && !has(m, add_[a * size_ + b]))
                        return false;
            }
        return true;
    }

    [[nodiscard]] bool left_ideal(std::uint32_t m) const
    {
        if (!subgroup(m))
            return false;
        for (std::size_t a = 0; a < size_; ++a)
            for (std::size_t l = 0; l < size_; ++l)
                if (has(m, l) && !has(m, add_[add_[a * size_ + l] * size_ + neg_[a]]))
                    return false;
        for (std::size_t x = 0; x < size_; ++x)
            for (std::size_t y = 0; y < size_; ++y)
                for (std::size_t l = 0; l < size_; ++l)
                    if (has(m, l)) {
                        const auto lhs = mul_[x * size_ + add_[y * size_ + l]];
                        if (!has(m, add_[lhs * size_ + neg_[mul_[x * size_ + y]]]))
                            return false;
                    }
        return true;
    }

    [[nodiscard]] bool n_subgroup(std::uint32_t m) const
    {
        if (!subgroup(m))
            return false;
        for (std::size_t x = 0; x < size_; ++x)
            for (std::size_t h = 0; h < size_; ++h)
                if (has(m, h) && !has(m, mul_[x * size_ + h]))
                    return false;
        return true;
    }

    [[nodiscard]] std::vector<std::uint32_t> left_ideals() const
    {
        std::vector<std::uint32_t> out;
        for (std::uint32_t m = 0; m < full() + 1; ++m)
            if (left_ideal(m))
                out.push_back(m);
        return out;
    }

    [[nodiscard]] std::uint32_t j2() const
    {
        std::vector<std::uint32_t> n_subgroups;
        for (std::uint32_t m = 0; m < full() + 1; ++m)
            if (n_subgroup(m))
                n_subgroups.push_back(m);

        std::uint32_t j = full();
        for (const auto l : left_ideals()) {
            if (l == full())
                continue;
            const bool type2 = std::none_of(n_subgroups.begin(), n_subgroups.end(), [&](std::uint32_t h) {
                return (h & l) == l && h != l && h != full();
            });
            if (!type2)
                continue;
            std::uint32_t ann = 0;
            for (std::size_t x = 0; x < size_; ++x) {
                bool kills = true;
                for (std::size_t y = 0; y < size_ && kills; ++y)
                    kills = has(l, mul_[x * size_ + y]);
                if (kills)
                    ann |= 1u << x;
            }
            j &= ann;
        }
        return j;
    }

    [[nodiscard]] std::uint32_t full() const { return static_cast<std::uint32_t>((1ull << size_) - 1); }

private:
    std::size_t size_;
    std::size_t zero_ = 0;
    std::vector<std::size_t> add_;
    std::vector<std::size_t> mul_;
    std::vector<std::size_t> neg_;
};

std::uint32_t to_mask(const LeftIdealSet& s)
{
    std::uint32_t m = 0;
    for (auto i : s.members)
        m |= 1u << i;
    return m;
}

} // namespace

// =============================================================================
// Enumeration and sizes
// =============================================================================

TEST(EnumeratePPn, Counts)
{
    EXPECT_EQ(enumerate_pp_n(z2(), 2).size(), 16u);
    EXPECT_EQ(enumerate_pp_n(z2(), 1).size(), 2u);
    EXPECT_EQ(enumerate_pp_n(z3(), 1).size(), 9u);
    EXPECT_EQ(enumerate_pp_n(z2(), 3).size(), 2048u);
}

TEST(EnumeratePPn, ZeroFirstAndIdentityPresent)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    EXPECT_EQ(nr.zero_index(), 0u);
    EXPECT_EQ(nr.element(0), TriangularMap::zero(z2(), 2));
    EXPECT_EQ(nr.element(nr.identity_index()), TriangularMap::identity(z2(), 2));
    for (std::size_t a = 0; a < nr.size(); ++a) {
        EXPECT_EQ(nr.mul(nr.identity_index(), a), a);
        EXPECT_EQ(nr.mul(a, nr.identity_index()), a);
        EXPECT_EQ(nr.add(a, nr.neg(a)), nr.zero_index());
    }
}

TEST(EnumeratePPn, SizeGuard)
{
    try {
        (void)enumerate_pp_n(z3(), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::size_guard);
        EXPECT_NE(std::string(e.what()).find("59049"), std::string::npos);
    }
}

TEST(Sizes, Closed)
{
    EXPECT_EQ(pp_n_size(z2(), 2), 16u);
    EXPECT_EQ(pp_n_size(z3(), 2), 59049u);
    EXPECT_EQ(ker_alpha_size(z2(), 2), 4u);
    EXPECT_EQ(ker_alpha_size(z3(), 2), 729u);
    EXPECT_EQ(delaying_size(z2(), 2), 2u);
    EXPECT_EQ(delaying_size(z3(), 2), 9u);
    EXPECT_EQ(ker_alpha_size(z3(), 1), 1u);
    EXPECT_EQ(pp_n_size(FiniteGroup::cyclic(9), 6), UINT64_MAX);
}

TEST(Sizes, DirectEnumerationsMatch)
{
    const auto k = enumerate_ker_alpha_maps(z3(), 2);
    const auto d = enumerate_delaying_maps(z3(), 2);
    EXPECT_EQ(k.size(), 729u);
    EXPECT_EQ(d.size(), 9u);
    for (const auto& t : k)
        EXPECT_TRUE(in_ker_alpha(t));
    for (const auto& t : d) {
        EXPECT_TRUE(is_delaying(t));
        EXPECT_NE(std::find(k.begin(), k.end(), t), k.end());
    }
}

// =============================================================================
// Machines <-> triangular maps
// =============================================================================

TEST(RestrictMachine, Examples)
{
    const auto id = restrict_machine(identity_machine(z2()), 2);
    EXPECT_EQ(id.component(1), (Seq{0, 1}));
    EXPECT_EQ(id.component(2), (Seq{0, 1, 0, 1}));
    const auto c = restrict_machine(kernel_generator_c(z2(), 1), 2);
    EXPECT_EQ(c.component(1), (Seq{0, 0}));
    EXPECT_EQ(c.component(2), (Seq{0, 0, 1, 1}));
    EXPECT_EQ(restrict_machine(zero_machine(z3()), 3), TriangularMap::zero(z3(), 3));
}

TEST(RestrictMachine, RejectsNonZeroSymmetric)
{
    try {
        (void)restrict_machine(from_function(FunctionTable::constant(z2(), 1)), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_zero_symmetric);
    }
}

TEST(RestrictMachine, IsAHomomorphism)
{
    testkit::Rng rng(60);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            const auto& g = trial % 2 ? z2() : z3();
            const auto a = testkit::random_zero_symmetric_machine(g, 4, rng);
            const auto b = testkit::random_zero_symmetric_machine(g, 4, rng);
            EXPECT_EQ(restrict_machine(add(a, b), n), restrict_machine(a, n) + restrict_machine(b, n));
            EXPECT_EQ(restrict_machine(compose(a, b), n), compose(restrict_machine(a, n), restrict_machine(b, n)));
            EXPECT_EQ(restrict_machine(negate(a), n), negate(restrict_machine(a, n)));
        }
}

TEST(TriangularToMachine, RoundTripOverPP2Z2)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    for (const auto& t : nr.elements())
        EXPECT_EQ(restrict_machine(triangular_to_machine(t), 2), t);
    EXPECT_TRUE(equivalent(triangular_to_machine(TriangularMap::zero(z3(), 2)), zero_machine(z3())));
    const auto id = triangular_to_machine(TriangularMap::identity(z3(), 2));
    testkit::for_each_sequence(z3(), 2, [&](const Seq& x) { EXPECT_EQ(evaluate(id, x), x); });
}

TEST(TriangularToMachine, AgreesWithApply)
{
    const auto maps = enumerate_ker_alpha_maps(z3(), 2);
    for (std::size_t i = 0; i < maps.size(); i += 31) {
        const auto m = triangular_to_machine(maps[i]);
        testkit::for_each_sequence(z3(), 2, [&](const Seq& x) {
            if (x.size() == 2)
                EXPECT_EQ(evaluate(m, x), maps[i].apply(x));
        });
    }
}

TEST(TriangularMap, Validation)
{
    EXPECT_THROW(TriangularMap(z2(), {{1, 0}}), Error);
    EXPECT_THROW(TriangularMap(z2(), {{0, 1}, {0, 1}}), Error);
}

// =============================================================================
// Subsets and ideals
// =============================================================================

TEST(Subsets, PP2Z2)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    const auto k = ker_alpha_subset(nr);
    const auto d = delaying_subset(nr);
    EXPECT_EQ(k.size(), 4u);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_TRUE(subset(d, k));
    EXPECT_TRUE(is_left_ideal(nr, k));
    for (auto i : d.members) {
        EXPECT_TRUE(is_delaying(triangular_to_machine(nr.element(i))));
        EXPECT_TRUE(find_quasiregular_witness(nr, i).has_value());
    }
    for (auto i : k.members)
        EXPECT_TRUE(in_ker_alpha(triangular_to_machine(nr.element(i))));
}

TEST(Subsets, PP1IsDegenerate)
{
    for (const auto& g : {z2(), z3()}) {
        const auto nr = enumerate_pp_n(g, 1);
        EXPECT_EQ(ker_alpha_subset(nr).members, std::vector<std::size_t>{nr.zero_index()});
        EXPECT_EQ(delaying_subset(nr).members, std::vector<std::size_t>{nr.zero_index()});
    }
}

TEST(LeftIdeals, MatchBruteForce)
{
    for (const auto& nr : {enumerate_pp_n(z2(), 2), enumerate_pp_n(z3(), 1), enumerate_pp_n(z2(), 1)}) {
        const MaskOracle oracle(nr.elements());
        const auto ideals = enumerate_left_ideals(nr);
        std::vector<std::uint32_t> got;
        for (const auto& l : ideals) {
            EXPECT_TRUE(is_left_ideal(nr, l));
            EXPECT_TRUE(oracle.left_ideal(to_mask(l)));
            got.push_back(to_mask(l));
        }
        auto expected = oracle.left_ideals();
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(got, expected);
        EXPECT_NE(std::find(ideals.begin(), ideals.end(), LeftIdealSet{{nr.zero_index()}}), ideals.end());
        EXPECT_NE(std::find(ideals.begin(), ideals.end(), all_of(nr)), ideals.end());
    }
}

TEST(LeftIdeals, PP2Z2ContainsKerAlphaAndDelaying)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    const auto ideals = enumerate_left_ideals(nr);
    EXPECT_NE(std::find(ideals.begin(), ideals.end(), ker_alpha_subset(nr)), ideals.end());
    EXPECT_NE(std::find(ideals.begin(), ideals.end(), delaying_subset(nr)), ideals.end());
}

TEST(Subgroups, CountMatchesBruteForce)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    const MaskOracle oracle(nr.elements());
    std::size_t expected = 0;
    for (std::uint32_t m = 0; m <= oracle.full(); ++m)
        expected += oracle.subgroup(m);
    const auto subs = enumerate_subgroups(nr);
    EXPECT_EQ(subs.size(), expected);
    for (const auto& s : subs)
        EXPECT_TRUE(is_additive_subgroup(nr, s));
}

TEST(Annihilator, OfZeroIdealInM0)
{
    const auto nr = enumerate_pp_n(z3(), 1);
    const auto ann = quotient_annihilator(nr, LeftIdealSet{{nr.zero_index()}});
    EXPECT_EQ(ann.members, std::vector<std::size_t>{nr.zero_index()});
    EXPECT_EQ(quotient_annihilator(nr, all_of(nr)), all_of(nr));
}

// =============================================================================
// J2
// =============================================================================

TEST(J2, M0IsSemisimple)
{
    for (const auto& g : {z2(), z3()}) {
        const auto nr = enumerate_pp_n(g, 1);
        EXPECT_EQ(j2_bruteforce(nr).members, std::vector<std::size_t>{nr.zero_index()});
    }
}

TEST(J2, PP2Z2MatchesBruteForce)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    const auto j = j2_bruteforce(nr);
    EXPECT_EQ(to_mask(j), MaskOracle(nr.elements()).j2());
    EXPECT_TRUE(is_ideal(nr, j));
    EXPECT_TRUE(subset(delaying_subset(nr), j));
    EXPECT_TRUE(subset(j, ker_alpha_subset(nr)));
}

TEST(J2, PP2Z2FrozenValue)
{
    // Computed once by the bitmask oracle above and frozen here.
    const auto nr = enumerate_pp_n(z2(), 2);
    EXPECT_EQ(j2_bruteforce(nr).members, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(QuasiregularWitness, IdentityHasNone)
{
    const auto nr = enumerate_pp_n(z2(), 2);
    EXPECT_FALSE(find_quasiregular_witness(nr, nr.identity_index()).has_value());
    EXPECT_EQ(find_quasiregular_witness(nr, nr.zero_index()), nr.identity_index());
}

// =============================================================================
// Sandwich report
// =============================================================================

TEST(Sandwich, Z2N2IsComplete)
{
    const auto r = sandwich_report(z2(), 2);
    EXPECT_FALSE(r.partial);
    EXPECT_TRUE(r.enumerated);
    EXPECT_EQ(r.pp_size, 16u);
    EXPECT_EQ(r.delaying_size, 2u);
    EXPECT_EQ(r.ker_alpha_size, 4u);
    ASSERT_TRUE(r.j2_members.has_value());
    EXPECT_TRUE(r.delaying_in_ker_alpha);
    EXPECT_EQ(r.delaying_in_j2, true);
    EXPECT_EQ(r.j2_in_ker_alpha, true);
    EXPECT_EQ(r.delaying_witnessed, r.delaying_checked);
    EXPECT_FALSE(r.property_x);

    const auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j.at("ker_alpha_size"), 4);
    EXPECT_EQ(r.to_json(), sandwich_report(z2(), 2).to_json());
}

TEST(Sandwich, Z2N1IsDegenerate)
{
    const auto r = sandwich_report(z2(), 1);
    EXPECT_EQ(r.delaying_size, 1u);
    EXPECT_EQ(r.ker_alpha_size, 1u);
    ASSERT_TRUE(r.j2_members.has_value());
    EXPECT_EQ(r.j2_members->size(), 1u);
}

TEST(Sandwich, Z3N2IsPartial)
{
    const auto r = sandwich_report(z3(), 2);
    EXPECT_TRUE(r.partial);
    EXPECT_FALSE(r.enumerated);
    EXPECT_FALSE(r.j2_members.has_value());
    EXPECT_EQ(r.ker_alpha_size, 729u);
    EXPECT_EQ(r.delaying_size, 9u);
    EXPECT_TRUE(r.property_x);
    EXPECT_EQ(r.identity_checked, 729u);
    EXPECT_EQ(r.identity_passed, 729u);
    EXPECT_FALSE(r.identity_sampled);
    EXPECT_EQ(r.delaying_witnessed, 9u);
    EXPECT_NE(r.to_text().find("[partial report]"), std::string::npos);
}
