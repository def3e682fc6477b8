// Acceptance suite: one PASS/FAIL line per criterion. A criterion passes only
// if every check holds and it finishes within its time limit.

#include "ppnear/ppnear.hpp"

#include "support/generators.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace ppnear;
using testkit::Rng;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = "failed: " + what;
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> body;
};

FiniteGroup z(std::uint32_t n) { return FiniteGroup::cyclic(n); }

FiniteGroup prod(std::uint32_t a, std::uint32_t b)
{
    return FiniteGroup::product(std::vector{z(a), z(b)});
}

Outcome property_x_parity()
{
    Outcome o;
    std::vector<FiniteGroup> groups;
    for (std::uint32_t n = 2; n <= 9; ++n)
        groups.push_back(z(n));
    groups.push_back(prod(2, 2));
    groups.push_back(prod(2, 4));
    groups.push_back(prod(3, 3));

    std::size_t brute_runs = 0;
    for (const auto& g : groups) {
        const auto w = property_x_solve(g);
        const bool odd = g.order() % 2 == 1;
        o.require(w.has_value() == odd, g.label() + " solver verdict");
        if (w)
            o.require(satisfies_property_x(g, w->k, w->f), g.label() + " solver witness");
        if (g.order() <= 6) {
            const auto b = property_x_brute(g);
            o.require(b.has_value() == w.has_value(), g.label() + " brute force disagrees");
            if (b)
                o.require(satisfies_property_x(g, b->k, b->f), g.label() + " brute witness");
            ++brute_runs;
        }
    }
    if (o.ok)
        o.detail = std::to_string(groups.size()) + " groups, " + std::to_string(brute_runs) + " brute-force cross-checks";
    return o;
}

Outcome alpha_homomorphism()
{
    Outcome o;
    Rng rng(2002);
    std::size_t pairs = 0;
    for (std::uint32_t n : {2u, 3u, 4u})
        for (int t = 0; t < 80; ++t, ++pairs) {
            const auto g = z(n);
            const auto a = testkit::random_zero_symmetric_machine(g, 4, rng);
            const auto b = testkit::random_zero_symmetric_machine(g, 4, rng);
            o.require(equivalent(alpha(add(a, b)), add(alpha(a), alpha(b))), "alpha(a+b) over " + g.label());
            o.require(equivalent(alpha(compose(a, b)), compose(alpha(a), alpha(b))), "alpha(ab) over " + g.label());
            o.require(equivalent(alpha(alpha(a)), alpha(a)), "alpha idempotent over " + g.label());
        }
    if (o.ok)
        o.detail = std::to_string(pairs) + " pairs over Z2, Z3, Z4";
    return o;
}

Outcome sandwich_lower_half()
{
    Outcome o;
    Rng rng(3003);
    std::size_t count = 0;
    for (const auto& g : {z(3), prod(2, 2)})
        for (int t = 0; t < 60; ++t, ++count) {
            const auto n = testkit::random_delaying_machine(g, 5, rng);
            o.require(is_delaying(n), "generator produced a non-delaying machine");
            o.require(in_ker_alpha(n), "delaying machine outside ker alpha over " + g.label());
            o.require(quasiregular_witness_check(n, invert_one_minus(n)), "m(1-n) != 1 over " + g.label());
        }
    if (o.ok)
        o.detail = std::to_string(count) + " delaying machines over Z3, Z2xZ2";
    return o;
}

Outcome radical_identity()
{
    Outcome o;
    const auto g = z(3);
    const auto maps = enumerate_ker_alpha_maps(g, 2);
    o.require(maps.size() == 729, "ker alpha_2(Z3) has " + std::to_string(maps.size()) + " elements");
    for (const auto& t : maps)
        o.require(radical_identity_check(g, triangular_to_machine(t)), "lifted ker alpha_2 element");

    Rng rng(4004);
    const std::size_t random_count = 150;
    for (std::size_t t = 0; t < random_count; ++t)
        o.require(radical_identity_check(g, testkit::random_ker_alpha_machine(g, 4, rng)), "random ker alpha machine");
    if (o.ok)
        o.detail = std::to_string(maps.size()) + " lifted + " + std::to_string(random_count) + " random machines";
    return o;
}

Outcome j2_sandwich()
{
    Outcome o;
    const auto nr = enumerate_pp_n(z(2), 2);
    const auto j = j2_bruteforce(nr);
    const auto d = delaying_subset(nr);
    const auto k = ker_alpha_subset(nr);
    auto within = [](const LeftIdealSet& a, const LeftIdealSet& b) {
        return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
    };
    o.require(within(d, j), "D not inside J2");
    o.require(within(j, k), "J2 not inside ker alpha");
    o.require(j.size() >= 2 && j.size() <= 4, "|J2| = " + std::to_string(j.size()));
    for (std::uint32_t n : {2u, 3u}) {
        const auto m0 = enumerate_pp_n(z(n), 1);
        o.require(j2_bruteforce(m0).members == std::vector<std::size_t>{m0.zero_index()},
                  "J2(M0(Z" + std::to_string(n) + ")) != {0}");
    }
    if (o.ok)
        o.detail = "|D| = " + std::to_string(d.size()) + ", |J2| = " + std::to_string(j.size()) +
                   ", |ker alpha| = " + std::to_string(k.size()) + " in PP_2(Z2)";
    return o;
}

Outcome decomposition()
{
    Outcome o;
    Rng rng(6006);
    std::size_t count = 0;
    for (const auto& g : {z(2), z(3)})
        for (int t = 0; t < 60; ++t, ++count) {
            const auto m = testkit::random_amnesiac_machine(g, 6, rng);
            o.require(equivalent(alpha(m), m), "generator produced a machine not fixed by alpha");
            o.require(equivalent(reconstruct_from_decomposition(decompose_amnesiac(m)), m),
                      "round trip over " + g.label());
        }
    const auto g = z(2);
    const auto maps = all_zero_preserving_maps(g);
    std::size_t orth = 0;
    for (std::size_t i = 1; i <= 4; ++i)
        for (std::size_t j = 1; j <= 4; ++j) {
            if (i == j)
                continue;
            for (const auto& f : maps)
                for (const auto& h : maps) {
                    o.require(equivalent(compose(f_ij_machine(f, i, 0), f_ij_machine(h, j, 0)), zero_machine(g)),
                              "f^" + std::to_string(i) + " g^" + std::to_string(j) + " != 0");
                    ++orth;
                }
        }
    if (o.ok)
        o.detail = std::to_string(count) + " round trips, " + std::to_string(orth) + " orthogonal products";
    return o;
}

Outcome embedding()
{
    Outcome o;
    const auto k = z(2);
    const EncodingScheme diagonal{k, 2, {{0, 0}, {1, 1}}, {0, 1}, {0, 1}, k};
    const EncodingScheme full{k, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 2, 3}, {0, 1, 2, 3}, prod(2, 2)};
    std::size_t maps = 0, pairs = 0;
    for (const auto& [name, scheme] : {std::pair{"diagonal", diagonal}, std::pair{"full", full}}) {
        const auto r = verify_embedding(validate_scheme(scheme), 64, 7007);
        o.require(r.pointwise, std::string(name) + " pointwise");
        o.require(r.additive, std::string(name) + " additive");
        o.require(r.multiplicative, std::string(name) + " multiplicative");
        o.require(r.injective, std::string(name) + " injective");
        maps += r.maps_checked;
        pairs += r.pairs_checked;
    }
    o.require(maps == 2 + 64, "expected all of M0(Z2) and M0(Z2xZ2)");
    o.require(pairs >= 50, "only " + std::to_string(pairs) + " pairs");
    if (o.ok)
        o.detail = std::to_string(maps) + " maps, " + std::to_string(pairs) + " pairs";
    return o;
}

Outcome nearring_axioms()
{
    Outcome o;
    Rng rng(8008);
    std::size_t triples = 0;
    for (const auto& g : {z(2), z(3), testkit::s3()})
        for (int t = 0; t < 80; ++t, ++triples) {
            const auto a = testkit::random_machine(g, 3, rng);
            const auto b = testkit::random_machine(g, 3, rng);
            const auto c = testkit::random_machine(g, 3, rng);
            o.require(equivalent(compose(add(a, b), c), add(compose(a, c), compose(b, c))),
                      "right distributivity over " + g.label());
        }

    const auto j = nlohmann::json::parse(read_text_file(PPNEAR_FIXTURE_DIR "/left_distributivity_z2.json"));
    const auto a = parse_machine(j.at("a").dump());
    const auto b = parse_machine(j.at("b").dump());
    const auto c = parse_machine(j.at("c").dump());
    const auto witness = j.at("witness").get<std::vector<Element>>();
    const auto lhs = compose(a, add(b, c));
    const auto rhs = add(compose(a, b), compose(a, c));
    o.require(a.group() == z(2), "fixture is not over Z2");
    o.require(!equivalent(lhs, rhs), "stored left-distributivity counterexample is not one");
    o.require(evaluate(lhs, witness) != evaluate(rhs, witness), "stored witness does not separate");
    if (o.ok)
        o.detail = std::to_string(triples) + " triples; fixture separates on its witness";
    return o;
}

Outcome moore_characterization()
{
    Outcome o;
    Rng rng(9009);
    std::size_t count = 0, delaying = 0;
    for (const auto& g : {z(2), z(3), prod(2, 2)})
        for (int t = 0; t < 80; ++t, ++count) {
            const auto raw = t % 2 ? testkit::random_delaying_machine(g, 5, rng, t % 4 == 1)
                                   : testkit::random_machine(g, 4, rng);
            const auto m = trim(raw);
            const bool syntactic = is_delaying(m);
            o.require(syntactic == testkit::delaying_by_product(m), "is_delaying disagrees over " + g.label());
            delaying += syntactic;
        }
    o.require(delaying > 50 && delaying + 50 < count, "sample lacks both verdicts");
    if (o.ok)
        o.detail = std::to_string(count) + " trimmed machines, " + std::to_string(delaying) + " delaying";
    return o;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "property-X parity", 5, property_x_parity},
        {2, "amnesiac homomorphism and idempotence", 30, alpha_homomorphism},
        {3, "delaying machines: ker alpha and quasiregular witness", 30, sandwich_lower_half},
        {4, "radical-generation identity over Z3", 120, radical_identity},
        {5, "J2 oracle and sandwich", 60, j2_sandwich},
        {6, "amnesiac decomposition round trip and orthogonality", 60, decomposition},
        {7, "embedding of M0(G)", 120, embedding},
        {8, "nearring axioms on machines", 30, nearring_axioms},
        {9, "syntactic vs semantic delaying", 30, moore_characterization},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.limit_seconds) {
            o.ok = false;
            o.detail += "; over time limit";
        }
        failed += !o.ok;
        std::printf("AC%d %s %s: %s (%.3f s, limit %.0f s)\n", c.id, o.ok ? "PASS" : "FAIL", c.title,
                    o.detail.c_str(), secs, c.limit_seconds);
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
