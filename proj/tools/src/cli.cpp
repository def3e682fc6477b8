#include "ppnear/cli.hpp"

#include "ppnear/ppnear.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

namespace ppnear::cli {
namespace {

using json = nlohmann::json;

std::vector<Element> parse_sequence(const std::string& text)
{
    std::vector<Element> seq;
    if (text.empty())
        return seq;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        Element v = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + comma;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || first == last)
            throw Error(Errc::parse_error, "bad element list '" + text + "'");
        seq.push_back(v);
        pos = comma + 1;
    }
    return seq;
}

std::string join(const std::vector<Element>& seq)
{
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(seq[i]);
    }
    return s;
}

FiniteGroup load_group(const std::string& arg)
{
    if (std::filesystem::is_regular_file(arg))
        return parse_group(read_text_file(arg));
    return parse_group_argument(arg);
}

MealyMachine load_machine(const std::string& path) { return parse_machine(read_text_file(path)); }

ValidatedScheme load_scheme(const std::string& path)
{
    return validate_scheme(parse_scheme(read_text_file(path)));
}

// Shared state for one invocation. Each leaf subcommand installs `action`.
struct Context {
    explicit Context(std::ostream& o) : out(o) {}

    std::ostream& out;
    bool as_json = false;
    std::string out_path;
    std::function<int()> action;

    // Option storage, bound by reference to the CLI11 options.
    std::string spec, a_path, b_path, input, table, scheme_path, machine_path;
    bool brute = false;
    bool restricted = false;
    std::size_t i_pos = 1, j_step = 0, depth = 1, pairs = 64, n_len = 2, identity_limit = 10000;
    Element k_elem = 1, g_elem = 0;
    std::uint64_t seed = 1;

    void emit(const std::string& text) const
    {
        if (out_path.empty())
            out << text;
        else
            write_text_file(out_path, text);
    }

    int verdict(bool yes, const std::string& name, json extra = json::object()) const
    {
        if (as_json) {
            extra[name] = yes;
            out << extra.dump() << "\n";
        } else {
            out << (yes ? "true" : "false") << "\n";
        }
        return yes ? 0 : 1;
    }
};

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, Context& ctx,
               bool writes_file = false)
{
    auto* cmd = parent->add_subcommand(name, help);
    if (writes_file)
        cmd->add_option("--out", ctx.out_path, "write the result to this file instead of stdout");
    return cmd;
}

void add_group_commands(CLI::App& app, Context& ctx)
{
    auto* group = app.add_subcommand("group", "finite group checks");
    group->require_subcommand(1);


    auto* check = leaf(group, "check", "validate a group and print its basic data", ctx);
    check->add_option("--group", ctx.spec, "cyclic:N, product:N1,N2,..., JSON object or file")->required();
    check->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto g = load_group(ctx.spec);
            if (ctx.as_json) {
                ctx.out << json{{"label", g.label()}, {"order", g.order()}, {"abelian", g.is_abelian()}}.dump()
                        << "\n";
            } else {
                ctx.out << g.label() << ": order " << g.order() << (g.is_abelian() ? ", abelian" : ", nonabelian")
                        << "\n";
            }
            return 0;
        };
    });

    auto* px = leaf(group, "property-x", "solve f(x+k) - f(x) = x", ctx);
    px->add_option("--group", ctx.spec, "group")->required();
    px->add_flag("--brute", ctx.brute, "exhaustive search instead of the coset solver (order <= 6)");
    px->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto g = load_group(ctx.spec);
            const auto w = ctx.brute ? property_x_brute(g) : property_x_solve(g);
            if (ctx.as_json) {
                json j{{"property_x", w.has_value()}};
                if (w) {
                    j["k"] = w->k;
                    j["f"] = w->f.values();
                }
                ctx.out << j.dump() << "\n";
            } else if (w) {
                ctx.out << "k = " << w->k << "\nf = " << join(w->f.values()) << "\n";
            } else {
                ctx.out << g.label() << " has no property X\n";
            }
            return w ? 0 : 1;
        };
    });
}

void add_machine_commands(CLI::App& app, Context& ctx)
{
    auto* machine = app.add_subcommand("machine", "Mealy machine operations");
    machine->require_subcommand(1);


    auto unary = [&](const std::string& name, const std::string& help,
                     std::function<MealyMachine(const MealyMachine&)> op) {
        auto* cmd = leaf(machine, name, help, ctx, true);
        cmd->add_option("machine", ctx.a_path, "machine file")->required();
        cmd->callback([&ctx, op] {
            ctx.action = [&ctx, op] {
                ctx.emit(serialize_machine(op(load_machine(ctx.a_path))));
                return 0;
            };
        });
    };
    auto binary = [&](const std::string& name, const std::string& help,
                      std::function<MealyMachine(const MealyMachine&, const MealyMachine&)> op) {
        auto* cmd = leaf(machine, name, help, ctx, true);
        cmd->add_option("a", ctx.a_path, "first machine file")->required();
        cmd->add_option("b", ctx.b_path, "second machine file")->required();
        cmd->callback([&ctx, op] {
            ctx.action = [&ctx, op] {
                ctx.emit(serialize_machine(op(load_machine(ctx.a_path), load_machine(ctx.b_path))));
                return 0;
            };
        });
    };
    auto predicate = [&](const std::string& name, const std::string& help, const std::string& key,
                         std::function<bool(const MealyMachine&)> test) {
        auto* cmd = leaf(machine, name, help, ctx);
        cmd->add_option("machine", ctx.a_path, "machine file")->required();
        cmd->callback([&ctx, test, key] {
            ctx.action = [&ctx, test, key] { return ctx.verdict(test(load_machine(ctx.a_path)), key); };
        });
    };

    auto* eval = leaf(machine, "eval", "run a machine on an input sequence", ctx);
    eval->add_option("machine", ctx.a_path, "machine file")->required();
    eval->add_option("--input", ctx.input, "comma-separated element indices")->required();
    eval->add_flag("--restricted", ctx.restricted, "evaluate_restricted (input must be nonempty)");
    eval->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto m = load_machine(ctx.a_path);
            const auto x = parse_sequence(ctx.input);
            const auto y = ctx.restricted ? evaluate_restricted(m, x) : evaluate(m, x);
            if (ctx.as_json)
                ctx.out << json{{"output", y}}.dump() << "\n";
            else
                ctx.out << join(y) << "\n";
            return 0;
        };
    });

    binary("add", "pointwise sum a + b", [](const auto& a, const auto& b) { return add(a, b); });
    binary("compose", "composition a(b(x))", [](const auto& a, const auto& b) { return compose(a, b); });
    unary("negate", "pointwise negation", [](const auto& a) { return negate(a); });
    unary("alpha", "amnesiac image", [](const auto& a) { return alpha(a); });
    unary("trim", "drop unreachable states", [](const auto& a) { return trim(a); });
    unary("invert", "inverse of 1 - n for a zero-symmetric delaying n",
          [](const auto& a) { return invert_one_minus(a); });

    auto* equal = leaf(machine, "equal", "semantic equivalence with a shortest witness", ctx);
    equal->add_option("a", ctx.a_path, "first machine file")->required();
    equal->add_option("b", ctx.b_path, "second machine file")->required();
    equal->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto w = distinguishing_input(load_machine(ctx.a_path), load_machine(ctx.b_path));
            if (ctx.as_json) {
                json j{{"equivalent", !w}};
                if (w)
                    j["witness"] = *w;
                ctx.out << j.dump() << "\n";
            } else if (w) {
                ctx.out << "not equivalent; witness " << join(*w) << "\n";
            } else {
                ctx.out << "equivalent\n";
            }
            return w ? 1 : 0;
        };
    });

    predicate("is-delaying", "Moore-type test", "delaying", [](const auto& m) { return is_delaying(m); });
    predicate("is-zero-symmetric", "maps the zero sequence to itself", "zero_symmetric",
              [](const auto& m) { return is_zero_symmetric(m); });
    predicate("in-ker-alpha", "alpha(m) is the zero map", "in_ker_alpha",
              [](const auto& m) { return in_ker_alpha(m); });

    auto* decompose = leaf(machine, "decompose", "transient and cycle maps of an alpha-fixed machine", ctx, true);
    decompose->add_option("machine", ctx.a_path, "machine file")->required();
    decompose->callback([&ctx] {
        ctx.action = [&ctx] {
            ctx.emit(serialize_decomposition(decompose_amnesiac(load_machine(ctx.a_path))));
            return 0;
        };
    });

    auto* fij = leaf(machine, "fij", "counter machine applying f at positions i, i+j, ...", ctx, true);
    fij->add_option("--group", ctx.spec, "group")->required();
    fij->add_option("--f", ctx.table, "zero-preserving map as comma-separated values")->required();
    fij->add_option("--i", ctx.i_pos, "first position (1-based)")->required();
    fij->add_option("--j", ctx.j_step, "step, 0 for a single position");
    fij->callback([&ctx] {
        ctx.action = [&ctx] {
            const FunctionTable f(load_group(ctx.spec), parse_sequence(ctx.table));
            ctx.emit(serialize_machine(f_ij_machine(f, ctx.i_pos, ctx.j_step)));
            return 0;
        };
    });

    auto* kc = leaf(machine, "kernel-c", "two-state delaying machine emitting k after the first nonzero input",
                    ctx, true);
    kc->add_option("--group", ctx.spec, "group")->required();
    kc->add_option("--k", ctx.k_elem, "nonzero element");
    kc->callback([&ctx] {
        ctx.action = [&ctx] {
            ctx.emit(serialize_machine(kernel_generator_c(load_group(ctx.spec), ctx.k_elem)));
            return 0;
        };
    });

    auto* ff = leaf(machine, "from-function", "one-state machine applying f at every position", ctx, true);
    ff->add_option("--group", ctx.spec, "group")->required();
    ff->add_option("--f", ctx.table, "map as comma-separated values")->required();
    ff->callback([&ctx] {
        ctx.action = [&ctx] {
            ctx.emit(serialize_machine(from_function(FunctionTable(load_group(ctx.spec), parse_sequence(ctx.table)))));
            return 0;
        };
    });

    auto* qr = leaf(machine, "quasiregular", "check m(1 - n) = 1", ctx);
    qr->add_option("n", ctx.a_path, "machine n")->required();
    qr->add_option("m", ctx.b_path, "candidate witness m")->required();
    qr->callback([&ctx] {
        ctx.action = [&ctx] {
            return ctx.verdict(quasiregular_witness_check(load_machine(ctx.a_path), load_machine(ctx.b_path)), "witness");
        };
    });

    auto* ri = leaf(machine, "radical-identity", "check f(d + c) - f d = d for d in ker alpha", ctx);
    ri->add_option("machine", ctx.a_path, "machine d")->required();
    ri->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto d = load_machine(ctx.a_path);
            return ctx.verdict(radical_identity_check(d.group(), d), "identity");
        };
    });
}

void add_embed_commands(CLI::App& app, Context& ctx)
{
    auto* embed = app.add_subcommand("embed", "embedding of M0(G) into machines over K");
    embed->require_subcommand(1);


    auto* validate = leaf(embed, "validate", "check the scheme invariants", ctx);
    validate->add_option("scheme", ctx.scheme_path, "scheme file")->required();
    validate->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto s = load_scheme(ctx.scheme_path);
            if (ctx.as_json)
                ctx.out << json{{"valid", true}, {"S", s.scheme().S.size()}, {"n", s.n()}}.dump() << "\n";
            else
                ctx.out << "valid: |S| = " << s.scheme().S.size() << ", n = " << s.n() << ", G = "
                        << s.G().label() << ", K = " << s.K().label() << "\n";
            return 0;
        };
    });

    auto* build = leaf(embed, "build", "machine over K realizing f in M0(G)", ctx, true);
    build->add_option("scheme", ctx.scheme_path, "scheme file")->required();
    build->add_option("--f", ctx.table, "zero-preserving map on G")->required();
    build->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto s = load_scheme(ctx.scheme_path);
            ctx.emit(serialize_machine(build_embedding_automaton(s, FunctionTable(s.G(), parse_sequence(ctx.table)))));
            return 0;
        };
    });

    auto* apply = leaf(embed, "apply", "decode(a(encode(g)))", ctx);
    apply->add_option("scheme", ctx.scheme_path, "scheme file")->required();
    apply->add_option("machine", ctx.machine_path, "machine over K")->required();
    apply->add_option("--g", ctx.g_elem, "element of G")->required();
    apply->add_option("--depth", ctx.depth, "number of chained built machines");
    apply->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto y = embedded_apply(load_scheme(ctx.scheme_path), load_machine(ctx.machine_path), ctx.g_elem, ctx.depth);
            if (ctx.as_json)
                ctx.out << json{{"result", y}}.dump() << "\n";
            else
                ctx.out << y << "\n";
            return 0;
        };
    });

    auto* verify = leaf(embed, "verify", "check the embedding over all of M0(G)", ctx);
    verify->add_option("scheme", ctx.scheme_path, "scheme file")->required();
    verify->add_option("--pairs", ctx.pairs, "sampled (f1, f2) pairs");
    verify->add_option("--seed", ctx.seed, "sampling seed");
    verify->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto r = verify_embedding(load_scheme(ctx.scheme_path), ctx.pairs, ctx.seed);
            if (ctx.as_json) {
                ctx.out << json{{"ok", r.ok()},
                                {"maps_checked", r.maps_checked},
                                {"pairs_checked", r.pairs_checked},
                                {"pointwise", r.pointwise},
                                {"additive", r.additive},
                                {"multiplicative", r.multiplicative},
                                {"injective", r.injective},
                                {"failures", r.failures}}
                               .dump()
                        << "\n";
            } else {
                ctx.out << "maps " << r.maps_checked << ", pairs " << r.pairs_checked << "\n"
                        << "pointwise " << r.pointwise << ", additive " << r.additive << ", multiplicative "
                        << r.multiplicative << ", injective " << r.injective << "\n";
                for (const auto& f : r.failures)
                    ctx.out << "failure: " << f << "\n";
                ctx.out << (r.ok() ? "ok" : "FAILED") << "\n";
            }
            return r.ok() ? 0 : 1;
        };
    });
}

json triangular_json(const TriangularMap& t)
{
    json comps = json::array();
    for (const auto& c : t.components())
        comps.push_back(c);
    return comps;
}

void add_oracle_commands(CLI::App& app, Context& ctx)
{
    auto* oracle = app.add_subcommand("oracle", "exhaustive checks on restricted nearrings PP_n(G)");
    oracle->require_subcommand(1);


    auto* enumerate = leaf(oracle, "enumerate", "list PP_n(G) in canonical order", ctx, true);
    enumerate->add_option("--group", ctx.spec, "group")->required();
    enumerate->add_option("--n", ctx.n_len, "prefix length");
    enumerate->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto nr = enumerate_pp_n(load_group(ctx.spec), ctx.n_len);
            std::ostringstream os;
            if (ctx.as_json) {
                json elems = json::array();
                for (const auto& t : nr.elements())
                    elems.push_back(triangular_json(t));
                os << json{{"size", nr.size()},
                           {"zero", nr.zero_index()},
                           {"identity", nr.identity_index()},
                           {"elements", elems}}
                          .dump()
                   << "\n";
            } else {
                os << "PP_" << ctx.n_len << "(" << nr.group().label() << "): " << nr.size() << " elements\n";
                for (std::size_t i = 0; i < nr.size(); ++i) {
                    os << i << ":";
                    for (const auto& c : nr.element(i).components())
                        os << " [" << join(c) << "]";
                    os << "\n";
                }
            }
            ctx.emit(os.str());
            return 0;
        };
    });

    auto* j2 = leaf(oracle, "j2", "J2 of PP_n(G) from the definition", ctx);
    j2->add_option("--group", ctx.spec, "group")->required();
    j2->add_option("--n", ctx.n_len, "prefix length");
    j2->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto nr = enumerate_pp_n(load_group(ctx.spec), ctx.n_len);
            const auto j = j2_bruteforce(nr);
            if (ctx.as_json) {
                ctx.out << json{{"size", j.size()}, {"members", j.members}}.dump() << "\n";
            } else {
                ctx.out << "|J2| = " << j.size() << "\nmembers:";
                for (auto i : j.members)
                    ctx.out << " " << i;
                ctx.out << "\n";
            }
            return 0;
        };
    });

    auto* sandwich = leaf(oracle, "sandwich", "D <= J2 <= ker alpha report", ctx, true);
    sandwich->add_option("--group", ctx.spec, "group")->required();
    sandwich->add_option("--n", ctx.n_len, "prefix length");
    sandwich->add_option("--identity-limit", ctx.identity_limit, "lifted ker alpha members checked before sampling");
    sandwich->callback([&ctx] {
        ctx.action = [&ctx] {
            const auto r = sandwich_report(load_group(ctx.spec), ctx.n_len, ctx.identity_limit);
            ctx.emit(ctx.as_json ? r.to_json() : r.to_text());
            return 0;
        };
    });
}

std::string first_line(const std::string& s)
{
    return s.substr(0, s.find('\n'));
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Context ctx(out);
    CLI::App app{"Prefix-preserving maps over finite groups as Mealy machines", "ppnear"};
    app.require_subcommand(1);
    app.add_flag("--json", ctx.as_json, "machine-readable output");
    // Lets --json appear after the subcommand too.
    app.fallthrough();
    add_group_commands(app, ctx);
    add_machine_commands(app, ctx);
    add_embed_commands(app, ctx);
    add_oracle_commands(app, ctx);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ppnear: " << first_line(e.what()) << "\n";
        return 2;
    }

    if (!ctx.action) {
        err << "ppnear: no command given\n";
        return 2;
    }
    try {
        return ctx.action();
    } catch (const Error& e) {
        err << "ppnear: " << to_string(e.code()) << ": " << first_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "ppnear: " << first_line(e.what()) << "\n";
        return 2;
    }
}

} // namespace ppnear::cli
