#include "expofield/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "expofield/json_io.hpp"

namespace expofield {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<FieldElem> elems(const std::string& s, unsigned order) {
    std::vector<FieldElem> out;
    for (auto& part : split(s)) out.push_back(parse_elem(part, order));
    return out;
}

unsigned seed_from_env() {
    const char* s = std::getenv("EXPOFIELD_SEED");
    if (!s || !*s) return 1;
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (*end != '\0' || v > 1000000) throw UsageError("EXPOFIELD_SEED must be a small non-negative integer");
    return static_cast<unsigned>(v);
}

// Inputs shared by the variety commands: a JSON locus or an equation system.
struct VarietyInput {
    std::string file;
    std::string expr;
    std::string params;

    void add(CLI::App* app) {
        app->add_option("-f,--file", file, "parametric variety JSON");
        app->add_option("-e,--expr", expr, "equation system");
        app->add_option("--params", params, "comma separated base parameters");
    }

    ParametricVariety load(unsigned seed) const {
        if (file.empty() == expr.empty()) throw UsageError("give exactly one of --file and --expr");
        if (!file.empty()) return variety_from_json(read_json(file));
        auto ps = split(params);
        return from_flat(normalize(parse_system(expr), ps, FreshNames{seed}), ps);
    }
};

EFieldPresentation load_field(const std::string& path, const std::vector<Symbol>& fallback = {},
                              unsigned order = 1) {
    if (!path.empty()) return presentation_from_json(read_json(path));
    EFieldPresentation f;
    f.transcendentals = fallback;
    f.cyclotomic_order = order;
    return f;
}

json error_json(const std::string& kind, const std::string& message, const json& cert = nullptr) {
    json j = {{"error", kind}, {"message", message}};
    if (!cert.is_null()) j["certificate"] = cert;
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with finitely presented exponential fields", "expofield"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output;
    app.add_option("-o,--output", output, "write the JSON result to this file");

    json result;
    std::function<void()> action;
    unsigned seed = 1;

    // normalize
    std::string n_expr, n_file, n_params;
    auto* normalize_cmd = app.add_subcommand("normalize", "eliminate inequations and flatten");
    normalize_cmd->add_option("-e,--expr", n_expr, "equation system");
    normalize_cmd->add_option("-f,--file", n_file, "file holding an equation system");
    normalize_cmd->add_option("--params", n_params, "comma separated parameters");
    normalize_cmd->callback([&] {
        action = [&] {
            if (n_expr.empty() == n_file.empty()) throw UsageError("give exactly one of --expr and --file");
            std::string text = n_expr.empty() ? read_file(n_file) : n_expr;
            result = to_json(normalize(parse_system(text), split(n_params), FreshNames{seed}));
        };
    });

    // free-check
    VarietyInput fc_in;
    int oracle = 0;
    auto* free_cmd = app.add_subcommand("free-check", "decide additive freeness");
    fc_in.add(free_cmd);
    free_cmd->add_option("--oracle", oracle, "also run the brute-force search with this bound")
        ->check(CLI::Range(1, 12));
    free_cmd->callback([&] {
        action = [&] {
            ParametricVariety v = fc_in.load(seed);
            FreenessCertificate c = additive_freeness(v);
            json cert = to_json(c);
            if (oracle > 0) {
                auto hit = brute_force_relation(v, oracle);
                json o = {{"bound", oracle}, {"found", hit.has_value()}};
                if (hit) {
                    json m = json::array();
                    for (auto& x : *hit) m.push_back(int_json(x));
                    o["m"] = m;
                }
                // the oracle can only miss relations outside its box
                o["agrees"] = c.free ? !hit.has_value() : (hit.has_value() || [&] {
                    for (auto& x : c.m)
                        if (abs(x) > oracle) return true;
                    return false;
                }());
                cert["oracle"] = o;
            }
            if (!c.free) throw DomainError("NotAdditivelyFree", "the variety satisfies an additive relation", cert);
            result = {{"variety", to_json(v)}, {"freeness", cert}};
        };
    });

    // reduce
    VarietyInput red_in;
    auto* reduce_cmd = app.add_subcommand("reduce", "reduce to an additively free variety");
    red_in.add(reduce_cmd);
    reduce_cmd->callback([&] { action = [&] { result = to_json(reduce(red_in.load(seed))); }; });

    // solve
    VarietyInput sol_in;
    std::string sol_field;
    bool no_extend = false;
    auto* solve_cmd = app.add_subcommand("solve", "realise an exponential point");
    sol_in.add(solve_cmd);
    solve_cmd->add_option("--field", sol_field, "base presentation JSON (default: Q(params))");
    solve_cmd->add_flag("--no-extend", no_extend, "refuse to adjoin unknown exponentials");
    solve_cmd->callback([&] {
        action = [&] {
            ParametricVariety v = sol_in.load(seed);
            EFieldPresentation f = load_field(sol_field, v.base_params, v.cyclotomic_order);
            result = to_json(solve(f, v, SolveOptions{!no_extend, seed}));
        };
    });

    // efield-check
    std::string ec_file;
    auto* ec_cmd = app.add_subcommand("efield-check", "check a presentation");
    ec_cmd->add_option("-f,--file", ec_file, "presentation JSON")->required();
    ec_cmd->callback([&] {
        action = [&] {
            PresentationReport r = check_presentation(presentation_from_json(read_json(ec_file)));
            if (!r.ok()) throw DomainError("InvalidPresentation", r.violations[0].message, to_json(r));
            result = to_json(r);
        };
    });

    // minimal-ea
    std::string prefix;
    auto* mea_cmd = app.add_subcommand("minimal-ea", "presentation with E(1) = tau and E(tau^n) = q_n");
    mea_cmd->add_option("--prefix", prefix, "comma separated rationals q_2, q_3, ...");
    mea_cmd->callback([&] {
        action = [&] {
            std::vector<Rat> qs;
            for (auto& e : elems(prefix, 1)) {
                if (!e.is_rational_constant()) throw UsageError("prefix entries must be rational");
                qs.push_back(e.constant_value().rational());
            }
            result = to_json(minimal_ea_family(qs));
        };
    });

    // hull
    std::string h_field, h_gens;
    auto* hull_cmd = app.add_subcommand("hull", "closure of generators under the graph");
    hull_cmd->add_option("--field", h_field, "presentation JSON")->required();
    hull_cmd->add_option("-g,--generators", h_gens, "comma separated elements");
    hull_cmd->callback([&] {
        action = [&] {
            EFieldPresentation f = load_field(h_field);
            result = to_json(hull(f, elems(h_gens, f.cyclotomic_order)));
        };
    });

    // indep
    std::string i_field, i_a, i_b, i_c;
    auto* indep_cmd = app.add_subcommand("indep", "independence of A and B over C");
    indep_cmd->add_option("--field", i_field, "presentation JSON")->required();
    indep_cmd->add_option("-a", i_a, "comma separated elements");
    indep_cmd->add_option("-b", i_b, "comma separated elements");
    indep_cmd->add_option("-c", i_c, "comma separated elements");
    indep_cmd->callback([&] {
        action = [&] {
            EFieldPresentation f = load_field(i_field);
            unsigned o = f.cyclotomic_order;
            auto A = elems(i_a, o), B = elems(i_b, o), C = elems(i_c, o);
            auto cat = [](std::vector<FieldElem> x, const std::vector<FieldElem>& y) {
                x.insert(x.end(), y.begin(), y.end());
                return x;
            };
            result = {{"indep", indep(f, A, B, C)},
                      {"hull_AC", to_json(hull(f, cat(A, C)))},
                      {"hull_BC", to_json(hull(f, cat(B, C)))},
                      {"hull_C", to_json(hull(f, C))}};
        };
    });

    // amalg2
    std::string a_base, a_left, a_right;
    auto* amalg2_cmd = app.add_subcommand("amalg2", "amalgamate two extensions over a base");
    amalg2_cmd->add_option("--base", a_base, "base presentation JSON")->required();
    amalg2_cmd->add_option("--left", a_left, "embedded presentation JSON")->required();
    amalg2_cmd->add_option("--right", a_right, "embedded presentation JSON")->required();
    amalg2_cmd->callback([&] {
        action = [&] {
            result = to_json(amalgamate2(presentation_from_json(read_json(a_base)),
                                         embedded_from_json(read_json(a_left)),
                                         embedded_from_json(read_json(a_right))));
        };
    });

    // amalg-n
    std::string an_file;
    auto* amalgn_cmd = app.add_subcommand("amalg-n", "complete an independent system");
    amalgn_cmd->add_option("-f,--file", an_file, "system JSON")->required();
    amalgn_cmd->callback([&] {
        action = [&] {
            IndepSystem s = system_from_json(read_json(an_file));
            SystemReport before = verify_independent_system(s);
            if (!before.ok())
                throw DomainError("NotIndependent", "the input system is not independent", to_json(before));
            Completion c = complete_system(s);
            result = to_json(c);
            result["report"] = to_json(verify_independent_system(c.system));
        };
    });

    // tp2
    unsigned tp_n = 1, tp_J = 1;
    std::string sigma, tp_c;
    bool all_sigma = false;
    auto* tp2_cmd = app.add_subcommand("tp2", "build and verify the TP2 array");
    tp2_cmd->add_option("-n", tp_n, "rows")->check(CLI::Range(1, 8));
    tp2_cmd->add_option("-J", tp_J, "columns")->check(CLI::Range(1, 8));
    tp2_cmd->add_option("--sigma", sigma, "comma separated 1-based branch");
    tp2_cmd->add_option("--c", tp_c, "comma separated column values");
    tp2_cmd->add_flag("--all", all_sigma, "check every branch");
    tp2_cmd->callback([&] {
        action = [&] {
            TP2Witness w = make_tp2(tp_n, tp_J, tp_c.empty() ? std::vector<FieldElem>{} : elems(tp_c, 1));
            std::vector<std::vector<unsigned>> branches;
            if (all_sigma) {
                if (!sigma.empty()) throw UsageError("--sigma and --all exclude each other");
                std::vector<unsigned> s(tp_n, 1);
                for (;;) {
                    branches.push_back(s);
                    unsigned i = 0;
                    while (i < tp_n && s[i] == tp_J) s[i++] = 1;
                    if (i == tp_n) break;
                    ++s[i];
                }
            } else {
                std::vector<unsigned> s;
                for (auto& part : split(sigma)) {
                    try {
                        s.push_back(static_cast<unsigned>(std::stoul(part)));
                    } catch (const std::exception&) {
                        throw UsageError("bad --sigma entry: " + part);
                    }
                }
                branches.push_back(s);
            }
            VerifyReport r = verify_finite_witness(w, branches);
            bool all_free = true;
            json points = json::array();
            for (auto& b : r.branches) {
                all_free = all_free && b.freeness.free;
                json p = {{"sigma", b.label}, {"realized", b.realized}};
                for (auto& [k, v] : b.point) p[k] = v.str();
                points.push_back(p);
            }
            result = {{"witness_kind", "tp2"},
                      {"n", tp_n},
                      {"J", tp_J},
                      {"b", [&] {
                           json j = json::array();
                           for (auto& x : w.b) j.push_back(x.str());
                           return j;
                       }()},
                      {"c", [&] {
                           json j = json::array();
                           for (auto& x : w.c) j.push_back(x.str());
                           return j;
                       }()},
                      {"sigma", all_sigma ? json("all") : json(branches[0])},
                      {"freeness", all_free ? "free" : "not free"},
                      {"branch_points", points},
                      {"report", to_json(r)}};
        };
    });

    // sop1-verify
    std::string sop_file;
    std::vector<std::string> sop_branches;
    auto* sop_cmd = app.add_subcommand("sop1-verify", "check an SOP1 candidate tree");
    sop_cmd->add_option("-f,--file", sop_file, "candidate JSON")->required();
    sop_cmd->add_option("--branch", sop_branches, "binary strings (default: all leaves)");
    sop_cmd->callback([&] {
        action = [&] {
            result = to_json(verify_finite_witness(sop1_from_json(read_json(sop_file)), sop_branches));
        };
    });

    // zwitness
    std::string z_field, z_c, z_d;
    unsigned z_order = 0;
    auto* z_cmd = app.add_subcommand("zwitness", "kernel-stabiliser witness for c");
    z_cmd->add_option("--field", z_field, "presentation JSON");
    z_cmd->add_option("--c", z_c, "rational n/m or a transcendental element")->required();
    z_cmd->add_option("--d", z_d, "value of E(c a) in transcendental mode");
    z_cmd->add_option("--order", z_order, "cyclotomic order of the default field")->check(CLI::Range(1, 1000));
    z_cmd->callback([&] {
        action = [&] {
            EFieldPresentation f = load_field(z_field);
            FieldElem c = parse_elem(z_c, f.cyclotomic_order);
            if (c.is_rational_constant()) {
                if (!z_d.empty()) throw UsageError("--d only applies to transcendental c");
                Rat q = c.constant_value().rational();
                if (z_field.empty()) f.cyclotomic_order = z_order ? z_order : static_cast<unsigned>(q.get_den().get_ui());
                result = to_json(z_stabilizer_rational(f, q));
                result["mode"] = "rational";
            } else {
                if (z_d.empty()) throw UsageError("transcendental mode needs --d");
                if (z_field.empty()) {
                    auto syms = c.symbols();
                    f.transcendentals.assign(syms.begin(), syms.end());
                }
                result = to_json(z_stabilizer_transcendental(f, c, parse_elem(z_d, f.cyclotomic_order)));
                result["mode"] = "transcendental";
            }
        };
    });

    // type-family
    std::string t_field;
    std::vector<std::string> assigns;
    auto* tf_cmd = app.add_subcommand("type-family", "presentations with prescribed E(x^n)");
    tf_cmd->add_option("--field", t_field, "presentation JSON");
    tf_cmd->add_option("--assign", assigns, "n:value pairs, e.g. 1:2,2:5")->required();
    tf_cmd->callback([&] {
        action = [&] {
            EFieldPresentation f = load_field(t_field);
            std::vector<std::map<unsigned, FieldElem>> as;
            for (auto& a : assigns) {
                std::map<unsigned, FieldElem> m;
                for (auto& kv : split(a)) {
                    auto colon = kv.find(':');
                    if (colon == std::string::npos) throw UsageError("expected n:value, got " + kv);
                    unsigned n;
                    try {
                        n = static_cast<unsigned>(std::stoul(kv.substr(0, colon)));
                    } catch (const std::exception&) {
                        throw UsageError("bad exponent in " + kv);
                    }
                    if (!m.emplace(n, parse_elem(kv.substr(colon + 1), f.cyclotomic_order)).second)
                        throw UsageError("exponent given twice in " + a);
                }
                as.push_back(std::move(m));
            }
            TypeFamily t = type_family(f, as);
            result = to_json(t);
            json verified = json::array();
            for (auto& c : t.certificates) verified.push_back(verify_distinction(t, c));
            result["verified"] = verified;
        };
    });

    // roundtrip
    std::string rt_file;
    auto* rt_cmd = app.add_subcommand("roundtrip", "re-serialise a JSON artifact and check it");
    rt_cmd->add_option("-f,--file", rt_file, "any JSON artifact")->required();
    rt_cmd->callback([&] {
        action = [&] {
            json in = read_json(rt_file);
            if (!in.is_object()) throw SchemaError("", "expected an object");
            json back, report;
            std::string schema;
            if (in.contains("nodes")) {
                schema = "system";
                IndepSystem s = system_from_json(in);
                back = to_json(s);
                report = to_json(verify_independent_system(s));
            } else if (in.contains("amb")) {
                schema = "embedded_presentation";
                EmbeddedPresentation e = embedded_from_json(in);
                back = to_json(e);
                report = to_json(check_presentation(e.amb));
            } else if (in.contains("tree")) {
                schema = "sop1_candidate";
                SOP1Candidate s = sop1_from_json(in);
                back = to_json(s);
                report = to_json(verify_finite_witness(s));
            } else if (in.contains("X")) {
                schema = "variety";
                ParametricVariety v = variety_from_json(in);
                back = to_json(v);
                report = to_json(additive_freeness(v));
            } else if (in.contains("egraph")) {
                schema = "presentation";
                EFieldPresentation f = presentation_from_json(in);
                back = to_json(f);
                report = to_json(check_presentation(f));
            } else {
                throw SchemaError("", "unrecognised artifact");
            }
            result = {{"schema", schema}, {"identical", canonical(in) == canonical(back)}, {"report", report}};
            if (!result["identical"].get<bool>()) {
                json patch = json::diff(in, back);
                result["first_difference"] = patch.empty() ? json("") : patch[0]["path"];
            }
        };
    });

    auto emit = [&](const json& j) {
        std::string text = canonical(j);
        if (output.empty()) {
            out << text;
            return;
        }
        std::ofstream f(output);
        if (!f) throw UsageError("cannot write " + output);
        f << text;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "expofield: " << e.what() << "\n";
        out << canonical(error_json("UsageError", e.what()));
        return 1;
    }

    try {
        seed = seed_from_env();
        action();
        emit(result);
        return 0;
    } catch (const DomainError& e) {
        err << "expofield: " << e.kind() << ": " << e.what() << "\n";
        out << canonical(error_json(e.kind(), e.what(), e.certificate()));
        return 2;
    } catch (const DivisionByZero& e) {
        err << "expofield: " << e.what() << "\n";
        out << canonical(error_json("DivisionByZero", e.what()));
        return 2;
    } catch (const SchemaError& e) {
        err << "expofield: " << e.what() << "\n";
        json j = error_json("SchemaError", e.what());
        j["pointer"] = e.pointer();
        out << canonical(j);
        return 1;
    } catch (const SyntaxError& e) {
        err << "expofield: " << e.what() << "\n";
        json j = error_json("SyntaxError", e.what());
        j["line"] = e.line();
        j["col"] = e.col();
        out << canonical(j);
        return 1;
    } catch (const UsageError& e) {
        err << "expofield: " << e.what() << "\n";
        out << canonical(error_json("UsageError", e.what()));
        return 1;
    }
}

}  // namespace expofield
