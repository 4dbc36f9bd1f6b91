// normq command-line tool: exact construction of the chain-gauge normed
// plane over Q or Q(e), its multiplication-graph predicates, and the
// arithmetic-to-normed-space sentence compiler.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "normq/eval.hpp"
#include "normq/passes.hpp"
#include "normq/predicates.hpp"
#include "normq/scalar_io.hpp"

using json = nlohmann::ordered_json;
using namespace normq;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

struct Options {
    unsigned p = 2, q = 5;
    std::string field = "rat";       // rat | rat-eps
    std::string dimension = "2";     // >= 2 or "inf"
    std::size_t depth = 64;
    std::size_t bound = 25;
    std::string output = "text";     // text | records
};

FieldKind field_kind(const Options& opt) {
    if (opt.field == "rat") return FieldKind::Rationals;
    if (opt.field == "rat-eps") return FieldKind::RationalFunctions;
    throw CLI::ValidationError("--field must be rat or rat-eps");
}

std::optional<std::size_t> dimension_of(const Options& opt) {
    if (opt.dimension == "inf") return std::nullopt;
    long d = std::stol(opt.dimension);
    if (d < 2) throw CLI::ValidationError("--dim must be >= 2 or inf");
    return static_cast<std::size_t>(d);
}

bool records(const Options& opt) { return opt.output == "records"; }

void emit_header(const Options& opt, const std::string& command) {
    if (!records(opt)) return;
    json h;
    h["record"] = "header";
    h["format"] = "normq.records";
    h["version"] = 1;
    h["command"] = command;
    h["p"] = opt.p;
    h["q"] = opt.q;
    h["field"] = opt.field;
    std::cout << h.dump() << "\n";
}

std::string facet_name(const Facet& f) {
    switch (f.kind) {
        case Facet::Kind::ChainSegment: return "chain-segment";
        case Facet::Kind::EastLimit: return "east-limit";
        case Facet::Kind::NorthEastEdge: return "north-east-edge";
        case Facet::Kind::AxisVertex: return "axis-vertex";
    }
    return "?";
}

std::string case_name(RayCase c) {
    switch (c) {
        case RayCase::CaseI: return "i";
        case RayCase::CaseII: return "ii";
        case RayCase::CaseIII: return "iii";
        case RayCase::Axis: return "axis";
    }
    return "?";
}

template <OrderedField K>
VecD<K> parse_vec(const std::string& text, FieldKind kind,
                  std::optional<std::size_t> dim) {
    VecLiteral lit = split_vector_literal(text);
    auto scalar = [&](const std::string& s) {
        return std::get<K>(parse_scalar(s, kind));
    };
    VecD<K> v{Vec2<K>{scalar(lit.x), scalar(lit.y)}};
    if (dim && lit.w.size() > *dim - 2)
        throw ParseError("vector has more coordinates than --dim allows", 0);
    for (std::size_t i = 0; i < lit.w.size(); ++i)
        v.set_w(i + 1, scalar(lit.w[i]));
    return v;
}

// ------------------------------------------------------------ constants --

int run_constants(const Options& opt) {
    Params ps = validate_params(opt.p, opt.q);
    Series series(ps);
    emit_header(opt, "constants");
    if (records(opt)) {
        json meta;
        meta["record"] = "limits";
        meta["a"] = scalar_text(ps.a);
        meta["b"] = scalar_text(ps.b);
        std::cout << meta.dump() << "\n";
    } else {
        std::cout << "a = " << scalar_text(ps.a) << "\nb = " << scalar_text(ps.b) << "\n";
        std::cout << "i\tm\tn\tkey\ta[4i+1..4i+4]\tb[4i+1..4i+4]\n";
    }
    for (std::size_t i = 0; i < opt.depth; ++i) {
        StageRecord rec = series.stage(i);
        if (records(opt)) {
            json row;
            row["record"] = "stage";
            row["i"] = i;
            row["m"] = rec.m;
            row["n"] = rec.n;
            row["key"] = rec.key.get_str();
            for (std::size_t j = 0; j < 4; ++j) {
                row["a"].push_back(scalar_text(series.coefficient_a(4 * i + 1 + j)));
                row["b"].push_back(scalar_text(rec.b[j]));
            }
            std::cout << row.dump() << "\n";
        } else {
            std::cout << i << "\t" << rec.m << "\t" << rec.n << "\t" << rec.key.get_str()
                      << "\t";
            for (std::size_t j = 0; j < 4; ++j)
                std::cout << scalar_text(series.coefficient_a(4 * i + 1 + j))
                          << (j + 1 < 4 ? "," : "\t");
            for (std::size_t j = 0; j < 4; ++j)
                std::cout << scalar_text(rec.b[j]) << (j + 1 < 4 ? "," : "\n");
        }
    }
    return kExitTrue;
}

// ------------------------------------------------------------- vertices --

int run_vertices(const Options& opt) {
    Chain chain(validate_params(opt.p, opt.q));
    emit_header(opt, "vertices");
    Vec2<Rational> lim = chain.limit_vertex();
    if (records(opt)) {
        json l;
        l["record"] = "limit-vertex";
        l["x"] = scalar_text(lim.x);
        l["y"] = scalar_text(lim.y);
        std::cout << l.dump() << "\n";
    } else {
        std::cout << "limit vertex: (" << scalar_text(lim.x) << ", " << scalar_text(lim.y)
                  << ")\n";
    }
    for (std::size_t k = 0; k <= opt.depth; ++k) {
        Vec2<Rational> v = chain.vertex(k);
        if (records(opt)) {
            json row;
            row["record"] = "vertex";
            row["k"] = k;
            row["x"] = scalar_text(v.x);
            row["y"] = scalar_text(v.y);
            std::cout << row.dump() << "\n";
        } else {
            std::cout << "v" << k << " = (" << scalar_text(v.x) << ", " << scalar_text(v.y)
                      << ")\n";
        }
    }
    return kExitTrue;
}

// --------------------------------------------------------------- facets --

int run_facets(const Options& opt) {
    Chain chain(validate_params(opt.p, opt.q));
    emit_header(opt, "facets");
    auto emit = [&](const std::string& kind, json endpoints, const Rational& alpha,
                    const Rational& beta) {
        if (records(opt)) {
            json row;
            row["record"] = "facet";
            row["kind"] = kind;
            row["endpoints"] = std::move(endpoints);
            row["line"] = {{"alpha", scalar_text(alpha)}, {"beta", scalar_text(beta)}};
            std::cout << row.dump() << "\n";
        } else {
            std::cout << kind << "  endpoints " << endpoints.dump() << "  line "
                      << scalar_text(alpha) << "*x + " << scalar_text(beta) << "*y = 1\n";
        }
    };
    auto pt = [](const Vec2<Rational>& v) {
        return json::array({scalar_text(v.x), scalar_text(v.y)});
    };
    emit("north-east-edge",
         json::array({pt({Rational(1), Rational(0)}), pt({Rational(0), Rational(1)})}),
         Rational(1), Rational(1));
    emit("east-limit", json::array({pt(chain.limit_vertex()), pt({Rational(0), Rational(1)})}),
         Rational(0), Rational(1));
    for (std::size_t k = 0; k < opt.depth; ++k) {
        SupportLine l = chain.segment_line(k);
        emit("chain-segment " + std::to_string(k),
             json::array({pt(chain.vertex(k)), pt(chain.vertex(k + 1))}), l.alpha, l.beta);
    }
    return kExitTrue;
}

// ----------------------------------------------------------------- norm --

template <OrderedField K>
int norm_impl(const Options& opt, const std::string& vec) {
    Chain chain(validate_params(opt.p, opt.q));
    VecD<K> v = parse_vec<K>(vec, field_kind(opt), dimension_of(opt));
    K n = sum_norm(chain, v);
    json row;
    row["record"] = "norm";
    row["vec"] = vec;
    row["norm"] = scalar_text(AnyScalar{n});
    if (!v.j.is_zero()) {
        RayHit hit = classify_ray(chain, v.j);
        row["facet"] = facet_name(hit.facet);
        if (hit.facet.kind == Facet::Kind::ChainSegment) row["segment"] = hit.facet.index;
        row["case"] = case_name(hit.ray_case);
        row["mirrored"] = hit.facet.mirrored;
    }
    emit_header(opt, "norm");
    if (records(opt)) {
        std::cout << row.dump() << "\n";
    } else {
        std::cout << "norm = " << row["norm"].get<std::string>() << "\n";
        if (row.contains("facet")) {
            std::cout << "plane part hits " << row["facet"].get<std::string>();
            if (row.contains("segment")) std::cout << " " << row["segment"].get<std::size_t>();
            std::cout << " (case " << row["case"].get<std::string>() << ")\n";
        }
    }
    return kExitTrue;
}

int run_norm(const Options& opt, const std::string& vec) {
    if (field_kind(opt) == FieldKind::Rationals) return norm_impl<Rational>(opt, vec);
    return norm_impl<RatFunc>(opt, vec);
}

// ----------------------------------------------------------- mult-check --

json witness_json(const RunWitness& w) {
    json j;
    j["r"] = scalar_text(w.radius);
    j["stage"] = w.stage;
    j["vertices"] = w.vertices;
    for (const Rational& e : w.edges) j["edges"].push_back(scalar_text(e));
    return j;
}

int run_mult_check(const Options& opt, const std::string& xs, const std::string& ys,
                   const std::string& zs, std::optional<long> table_max) {
    Chain chain(validate_params(opt.p, opt.q));
    emit_header(opt, "mult-check");
    if (table_max) {
        long maxe = *table_max;
        long zmax = maxe * maxe;
        std::size_t checked = 0, positives = 0, mismatches = 0;
        for (long x = 0; x <= maxe; ++x)
            for (long y = 0; y <= maxe; ++y)
                for (long z = 0; z <= zmax; ++z) {
                    MgiVerdict v = mult_graph_holds(chain, Rational(x), Rational(y),
                                                    Rational(z));
                    ++checked;
                    if (v.holds) ++positives;
                    if (v.holds != (z == x * y)) ++mismatches;
                }
        json sum;
        sum["record"] = "table";
        sum["max"] = maxe;
        sum["checked"] = checked;
        sum["positives"] = positives;
        sum["mismatches"] = mismatches;
        if (records(opt)) std::cout << sum.dump() << "\n";
        else
            std::cout << "checked " << checked << " triples up to " << maxe
                      << ": " << positives << " products, " << mismatches
                      << " mismatches\n";
        return mismatches == 0 ? kExitTrue : kExitFalse;
    }

    FieldKind kind = field_kind(opt);
    auto one_query = [&](const AnyScalar& x, const AnyScalar& y,
                         const AnyScalar& z) -> MgiVerdict {
        if (kind == FieldKind::Rationals)
            return mult_graph_holds(chain, std::get<Rational>(x), std::get<Rational>(y),
                                    std::get<Rational>(z));
        return mult_graph_holds(chain, std::get<RatFunc>(x), std::get<RatFunc>(y),
                                std::get<RatFunc>(z));
    };
    MgiVerdict v = one_query(parse_scalar(xs, kind), parse_scalar(ys, kind),
                             parse_scalar(zs, kind));
    json row;
    row["record"] = "verdict";
    row["x"] = xs;
    row["y"] = ys;
    row["z"] = zs;
    row["holds"] = v.holds;
    if (v.witness) row["witness"] = witness_json(*v.witness);
    if (records(opt)) {
        std::cout << row.dump() << "\n";
    } else {
        std::cout << (v.holds ? "true" : "false") << "\n";
        if (v.witness) std::cout << "witness: " << row["witness"].dump() << "\n";
    }
    return v.holds ? kExitTrue : kExitFalse;
}

// ---------------------------------------------------- translate / expand --

ast::Ptr builtin_by_name(const std::string& name) {
    Builtins b = builtin_sentences();
    if (name.size() == 2 && name[0] == 'q' && name[1] >= '1' && name[1] <= '7')
        return b.q[static_cast<std::size_t>(name[1] - '1')];
    if (name == "ok") return b.ok;
    if (name.size() == 3 && name.substr(0, 2) == "ok" && name[2] >= '1' && name[2] <= '6')
        return b.ok_part[static_cast<std::size_t>(name[2] - '1')];
    if (name == "nu") return b.nu_def;
    throw CLI::ValidationError("unknown builtin '" + name +
                               "' (q1..q7, ok, ok1..ok6, nu)");
}

std::string read_all_stdin() {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
}

int run_translate(const Options& opt, std::string expr, const std::string& axiom) {
    ast::Ptr pa;
    if (!axiom.empty()) pa = builtin_by_name(axiom);
    else {
        if (expr.empty()) expr = read_all_stdin();
        pa = ast::parse(expr, ast::Lang::PA);
    }
    ast::Ptr k = translate(pa);
    emit_header(opt, "translate");
    if (records(opt)) {
        json row;
        row["record"] = "translation";
        row["input"] = ast::print(pa, ast::Lang::PA);
        row["output"] = ast::print(k, ast::Lang::K);
        std::cout << row.dump() << "\n";
    } else {
        std::cout << ast::print(k, ast::Lang::K) << "\n";
    }
    return kExitTrue;
}

int run_expand(const Options& opt, std::string expr, const std::string& builtin) {
    ast::Ptr k;
    if (!builtin.empty()) {
        if (builtin[0] == 'q')
            throw CLI::ValidationError("expand takes scalar-language builtins "
                                       "(ok, ok1..ok6, nu); translate q1..q7 first");
        k = builtin_by_name(builtin);
    } else {
        if (expr.empty()) expr = read_all_stdin();
        k = ast::parse(expr, ast::Lang::K);
    }
    ast::Ptr ns = expand_mu(k);
    emit_header(opt, "expand");
    if (records(opt)) {
        json row;
        row["record"] = "expansion";
        row["input"] = ast::print(k, ast::Lang::K);
        row["output"] = ast::print(ns, ast::Lang::NS);
        std::cout << row.dump() << "\n";
    } else {
        std::cout << ast::print(ns, ast::Lang::NS) << "\n";
    }
    return kExitTrue;
}

// ---------------------------------------------------------------- verify --

int run_verify(const Options& opt, const std::string& what) {
    Builtins b = builtin_sentences();
    emit_header(opt, "verify");
    bool all = true;
    auto report = [&](const std::string& name, bool value) {
        all = all && value;
        if (records(opt)) {
            json row;
            row["record"] = "check";
            row["name"] = name;
            row["bound"] = opt.bound;
            row["holds"] = value;
            std::cout << row.dump() << "\n";
        } else {
            std::cout << (value ? "PASS" : "FAIL") << "  " << name << " (bound "
                      << opt.bound << ")\n";
        }
    };
    if (what == "q") {
        for (int i = 0; i < 7; ++i)
            report("Q" + std::to_string(i + 1) + "*",
                   eval_bounded(translate(b.q[i]), opt.bound));
    } else if (what == "ok") {
        for (int i = 0; i < 6; ++i)
            report("OK" + std::to_string(i + 1), eval_bounded(b.ok_part[i], opt.bound));
        report("OK", eval_bounded(b.ok, opt.bound));
    } else {
        throw CLI::ValidationError("verify expects 'q' or 'ok'");
    }
    return all ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact chain-gauge normed plane over computable ordered fields"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--p", opt.p, "first base (default 2)")->capture_default_str();
    app.add_option("--q", opt.q, "second base (default 5)")->capture_default_str();
    app.add_option("--field", opt.field, "scalar field: rat | rat-eps")
        ->capture_default_str();
    app.add_option("--dim", opt.dimension, "space dimension >= 2, or inf")
        ->capture_default_str();
    app.add_option("--depth", opt.depth, "sequence/graph prefix depth")
        ->capture_default_str();
    app.add_option("--bound", opt.bound, "bounded-evaluation domain bound")
        ->capture_default_str();
    app.add_option("--output", opt.output, "output mode: text | records")
        ->capture_default_str();

    auto* constants = app.add_subcommand("constants", "stage table of the two series");
    auto* vertices = app.add_subcommand("vertices", "unit-circle chain vertices");
    auto* facets = app.add_subcommand("facets", "unit-circle facets with supporting lines");

    auto* norm = app.add_subcommand("norm", "exact norm and facet classification");
    std::string vec;
    norm->add_option("--vec", vec, "vector literal, e.g. \"(-1, 1)\" or \"(0, 1; 2)\"")
        ->required();

    auto* mult = app.add_subcommand("mult-check", "multiplication-graph queries");
    std::string xs, ys, zs;
    std::optional<long> table_max;
    auto* xopt = mult->add_option("--x", xs, "first factor");
    mult->add_option("--y", ys, "second factor");
    mult->add_option("--z", zs, "product candidate");
    long table_arg = 0;
    auto* topt = mult->add_option("--table", table_arg, "verify the whole table up to MAX");
    topt->excludes(xopt);

    auto* tr = app.add_subcommand("translate", "arithmetic sentence -> scalar language");
    std::string tr_expr, tr_axiom;
    tr->add_option("expr", tr_expr, "sentence (s-expression); stdin if omitted");
    tr->add_option("--axiom", tr_axiom, "builtin axiom q1..q7");

    auto* ex = app.add_subcommand("expand", "scalar formula -> purely additive language");
    std::string ex_expr, ex_builtin;
    ex->add_option("expr", ex_expr, "formula (s-expression); stdin if omitted");
    ex->add_option("--builtin", ex_builtin, "builtin sentence: ok, ok1..ok6, nu");

    auto* verify = app.add_subcommand("verify", "bounded-model checks of q or ok");
    std::string verify_what;
    verify->add_option("what", verify_what, "q | ok")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitTrue : kExitUsage;
    }

    try {
        if (constants->parsed()) return run_constants(opt);
        if (vertices->parsed()) return run_vertices(opt);
        if (facets->parsed()) return run_facets(opt);
        if (norm->parsed()) return run_norm(opt, vec);
        if (mult->parsed()) {
            if (topt->count()) table_max = table_arg;
            if (!table_max && (xs.empty() || ys.empty() || zs.empty()))
                throw CLI::ValidationError("mult-check needs --x --y --z or --table");
            return run_mult_check(opt, xs, ys, zs, table_max);
        }
        if (tr->parsed()) return run_translate(opt, tr_expr, tr_axiom);
        if (ex->parsed()) return run_expand(opt, ex_expr, ex_builtin);
        if (verify->parsed()) return run_verify(opt, verify_what);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
