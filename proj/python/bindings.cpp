#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "normq/eval.hpp"
#include "normq/passes.hpp"
#include "normq/predicates.hpp"
#include "normq/scalar_io.hpp"

namespace py = pybind11;
using namespace normq;

namespace {

FieldKind kind_of_name(const std::string& f) {
    if (f == "rat") return FieldKind::Rationals;
    if (f == "rat-eps") return FieldKind::RationalFunctions;
    throw std::invalid_argument("field must be 'rat' or 'rat-eps'");
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

std::string kind_name(ExtremeKind k) {
    switch (k) {
        case ExtremeKind::ChainVertex: return "chain-vertex";
        case ExtremeKind::LimitVertex: return "limit-vertex";
        case ExtremeKind::TopVertex: return "top-vertex";
        case ExtremeKind::WBasisVector: return "w-basis";
        case ExtremeKind::None: return "none";
    }
    return "?";
}

py::dict witness_dict(const RunWitness& w) {
    py::dict d;
    d["r"] = scalar_text(w.radius);
    d["stage"] = w.stage;
    py::list verts, edges;
    for (std::size_t v : w.vertices) verts.append(v);
    for (const Rational& e : w.edges) edges.append(scalar_text(e));
    d["vertices"] = verts;
    d["edges"] = edges;
    return d;
}

/// One constructed space: validated parameters, the memoized sequences and
/// chain, and a scalar-field choice for parsing inputs.
class Workspace {
public:
    Workspace(unsigned p, unsigned q, const std::string& field)
        : kind_(kind_of_name(field)), chain_(validate_params(p, q)) {}

    py::dict params() const {
        const Params& ps = chain_.params();
        py::dict d;
        d["p"] = ps.p;
        d["q"] = ps.q;
        d["a"] = scalar_text(ps.a);
        d["b"] = scalar_text(ps.b);
        return d;
    }

    std::pair<unsigned, unsigned> pair(std::size_t i) const { return chain_.series().pair(i); }
    std::string key(std::size_t i) const { return chain_.series().key(i).get_str(); }
    std::string coefficient_a(std::size_t k) const {
        return scalar_text(chain_.series().coefficient_a(k));
    }
    std::string gradient_b(std::size_t k) const {
        return scalar_text(chain_.series().gradient_b(k));
    }

    std::pair<std::string, std::string> vertex(std::size_t k) const {
        Vec2<Rational> v = chain_.vertex(k);
        return {scalar_text(v.x), scalar_text(v.y)};
    }
    std::pair<std::string, std::string> limit_vertex() const {
        Vec2<Rational> v = chain_.limit_vertex();
        return {scalar_text(v.x), scalar_text(v.y)};
    }

    std::string norm(const std::string& vec) const {
        return dispatch<std::string>(vec, [&](const auto& v) {
            return scalar_text(AnyScalar{sum_norm(chain_, v)});
        });
    }

    bool contains(const std::string& vec) const {
        return dispatch<bool>(vec, [&](const auto& v) {
            using K = std::decay_t<decltype(v.j.x)>;
            return !(K(Rational(1)) < sum_norm(chain_, v));
        });
    }

    py::dict classify(const std::string& vec) const {
        return dispatch<py::dict>(vec, [&](const auto& v) {
            RayHit hit = classify_ray(chain_, v.j);
            py::dict d;
            d["facet"] = facet_name(hit.facet);
            d["case"] = case_name(hit.ray_case);
            if (hit.facet.kind == Facet::Kind::ChainSegment) d["segment"] = hit.facet.index;
            d["mirrored"] = hit.facet.mirrored;
            return d;
        });
    }

    py::dict extreme(const std::string& r, const std::string& vec) const {
        return dispatch<py::dict>(vec, [&](const auto& v) {
            using K = std::decay_t<decltype(v.j.x)>;
            K radius = std::get<K>(parse_scalar(r, kind_));
            ExtremeClass c = extreme_classify(chain_, radius, v);
            py::dict d;
            switch (c.status) {
                case ExtremeClass::Status::NotOnSphere: d["status"] = "not-on-sphere"; break;
                case ExtremeClass::Status::OnSphereNotExtreme:
                    d["status"] = "on-sphere-not-extreme";
                    break;
                case ExtremeClass::Status::Extreme: d["status"] = "extreme"; break;
            }
            if (c.status == ExtremeClass::Status::Extreme) {
                d["kind"] = kind_name(c.kind);
                d["index"] = c.index;
                d["mirrored"] = c.mirrored;
            }
            return d;
        });
    }

    bool special(const std::string& r, const std::string& vec) const {
        return dispatch<bool>(vec, [&](const auto& v) {
            using K = std::decay_t<decltype(v.j.x)>;
            return is_special_extreme(chain_, std::get<K>(parse_scalar(r, kind_)), v);
        });
    }

    bool adjacent(const std::string& r, const std::string& u, const std::string& w) const {
        if (kind_ == FieldKind::Rationals)
            return adjacent_special(chain_, parse_rational(r), parse_vecd<Rational>(u),
                                    parse_vecd<Rational>(w));
        return adjacent_special(chain_, parse_ratfunc(r), parse_vecd<RatFunc>(u),
                                parse_vecd<RatFunc>(w));
    }

    py::dict mult_check(const std::string& x, const std::string& y,
                        const std::string& z) const {
        MgiVerdict v;
        if (kind_ == FieldKind::Rationals)
            v = mult_graph_holds(chain_, parse_rational(x), parse_rational(y),
                                 parse_rational(z));
        else
            v = mult_graph_holds(chain_, parse_ratfunc(x), parse_ratfunc(y),
                                 parse_ratfunc(z));
        py::dict d;
        d["holds"] = v.holds;
        if (v.witness) d["witness"] = witness_dict(*v.witness);
        return d;
    }

    py::list runs(const std::string& r, std::size_t length, std::size_t depth) const {
        py::list out;
        auto emit = [&](const auto& rs) {
            for (const auto& run : rs) {
                py::dict d;
                py::list nodes, edges;
                for (const RunNode& n : run.nodes) {
                    py::dict nd;
                    nd["kind"] = kind_name(n.kind);
                    nd["index"] = n.index;
                    nd["neg"] = n.neg;
                    nodes.append(nd);
                }
                for (const auto& e : run.edges) edges.append(scalar_text(AnyScalar{e}));
                d["nodes"] = nodes;
                d["edges"] = edges;
                out.append(d);
            }
        };
        if (kind_ == FieldKind::Rationals)
            emit(enumerate_runs(chain_, parse_rational(r), length, depth));
        else
            emit(enumerate_runs(chain_, parse_ratfunc(r), length, depth));
        return out;
    }

private:
    template <OrderedField K>
    VecD<K> parse_vecd(const std::string& text) const {
        VecLiteral lit = split_vector_literal(text);
        auto scalar = [&](const std::string& s) { return std::get<K>(parse_scalar(s, kind_)); };
        VecD<K> v{Vec2<K>{scalar(lit.x), scalar(lit.y)}};
        for (std::size_t i = 0; i < lit.w.size(); ++i) v.set_w(i + 1, scalar(lit.w[i]));
        return v;
    }

    template <class R, class F>
    R dispatch(const std::string& vec, F&& f) const {
        if (kind_ == FieldKind::Rationals) return f(parse_vecd<Rational>(vec));
        return f(parse_vecd<RatFunc>(vec));
    }

    FieldKind kind_;
    Chain chain_;
};

ast::Ptr builtin_ast(const std::string& name) {
    Builtins b = builtin_sentences();
    if (name.size() == 2 && name[0] == 'q' && name[1] >= '1' && name[1] <= '7')
        return b.q[static_cast<std::size_t>(name[1] - '1')];
    if (name == "ok") return b.ok;
    if (name.size() == 3 && name.substr(0, 2) == "ok" && name[2] >= '1' && name[2] <= '6')
        return b.ok_part[static_cast<std::size_t>(name[2] - '1')];
    if (name == "nu") return b.nu_def;
    throw std::invalid_argument("unknown builtin (q1..q7, ok, ok1..ok6, nu)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact chain-gauge normed plane over computable ordered fields";
    m.attr("__version__") = "0.1.0";

    m.def("closed_forms", [](const std::string& r) {
        auto [f, g] = closed_forms(parse_rational(r));
        return std::make_pair(scalar_text(f), scalar_text(g));
    }, py::arg("r"), "the two geometric-series tails (f(r), g(r)) for r > 1");

    m.def("a_closed", [](unsigned p, unsigned q) { return scalar_text(a_closed(p, q)); },
          py::arg("p"), py::arg("q"), "exact limit of the segment length series");

    m.def("validate_params", [](unsigned p, unsigned q) {
        Params ps = validate_params(p, q);
        py::dict d;
        d["p"] = ps.p;
        d["q"] = ps.q;
        d["a"] = scalar_text(ps.a);
        d["b"] = scalar_text(ps.b);
        return d;
    }, py::arg("p"), py::arg("q"));

    m.def("field_arith", [](const std::string& op, const std::string& a,
                            const std::string& b, const std::string& field) {
        FieldKind k = kind_of_name(field);
        ArithOp o;
        if (op == "add") o = ArithOp::Add;
        else if (op == "sub") o = ArithOp::Sub;
        else if (op == "mul") o = ArithOp::Mul;
        else if (op == "div") o = ArithOp::Div;
        else if (op == "neg") o = ArithOp::Neg;
        else if (op == "abs") o = ArithOp::Abs;
        else throw std::invalid_argument("op must be add|sub|mul|div|neg|abs");
        std::optional<AnyScalar> rhs;
        if (o != ArithOp::Neg && o != ArithOp::Abs) rhs = parse_scalar(b, k);
        return scalar_text(field_arith(o, parse_scalar(a, k), rhs));
    }, py::arg("op"), py::arg("a"), py::arg("b") = "", py::arg("field") = "rat");

    m.def("field_compare", [](const std::string& a, const std::string& b,
                              const std::string& field) {
        FieldKind k = kind_of_name(field);
        auto c = field_compare(parse_scalar(a, k), parse_scalar(b, k));
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }, py::arg("a"), py::arg("b"), py::arg("field") = "rat");

    m.def("standard_part", [](const std::string& a, const std::string& field)
              -> std::optional<std::string> {
        auto st = standard_part(parse_scalar(a, kind_of_name(field)));
        if (!st) return std::nullopt;
        return scalar_text(*st);
    }, py::arg("a"), py::arg("field") = "rat");

    m.def("builtin", [](const std::string& name) {
        return ast::print(builtin_ast(name),
                          name[0] == 'q' ? ast::Lang::PA : ast::Lang::K);
    }, py::arg("name"), "canonical text of a builtin sentence");

    m.def("translate", [](const std::string& text) {
        return ast::print(translate(ast::parse(text, ast::Lang::PA)), ast::Lang::K);
    }, py::arg("sentence"), "compile an arithmetic sentence into the scalar language");

    m.def("expand", [](const std::string& text) {
        return ast::print(expand_mu(ast::parse(text, ast::Lang::K)), ast::Lang::NS);
    }, py::arg("formula"), "macro-expand mu/nu into the purely additive language");

    m.def("eval_bounded", [](const std::string& text, std::size_t bound) {
        return eval_bounded(ast::parse(text, ast::Lang::K), bound);
    }, py::arg("formula"), py::arg("bound") = 25,
       "bounded-model truth of a scalar-language sentence");

    py::class_<Workspace>(m, "Workspace")
        .def(py::init<unsigned, unsigned, const std::string&>(), py::arg("p") = 2,
             py::arg("q") = 5, py::arg("field") = "rat")
        .def("params", &Workspace::params)
        .def("pair", &Workspace::pair, py::arg("i"))
        .def("key", &Workspace::key, py::arg("i"))
        .def("coefficient_a", &Workspace::coefficient_a, py::arg("k"))
        .def("gradient_b", &Workspace::gradient_b, py::arg("k"))
        .def("vertex", &Workspace::vertex, py::arg("k"))
        .def("limit_vertex", &Workspace::limit_vertex)
        .def("norm", &Workspace::norm, py::arg("vec"))
        .def("contains", &Workspace::contains, py::arg("vec"))
        .def("classify", &Workspace::classify, py::arg("vec"))
        .def("extreme", &Workspace::extreme, py::arg("r"), py::arg("vec"))
        .def("special", &Workspace::special, py::arg("r"), py::arg("vec"))
        .def("adjacent", &Workspace::adjacent, py::arg("r"), py::arg("u"), py::arg("w"))
        .def("mult_check", &Workspace::mult_check, py::arg("x"), py::arg("y"), py::arg("z"))
        .def("runs", &Workspace::runs, py::arg("r"), py::arg("length"), py::arg("depth") = 64);
}
