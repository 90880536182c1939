#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covmin/covmin.hpp"
#include "covmin/io/json.hpp"
#include "covmin/io/table.hpp"

using namespace covmin;
namespace cio = covmin::io;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, InputError = 2, BudgetError = 3, InconsistentError = 4 };

struct Args {
    std::string spec, body, lattice, basis, family, omega, params, index, tol, point;
    std::vector<std::string> projections;
    std::size_t d = 0;
    bool csv = false, plot = false, translate = false;
    unsigned jobs = 1;
};

struct Problem {
    cio::ProblemSpec spec;
    Polytope body;
    Lattice lattice = Lattice::standard(1);
    Rat tol{1, 10000};
};

std::string read_arg(const std::string& s) {
    if (s.empty() || s[0] != '@')
        return s;
    std::ifstream in(s.substr(1));
    if (!in)
        fail(Errc::InvalidInput, "cannot read file '" + s.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Rat> parse_list(const std::string& s, const std::string& what) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(parse_rat(item));
        } catch (const Error& e) {
            fail(Errc::InvalidInput, what + ": " + e.what());
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

cio::ProblemSpec gather_spec(const Args& a) {
    cio::ProblemSpec s;
    if (!a.spec.empty())
        s = cio::parse_spec(read_arg(a.spec));
    if (!a.body.empty() && !a.family.empty())
        fail(Errc::InvalidInput, "give either --body or --family, not both");
    if (!a.body.empty())
        s.body = cio::body_from_json(cio::parse_json_text(read_arg(a.body)));
    if (!a.family.empty()) {
        cio::BodySpec b;
        b.family = a.family;
        if (!a.params.empty()) {
            b.params = cio::parse_json_text(read_arg(a.params));
            if (!b.params.is_object())
                fail(Errc::InvalidInput, "--params must be a JSON object");
            cio::detail::reject_floats(b.params, "params");
        }
        if (a.d)
            b.params["d"] = a.d;
        if (!a.omega.empty()) {
            cio::json w = cio::json::array();
            for (const auto& x : parse_list(a.omega, "--omega"))
                w.push_back(to_string(x));
            b.params["omega"] = w;
        }
        s.body = b;
    }
    if (!a.lattice.empty())
        s.lattice = cio::lattice_from_json(cio::parse_json_text(read_arg(a.lattice)));
    if (!a.index.empty())
        s.index = cio::parse_index_range(a.index);
    if (!a.tol.empty()) {
        s.tol = parse_rat(a.tol);
        require(*s.tol > 0, Errc::InvalidInput, "--tol must be positive");
    }
    if (a.translate && std::find(s.flags.begin(), s.flags.end(), "translate") == s.flags.end()) {
        s.flags.push_back("translate");
        std::sort(s.flags.begin(), s.flags.end());
    }
    return s;
}

Problem load(const Args& a) {
    Problem p;
    p.spec = gather_spec(a);
    if (!p.spec.body)
        fail(Errc::InvalidInput, "no body given (use --body, --family or --spec)");
    p.body = cio::build_body(*p.spec.body);
    p.lattice = cio::build_lattice(p.spec.lattice, p.body.dim());
    if (!a.basis.empty()) {
        auto alt = cio::build_lattice(cio::lattice_from_json(cio::parse_json_text(read_arg(a.basis))), p.body.dim());
        require(alt.same_lattice(p.lattice), Errc::InvalidInput, "--basis does not generate the same lattice");
        p.lattice = alt;
    }
    if (p.spec.tol)
        p.tol = *p.spec.tol;
    return p;
}

bool translate_flag(const Problem& p) {
    return std::find(p.spec.flags.begin(), p.spec.flags.end(), "translate") != p.spec.flags.end();
}

cio::IndexRange index_range(const Problem& p) {
    cio::IndexRange r = p.spec.index.value_or(cio::IndexRange{1, p.body.dim()});
    require(r.lo >= 1 && r.hi <= p.body.dim(), Errc::IndexOutOfRange,
            "index range " + cio::to_string(r) + " outside 1.." + std::to_string(p.body.dim()));
    return r;
}

std::vector<IntMat> parse_projections(const std::vector<std::string>& raw) {
    std::vector<IntMat> out;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        auto rows = cio::lattice_from_json(cio::parse_json_text(read_arg(raw[k])),
                                           "projection[" + std::to_string(k) + "]");
        IntMat m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                require(is_integer(rows[r][c]), Errc::InvalidInput, "projection entries must be integers");
                m(r, c) = num(rows[r][c]);
            }
        out.push_back(std::move(m));
    }
    return out;
}

int cmd_gauge(const Args& a) {
    Problem p = load(a);
    require(!a.point.empty(), Errc::InvalidInput, "gauge needs --point");
    RatVec x(parse_list(a.point, "--point"));
    require(x.size() == p.body.dim(), Errc::DimensionMismatch, "point dimension");
    Polytope k = p.body;
    if (translate_flag(p)) {
        auto [c, shift] = center_translate(k);
        k = c;
        std::cout << "shift " << to_string(shift) << '\n';
    }
    std::cout << "gauge " << to_string(gauge(k, x)) << '\n';
    return Ok;
}

int cmd_width(const Args& a) {
    Problem p = load(a);
    auto w = lattice_width(p.body, p.lattice);
    std::cout << "width " << to_string(w.width) << '\n';
    std::cout << "functional " << to_string(to_rat(w.functional)) << " (dual basis coordinates)\n";
    std::cout << "functional_x " << to_string(w.functional_x) << '\n';
    return Ok;
}

int cmd_covering_radius(const Args& a) {
    Problem p = load(a);
    CoveringOptions opt;
    opt.tol = p.tol;
    auto c = covering_radius(p.body, p.lattice, opt);
    std::cout << "interval " << to_string(c.interval) << '\n';
    std::cout << "lower " << to_string(c.interval.lo()) << '\n';
    std::cout << "upper " << to_string(c.interval.hi()) << '\n';
    std::cout << "width " << to_string(c.interval.width()) << '\n';
    std::cout << "deep_point " << to_string(c.deep_point) << '\n';
    std::cout << "shift " << to_string(c.shift) << '\n';
    std::cout << "cells " << c.cells_explored << '\n';
    std::cout << "tolerance " << to_string(c.tolerance) << '\n';
    return Ok;
}

int cmd_minima(const Args& a) {
    Problem p = load(a);
    SandwichOptions opt;
    opt.tol = p.tol;
    opt.jobs = a.jobs;
    opt.projections = parse_projections(a.projections);
    auto r = index_range(p);
    cio::Table t({"i", "lower", "upper", "status", "lower_witness", "upper_witness"});
    for (std::size_t i = r.lo; i <= r.hi; ++i) {
        auto s = minima_sandwich(p.body, p.lattice, i, opt);
        t.add({std::to_string(i), to_string(s.lower), to_string(s.upper), s.exact ? "exact" : "interval",
               s.lb_witness, s.ub_witness});
    }
    t.print(std::cout, a.csv);
    return Ok;
}

int cmd_bounds(const Args& a) {
    Problem p = load(a);
    auto r = index_range(p);
    const std::size_t d = p.body.dim();
    cio::Table t({"i", "method", "value", "status", "witness"});
    auto row = [&](const BoundReport& b) {
        t.add({std::to_string(b.i), method_name(b.method), to_string(b.value),
               b.conjectured ? "CONJECTURED" : "certified", b.witness});
    };
    const auto& spec = *p.spec.body;
    bool standard = p.lattice.is_standard();
    if (spec.is_family() && spec.family == "terminal" && standard)
        for (std::size_t i = r.lo; i <= r.hi; ++i) {
            if (i >= 2)
                row({i, Interval(terminal_projection_bound(d, i)), Method::CorTerminalProj, "closed form", false});
            row({i, Interval(terminal_intersection_bound(d, i)), Method::CorTerminalInt, "closed form", false});
        }
    if (spec.is_family() && spec.family == "weighted" && standard) {
        WeightVector w(cio::detail::param_rats(spec.params, "omega"));
        if (w.sorted())
            for (std::size_t i = r.lo; i <= std::min(r.hi, d - 1); ++i) {
                auto wb = weighted_intersection_bound(w, i);
                row({i, Interval(wb.value), Method::PropWeighted,
                     std::string("maximizer ") + (wb.maximizer_check ? "I=[i] confirmed" : "check FAILED at I=" + wb.argmax.str()),
                     false});
            }
    }
    // generic bounds in lattice coordinates
    Polytope kt = p.lattice.is_standard() ? p.body : p.body.linear_image(p.lattice.inverse());
    if (!kt.origin_interior()) {
        if (!translate_flag(p))
            fail(Errc::OriginNotInterior,
                 "the projection and intersection bounds need the origin inside the body; pass --translate "
                 "to use the centred translate (covering minima are translation invariant)");
        kt = kt.translate(-kt.centroid());
    }
    CoverCache cache(p.tol, Budget::from_env());
    Rat width = lattice_width(kt, Lattice::standard(d)).width;
    auto lam = successive_minima(difference_body(kt), Lattice::standard(d)).lambda;
    ProjectionRecursion rec(kt, cache.fn(), [](const Polytope& q) { return lattice_width(q, Lattice::standard(q.dim())).width; });
    for (std::size_t i = r.lo; i <= r.hi; ++i) {
        try {
            row(intersection_bound(kt, i, cache.fn()));
        } catch (const Error& e) {
            if (e.code() != Errc::SliceDegenerate)
                throw;
            t.add({std::to_string(i), method_name(Method::IntersectionThm), "-", "skipped", e.what()});
        }
        row(rec.bound(i));
        row(kl_bound(MinimaEntry::exact(Rat(1) / width, "1/width"), 1, lam, i));
        row({i, cache(kt), Method::Monotone, "mu_d", false});
    }
    t.print(std::cout, a.csv);
    return Ok;
}

int cmd_family(const Args& a) {
    Problem p = load(a);
    const auto& spec = *p.spec.body;
    std::cout << "body " << p.body.str() << '\n';
    std::cout << "dimension " << p.body.dim() << '\n';
    std::cout << "origin_interior " << (p.body.origin_interior() ? "yes" : "no") << '\n';
    if (p.body.is_full_dimensional()) {
        std::cout << "facets\n";
        for (const auto& f : p.body.facets())
            std::cout << "  " << to_string(f.normal) << " . x <= " << to_string(f.offset) << '\n';
    }
    std::optional<MinimaTable> known;
    if (spec.is_family()) {
        const std::string& f = spec.family;
        if (f == "terminal")
            known = terminal_table(p.body.dim());
        else if (f == "weighted") {
            WeightVector w(cio::detail::param_rats(spec.params, "omega"));
            std::cout << "covering_radius " << to_string(weighted_covering_radius(w)) << '\n';
            if (w.sorted())
                known = weighted_table(w);
        } else if (f == "segment") {
            auto v = p.body.vertices();
            known = segment_table(v.front()[0], v.back()[0]);
        } else if (f == "crosspolytope" || f == "cube" || f == "unimodular" || f == "box") {
            // all direct sums of segments
            auto bb = p.body.bounding_box();
            std::vector<std::pair<Rat, Rat>> segs;
            for (std::size_t k = 0; k < p.body.dim(); ++k)
                segs.emplace_back(bb.lo[k], bb.hi[k]);
            MinimaTable t(p.body.dim());
            if (f == "crosspolytope" || f == "unimodular") {
                for (std::size_t i = 1; i <= p.body.dim(); ++i)
                    t.set(i, MinimaEntry::exact(segment_sum_minima(segs, i), "direct sum of segments"));
                known = t;
            } else if (p.body.origin_interior() || f == "cube") {
                Rat m(0);
                for (const auto& [lo, hi] : segs)
                    m = std::max(m, Rat(1) / (hi - lo));
                for (std::size_t i = 1; i <= p.body.dim(); ++i) {
                    // every coordinate slice of a box is a box; the LAB formula takes the largest
                    Rat best(0);
                    for (const auto& idx : subsets_of_size(p.body.dim(), i)) {
                        Rat s(0);
                        for (auto k : idx)
                            s = std::max(s, Rat(1) / (segs[k].second - segs[k].first));
                        best = std::max(best, s);
                    }
                    t.set(i, MinimaEntry::exact(best, "locally anti-blocking slices"));
                }
                known = t;
            }
        } else if (f == "terminal-polytope") {
            std::vector<std::size_t> dims;
            for (const auto& x : cio::detail::param_rats(spec.params, "dims"))
                dims.push_back(static_cast<std::size_t>(to_i64(num(x))));
            known = terminal_polytope_table(dims);
        }
    }
    if (known) {
        cio::Table t({"i", "mu_i", "status", "provenance"});
        for (std::size_t i = 0; i <= known->dim(); ++i) {
            const auto& e = known->at(i);
            t.add({std::to_string(i), e.value_str(), e.conjectured ? "CONJECTURED" : (e.is_exact() ? "exact" : "certified"),
                   e.provenance});
        }
        t.print(std::cout, a.csv);
    }
    return Ok;
}

int cmd_table(const Args& a, const std::string& drange) {
    auto ds = cio::parse_index_range(drange.empty() ? "2..8" : drange);
    auto is = cio::parse_index_range(a.index.empty() ? "1.." + std::to_string(ds.hi) : a.index);
    require(ds.lo >= 1, Errc::InvalidInput, "--d must start at 1 or more");
    auto rows = bound_table(ds.lo, ds.hi, is.lo, is.hi);
    if (a.plot) {
        std::cout << "d,i,method,bound\n";
        for (const auto& r : rows) {
            if (r.cor_projection)
                std::cout << r.d << ',' << r.i << ",projection," << r.cor_projection->convert_to<double>() << '\n';
            std::cout << r.d << ',' << r.i << ",intersection," << r.cor_intersection.convert_to<double>() << '\n';
            std::cout << r.d << ',' << r.i << ",kl," << r.kl.convert_to<double>() << '\n';
            std::cout << r.d << ',' << r.i << ",conjectured," << r.conjectured.convert_to<double>() << '\n';
        }
        return Ok;
    }
    cio::Table t({"d", "i", "projection", "intersection", "kl", "conjectured"});
    for (const auto& r : rows)
        t.add({std::to_string(r.d), std::to_string(r.i), r.cor_projection ? to_string(*r.cor_projection) : "-",
               to_string(r.cor_intersection), to_string(r.kl), to_string(r.conjectured)});
    t.print(std::cout, a.csv);
    return Ok;
}

int cmd_verify(const Args& a, const std::string& suite) {
    Rat tol = a.tol.empty() ? Rat(1, 10000) : parse_rat(a.tol);
    auto rep = run_suite(suite, tol, a.jobs);
    rep.print(std::cout);
    return rep.ok() ? Ok : VerifyFailed;
}

int exit_code(Errc c) {
    switch (c) {
    case Errc::BudgetExceeded: return BudgetError;
    case Errc::Inconsistent: return InconsistentError;
    default: return InputError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"covmin: exact covering minima of rational polytopes"};
    app.require_subcommand(1);
    Args a;
    std::string drange, suite;

    auto body_opts = [&](CLI::App* s) {
        s->add_option("--spec", a.spec, "problem spec JSON, inline or @file");
        s->add_option("--body", a.body, "body JSON {\"vertices\": [[\"p/q\", ...], ...]}, inline or @file");
        s->add_option("--family", a.family, "terminal, weighted, cube, crosspolytope, segment, unimodular, terminal-polytope, box");
        s->add_option("--d", a.d, "family dimension");
        s->add_option("--omega", a.omega, "weights w0,...,wd for the weighted family");
        s->add_option("--params", a.params, "family parameters as a JSON object");
        s->add_option("--lattice", a.lattice, "lattice basis vectors as JSON, default Z^d");
        s->add_option("--tol", a.tol, "tolerance as a rational, default 1/10000");
        s->add_flag("--translate", a.translate, "translate the body to its vertex centroid where needed");
    };

    auto* gauge = app.add_subcommand("gauge", "Minkowski functional of the body at a point");
    body_opts(gauge);
    gauge->add_option("--point", a.point, "point as p/q,p/q,...")->required();

    auto* width = app.add_subcommand("width", "exact lattice width and a minimising functional");
    body_opts(width);

    auto* cr = app.add_subcommand("covering-radius", "certified covering radius interval");
    body_opts(cr);

    auto* minima = app.add_subcommand("minima", "certified enclosures of the covering minima");
    body_opts(minima);
    minima->add_option("--i", a.index, "index or range a..b");
    minima->add_option("--projection", a.projections, "extra lower-bound projection, integer matrix JSON")
        ->allow_extra_args(false);
    minima->add_option("--jobs", a.jobs, "worker threads for independent oracle calls");
    minima->add_flag("--csv", a.csv, "CSV output");

    auto* bounds = app.add_subcommand("bounds", "upper bounds from the projection, intersection and KL mechanisms");
    body_opts(bounds);
    bounds->add_option("--i", a.index, "index or range a..b");
    bounds->add_option("--basis", a.basis, "alternative basis of the same lattice");
    bounds->add_flag("--csv", a.csv, "CSV output");

    auto* family = app.add_subcommand("family", "describe a family member and its known covering minima");
    body_opts(family);
    family->add_flag("--csv", a.csv, "CSV output");

    auto* table = app.add_subcommand("table", "closed-form bounds for terminal simplices");
    table->add_option("--d", drange, "dimension or range a..b, default 2..8");
    table->add_option("--i", a.index, "index or range a..b");
    table->add_flag("--csv", a.csv, "CSV output");
    table->add_flag("--plot-data", a.plot, "emit d,i,method,bound rows for plotting");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "direct-sum, lab, weighted, terminal or kl")->required();
    verify->add_option("--tol", a.tol, "tolerance as a rational");
    verify->add_option("--jobs", a.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : InputError;
    }

    try {
        if (gauge->parsed())
            return cmd_gauge(a);
        if (width->parsed())
            return cmd_width(a);
        if (cr->parsed())
            return cmd_covering_radius(a);
        if (minima->parsed())
            return cmd_minima(a);
        if (bounds->parsed())
            return cmd_bounds(a);
        if (family->parsed())
            return cmd_family(a);
        if (table->parsed())
            return cmd_table(a, drange);
        if (verify->parsed())
            return cmd_verify(a, suite);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const cio::json::exception& e) {
        std::cerr << "error: InvalidInput: " << e.what() << '\n';
        return InputError;
    }
    return InputError;
}
