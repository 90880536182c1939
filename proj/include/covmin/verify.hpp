#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "covmin/bounds.hpp"
#include "covmin/families.hpp"
#include "covmin/oracle/sandwich.hpp"

namespace covmin {

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    void add(std::string name, std::string expected, std::string actual, bool pass) {
        checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
    }
    void equal(std::string name, const Rat& expected, const Rat& actual) {
        add(std::move(name), to_string(expected), to_string(actual), expected == actual);
    }
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }
    void print(std::ostream& os) const {
        for (const auto& c : checks)
            os << (c.pass ? "PASS " : "FAIL ") << suite << ": " << c.name << "  expected " << c.expected << "  actual "
               << c.actual << '\n';
        os << suite << ": " << checks.size() - failures() << "/" << checks.size() << " passed\n";
    }
};

/// Random positive rational p/q with p in [1, pmax], q in [1, qmax].
inline Rat random_weight(std::mt19937_64& rng, int pmax = 6, int qmax = 3) {
    std::uniform_int_distribution<int> p(1, pmax), q(1, qmax);
    int a = p(rng);
    int b = q(rng);
    return Rat(a, b);
}

inline WeightVector random_weights(std::mt19937_64& rng, std::size_t d, bool sorted) {
    std::vector<Rat> w;
    for (std::size_t k = 0; k <= d; ++k)
        w.push_back(random_weight(rng));
    if (sorted)
        std::sort(w.begin(), w.end());
    return WeightVector(std::move(w));
}

/// Segment [a, b] with a <= 0 <= b and b > a, endpoints with small denominators.
inline std::pair<Rat, Rat> random_segment(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(0, 6), den(1, 4);
    while (true) {
        Rat a(-num(rng), den(rng)), b(num(rng), den(rng));
        if (a < b)
            return {a, b};
    }
}

namespace detail {

inline bool near(const Interval& v, const Rat& target, const Rat& slack) {
    return abs(v.mid() - target) <= slack && v.width() <= 2 * slack;
}

inline std::string approx(const Interval& v) {
    return to_string(v) + " ~ " + std::to_string(v.mid().convert_to<double>());
}

} // namespace detail

inline SuiteReport verify_weighted(const Rat& tol = Rat(1, 10000), std::uint64_t seed = 2024) {
    SuiteReport rep{"weighted", {}};
    std::mt19937_64 rng(seed);
    for (std::size_t d : {2u, 3u}) {
        std::size_t count = d == 2 ? 10 : 5;
        for (std::size_t k = 0; k < count; ++k) {
            WeightVector w = random_weights(rng, d, false);
            Rat f = weighted_covering_radius(w);
            auto c = covering_radius(weighted_simplex(w), Lattice::standard(d), tol).interval;
            rep.add("covering radius S" + w.str() + " formula vs oracle", to_string(f), detail::approx(c),
                    abs(c.mid() - f) <= 2 * tol && c.contains(f));
        }
    }
    for (std::size_t k = 0; k < 10; ++k) {
        std::size_t d = 2 + k % 3;
        WeightVector w = random_weights(rng, d, true);
        rep.equal("i=d value S" + w.str(), weighted_covering_radius(w), weighted_conjectured_minimum(w, d).upper());
        std::vector<Rat> rev(w.values().rbegin(), w.values().rend());
        rep.equal("permutation symmetry S" + w.str(), weighted_covering_radius(w),
                  weighted_covering_radius(WeightVector(rev)));
        bool all = true;
        Polytope s = weighted_simplex(w);
        for (unsigned long mask = 1; mask < (1UL << d); ++mask) {
            IndexSet idx = IndexSet::from_mask(mask, d);
            all = all && coord_slice(s, idx).body == weighted_simplex(weighted_slice(w, idx));
        }
        rep.add("slice lemma S" + w.str() + " all I", "equal vertex sets", all ? "equal" : "differ", all);
    }
    for (std::size_t k = 0; k < 20; ++k) {
        std::size_t d = 2 + k % 5;
        WeightVector w = random_weights(rng, d, true);
        bool all = true;
        for (std::size_t i = 1; i < d; ++i)
            all = all && weighted_intersection_bound(w, i).maximizer_check;
        rep.add("maximizer I=[i] S" + w.str(), "first i coordinates", all ? "first i coordinates" : "other", all);
    }
    for (std::size_t k = 0; k < 5; ++k) {
        WeightVector w = random_weights(rng, 2 + k % 2, true);
        auto width = lattice_width(weighted_simplex(w), Lattice::standard(w.dim())).width;
        rep.equal("width S" + w.str() + " = w0 + w1", w[0] + w[1], width);
    }
    return rep;
}

inline SuiteReport verify_terminal(const Rat& tol = Rat(1, 10000)) {
    SuiteReport rep{"terminal", {}};
    struct Row {
        std::size_t d, i;
        Rat p, q, kl;
    };
    for (const auto& r : {Row{3, 2, Rat(5, 4), Rat(5, 4), Rat(5, 4)}, Row{4, 2, Rat(13, 10), Rat(7, 5), Rat(13, 10)},
                          Row{4, 3, Rat(41, 20), Rat(9, 5), Rat(21, 10)}}) {
        std::string at = "(" + std::to_string(r.d) + "," + std::to_string(r.i) + ")";
        rep.equal("successive projection bound " + at, r.p, terminal_projection_bound(r.d, r.i));
        rep.equal("intersection bound " + at, r.q, terminal_intersection_bound(r.d, r.i));
        rep.equal("KL bound " + at, r.kl, terminal_kl_bound(r.d, r.i));
    }
    bool order = true, sharp = true, floor_ok = true, weighted_ok = true;
    for (std::size_t d = 2; d <= 8; ++d)
        for (std::size_t i = 1; i <= d; ++i) {
            Rat half(static_cast<long>(i), 2);
            if (i >= 2) {
                Rat p = terminal_projection_bound(d, i), kl = terminal_kl_bound(d, i);
                order = order && p <= kl;
                sharp = sharp && ((p == kl) == (i == 2));
                floor_ok = floor_ok && p >= half;
            }
            floor_ok = floor_ok && terminal_intersection_bound(d, i) >= half && terminal_kl_bound(d, i) >= half;
            if (i < d)
                weighted_ok = weighted_ok &&
                              weighted_intersection_bound(WeightVector::ones(d), i).value == terminal_intersection_bound(d, i);
        }
    rep.add("projection bound <= KL bound, 2 <= i <= d <= 8", "true", order ? "true" : "false", order);
    rep.add("equality iff i = 2, d <= 8", "true", sharp ? "true" : "false", sharp);
    rep.add("all bounds >= i/2, d <= 8", "true", floor_ok ? "true" : "false", floor_ok);
    rep.add("weighted bound at all-ones weights = terminal bound", "true", weighted_ok ? "true" : "false", weighted_ok);
    for (std::size_t d = 2; d <= 5; ++d)
        rep.equal("width T" + std::to_string(d), Rat(2), lattice_width(terminal_simplex(d), Lattice::standard(d)).width);
    for (std::size_t d = 2; d <= 4; ++d) {
        auto lam = successive_minima(difference_body(terminal_simplex(d)), Lattice::standard(d)).lambda;
        bool all = std::all_of(lam.begin(), lam.end(), [&](const Rat& x) { return x == Rat(long(d), long(d + 1)); });
        std::string got;
        for (const auto& x : lam)
            got += (got.empty() ? "" : ",") + to_string(x);
        rep.add("successive minima T" + std::to_string(d) + "-T" + std::to_string(d),
                to_string(Rat(long(d), long(d + 1))) + " each", got, all);
    }
    for (std::size_t d = 2; d <= 3; ++d) {
        auto c = covering_radius(terminal_simplex(d), Lattice::standard(d), tol).interval;
        Rat half(long(d), 2);
        rep.add("covering radius T" + std::to_string(d) + " oracle", to_string(half), detail::approx(c),
                c.contains(half) && c.width() <= 2 * tol);
    }
    return rep;
}

inline SuiteReport verify_lab(const Rat& tol = Rat(1, 10000), unsigned jobs = 1) {
    SuiteReport rep{"lab", {}};
    Polytope c3 = cube(3);
    rep.add("cube [-1,1]^3 is locally anti-blocking", "true", is_locally_anti_blocking(c3) ? "true" : "false",
            is_locally_anti_blocking(c3));
    for (std::size_t i = 1; i <= 3; ++i) {
        auto e = lab_minima(c3, i, tol, jobs);
        rep.add("cube mu_" + std::to_string(i), "1/2", e.value_str(), e.is_exact() && e.upper() == Rat(1, 2));
    }
    auto oc = covering_radius(c3, Lattice::standard(3), tol).interval;
    rep.add("cube covering radius oracle", "1/2", detail::approx(oc), detail::near(oc, Rat(1, 2), 2 * tol));
    // oracle on every slice, bypassing closed forms
    for (std::size_t i = 1; i <= 2; ++i) {
        Interval best(Rat(0));
        for (const auto& idx : subsets_of_size(3, i))
            best = max(best, covering_radius(coord_slice(c3, idx).body, Lattice::standard(i), tol).interval);
        rep.add("cube mu_" + std::to_string(i) + " from oracle slices", "1/2", detail::approx(best),
                detail::near(best, Rat(1, 2), 2 * tol));
    }
    Polytope x3 = crosspolytope(3);
    auto ex = lab_minima(x3, 2, tol, jobs);
    rep.add("crosspolytope mu_2", "1", ex.value_str(), ex.interval().contains(Rat(1)) && ex.interval().width() <= tol);
    Polytope b = box(RatVec{Rat(-1), Rat(-1, 2), Rat(-1, 3)}, RatVec{Rat(1), Rat(1, 2), Rat(1, 3)});
    auto eb = lab_minima(b, 2, tol, jobs);
    // per-box formula: the covering radius of a box is its largest reciprocal side length
    Rat formula(0);
    for (const auto& idx : subsets_of_size(3, 2)) {
        Rat m(0);
        for (auto k : idx)
            m = std::max(m, Rat(1) / (b.bounding_box().hi[k] - b.bounding_box().lo[k]));
        formula = std::max(formula, m);
    }
    rep.add("box mu_2 = max over I of box formula", to_string(formula), eb.value_str(),
            eb.interval().contains(formula) && formula == Rat(3, 2));
    Interval ob(Rat(0));
    for (const auto& idx : subsets_of_size(3, 2))
        ob = max(ob, covering_radius(coord_slice(b, idx).body, Lattice::standard(2), tol).interval);
    rep.add("box mu_2 from oracle slices", "3/2", detail::approx(ob), detail::near(ob, Rat(3, 2), 2 * tol));
    bool t2 = is_locally_anti_blocking(terminal_simplex(2));
    rep.add("T2 is not locally anti-blocking", "false", t2 ? "true" : "false", !t2);
    return rep;
}

inline SuiteReport verify_direct_sum_suite(const Rat& tol = Rat(1, 10000), unsigned jobs = 1, std::uint64_t seed = 7) {
    SuiteReport rep{"direct-sum", {}};
    MinimaTable seg = segment_table(Rat(-1), Rat(1));
    MinimaTable cross = direct_sum_table(direct_sum_table(seg, seg), seg);
    for (std::size_t i = 1; i <= 3; ++i)
        rep.equal("crosspolytope mu_" + std::to_string(i) + " from summands", Rat(long(i), 2), cross.at(i).upper());
    auto oc = covering_radius(crosspolytope(3), Lattice::standard(3), tol).interval;
    rep.add("crosspolytope mu_3 oracle", "3/2", detail::approx(oc), detail::near(oc, Rat(3, 2), 2 * tol));
    for (std::size_t i = 1; i <= 3; ++i) {
        auto r = verify_direct_sum(segment(Rat(-1), Rat(1)), crosspolytope(2), i, tol, jobs);
        rep.add("[-1,1] + cross2 i=" + std::to_string(i) + " projection bound = summand formula", to_string(r.rhs),
                to_string(r.projection_value), r.projection_matches && r.rhs == Interval(Rat(long(i), 2)));
        rep.add("[-1,1] + cross2 i=" + std::to_string(i) + " sandwich contains formula", to_string(r.rhs),
                to_string(r.sandwich.interval()), r.sandwich_contains);
    }
    {
        auto r = verify_direct_sum(terminal_simplex(2), segment(Rat(-1), Rat(1)), 3, tol, jobs);
        rep.add("T2 + [-1,1] i=3", "3/2", to_string(r.rhs) + " oracle " + detail::approx(*r.sum_radius),
                r.ok() && r.rhs == Interval(Rat(3, 2)));
    }
    {
        auto r = verify_direct_sum(segment(Rat(-1, 2), Rat(1)), segment(Rat(-1), Rat(1, 3)), 2, tol, jobs);
        rep.add("[-1/2,1] + [-1,1/3] i=2", "17/12", to_string(r.rhs) + " oracle " + detail::approx(*r.sum_radius),
                r.ok() && r.rhs == Interval(Rat(17, 12)));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < 5; ++k) {
        auto [a1, b1] = random_segment(rng);
        auto [a2, b2] = random_segment(rng);
        Rat expect = Rat(1) / (b1 - a1) + Rat(1) / (b2 - a2);
        Polytope s = direct_sum(segment(a1, b1), segment(a2, b2));
        auto c = covering_radius(s, Lattice::standard(2), tol).interval;
        rep.add("additivity [" + to_string(a1) + "," + to_string(b1) + "] + [" + to_string(a2) + "," + to_string(b2) + "]",
                to_string(expect), detail::approx(c), abs(c.mid() - expect) <= 4 * tol);
    }
    rep.equal("segment lengths (4,2,1) i=2", Rat(3, 2),
              segment_sum_minima({{Rat(-2), Rat(2)}, {Rat(-1), Rat(1)}, {Rat(0), Rat(1)}}, 2));
    rep.equal("unimodular segments i=3", Rat(3),
              segment_sum_minima({{Rat(0), Rat(1)}, {Rat(0), Rat(1)}, {Rat(0), Rat(1)}}, 3));
    return rep;
}

inline SuiteReport verify_kl(const Rat& tol = Rat(1, 10000), std::uint64_t seed = 11) {
    SuiteReport rep{"kl", {}};
    for (std::size_t d = 2; d <= 4; ++d) {
        auto lam = successive_minima(difference_body(terminal_simplex(d)), Lattice::standard(d)).lambda;
        for (std::size_t i = 1; i <= d; ++i) {
            auto r = kl_bound(MinimaEntry::exact(Rat(1, 2), "width"), 1, lam, i);
            rep.equal("T" + std::to_string(d) + " chain to mu_" + std::to_string(i), terminal_kl_bound(d, i), r.upper());
        }
        rep.equal("T" + std::to_string(d) + " projection bound = KL at i=2", terminal_kl_bound(d, 2),
                  terminal_projection_bound(d, 2));
    }
    for (std::size_t d = 2; d <= 3; ++d) {
        auto lam = successive_minima(cube(d, Rat(2)), Lattice::standard(d)).lambda;
        bool half = std::all_of(lam.begin(), lam.end(), [](const Rat& x) { return x == Rat(1, 2); });
        rep.add("lambda of [-2,2]^" + std::to_string(d), "1/2 each", half ? "1/2 each" : "other", half);
        auto r = kl_bound(MinimaEntry::exact(Rat(1, 2), "width"), 1, lam, d);
        rep.equal("cube chain to mu_" + std::to_string(d), Rat(long(d), 2), r.upper());
    }
    // one step from mu_1 on random polygons must stay above the oracle
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (std::size_t k = 0; k < 5;) {
        std::vector<RatVec> pts;
        for (int p = 0; p < 5; ++p)
            pts.push_back(RatVec{Rat(coord(rng)), Rat(coord(rng), 2)});
        Polytope body(2, pts);
        if (!body.is_full_dimensional())
            continue;
        ++k;
        Rat w = lattice_width(body, Lattice::standard(2)).width;
        auto lam = successive_minima(difference_body(body), Lattice::standard(2)).lambda;
        auto r = kl_bound(MinimaEntry::exact(Rat(1) / w, "width"), 1, lam, 2);
        auto c = covering_radius(body, Lattice::standard(2), tol).interval;
        rep.add("one KL step on " + body.str(), ">= " + detail::approx(c), to_string(r.upper()), c.lo() <= r.upper());
    }
    return rep;
}

inline SuiteReport run_suite(const std::string& name, const Rat& tol = Rat(1, 10000), unsigned jobs = 1) {
    if (name == "weighted")
        return verify_weighted(tol);
    if (name == "terminal")
        return verify_terminal(tol);
    if (name == "lab")
        return verify_lab(tol, jobs);
    if (name == "direct-sum")
        return verify_direct_sum_suite(tol, jobs);
    if (name == "kl")
        return verify_kl(tol);
    fail(Errc::InvalidInput, "unknown suite '" + name + "' (direct-sum, lab, weighted, terminal, kl)");
}

} // namespace covmin
