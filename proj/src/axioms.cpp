#include "dqcalc/axioms.hpp"

#include <algorithm>
#include <sstream>

namespace dqcalc {

namespace {

RingElem random_elem(RingId rid, std::mt19937_64& rng, bool nonzero = false) {
    for (;;) {
        RingElem e;
        if (rid.tag == RingTag::Rational) {
            auto num = static_cast<long>(rng() % 19) - 9;
            auto den = static_cast<long>(rng() % 9) + 1;
            e = RingElem::rational(num, den);
        } else if (rid.tag == RingTag::PrimeField) {
            e = RingElem::mod(rid.p, static_cast<std::int64_t>(rng() % rid.p));
        } else {
            throw std::invalid_argument("random_elem: exact rings only");
        }
        if (!nonzero || !e.is_zero()) return e;
    }
}

std::vector<RingElem> random_point(RingId rid, int n, std::mt19937_64& rng) {
    std::vector<RingElem> p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.push_back(random_elem(rid, rng));
    return p;
}

/// Projection K^{n+m} -> K^n (first = true) or K^m.
PolyMap projection(RingId rid, int n, int m, bool first) {
    std::vector<Poly> comps;
    int lo = first ? 0 : n;
    int cnt = first ? n : m;
    for (int i = 0; i < cnt; ++i) comps.push_back(Poly::variable(rid, n + m, lo + i));
    return PolyMap(std::move(comps));
}

/// [f, g] : K^n -> K^{a+b} for f : K^n -> K^a, g : K^n -> K^b.
PolyMap pair_map(const PolyMap& f, const PolyMap& g) {
    if (f.arity_in() != g.arity_in())
        throw ArityMismatch("pair_map: common source required");
    std::vector<Poly> comps = f.components();
    comps.insert(comps.end(), g.components().begin(), g.components().end());
    return PolyMap(std::move(comps), f.var_names());
}

PolyMap identity_map(RingId rid, int n) {
    std::vector<Poly> comps;
    for (int i = 0; i < n; ++i) comps.push_back(Poly::variable(rid, n, i));
    return PolyMap(std::move(comps));
}

int pick_rank(const std::vector<int>& objects, std::mt19937_64& rng) {
    return objects[rng() % objects.size()];
}

PolyMap random_member(RingId rid, int n, int m, std::mt19937_64& rng) {
    return random_poly_map(rid, n, m, 3, 4, rng);
}

/// Coefficient of t^d in g with the t slot (last variable) removed.
Poly t_coefficient(const Poly& g, std::uint32_t d) {
    const int tv = g.nvars() - 1;
    Poly out(g.ring(), g.nvars());
    for (const Monomial& m : g.terms()) {
        if (m.exps[static_cast<std::size_t>(tv)] != d) continue;
        auto exps = m.exps;
        exps[static_cast<std::size_t>(tv)] = 0;
        out = out + Poly::monomial(g.ring(), g.nvars(), m.coeff, exps);
    }
    return out.drop_variable(tv);
}

/// Exact polynomial coefficients through (nodes[j], vals[j]) by Gaussian
/// elimination on the Vandermonde system; degree = nodes.size() - 1.
std::vector<RingElem> interp_coeffs(const std::vector<RingElem>& nodes,
                                    const std::vector<RingElem>& vals) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<RingElem>> M(n, std::vector<RingElem>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        RingElem pw = RingElem::one(nodes[r].ring());
        for (std::size_t c = 0; c < n; ++c) {
            M[r][c] = pw;
            pw = pw * nodes[r];
        }
        M[r][n] = vals[r];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && M[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("interp_coeffs: singular system");
        std::swap(M[c], M[piv]);
        RingElem ic = M[c][c].inv();
        for (std::size_t j = c; j <= n; ++j) M[c][j] = M[c][j] * ic;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c].is_zero()) continue;
            RingElem factor = M[r][c];
            for (std::size_t j = c; j <= n; ++j) M[r][j] = M[r][j] - factor * M[c][j];
        }
    }
    std::vector<RingElem> out(n);
    for (std::size_t r = 0; r < n; ++r) out[r] = M[r][n];
    return out;
}

}  // namespace

void FnClassInstance::validate() const {
    for (const PolyMap& g : generators) {
        bool in_ok = std::find(objects.begin(), objects.end(), g.arity_in()) != objects.end();
        bool out_ok =
            std::find(objects.begin(), objects.end(), g.arity_out()) != objects.end();
        if (!in_ok || !out_ok)
            throw std::invalid_argument(
                "FnClassInstance: generator arity not among declared ranks");
        if (!(g.ring() == ring))
            throw std::invalid_argument("FnClassInstance: generator over a foreign ring");
    }
    if (ring.tag != RingTag::Rational && ring.tag != RingTag::PrimeField)
        throw std::invalid_argument("FnClassInstance: exact rings only");
}

FnClassInstance FnClassInstance::polynomial_class(RingId rid, int max_rank) {
    FnClassInstance inst;
    inst.ring = rid;
    for (int n = 1; n <= max_rank; ++n) inst.objects.push_back(n);
    inst.validate();
    return inst;
}

VerificationReport check_productive(const FnClassInstance& inst, int trials,
                                    std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_productive: trials >= 1");
    inst.validate();
    VerificationReport rep;
    rep.suite = "productive_structure";
    rep.seed = seed;
    rep.trials = trials;
    std::mt19937_64 rng(derive_seed(seed, 11));

    if (inst.objects.empty()) {
        rep.add("vacuous", true, 0.0, "no declared ranks");
        return rep;
    }

    bool proj_ok = true, pair_ok = true, unique_ok = true;
    std::string witness;
    for (int trial = 0; trial < trials; ++trial) {
        int n = pick_rank(inst.objects, rng);
        int a = pick_rank(inst.objects, rng);
        int b = pick_rank(inst.objects, rng);
        PolyMap f = random_member(inst.ring, n, a, rng);
        PolyMap g = random_member(inst.ring, n, b, rng);

        if (!inst.allow_pair) {
            pair_ok = false;
            witness = "pairing disabled; offending pair f = " + f.str() + ", g = " + g.str();
            break;
        }
        PolyMap fg = pair_map(f, g);
        PolyMap p1 = projection(inst.ring, a, b, true);
        PolyMap p2 = projection(inst.ring, a, b, false);
        if (!poly_equal(compose(p1, fg), f) || !poly_equal(compose(p2, fg), g)) {
            proj_ok = false;
            witness = "f = " + f.str() + ", g = " + g.str();
            break;
        }
        // product rank symmetric up to the swap isomorphism
        PolyMap swap = pair_map(p2, p1);
        if (fg.arity_out() != a + b || !poly_equal(compose(swap, fg), pair_map(g, f))) {
            unique_ok = false;
            witness = "f = " + f.str() + ", g = " + g.str();
            break;
        }
    }
    rep.add("projections_recover_components", proj_ok, 0.0, proj_ok ? "" : witness);
    rep.add("pairing_closure", pair_ok, 0.0, pair_ok ? "" : witness);
    rep.add("product_unique_up_to_swap", unique_ok, 0.0, unique_ok ? "" : witness);
    return rep;
}

VerificationReport check_bgn_postulates(const FnClassInstance& inst, int trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_bgn_postulates: trials >= 1");
    inst.validate();
    VerificationReport rep;
    rep.suite = "class_postulates";
    rep.seed = seed;
    rep.trials = trials;
    rep.notes.push_back(
        "inversion is checked as the built-in partial unit evaluator, not as a "
        "polynomial member");
    std::mt19937_64 rng(derive_seed(seed, 13));

    const RingId rid = inst.ring;
    std::vector<int> ranks = inst.objects.empty() ? std::vector<int>{1} : inst.objects;

    // (compose) closure with pointwise agreement
    bool comp_ok = true;
    std::string comp_witness;
    for (int trial = 0; trial < trials && comp_ok; ++trial) {
        int n = pick_rank(ranks, rng), m = pick_rank(ranks, rng), l = pick_rank(ranks, rng);
        PolyMap f = random_member(rid, n, m, rng);
        PolyMap g = random_member(rid, m, l, rng);
        if (!inst.allow_compose) {
            comp_ok = false;
            comp_witness = "composition disabled";
            break;
        }
        PolyMap gf = compose(g, f);
        auto x = random_point(rid, n, rng);
        if (gf.eval(x) != g.eval(f.eval(x))) {
            comp_ok = false;
            comp_witness = "f = " + f.str() + ", g = " + g.str();
        }
    }
    rep.add("composition_closure", comp_ok, 0.0, comp_witness);

    // (constants, identity)
    bool const_ok = inst.allow_constant && inst.allow_identity;
    std::string const_witness = const_ok ? "" : "constant/identity membership disabled";
    for (int trial = 0; trial < trials && const_ok; ++trial) {
        int n = pick_rank(ranks, rng);
        RingElem y = random_elem(rid, rng);
        PolyMap cst({Poly::constant(rid, n, y)});
        PolyMap idm = identity_map(rid, n);
        auto x = random_point(rid, n, rng);
        if (cst.eval(x)[0] != y || idm.eval(x) != x) {
            const_ok = false;
            const_witness = "y = " + y.str();
        }
    }
    rep.add("constants_and_identity", const_ok, 0.0, const_witness);

    // (unit map) iota as built-in evaluator: iota(iota(a)) = a, a * iota(a) = 1
    bool iota_ok = true;
    std::string iota_witness;
    for (int trial = 0; trial < trials && iota_ok; ++trial) {
        RingElem a = random_elem(rid, rng, true);
        if (a.inv().inv() != a || !(a * a.inv()).is_one()) {
            iota_ok = false;
            iota_witness = "a = " + a.str();
        }
    }
    rep.add("unit_map_involution", iota_ok, 0.0, iota_witness);

    // (determination)
    bool det_ok = true;
    std::string det_witness;
    int capped = 0;
    for (int trial = 0; trial < trials && det_ok; ++trial) {
        const int d = static_cast<int>(rng() % 5);
        PolyMap p = random_poly_map(rid, 1, 1, d, d + 1, rng);
        if (rid.tag == RingTag::PrimeField) {
            // functional agreement on F_p \ {0} certifies identity only
            // below degree p-1; flag, never call it a failure
            if (p.components()[0].degree_in(0) + 1 >= rid.p) {
                ++capped;
                continue;
            }
            PolyMap q = p;
            if (!poly_equal(p, q)) {
                det_ok = false;
                det_witness = "p = " + p.str();
            }
            continue;
        }
        // over the rationals: deg <= d values at d+1 distinct nonzero
        // points pin the polynomial, so interpolation through them must
        // reconstruct p coefficient for coefficient
        const Poly& c = p.components()[0];
        auto dd = c.degree_in(0);
        std::vector<RingElem> nodes, vals;
        for (std::uint32_t j = 1; j <= dd + 1; ++j) {
            nodes.push_back(RingElem::from_long(rid, static_cast<long>(j)));
            vals.push_back(c.eval({nodes.back()}));
        }
        auto coeffs = interp_coeffs(nodes, vals);
        Poly rebuilt(rid, 1);
        for (std::size_t d2 = 0; d2 < coeffs.size(); ++d2)
            rebuilt = rebuilt + Poly::monomial(rid, 1, coeffs[d2],
                                               {static_cast<std::uint32_t>(d2)});
        if (!(rebuilt == c)) {
            det_ok = false;
            det_witness = "p = " + p.str();
        }
    }
    std::string det_note = det_witness;
    if (capped > 0)
        det_note = "degree-capped on " + std::to_string(capped) +
                   " trials (t-degree >= p-1, coefficient route only)";
    rep.add("determination", det_ok, 0.0, det_note);
    return rep;
}

VerificationReport prop9_uniqueness(const PolyMap& f, std::uint64_t seed, int trials) {
    const RingId rid = f.ring();
    if (rid.tag != RingTag::Rational && rid.tag != RingTag::PrimeField)
        throw std::invalid_argument("prop9_uniqueness: exact rings only");
    VerificationReport rep;
    rep.suite = "quotient_map_uniqueness";
    rep.seed = seed;
    rep.trials = trials;
    std::mt19937_64 rng(derive_seed(seed, 17));

    PolyMap g1 = sym_difq1(f);
    const int n = f.arity_in();
    const int tv = 2 * n;  // t slot in g1's variable order (x, u, t)

    std::uint32_t tdeg = 0;
    for (const Poly& c : g1.components()) tdeg = std::max(tdeg, c.degree_in(tv));
    const std::size_t node_count = tdeg + 1;
    if (rid.tag == RingTag::PrimeField && node_count > rid.p - 1)
        throw DegreeCapExceeded("prop9_uniqueness: t-degree " + std::to_string(tdeg) +
                                " needs more nonzero nodes than F_" +
                                std::to_string(rid.p) + " has");
    std::vector<RingElem> nodes;
    for (std::size_t j = 1; j <= node_count; ++j)
        nodes.push_back(RingElem::from_long(rid, static_cast<long>(j)));

    bool all_ok = true;
    std::string witness;
    for (int trial = 0; trial < trials && all_ok; ++trial) {
        auto x = random_point(rid, n, rng);
        auto u = random_point(rid, n, rng);
        auto fx = f.eval(x);

        // quotient samples at the nonzero nodes
        std::vector<std::vector<RingElem>> samples(node_count);
        for (std::size_t j = 0; j < node_count; ++j) {
            std::vector<RingElem> xt(x);
            for (int i = 0; i < n; ++i) xt[static_cast<std::size_t>(i)] =
                xt[static_cast<std::size_t>(i)] + nodes[j] * u[static_cast<std::size_t>(i)];
            auto fxt = f.eval(xt);
            RingElem it = nodes[j].inv();
            for (std::size_t c = 0; c < fxt.size(); ++c)
                samples[j].push_back((fxt[c] - fx[c]) * it);
        }

        std::vector<RingElem> xu(x);
        xu.insert(xu.end(), u.begin(), u.end());
        for (int c = 0; c < g1.arity_out() && all_ok; ++c) {
            std::vector<RingElem> vals;
            for (std::size_t j = 0; j < node_count; ++j)
                vals.push_back(samples[j][static_cast<std::size_t>(c)]);
            auto coeffs = interp_coeffs(nodes, vals);
            for (std::size_t d = 0; d < coeffs.size(); ++d) {
                RingElem sym = t_coefficient(g1.components()[static_cast<std::size_t>(c)],
                                             static_cast<std::uint32_t>(d))
                                   .eval(xu);
                if (sym != coeffs[d]) {
                    all_ok = false;
                    std::ostringstream os;
                    os << "trial " << trial << " component " << c << " t^" << d
                       << ": symbolic " << sym.str() << " vs interpolated "
                       << coeffs[d].str();
                    witness = os.str();
                }
            }
        }
    }
    rep.add("symbolic_equals_interpolated", all_ok, 0.0, witness);
    return rep;
}

VerificationReport prop10_recursion(const PolyMap& f, int k, std::size_t term_cap) {
    if (k < 1) throw std::invalid_argument("prop10_recursion: k >= 1");
    VerificationReport rep;
    rep.suite = "nesting_recursion";
    PolyMap lhs = sym_difq_k(f, k + 1, term_cap);
    PolyMap rhs = sym_difq_k(sym_difq1(f), k, term_cap);
    bool ok = poly_equal(lhs, rhs);
    rep.add("difq_" + std::to_string(k + 1) + "_matches_nested", ok, 0.0,
            ok ? "" : "f = " + f.str());
    return rep;
}

}  // namespace dqcalc
