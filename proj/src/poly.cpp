#include "dqcalc/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace dqcalc {

namespace {

// Graded-lex: total degree first, then lexicographic on exponents.
bool exp_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

Poly Poly::constant(RingId rid, int nvars, const RingElem& c) {
    Poly p(rid, nvars);
    if (!c.is_zero()) p.terms_.push_back({c, std::vector<std::uint32_t>(nvars, 0)});
    return p;
}

Poly Poly::monomial(RingId rid, int nvars, const RingElem& c,
                    const std::vector<std::uint32_t>& exps) {
    if (static_cast<int>(exps.size()) != nvars)
        throw ArityMismatch("monomial: exponent vector length mismatch");
    Poly p(rid, nvars);
    if (!c.is_zero()) p.terms_.push_back({c, exps});
    return p;
}

Poly Poly::variable(RingId rid, int nvars, int index) {
    std::vector<std::uint32_t> e(nvars, 0);
    e[index] = 1;
    return monomial(rid, nvars, RingElem::one(rid), e);
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        int td = 0;
        for (auto e : t.exps) td += static_cast<int>(e);
        d = std::max(d, td);
    }
    return d;
}

std::uint32_t Poly::degree_in(int v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[v]);
    return d;
}

void Poly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Monomial& a, const Monomial& b) { return exp_less(a.exps, b.exps); });
    std::vector<Monomial> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

Poly Poly::operator+(const Poly& o) const {
    if (rid_ != o.rid_) throw RingMismatch("poly add: ring mismatch");
    if (nvars_ != o.nvars_) throw ArityMismatch("poly add: nvars mismatch");
    Poly r(rid_, nvars_);
    r.terms_ = terms_;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.canonicalize();
    return r;
}

Poly Poly::operator-() const {
    Poly r(rid_, nvars_);
    for (const auto& t : terms_) r.terms_.push_back({-t.coeff, t.exps});
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (rid_ != o.rid_) throw RingMismatch("poly mul: ring mismatch");
    if (nvars_ != o.nvars_) throw ArityMismatch("poly mul: nvars mismatch");
    Poly r(rid_, nvars_);
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            Monomial m{a.coeff * b.coeff, a.exps};
            for (int v = 0; v < nvars_; ++v) m.exps[v] += b.exps[v];
            r.terms_.push_back(std::move(m));
        }
    r.canonicalize();
    return r;
}

Poly Poly::scaled(const RingElem& c) const {
    Poly r(rid_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.exps});
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.rid_ != b.rid_ || a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coeff == b.terms_[i].coeff))
            return false;
    return true;
}

RingElem Poly::eval(const std::vector<RingElem>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw ArityMismatch("poly eval: point length mismatch");
    RingElem acc = RingElem::zero(rid_);
    for (const auto& t : terms_) {
        RingElem v = t.coeff;
        for (int i = 0; i < nvars_; ++i) {
            if (point[i].ring() != rid_) throw RingMismatch("poly eval: ring mismatch");
            for (std::uint32_t e = 0; e < t.exps[i]; ++e) v = v * point[i];
        }
        acc = acc + v;
    }
    return acc;
}

Poly Poly::substitute(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != nvars_)
        throw ArityMismatch("substitute: wrong argument count");
    int out_vars = args.empty() ? 0 : args[0].nvars();
    Poly acc = Poly::zero(rid_, out_vars);
    for (const auto& t : terms_) {
        Poly term = Poly::constant(rid_, out_vars, t.coeff);
        for (int v = 0; v < nvars_; ++v)
            for (std::uint32_t e = 0; e < t.exps[v]; ++e) term = term * args[v];
        acc = acc + term;
    }
    return acc;
}

Poly Poly::fix_variable(int v, const RingElem& c) const {
    Poly acc(rid_, nvars_);
    for (const auto& t : terms_) {
        RingElem coeff = t.coeff;
        for (std::uint32_t e = 0; e < t.exps[v]; ++e) coeff = coeff * c;
        Monomial m{coeff, t.exps};
        m.exps[v] = 0;
        if (!coeff.is_zero()) acc.terms_.push_back(std::move(m));
    }
    acc.canonicalize();
    return acc;
}

Poly Poly::drop_variable(int v) const {
    assert(degree_in(v) == 0);
    Poly r(rid_, nvars_ - 1);
    for (const auto& t : terms_) {
        Monomial m{t.coeff, {}};
        m.exps.reserve(nvars_ - 1);
        for (int i = 0; i < nvars_; ++i)
            if (i != v) m.exps.push_back(t.exps[i]);
        r.terms_.push_back(std::move(m));
    }
    r.canonicalize();
    return r;
}

Poly Poly::divide_by_variable(int v) const {
    Poly r(rid_, nvars_);
    for (const auto& t : terms_) {
        if (t.exps[v] == 0)
            throw std::logic_error("divide_by_variable: term with zero exponent");
        Monomial m{t.coeff, t.exps};
        m.exps[v] -= 1;
        r.terms_.push_back(std::move(m));
    }
    // order is preserved within a fixed variable shift only up to
    // grading, re-canonicalize
    r.canonicalize();
    return r;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest degree first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->coeff.str() << ")";
        for (int v = 0; v < nvars_; ++v) {
            if (it->exps[v] == 0) continue;
            os << "*" << var_names[v];
            if (it->exps[v] > 1) os << "^" << it->exps[v];
        }
    }
    return os.str();
}

PolyMap::PolyMap(std::vector<Poly> components, std::vector<std::string> var_names)
    : components_(std::move(components)), var_names_(std::move(var_names)) {
    if (components_.empty()) throw ArityMismatch("PolyMap: needs at least one component");
    ring_ = components_[0].ring();
    arity_in_ = components_[0].nvars();
    for (const auto& c : components_) {
        if (c.ring() != ring_) throw RingMismatch("PolyMap: mixed rings");
        if (c.nvars() != arity_in_) throw ArityMismatch("PolyMap: mixed arities");
    }
    if (static_cast<int>(var_names_.size()) != arity_in_)
        throw ArityMismatch("PolyMap: variable name count mismatch");
}

namespace {
std::vector<std::string> default_names(const std::vector<Poly>& components) {
    std::vector<std::string> names;
    int n = components.empty() ? 0 : components[0].nvars();
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}
}  // namespace

PolyMap::PolyMap(std::vector<Poly> components)
    : PolyMap(components, default_names(components)) {}

std::vector<RingElem> PolyMap::eval(const std::vector<RingElem>& point) const {
    std::vector<RingElem> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.eval(point));
    return out;
}

std::string PolyMap::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) os << "; ";
        os << components_[i].str(var_names_);
    }
    return os.str();
}

std::size_t PolyMap::term_count() const {
    std::size_t n = 0;
    for (const auto& c : components_) n += c.term_count();
    return n;
}

PolyMap sym_difq1(const PolyMap& f) {
    const int n = f.arity_in();
    const int out_vars = 2 * n + 1;  // x1..xn, u1..un, t
    const RingId rid = f.ring();

    // substitution x_i -> x_i + t*u_i in the enlarged variable set
    std::vector<Poly> shift;
    shift.reserve(n);
    Poly t = Poly::variable(rid, out_vars, 2 * n);
    for (int i = 0; i < n; ++i) {
        Poly xi = Poly::variable(rid, out_vars, i);
        Poly ui = Poly::variable(rid, out_vars, n + i);
        shift.push_back(xi + t * ui);
    }
    std::vector<Poly> base;
    base.reserve(n);
    for (int i = 0; i < n; ++i) base.push_back(Poly::variable(rid, out_vars, i));

    std::vector<Poly> comps;
    comps.reserve(f.arity_out());
    for (const auto& c : f.components()) {
        Poly diff = c.substitute(shift) - c.substitute(base);
        // every surviving term carries at least one factor t
        for (const auto& term : diff.terms())
            if (term.exps[2 * n] == 0)
                throw std::logic_error("sym_difq1: monomial with t-degree 0");
        comps.push_back(diff.is_zero() ? diff : diff.divide_by_variable(2 * n));
    }

    std::vector<std::string> names;
    const auto& base_names = f.var_names();
    names.insert(names.end(), base_names.begin(), base_names.end());
    for (const auto& nm : base_names) names.push_back("u" + nm.substr(nm.size() > 1 && nm[0] == 'x' ? 1 : 0));
    // fall back to positional direction names when the base names are
    // not the plain x1..xn pattern
    bool plain = true;
    for (int i = 0; i < n; ++i)
        if (base_names[i] != "x" + std::to_string(i + 1)) plain = false;
    if (!plain) {
        names.resize(n);
        for (int i = 1; i <= n; ++i) names.push_back("d" + std::to_string(i));
    }
    names.push_back("t");
    // nested quotients reuse names; make them unique by priming
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (names[i] == names[j]) names[i] += "'";
    return PolyMap(std::move(comps), std::move(names));
}

PolyMap sym_difq_k(const PolyMap& f, int k, std::size_t term_cap) {
    if (k < 0) throw std::invalid_argument("sym_difq_k: k must be >= 0");
    PolyMap g = f;
    for (int i = 0; i < k; ++i) {
        g = sym_difq1(g);
        if (g.term_count() > term_cap)
            throw SizeLimit("sym_difq_k: monomial count " + std::to_string(g.term_count()) +
                            " exceeds cap " + std::to_string(term_cap));
    }
    return g;
}

PolyMap formal_var(const PolyMap& f) {
    PolyMap g = sym_difq1(f);
    const int tn = g.arity_in() - 1;  // index of t
    std::vector<Poly> comps;
    for (const auto& c : g.components())
        comps.push_back(c.fix_variable(tn, RingElem::zero(f.ring())).drop_variable(tn));
    std::vector<std::string> names(g.var_names().begin(), g.var_names().end() - 1);
    return PolyMap(std::move(comps), std::move(names));
}

bool poly_equal(const PolyMap& f, const PolyMap& g) {
    if (f.ring() != g.ring())
        throw RingMismatch("poly_equal: ring mismatch");
    if (f.arity_in() != g.arity_in() || f.arity_out() != g.arity_out()) return false;
    for (int i = 0; i < f.arity_out(); ++i)
        if (f.components()[i] != g.components()[i]) return false;
    return true;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
    if (f.arity_in() != g.arity_out())
        throw ArityMismatch("compose: arity mismatch");
    std::vector<Poly> comps;
    comps.reserve(f.arity_out());
    for (const auto& c : f.components()) comps.push_back(c.substitute(g.components()));
    return PolyMap(std::move(comps), g.var_names());
}

PolyMap random_poly_map(RingId rid, int arity_in, int arity_out, int max_degree,
                        int terms_per_component, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::vector<Poly> comps;
    for (int c = 0; c < arity_out; ++c) {
        Poly p = Poly::zero(rid, arity_in);
        for (int t = 0; t < terms_per_component; ++t) {
            int d = deg(rng);
            std::vector<std::uint32_t> exps(arity_in, 0);
            for (int j = 0; j < d; ++j) {
                std::uniform_int_distribution<int> var(0, arity_in - 1);
                exps[var(rng)] += 1;
            }
            long cf = coeff(rng);
            if (cf == 0) cf = 1;
            p = p + Poly::monomial(rid, arity_in, RingElem::from_long(rid, cf), exps);
        }
        comps.push_back(std::move(p));
    }
    return PolyMap(std::move(comps));
}

}  // namespace dqcalc
