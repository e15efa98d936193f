#include "dqcalc/expr.hpp"

#include <cctype>
#include <cmath>

namespace dqcalc {

struct ExprNode {
    enum Kind { Num, Var, Bin, Call } kind = Num;
    mpq_class num;     // Num: exact value (decimals are exact rationals)
    int var = 0;       // Var: 0-based index
    char op = 0;       // Bin: + - * / ^
    std::string func;  // Call: sin cos exp log
    std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_num(mpq_class q) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Num;
    n->num = std::move(q);
    n->num.canonicalize();
    return n;
}

NodePtr make_bin(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Bin;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < s_.size()) throw SyntaxError("unexpected input", pos_ + 1);
        return e;
    }

    int max_var = 0;

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (accept('+'))
                e = make_bin('+', e, term());
            else if (accept('-'))
                e = make_bin('-', e, term());
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (accept('*'))
                e = make_bin('*', e, factor());
            else if (accept('/'))
                e = make_bin('/', e, factor());
            else
                return e;
        }
    }

    NodePtr factor() {
        if (accept('-')) return make_bin('-', make_num(0), factor());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make_bin('^', base, power());
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("operand expected", pos_ + 1);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == 'x' && pos_ + 1 < s_.size() &&
            s_[pos_ + 1] >= '1' && s_[pos_ + 1] <= '9') {
            int idx = s_[pos_ + 1] - '0';
            pos_ += 2;
            max_var = std::max(max_var, idx);
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Var;
            n->var = idx - 1;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return call();
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) throw SyntaxError("')' expected", pos_ + 1);
            return e;
        }
        throw SyntaxError("operand expected", pos_ + 1);
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string intpart = s_.substr(start, pos_ - start);
        std::string fracpart;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            fracpart = s_.substr(fs, pos_ - fs);
        }
        if (intpart.empty() && fracpart.empty())
            throw SyntaxError("malformed number", start + 1);
        mpq_class q(intpart.empty() ? "0" : intpart);
        if (!fracpart.empty()) {
            mpz_class den(1);
            for (std::size_t i = 0; i < fracpart.size(); ++i) den *= 10;
            q += mpq_class(mpz_class(fracpart), den);
        }
        return make_num(q);
    }

    NodePtr call() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name != "sin" && name != "cos" && name != "exp" && name != "log")
            throw UnknownFunction("unknown function '" + name + "'");
        if (!accept('(')) throw SyntaxError("'(' expected after function name", pos_ + 1);
        NodePtr arg = expr();
        if (!accept(')')) throw SyntaxError("')' expected", pos_ + 1);
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Call;
        n->func = name;
        n->a = arg;
        return n;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

bool node_is_constant(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Num: return true;
        case ExprNode::Var: return false;
        case ExprNode::Call: return node_is_constant(*n.a);
        case ExprNode::Bin: return node_is_constant(*n.a) && node_is_constant(*n.b);
    }
    return false;
}

bool node_is_polynomial(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Num:
        case ExprNode::Var:
            return true;
        case ExprNode::Call:
            return false;
        case ExprNode::Bin:
            if (!node_is_polynomial(*n.a) || !node_is_polynomial(*n.b)) return false;
            if (n.op == '/') return node_is_constant(*n.b);
            if (n.op == '^') {
                // exponent: constant non-negative integer
                if (n.b->kind != ExprNode::Num) return false;
                const mpq_class& e = n.b->num;
                return e.get_den() == 1 && e.get_num() >= 0;
            }
            return true;
    }
    return false;
}

Poly lower_poly(const ExprNode& n, int nvars) {
    const RingId rid = RingId::rationals();
    switch (n.kind) {
        case ExprNode::Num:
            return Poly::constant(rid, nvars, RingElem::rational(n.num));
        case ExprNode::Var:
            return Poly::variable(rid, nvars, n.var);
        case ExprNode::Call:
            throw std::logic_error("lower_poly: transcendental node");
        case ExprNode::Bin: {
            Poly a = lower_poly(*n.a, nvars);
            switch (n.op) {
                case '+': return a + lower_poly(*n.b, nvars);
                case '-': return a - lower_poly(*n.b, nvars);
                case '*': return a * lower_poly(*n.b, nvars);
                case '/': {
                    Poly b = lower_poly(*n.b, nvars);
                    if (b.total_degree() != 0 || b.is_zero())
                        throw NotInvertible("division by a non-constant or zero");
                    RingElem c = b.eval(std::vector<RingElem>(
                        static_cast<std::size_t>(nvars), RingElem::rational(0)));
                    return a.scaled(c.inv());
                }
                case '^': {
                    long e = n.b->num.get_num().get_si();
                    Poly acc = Poly::constant(rid, nvars, RingElem::rational(1));
                    for (long i = 0; i < e; ++i) acc = acc * a;
                    return acc;
                }
            }
            break;
        }
    }
    throw std::logic_error("lower_poly: unreachable");
}

double eval_node(const ExprNode& n, const Vec& x) {
    switch (n.kind) {
        case ExprNode::Num: return n.num.get_d();
        case ExprNode::Var: return x[static_cast<std::size_t>(n.var)];
        case ExprNode::Call: {
            double a = eval_node(*n.a, x);
            if (n.func == "sin") return std::sin(a);
            if (n.func == "cos") return std::cos(a);
            if (n.func == "exp") return std::exp(a);
            return std::log(a);
        }
        case ExprNode::Bin: {
            double a = eval_node(*n.a, x);
            double b = eval_node(*n.b, x);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
        }
    }
    return 0.0;
}

std::string emit(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Num: return n.num.get_str();
        case ExprNode::Var: return "x" + std::to_string(n.var + 1);
        case ExprNode::Call: return n.func + "(" + emit(*n.a) + ")";
        case ExprNode::Bin:
            return "(" + emit(*n.a) + " " + std::string(1, n.op) + " " + emit(*n.b) + ")";
    }
    return "";
}

}  // namespace

ParsedExpr parse_expr(const std::string& text) {
    Parser parser(text);
    NodePtr ast = parser.parse();

    ParsedExpr out;
    out.ast = ast;
    out.arity = std::max(1, parser.max_var);
    out.canonical = emit(*ast);
    out.polynomial = node_is_polynomial(*ast);
    if (out.polynomial) out.poly = PolyMap({lower_poly(*ast, out.arity)});
    out.smooth = SmoothFn(out.arity, 1,
                          [ast](const Vec& x) { return Vec{eval_node(*ast, x)}; });
    return out;
}

}  // namespace dqcalc
