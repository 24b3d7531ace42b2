#include "hyperfell/expr.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfell/util.hpp"

namespace hyperfell {

std::unique_ptr<NumExpr> NumExpr::number(double v) {
    auto e = std::make_unique<NumExpr>();
    e->kind = Kind::Const;
    e->constant = v;
    return e;
}

std::unique_ptr<NumExpr> NumExpr::variable(int index) {
    auto e = std::make_unique<NumExpr>();
    e->kind = Kind::Var;
    e->var = index;
    return e;
}

std::unique_ptr<NumExpr> NumExpr::binary(Kind k, std::unique_ptr<NumExpr> a, std::unique_ptr<NumExpr> b) {
    auto e = std::make_unique<NumExpr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

std::unique_ptr<NumExpr> NumExpr::negate(std::unique_ptr<NumExpr> a) {
    auto e = std::make_unique<NumExpr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(a);
    return e;
}

std::unique_ptr<NumExpr> NumExpr::power(std::unique_ptr<NumExpr> a, int ex) {
    auto e = std::make_unique<NumExpr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(a);
    e->exponent = ex;
    return e;
}

double NumExpr::eval(const Point& p) const {
    switch (kind) {
        case Kind::Const: return constant;
        case Kind::Var: return p[var];
        case Kind::Add: return lhs->eval(p) + rhs->eval(p);
        case Kind::Sub: return lhs->eval(p) - rhs->eval(p);
        case Kind::Mul: return lhs->eval(p) * rhs->eval(p);
        case Kind::Neg: return -lhs->eval(p);
        case Kind::Pow: {
            double b = lhs->eval(p);
            double r = 1.0;
            for (int i = 0; i < exponent; ++i) r *= b;
            return r;
        }
    }
    return 0.0;
}

int NumExpr::max_var() const {
    switch (kind) {
        case Kind::Const: return -1;
        case Kind::Var: return var;
        case Kind::Neg: return lhs->max_var();
        case Kind::Pow: return lhs->max_var();
        default: return std::max(lhs->max_var(), rhs->max_var());
    }
}

int NumExpr::degree() const {
    switch (kind) {
        case Kind::Const: return 0;
        case Kind::Var: return 1;
        case Kind::Add:
        case Kind::Sub: return std::max(lhs->degree(), rhs->degree());
        case Kind::Mul: return lhs->degree() + rhs->degree();
        case Kind::Neg: return lhs->degree();
        case Kind::Pow: return lhs->degree() * exponent;
    }
    return 0;
}

bool NumExpr::equals(const NumExpr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Const: return constant == o.constant;
        case Kind::Var: return var == o.var;
        case Kind::Neg: return lhs->equals(*o.lhs);
        case Kind::Pow: return exponent == o.exponent && lhs->equals(*o.lhs);
        default: return lhs->equals(*o.lhs) && rhs->equals(*o.rhs);
    }
}

std::unique_ptr<NumExpr> NumExpr::clone() const {
    auto e = std::make_unique<NumExpr>();
    e->kind = kind;
    e->constant = constant;
    e->var = var;
    e->exponent = exponent;
    if (lhs) e->lhs = lhs->clone();
    if (rhs) e->rhs = rhs->clone();
    return e;
}

// Precedence: add/sub 5, mul 6, unary 7, pow 8, atoms 9.
void NumExpr::print(std::string& out, int parent_prec) const {
    int prec = 9;
    switch (kind) {
        case Kind::Add:
        case Kind::Sub: prec = 5; break;
        case Kind::Mul: prec = 6; break;
        case Kind::Neg: prec = 7; break;
        case Kind::Pow: prec = 8; break;
        default: break;
    }
    bool paren = prec < parent_prec;
    if (paren) out += "(";
    switch (kind) {
        case Kind::Const:
            if (constant < 0) {
                out += "(";
                out += fmt_double(constant);
                out += ")";
            } else {
                out += fmt_double(constant);
            }
            break;
        case Kind::Var:
            out += "x" + std::to_string(var + 1);
            break;
        case Kind::Add:
            lhs->print(out, 5);
            out += " + ";
            rhs->print(out, 6);
            break;
        case Kind::Sub:
            lhs->print(out, 5);
            out += " - ";
            rhs->print(out, 6);
            break;
        case Kind::Mul:
            lhs->print(out, 6);
            out += "*";
            rhs->print(out, 7);
            break;
        case Kind::Neg:
            out += "-";
            lhs->print(out, 7);
            break;
        case Kind::Pow:
            lhs->print(out, 9);
            out += "^" + std::to_string(exponent);
            break;
    }
    if (paren) out += ")";
}

bool cmp_is_strict(CmpOp op) { return op == CmpOp::Lt || op == CmpOp::Gt; }

const char* cmp_token(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

std::unique_ptr<BoolExpr> BoolExpr::cmp(std::unique_ptr<NumExpr> a, CmpOp op, std::unique_ptr<NumExpr> b) {
    auto e = std::make_unique<BoolExpr>();
    e->kind = Kind::Cmp;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

std::unique_ptr<BoolExpr> BoolExpr::conj(std::vector<std::unique_ptr<BoolExpr>> kids) {
    auto e = std::make_unique<BoolExpr>();
    e->kind = Kind::And;
    e->children = std::move(kids);
    return e;
}

std::unique_ptr<BoolExpr> BoolExpr::disj(std::vector<std::unique_ptr<BoolExpr>> kids) {
    auto e = std::make_unique<BoolExpr>();
    e->kind = Kind::Or;
    e->children = std::move(kids);
    return e;
}

std::unique_ptr<BoolExpr> BoolExpr::negation(std::unique_ptr<BoolExpr> kid) {
    auto e = std::make_unique<BoolExpr>();
    e->kind = Kind::Not;
    e->children.push_back(std::move(kid));
    return e;
}

std::unique_ptr<BoolExpr> BoolExpr::point_atom(std::vector<Point> pts) {
    auto e = std::make_unique<BoolExpr>();
    e->kind = Kind::PointAtom;
    e->points = std::move(pts);
    return e;
}

bool BoolExpr::eval(const Point& p, double tol) const {
    switch (kind) {
        case Kind::Cmp: {
            double d = lhs->eval(p) - rhs->eval(p);
            switch (op) {
                case CmpOp::Lt: return d < 0;
                case CmpOp::Le: return d <= tol;
                case CmpOp::Eq: return std::abs(d) <= tol;
                case CmpOp::Ge: return d >= -tol;
                case CmpOp::Gt: return d > 0;
            }
            return false;
        }
        case Kind::And:
            for (const auto& c : children)
                if (!c->eval(p, tol)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : children)
                if (c->eval(p, tol)) return true;
            return false;
        case Kind::Not:
            return !children.front()->eval(p, tol);
        case Kind::PointAtom:
            for (const auto& q : points)
                if (q.dim() == p.dim() && p.dist_inf(q) <= tol) return true;
            return false;
    }
    return false;
}

int BoolExpr::max_var() const {
    switch (kind) {
        case Kind::Cmp: return std::max(lhs->max_var(), rhs->max_var());
        case Kind::PointAtom: return -1;
        default: {
            int m = -1;
            for (const auto& c : children) m = std::max(m, c->max_var());
            return m;
        }
    }
}

bool BoolExpr::equals(const BoolExpr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Cmp:
            return op == o.op && lhs->equals(*o.lhs) && rhs->equals(*o.rhs);
        case Kind::PointAtom:
            return points == o.points;
        default: {
            if (children.size() != o.children.size()) return false;
            for (std::size_t i = 0; i < children.size(); ++i)
                if (!children[i]->equals(*o.children[i])) return false;
            return true;
        }
    }
}

std::unique_ptr<BoolExpr> BoolExpr::clone() const {
    auto e = std::make_unique<BoolExpr>();
    e->kind = kind;
    e->op = op;
    if (lhs) e->lhs = lhs->clone();
    if (rhs) e->rhs = rhs->clone();
    for (const auto& c : children) e->children.push_back(c->clone());
    e->points = points;
    return e;
}

// Precedence: or 1, and 2, not 3, atoms 4.
void BoolExpr::print(std::string& out, int parent_prec) const {
    int prec = 4;
    if (kind == Kind::Or) prec = 1;
    if (kind == Kind::And) prec = 2;
    if (kind == Kind::Not) prec = 3;
    bool paren = prec < parent_prec;
    if (paren) out += "(";
    switch (kind) {
        case Kind::Cmp:
            lhs->print(out, 5);
            out += " ";
            out += cmp_token(op);
            out += " ";
            rhs->print(out, 5);
            break;
        case Kind::And:
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += " and ";
                children[i]->print(out, 3);
            }
            break;
        case Kind::Or:
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += " or ";
                children[i]->print(out, 2);
            }
            break;
        case Kind::Not:
            out += "not ";
            children.front()->print(out, 4);
            break;
        case Kind::PointAtom:
            // Point atoms are printed as trailing scene clauses, not inline;
            // this branch only appears in diagnostics.
            out += "point-set";
            break;
    }
    if (paren) out += ")";
}

std::string BoolExpr::str() const {
    std::string s;
    print(s, 0);
    return s;
}

}  // namespace hyperfell
