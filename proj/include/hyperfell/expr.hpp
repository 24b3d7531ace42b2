#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyperfell/geometry.hpp"

namespace hyperfell {

// Polynomial expression over variables x1..xn.
class NumExpr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Neg, Pow };

    Kind kind = Kind::Const;
    double constant = 0.0;
    int var = 0;       // 0-based variable index
    int exponent = 0;  // Pow only, non-negative integer
    std::unique_ptr<NumExpr> lhs;
    std::unique_ptr<NumExpr> rhs;

    static std::unique_ptr<NumExpr> number(double v);
    static std::unique_ptr<NumExpr> variable(int index);
    static std::unique_ptr<NumExpr> binary(Kind k, std::unique_ptr<NumExpr> a, std::unique_ptr<NumExpr> b);
    static std::unique_ptr<NumExpr> negate(std::unique_ptr<NumExpr> a);
    static std::unique_ptr<NumExpr> power(std::unique_ptr<NumExpr> a, int e);

    double eval(const Point& p) const;
    int max_var() const;
    int degree() const;  // polynomial degree
    bool equals(const NumExpr& o) const;
    std::unique_ptr<NumExpr> clone() const;
    void print(std::string& out, int parent_prec) const;
};

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

bool cmp_is_strict(CmpOp op);
const char* cmp_token(CmpOp op);

// Boolean constraint tree. Non-strict comparisons carry the membership slack;
// strict ones are exact so open sets stay open.
class BoolExpr {
public:
    enum class Kind { Cmp, And, Or, Not, PointAtom };

    Kind kind = Kind::Cmp;
    CmpOp op = CmpOp::Le;
    std::unique_ptr<NumExpr> lhs;
    std::unique_ptr<NumExpr> rhs;
    std::vector<std::unique_ptr<BoolExpr>> children;  // And/Or/Not
    std::vector<Point> points;                        // PointAtom

    static std::unique_ptr<BoolExpr> cmp(std::unique_ptr<NumExpr> a, CmpOp op, std::unique_ptr<NumExpr> b);
    static std::unique_ptr<BoolExpr> conj(std::vector<std::unique_ptr<BoolExpr>> kids);
    static std::unique_ptr<BoolExpr> disj(std::vector<std::unique_ptr<BoolExpr>> kids);
    static std::unique_ptr<BoolExpr> negation(std::unique_ptr<BoolExpr> kid);
    static std::unique_ptr<BoolExpr> point_atom(std::vector<Point> pts);

    bool eval(const Point& p, double tol) const;
    int max_var() const;
    bool equals(const BoolExpr& o) const;
    std::unique_ptr<BoolExpr> clone() const;
    void print(std::string& out, int parent_prec) const;
    std::string str() const;
};

}  // namespace hyperfell
