#include "markex/expr.hpp"

#include "markex/errors.hpp"

namespace markex {

ExtractorExpr ExtractorExpr::make_atom(MarkerId m) {
    ExtractorExpr e;
    e.kind = Kind::Atom;
    e.atom = m;
    return e;
}

ExtractorExpr ExtractorExpr::binary(Kind kind, ExtractorExpr lhs, ExtractorExpr rhs) {
    ExtractorExpr e;
    e.kind = kind;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

ExtractorExpr ExtractorExpr::joined(JoinKind kind, ExtractorExpr lhs, ExtractorExpr rhs) {
    ExtractorExpr e = binary(Kind::Join, std::move(lhs), std::move(rhs));
    e.join = kind;
    return e;
}

ExtractorExpr ExtractorExpr::star(ExtractorExpr inner) {
    ExtractorExpr e;
    e.kind = Kind::Star;
    e.children.push_back(std::move(inner));
    return e;
}

ExtractorExpr ExtractorExpr::complement(ExtractorExpr inner) {
    ExtractorExpr e;
    e.kind = Kind::Complement;
    e.children.push_back(std::move(inner));
    return e;
}

ExtractorExpr ExtractorExpr::unary_op(UnaryOp op, ExtractorExpr inner) {
    ExtractorExpr e;
    e.kind = Kind::Unary;
    e.unary = std::move(op);
    e.children.push_back(std::move(inner));
    return e;
}

Automaton compile(const ExtractorExpr& expr, const Alphabets& context, const Limits& limits) {
    using Kind = ExtractorExpr::Kind;
    switch (expr.kind) {
        case Kind::Atom:
            return automaton_for_marker(marker_attrs(expr.atom), marker_sign(expr.atom), context);
        case Kind::Union:
            return automaton_union(compile(expr.children[0], context, limits),
                                   compile(expr.children[1], context, limits));
        case Kind::Concat:
            return automaton_concat(compile(expr.children[0], context, limits),
                                    compile(expr.children[1], context, limits));
        case Kind::Star:
            return automaton_star(compile(expr.children[0], context, limits));
        case Kind::Intersect:
            return automaton_intersection(compile(expr.children[0], context, limits),
                                          compile(expr.children[1], context, limits));
        case Kind::Difference:
            return automaton_difference(compile(expr.children[0], context, limits),
                                        compile(expr.children[1], context, limits), limits);
        case Kind::Complement:
            return automaton_complement(compile(expr.children[0], context, limits), limits);
        case Kind::Join:
            return join_product(compile(expr.children[0], context, limits),
                                compile(expr.children[1], context, limits), expr.join);
        case Kind::Unary:
            return rewrite_labels(compile(expr.children[0], context, limits), *expr.unary);
    }
    throw ContractViolation("malformed expression node");
}

}  // namespace markex
