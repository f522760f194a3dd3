#ifndef MARKEX_EXPR_HPP
#define MARKEX_EXPR_HPP

#include <memory>
#include <optional>
#include <vector>

#include "markex/automaton.hpp"

namespace markex {

// Algebraic expression over atomic extractors. Atoms denote the extractor
// of the one-marker language {X_b}; operators mirror the table algebra.
struct ExtractorExpr {
    enum class Kind {
        Atom,
        Union,
        Concat,
        Star,
        Intersect,
        Difference,
        Complement,
        Join,
        Unary
    };

    Kind kind = Kind::Atom;
    MarkerId atom = 0;
    JoinKind join = JoinKind::Union;
    std::optional<UnaryOp> unary;
    std::vector<ExtractorExpr> children;

    static ExtractorExpr make_atom(MarkerId m);
    static ExtractorExpr binary(Kind kind, ExtractorExpr lhs, ExtractorExpr rhs);
    static ExtractorExpr joined(JoinKind kind, ExtractorExpr lhs, ExtractorExpr rhs);
    static ExtractorExpr star(ExtractorExpr inner);
    static ExtractorExpr complement(ExtractorExpr inner);
    static ExtractorExpr unary_op(UnaryOp op, ExtractorExpr inner);
};

// Compiles bottom-up; atoms are interpreted over the given context, and each
// operator's attribute side conditions are checked against the contexts the
// subexpressions produce.
Automaton compile(const ExtractorExpr& expr, const Alphabets& context,
                  const Limits& limits = {});

}  // namespace markex

#endif
