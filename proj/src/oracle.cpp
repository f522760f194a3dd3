#include "markex/oracle.hpp"

#include "markex/errors.hpp"

namespace markex {

Oracle Oracle::of(const Automaton& m) {
    return Oracle([m](const MarkerString& w) { return accepts(m, w); }, m.context);
}

Oracle Oracle::of(const Grammar& g) {
    return Oracle([g](const MarkerString& w) { return cyk_accepts(g, w); }, g.context);
}

Oracle Oracle::of(const Extractor& e) {
    return e.is_regular() ? of(e.automaton()) : of(e.grammar());
}

Universe::Universe(std::uint32_t length, AttrSet gamma)
    : length_(length), gamma_(std::move(gamma)) {
    std::uint64_t bits = static_cast<std::uint64_t>(length_) * gamma_.size();
    if (bits > kUniverseBitGuard)
        throw ResourceLimitError("tuple universe exceeds the hard guard", bits);
    bits_ = static_cast<std::uint32_t>(bits);
}

Row Universe::at(std::uint64_t index) const {
    std::vector<PositionSet> entries(gamma_.size());
    for (std::size_t a = 0; a < gamma_.size(); ++a)
        for (std::uint32_t p = 0; p < length_; ++p)
            if (index & (std::uint64_t{1} << (a * length_ + p)))
                entries[a].push_back(p + 1);
    return Row(gamma_, length_, std::move(entries));
}

Table oracle_eval(const Oracle& e, std::string_view doc) {
    Universe universe(static_cast<std::uint32_t>(doc.size()), e.context().gamma);
    Table out(e.context().gamma, static_cast<std::uint32_t>(doc.size()));
    for (Row row : universe)
        if (e.member(encode(doc, row))) out.insert(std::move(row));
    return out;
}

Table oracle_concat(const Oracle& a, const Oracle& b, std::string_view doc) {
    AttrSet gamma = a.context().gamma.unite(b.context().gamma);
    Table out(gamma, static_cast<std::uint32_t>(doc.size()));
    for (std::size_t cut = 0; cut <= doc.size(); ++cut) {
        Table left = oracle_eval(a, doc.substr(0, cut));
        Table right = oracle_eval(b, doc.substr(cut));
        Table piece = concat_tables(left, right);
        out = table_set_op(out, piece, SetOp::Union);
    }
    return out;
}

Table oracle_star(const Oracle& a, std::string_view doc) {
    const std::size_t n = doc.size();
    // suffix[i]: star table of the document suffix starting at position i;
    // a repetition never needs empty parts since they contribute identities.
    std::vector<Table> suffix(n + 1, Table(a.context().gamma, 0));
    suffix[n] = Table::of(a.context().gamma, 0, {Row(a.context().gamma, 0)});
    for (std::size_t i = n; i-- > 0;) {
        Table acc(a.context().gamma, static_cast<std::uint32_t>(n - i));
        for (std::size_t j = i + 1; j <= n; ++j) {
            Table part = oracle_eval(a, doc.substr(i, j - i));
            acc = table_set_op(acc, concat_tables(part, suffix[j]), SetOp::Union);
        }
        suffix[i] = std::move(acc);
    }
    return suffix[0];
}

Table oracle_complement(const Oracle& a, std::string_view doc) {
    Universe universe(static_cast<std::uint32_t>(doc.size()), a.context().gamma);
    Table out(a.context().gamma, static_cast<std::uint32_t>(doc.size()));
    for (Row row : universe)
        if (!a.member(encode(doc, row))) out.insert(std::move(row));
    return out;
}

Table oracle_table_for(AlgebraOp op, const std::vector<Oracle>& operands, std::string_view doc,
                       const UnaryOp* unary) {
    auto need = [&](std::size_t n) {
        if (operands.size() != n) throw ContractViolation("wrong operand count for oracle check");
    };
    switch (op) {
        case AlgebraOp::Union:
            need(2);
            return table_set_op(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                                SetOp::Union);
        case AlgebraOp::Intersect:
            need(2);
            return table_set_op(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                                SetOp::Intersect);
        case AlgebraOp::Difference:
            need(2);
            return table_set_op(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                                SetOp::Difference);
        case AlgebraOp::Complement:
            need(1);
            return oracle_complement(operands[0], doc);
        case AlgebraOp::Concat:
            need(2);
            return oracle_concat(operands[0], operands[1], doc);
        case AlgebraOp::Star:
            need(1);
            return oracle_star(operands[0], doc);
        case AlgebraOp::JoinNatural:
            need(2);
            return join_tables(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                               JoinKind::Natural);
        case AlgebraOp::JoinUnion:
            need(2);
            return join_tables(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                               JoinKind::Union);
        case AlgebraOp::JoinIntersect:
            need(2);
            return join_tables(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                               JoinKind::Intersect);
        case AlgebraOp::JoinDifference:
            need(2);
            return join_tables(oracle_eval(operands[0], doc), oracle_eval(operands[1], doc),
                               JoinKind::Difference);
        case AlgebraOp::Project:
        case AlgebraOp::Merge:
        case AlgebraOp::Rename:
            need(1);
            if (!unary) throw ContractViolation("unary oracle check needs the operator");
            return apply_unary(oracle_eval(operands[0], doc), *unary);
    }
    throw ContractViolation("bad AlgebraOp");
}

bool oracle_op_check(const Table& engine_result, AlgebraOp op,
                     const std::vector<Oracle>& operands, std::string_view doc,
                     const UnaryOp* unary) {
    return engine_result == oracle_table_for(op, operands, doc, unary);
}

}  // namespace markex
