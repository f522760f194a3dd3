#include "markex/algebra.hpp"

#include "markex/errors.hpp"

namespace markex {

AttrSet unary_result_attrs(const AttrSet& attrs, const UnaryOp& op) {
    if (const Project* p = std::get_if<Project>(&op)) {
        if (!p->keep.subset_of(attrs))
            throw ContractViolation("projection attributes must be within the context");
        return p->keep;
    }
    if (const Merge* m = std::get_if<Merge>(&op)) {
        if (m->into == m->from) throw ContractViolation("merge columns must differ");
        if (!attrs.contains(m->into) || !attrs.contains(m->from))
            throw ContractViolation("merge columns must be in the context");
        return attrs.without(m->from);
    }
    const Rename& r = std::get<Rename>(op);
    if (!attrs.contains(r.from)) throw ContractViolation("renamed column must be in the context");
    if (attrs.contains(r.to)) throw ContractViolation("rename target already in the context");
    return attrs.without(r.from).with(r.to);
}

std::optional<Row> join_rows(const Row& a, const Row& b, JoinKind kind) {
    if (a.length() != b.length()) throw ContractViolation("joined rows must have equal length");
    AttrSet shared = a.attrs().intersect(b.attrs());
    if (kind == JoinKind::Natural) {
        for (AttrId x : shared)
            if (a.at(x) != b.at(x)) return std::nullopt;
    }
    SetOp op;
    switch (kind) {
        case JoinKind::Natural:
        case JoinKind::Union: op = SetOp::Union; break;
        case JoinKind::Intersect: op = SetOp::Intersect; break;
        case JoinKind::Difference: op = SetOp::Difference; break;
    }
    AttrSet out_attrs = a.attrs().unite(b.attrs());
    Row out(out_attrs, a.length());
    for (AttrId x : out_attrs) {
        if (shared.contains(x)) {
            out = out.with_entry(x, position_combine(op, a.at(x), b.at(x)));
        } else if (a.attrs().contains(x)) {
            out = out.with_entry(x, a.at(x));
        } else {
            out = out.with_entry(x, b.at(x));
        }
    }
    return out;
}

Row concat_rows(const Row& a, const Row& b) {
    AttrSet out_attrs = a.attrs().unite(b.attrs());
    Row out(out_attrs, a.length() + b.length());
    for (AttrId x : out_attrs) {
        PositionSet left = a.attrs().contains(x) ? a.at(x) : PositionSet{};
        PositionSet right =
            b.attrs().contains(x) ? position_shift(b.at(x), a.length()) : PositionSet{};
        out = out.with_entry(x, position_union(left, right));
    }
    return out;
}

Row apply_unary(const Row& r, const UnaryOp& op) {
    AttrSet out_attrs = unary_result_attrs(r.attrs(), op);
    Row out(out_attrs, r.length());
    if (std::holds_alternative<Project>(op)) {
        for (AttrId x : out_attrs) out = out.with_entry(x, r.at(x));
        return out;
    }
    if (const Merge* m = std::get_if<Merge>(&op)) {
        for (AttrId x : out_attrs) {
            if (x == m->into) {
                out = out.with_entry(x, position_combine(m->op, r.at(m->into), r.at(m->from)));
            } else {
                out = out.with_entry(x, r.at(x));
            }
        }
        return out;
    }
    const Rename& rn = std::get<Rename>(op);
    for (AttrId x : out_attrs)
        out = out.with_entry(x, x == rn.to ? r.at(rn.from) : r.at(x));
    return out;
}

Table join_tables(const Table& a, const Table& b, JoinKind kind) {
    if (a.length() != b.length()) throw ContractViolation("joined tables must have equal length");
    Table out(a.attrs().unite(b.attrs()), a.length());
    for (const Row& ra : a.rows())
        for (const Row& rb : b.rows())
            if (auto r = join_rows(ra, rb, kind)) out.insert(std::move(*r));
    return out;
}

Table table_set_op(const Table& a, const Table& b, SetOp op) {
    if (a.length() != b.length())
        throw ContractViolation("set operation needs tables of equal length");
    AttrSet target = a.attrs().unite(b.attrs());
    Table pa = pad(a, target);
    Table pb = pad(b, target);
    Table out(target, a.length());
    switch (op) {
        case SetOp::Union:
            for (const Row& r : pa.rows()) out.insert(r);
            for (const Row& r : pb.rows()) out.insert(r);
            break;
        case SetOp::Intersect:
            for (const Row& r : pa.rows())
                if (pb.contains(r)) out.insert(r);
            break;
        case SetOp::Difference:
            for (const Row& r : pa.rows())
                if (!pb.contains(r)) out.insert(r);
            break;
    }
    return out;
}

Table concat_tables(const Table& a, const Table& b) {
    Table out(a.attrs().unite(b.attrs()), a.length() + b.length());
    for (const Row& ra : a.rows())
        for (const Row& rb : b.rows()) out.insert(concat_rows(ra, rb));
    return out;
}

Table apply_unary(const Table& t, const UnaryOp& op) {
    Table out(unary_result_attrs(t.attrs(), op), t.length());
    for (const Row& r : t.rows()) out.insert(apply_unary(r, op));
    return out;
}

MarkerId join_markers(MarkerId a, MarkerId b, SetOp op, const AttrSet& ga, const AttrSet& gb) {
    if (marker_sign(a) != marker_sign(b))
        throw ContractViolation("joined markers must have equal sign");
    const AttrSet& xa = marker_attrs(a);
    const AttrSet& xb = marker_attrs(b);
    AttrSet shared = ga.intersect(gb);
    AttrSet out = xa.subtract(gb).unite(xb.subtract(ga)).unite(
        xa.combine(op, xb).intersect(shared));
    return intern_marker(marker_sign(a), out);
}

bool markers_agree_on(MarkerId a, MarkerId b, const AttrSet& shared) {
    return marker_attrs(a).intersect(shared) == marker_attrs(b).intersect(shared);
}

MarkerId apply_unary(MarkerId m, const UnaryOp& op) {
    const AttrSet& x = marker_attrs(m);
    char sign = marker_sign(m);
    if (const Project* p = std::get_if<Project>(&op))
        return intern_marker(sign, x.intersect(p->keep));
    if (const Merge* mg = std::get_if<Merge>(&op)) {
        AttrSet out = x.without(mg->into).without(mg->from);
        bool has_into = x.contains(mg->into);
        bool has_from = x.contains(mg->from);
        bool keep = false;
        switch (mg->op) {
            case SetOp::Union: keep = has_into || has_from; break;
            case SetOp::Intersect: keep = has_into && has_from; break;
            case SetOp::Difference: keep = has_into && !has_from; break;
        }
        if (keep) out = out.with(mg->into);
        return intern_marker(sign, out);
    }
    const Rename& rn = std::get<Rename>(op);
    if (!x.contains(rn.from)) return m;
    return intern_marker(sign, x.without(rn.from).with(rn.to));
}

std::optional<MarkerString> join_marker_strings(const MarkerString& a, const MarkerString& b,
                                                JoinKind kind, const AttrSet& ga,
                                                const AttrSet& gb) {
    if (a.size() != b.size() || sign_of(a) != sign_of(b))
        throw ContractViolation("joined marker strings must have equal sign");
    if (kind == JoinKind::Natural) {
        AttrSet shared = ga.intersect(gb);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!markers_agree_on(a[i], b[i], shared)) return std::nullopt;
    }
    SetOp op;
    switch (kind) {
        case JoinKind::Natural:
        case JoinKind::Union: op = SetOp::Union; break;
        case JoinKind::Intersect: op = SetOp::Intersect; break;
        case JoinKind::Difference: op = SetOp::Difference; break;
    }
    MarkerString out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(join_markers(a[i], b[i], op, ga, gb));
    return out;
}

MarkerString apply_unary(const MarkerString& w, const UnaryOp& op) {
    MarkerString out;
    out.reserve(w.size());
    for (MarkerId m : w) out.push_back(apply_unary(m, op));
    return out;
}

}  // namespace markex
