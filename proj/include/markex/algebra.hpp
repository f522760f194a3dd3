#ifndef MARKEX_ALGEBRA_HPP
#define MARKEX_ALGEBRA_HPP

#include <optional>
#include <variant>

#include "markex/table.hpp"

namespace markex {

enum class JoinKind { Natural, Union, Intersect, Difference };

// Unary operators on rows, tables, markers and languages.
struct Project {
    AttrSet keep;
};
struct Merge {
    AttrId into;  // kept column
    AttrId from;  // removed column
    SetOp op;
};
struct Rename {
    AttrId from;
    AttrId to;  // must be outside the context
};
using UnaryOp = std::variant<Project, Merge, Rename>;

// Checks the operator's side conditions against a context and returns the
// context of the result.
AttrSet unary_result_attrs(const AttrSet& attrs, const UnaryOp& op);

// Row-level operations. Natural join returns nullopt when the rows disagree
// on a shared attribute.
std::optional<Row> join_rows(const Row& a, const Row& b, JoinKind kind);
Row concat_rows(const Row& a, const Row& b);
Row apply_unary(const Row& r, const UnaryOp& op);

// Table-level operations (set semantics; undefined natural joins dropped).
Table join_tables(const Table& a, const Table& b, JoinKind kind);
Table table_set_op(const Table& a, const Table& b, SetOp op);
Table concat_tables(const Table& a, const Table& b);
Table apply_unary(const Table& t, const UnaryOp& op);

// Marker-level counterparts; the two contexts decide which attributes are
// private (kept as-is) versus shared (combined by the set operation).
MarkerId join_markers(MarkerId a, MarkerId b, SetOp op, const AttrSet& ga, const AttrSet& gb);
bool markers_agree_on(MarkerId a, MarkerId b, const AttrSet& shared);
MarkerId apply_unary(MarkerId m, const UnaryOp& op);

std::optional<MarkerString> join_marker_strings(const MarkerString& a, const MarkerString& b,
                                                JoinKind kind, const AttrSet& ga,
                                                const AttrSet& gb);
MarkerString apply_unary(const MarkerString& w, const UnaryOp& op);

}  // namespace markex

#endif
