#ifndef MARKEX_TEXT_HPP
#define MARKEX_TEXT_HPP

#include <string>
#include <string_view>

#include "markex/expr.hpp"
#include "markex/oracle.hpp"
#include "markex/problems.hpp"
#include "markex/reductions.hpp"

namespace markex {

// Marker syntax: `{x,y}:a` with attributes comma-separated in name order;
// the empty attribute set prints as `{}`. Marker strings are
// whitespace-separated markers.
std::string format_marker(MarkerId m);
std::string format_marker_string(const MarkerString& w);
MarkerId parse_marker(std::string_view text);
MarkerString parse_marker_string(std::string_view text);

// Automaton files: `sigma`/`gamma` context lines, `states`, `initial`,
// `final` and one `arc FROM TO LABEL` line per transition (label `<eps>`
// allowed on input; eliminated on load).
std::string format_automaton(const Automaton& a);
Automaton parse_automaton(std::string_view text);

// Grammar files: optional context lines and `start`, then one rule line per
// head: `A -> B C | {x}:a | <eps>`.
std::string format_grammar(const Grammar& g);
Grammar parse_grammar(std::string_view text);

// Expression files: optional context lines, remaining lines joined into one
// expression. Infix syntax: `|` union, `\` difference, `&` intersection,
// juxtaposition concatenation, postfix `*`, prefix `!` complement,
// `join[u|i|d|n]` joins, `pi{..}(e)`, `merge(x,y,u|i|d)(e)`, `rho(x->y)(e)`.
struct ParsedExpression {
    ExtractorExpr expr;
    Alphabets context;
};
ParsedExpression parse_expression_file(std::string_view text);

// Either representation, detected by content (rule arrow => grammar).
Extractor parse_extractor(std::string_view text);

// Row-array and CSV table serializations; rows are emitted in the order
// given (tables themselves are canonically ordered).
std::string format_table_json(const Table& t);
std::string format_rows_json(const AttrSet& attrs, std::uint32_t length,
                             const std::vector<Row>& rows);
std::string format_table_csv(const Table& t);
std::string format_rows_csv(const AttrSet& attrs, const std::vector<Row>& rows);

// One row as a JSON object {"attr": [positions...]}; absent attributes are
// empty. The context is the union of `base` and the mentioned attributes.
Row parse_row_json(std::string_view text, const AttrSet& base, std::uint32_t length);

std::string format_answer_json(const Answer& a);

// DIMACS-like CNF: `p cnf VARS CLAUSES` then clauses of exactly three
// literals, each line 0-terminated; `c` lines are comments.
CnfFormula parse_cnf(std::string_view text);

// Word-pair instances: first data line is the bound, then `LEFT RIGHT` per
// line.
PcpInstance parse_pcp(std::string_view text);

}  // namespace markex

#endif
