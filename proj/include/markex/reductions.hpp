#ifndef MARKEX_REDUCTIONS_HPP
#define MARKEX_REDUCTIONS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "markex/grammar.hpp"

namespace markex {

// 3-CNF formula; literals are 1-based variable indices, negative = negated.
struct CnfFormula {
    std::uint32_t variable_count = 0;
    std::vector<std::array<int, 3>> clauses;
};

// Word problem instance: pick at most `bound` indices i_1..i_q (repetition
// allowed, q >= 1) so that the left words concatenate to the same string as
// the right words.
struct PcpInstance {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::uint32_t bound = 1;
};

// Containment fixture from a formula: `assignments` (a DFA) extracts every
// truth assignment as a row over {t, f}; `falsifying` extracts those rows
// falsifying some clause. On the fixed document, the first table is
// contained in the second iff the formula is unsatisfiable.
struct SatReduction {
    Automaton assignments;
    Automaton falsifying;
    std::string doc;
};
SatReduction sat_to_containment(const CnfFormula& formula);

// Disjointness fixture from a word-matching instance: the two grammars
// extract index-sequence/word encodings of left and right concatenations;
// their tables on the fixed document intersect iff the instance is solvable.
struct PcpReduction {
    Grammar left;
    Grammar right;
    std::string doc;
};
PcpReduction pcp_to_disjointness(const PcpInstance& instance);

}  // namespace markex

#endif
