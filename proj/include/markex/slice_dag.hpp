#ifndef MARKEX_SLICE_DAG_HPP
#define MARKEX_SLICE_DAG_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "markex/automaton.hpp"

namespace markex {

// Layered graph of automaton states per document position: nodes are
// (state, layer), arcs step one position forward and carry the marker they
// read. Only forward-reachable nodes are materialized.
struct SliceDag {
    struct Arc {
        std::uint32_t from;
        std::uint32_t to;
        MarkerId label;
    };

    std::uint32_t width = 0;   // size of the encoded per-layer state space
    std::uint32_t layers = 0;  // document length + 1
    std::vector<std::vector<Arc>> arcs;    // arcs[i]: layer i -> i + 1
    std::vector<std::uint32_t> sources;    // reachable start nodes at layer 0
    std::vector<std::uint32_t> sinks;      // reachable accepting nodes at the last layer
    std::uint64_t node_count = 0;
    std::uint64_t arc_count = 0;
};

// Single-automaton version: arcs on every marker whose sign matches the
// document position.
SliceDag build_slice_dag(const Automaton& m, std::string_view doc);

// Product version for disjointness: both automata must step on the very
// same marker; nodes encode state pairs.
SliceDag build_product_dag(const Automaton& a, const Automaton& b, std::string_view doc);

// Lazily completed complement of a deterministic automaton: absent
// transitions lead to an implicit accepting sink.
class DfaComplement {
public:
    explicit DfaComplement(const Automaton& dfa);

    StateId sink() const { return dfa_->state_count; }
    StateId width() const { return dfa_->state_count + 1; }
    StateId initial() const { return dfa_->initial; }
    StateId step(StateId s, MarkerId label) const;
    bool accepting(StateId s) const;

private:
    const Automaton* dfa_;
};

// Product of an NFA with a complemented DFA; an accepting path spells a
// marker string accepted by the NFA and rejected by the DFA.
SliceDag build_contains_dag(const Automaton& a, const DfaComplement& b, std::string_view doc);

bool dag_has_accepting_path(const SliceDag& dag);

// One accepting path's marker string (deterministic choice), if any.
std::optional<MarkerString> dag_witness(const SliceDag& dag);

}  // namespace markex

#endif
