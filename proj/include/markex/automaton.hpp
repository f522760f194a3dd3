#ifndef MARKEX_AUTOMATON_HPP
#define MARKEX_AUTOMATON_HPP

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "markex/algebra.hpp"
#include "markex/symbols.hpp"
#include "markex/table.hpp"

namespace markex {

using StateId = std::uint32_t;

// Work budgets for the constructions that can blow up.
struct Limits {
    std::uint64_t max_rows = 100000;        // slice enumeration rows
    std::uint64_t max_det_states = 1000000;  // subset construction states + arcs
};

// NFA over markers. Always epsilon-free; epsilon arcs are accepted by the
// text format and by internal constructions, but are eliminated before an
// Automaton is handed out.
struct Automaton {
    Alphabets context;
    StateId state_count = 0;
    StateId initial = 0;
    std::vector<StateId> finals;  // sorted unique
    std::vector<std::map<MarkerId, std::vector<StateId>>> arcs;  // per state, targets sorted
    bool deterministic = false;

    bool is_final(StateId s) const;
    void add_arc(StateId from, MarkerId label, StateId to);
    void refresh_flags();  // recompute `deterministic`, sort target lists
    std::size_t arc_count() const;
    std::vector<MarkerId> marker_inventory() const;  // sorted by marker order
};

// Builder that tolerates epsilon arcs; finish() eliminates them and trims
// states unreachable from the initial state.
class NfaBuilder {
public:
    explicit NfaBuilder(Alphabets context);
    StateId add_state();
    // Copies m's states and arcs; returns the offset of m's states.
    StateId import(const Automaton& m, bool keep_finals = true);
    void add_arc(StateId from, MarkerId label, StateId to);
    void add_epsilon(StateId from, StateId to);
    void mark_final(StateId s);
    Automaton finish(StateId initial);

private:
    Alphabets context_;
    std::vector<std::map<MarkerId, std::vector<StateId>>> arcs_;
    std::vector<std::vector<StateId>> epsilon_;
    std::vector<bool> final_;
};

// Core constructions.
Automaton automaton_for_marker(const AttrSet& marked, char sign, const Alphabets& context);
Automaton epsilon_language_automaton(const Alphabets& context);  // accepts only the empty string
Automaton automaton_union(const Automaton& a, const Automaton& b);
Automaton automaton_intersection(const Automaton& a, const Automaton& b);
Automaton automaton_difference(const Automaton& a, const Automaton& b, const Limits& limits = {});
Automaton automaton_complement(const Automaton& a, const Limits& limits = {});
Automaton automaton_concat(const Automaton& a, const Automaton& b);
Automaton automaton_star(const Automaton& a);
Automaton join_product(const Automaton& a, const Automaton& b, JoinKind kind);
Automaton rewrite_labels(const Automaton& a, const UnaryOp& op);

// Subset construction; the result is deterministic and complete over the
// full marker alphabet of its context.
Automaton determinize(const Automaton& a, const Limits& limits = {});
bool is_deterministic(const Automaton& a);

// Language-level decisions.
bool language_empty(const Automaton& a);
bool language_subset(const Automaton& a, const Automaton& b, const Limits& limits = {});
bool language_equivalent(const Automaton& a, const Automaton& b, const Limits& limits = {});

bool accepts(const Automaton& a, const MarkerString& w);

// All members of the document's slice of L(a), in position-major marker
// order, each exactly once. `truncated` is set when max_rows was hit.
struct SliceEnumeration {
    std::vector<MarkerString> strings;
    bool truncated = false;
};
SliceEnumeration enumerate_slice(const Automaton& a, std::string_view doc, std::uint64_t max_rows);

// The extracted table for one document; throws ResourceLimitError when the
// row budget is exceeded.
Table evaluate(const Automaton& a, std::string_view doc, const Limits& limits = {});

// Accepts every marker string with the given sign whose markers come from
// `inventory` (pass the full alphabet for the unrestricted version).
Automaton line_automaton(const Alphabets& context, std::string_view doc,
                         const std::vector<MarkerId>& inventory);

// Accepts exactly the doc-signed slice of L(a).
Automaton slice_automaton(const Automaton& a, std::string_view doc);

// Keep only states reachable from the initial state (and optionally
// co-reachable to a final state).
Automaton trim(const Automaton& a, bool also_coreachable = false);

}  // namespace markex

#endif
