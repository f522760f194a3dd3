#include "markex/problems.hpp"

#include <chrono>

#include "markex/errors.hpp"

namespace markex {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

MarkerString erased_markers(std::string_view doc) {
    MarkerString w;
    w.reserve(doc.size());
    for (char c : doc) w.push_back(intern_marker(c, AttrSet()));
    return w;
}

// Slice automaton of the lazily completed complement of a DFA, restricted to
// the given marker inventory; accepts exactly the doc-signed marker strings
// over the inventory that the DFA rejects.
Automaton complement_slice_automaton(const Automaton& dfa, std::string_view doc,
                                     const std::vector<MarkerId>& inventory) {
    DfaComplement view(dfa);
    const std::size_t n = doc.size();
    const StateId width = view.width();
    Automaton out;
    out.context = dfa.context;
    out.state_count = static_cast<StateId>(width * (n + 1));
    out.arcs.resize(out.state_count);
    auto id = [&](StateId s, std::size_t layer) {
        return static_cast<StateId>(layer * width + s);
    };
    out.initial = id(view.initial(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (StateId s = 0; s < width; ++s)
            for (MarkerId m : inventory) {
                if (marker_sign(m) != doc[i]) continue;
                out.add_arc(id(s, i), m, id(view.step(s, m), i + 1));
            }
    for (StateId s = 0; s < width; ++s)
        if (view.accepting(s)) out.finals.push_back(id(s, n));
    out.refresh_flags();
    return trim(out, /*also_coreachable=*/true);
}

Answer regular_vs_cfg_disjoint(const Grammar& g, const Automaton& m, std::string_view doc) {
    Answer ans;
    Automaton sliced = slice_automaton(m, doc);
    Grammar both = intersect_with_automaton(g, sliced);
    ans.cost.nodes = both.nonterminal_count();
    ans.cost.arcs = both.rules.size();
    if (grammar_language_empty(both)) {
        ans.verdict = Verdict::True;
    } else {
        ans.verdict = Verdict::False;
        ans.witness = shortest_member(both);
    }
    return ans;
}

Answer enumerate_and_probe(const Extractor& enumerated, const Extractor& probed,
                           std::string_view doc, const Limits& limits, bool want_member) {
    // want_member: intersecting when a row is in both (disjointness probing);
    // otherwise a row missing from `probed` refutes containment.
    Answer ans;
    SliceEnumeration rows = enumerate_slice(enumerated, doc, limits.max_rows);
    ans.cost.nodes = rows.strings.size();
    if (rows.truncated) {
        ans.verdict = Verdict::Unknown;
        ans.note = "row budget exceeded while enumerating a slice";
        return ans;
    }
    for (const MarkerString& w : rows.strings) {
        ++ans.cost.arcs;
        bool in = probed.is_regular() ? accepts(probed.automaton(), w)
                                      : cyk_accepts(probed.grammar(), w);
        if (in == want_member) {
            ans.verdict = Verdict::False;
            ans.witness = w;
            return ans;
        }
    }
    ans.verdict = Verdict::True;
    return ans;
}

}  // namespace

const Alphabets& Extractor::context() const {
    return is_regular() ? automaton().context : grammar().context;
}

std::size_t Extractor::size() const {
    if (is_regular()) return automaton().state_count + automaton().arc_count();
    return grammar().size();
}

bool tuple_member(const Extractor& e, std::string_view doc, const Row& row) {
    if (row.length() != doc.size())
        throw ContractViolation("row length does not match document length");
    MarkerString w = encode(doc, row);
    return e.is_regular() ? accepts(e.automaton(), w) : cyk_accepts(e.grammar(), w);
}

SliceEnumeration enumerate_slice(const Extractor& e, std::string_view doc,
                                 std::uint64_t max_rows) {
    return e.is_regular() ? enumerate_slice(e.automaton(), doc, max_rows)
                          : enumerate_slice(e.grammar(), doc, max_rows);
}

Table evaluate(const Extractor& e, std::string_view doc, const Limits& limits) {
    return e.is_regular() ? evaluate(e.automaton(), doc, limits)
                          : evaluate(e.grammar(), doc, limits);
}

Answer table_empty(const Extractor& e, std::string_view doc) {
    auto start = Clock::now();
    Answer ans;
    ans.problem = "empty";
    if (e.is_regular()) {
        SliceDag dag = build_slice_dag(e.automaton(), doc);
        ans.cost.nodes = dag.node_count;
        ans.cost.arcs = dag.arc_count;
        if (dag_has_accepting_path(dag)) {
            ans.verdict = Verdict::False;
            ans.witness = dag_witness(dag);
        } else {
            ans.verdict = Verdict::True;
        }
    } else {
        Grammar erased = erase_to_sign(e.grammar());
        CykStats stats = cyk_run(cnf_of(erased), erased_markers(doc));
        ans.cost.nodes = stats.nodes;
        ans.cost.arcs = stats.steps;
        ans.verdict = stats.accepted ? Verdict::False : Verdict::True;
    }
    ans.cost.millis = elapsed_ms(start);
    return ans;
}

Answer table_disjoint(const Extractor& a, const Extractor& b, std::string_view doc,
                      const Limits& limits) {
    auto start = Clock::now();
    Answer ans;
    if (a.is_regular() && b.is_regular()) {
        SliceDag dag = build_product_dag(a.automaton(), b.automaton(), doc);
        ans.cost.nodes = dag.node_count;
        ans.cost.arcs = dag.arc_count;
        if (dag_has_accepting_path(dag)) {
            ans.verdict = Verdict::False;
            ans.witness = dag_witness(dag);
        } else {
            ans.verdict = Verdict::True;
        }
    } else if (a.is_regular() != b.is_regular()) {
        const Grammar& g = a.is_regular() ? b.grammar() : a.grammar();
        const Automaton& m = a.is_regular() ? a.automaton() : b.automaton();
        ans = regular_vs_cfg_disjoint(g, m, doc);
    } else {
        const Extractor& small = a.size() <= b.size() ? a : b;
        const Extractor& large = a.size() <= b.size() ? b : a;
        ans = enumerate_and_probe(small, large, doc, limits, /*want_member=*/true);
    }
    ans.problem = "disjoint";
    ans.cost.millis = elapsed_ms(start);
    return ans;
}

Answer table_contains(const Extractor& a, const Extractor& b, std::string_view doc,
                      const Limits& limits) {
    auto start = Clock::now();
    Answer ans;
    ans.problem = "contains";
    if (b.is_regular()) {
        std::optional<Automaton> det_storage;
        const Automaton* det = &b.automaton();
        if (!det->deterministic) {
            try {
                det_storage = determinize(*det, limits);
            } catch (const ResourceLimitError& e) {
                ans.verdict = Verdict::Unknown;
                ans.note = e.what();
                ans.cost.millis = elapsed_ms(start);
                return ans;
            }
            det = &*det_storage;
        }
        if (a.is_regular()) {
            DfaComplement view(*det);
            SliceDag dag = build_contains_dag(a.automaton(), view, doc);
            ans.cost.nodes = dag.node_count;
            ans.cost.arcs = dag.arc_count;
            if (dag_has_accepting_path(dag)) {
                ans.verdict = Verdict::False;
                ans.witness = dag_witness(dag);
            } else {
                ans.verdict = Verdict::True;
            }
        } else {
            const Grammar& g = a.grammar();
            Automaton rejector = complement_slice_automaton(*det, doc, g.marker_inventory());
            Grammar escaped = intersect_with_automaton(g, rejector);
            ans.cost.nodes = escaped.nonterminal_count();
            ans.cost.arcs = escaped.rules.size();
            if (grammar_language_empty(escaped)) {
                ans.verdict = Verdict::True;
            } else {
                ans.verdict = Verdict::False;
                ans.witness = shortest_member(escaped);
            }
        }
    } else {
        ans = enumerate_and_probe(a, b, doc, limits, /*want_member=*/false);
        ans.problem = "contains";
    }
    ans.cost.millis = elapsed_ms(start);
    return ans;
}

Answer table_equivalent(const Extractor& a, const Extractor& b, std::string_view doc,
                        const Limits& limits) {
    auto start = Clock::now();
    Answer ans;
    ans.problem = "equiv";
    Answer left = table_contains(a, b, doc, limits);
    ans.cost.nodes += left.cost.nodes;
    ans.cost.arcs += left.cost.arcs;
    if (left.verdict == Verdict::False) {
        ans.verdict = Verdict::False;
        ans.witness = left.witness;
        ans.note = "left table not contained in right";
        ans.cost.millis = elapsed_ms(start);
        return ans;
    }
    Answer right = table_contains(b, a, doc, limits);
    ans.cost.nodes += right.cost.nodes;
    ans.cost.arcs += right.cost.arcs;
    if (right.verdict == Verdict::False) {
        ans.verdict = Verdict::False;
        ans.witness = right.witness;
        ans.note = "right table not contained in left";
    } else if (left.verdict == Verdict::Unknown || right.verdict == Verdict::Unknown) {
        ans.verdict = Verdict::Unknown;
        ans.note = left.verdict == Verdict::Unknown ? left.note : right.note;
    } else {
        ans.verdict = Verdict::True;
    }
    ans.cost.millis = elapsed_ms(start);
    return ans;
}

}  // namespace markex
