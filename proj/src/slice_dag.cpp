#include "markex/slice_dag.hpp"

#include <algorithm>

#include "markex/errors.hpp"

namespace markex {

namespace {

void sort_unique(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SliceDag build_slice_dag(const Automaton& m, std::string_view doc) {
    SliceDag dag;
    dag.width = m.state_count;
    dag.layers = static_cast<std::uint32_t>(doc.size() + 1);
    dag.arcs.resize(doc.size());
    std::vector<std::uint32_t> frontier{m.initial};
    dag.sources = frontier;
    dag.node_count += frontier.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t s : frontier) {
            for (const auto& [label, ts] : m.arcs[s]) {
                if (marker_sign(label) != doc[i]) continue;
                for (StateId t : ts) {
                    dag.arcs[i].push_back({s, t, label});
                    next.push_back(t);
                }
            }
        }
        dag.arc_count += dag.arcs[i].size();
        sort_unique(next);
        dag.node_count += next.size();
        frontier = std::move(next);
    }
    for (std::uint32_t s : frontier)
        if (m.is_final(s)) dag.sinks.push_back(s);
    return dag;
}

SliceDag build_product_dag(const Automaton& a, const Automaton& b, std::string_view doc) {
    SliceDag dag;
    dag.width = a.state_count * b.state_count;
    dag.layers = static_cast<std::uint32_t>(doc.size() + 1);
    dag.arcs.resize(doc.size());
    auto encode = [&](StateId p, StateId q) { return p * b.state_count + q; };
    std::vector<std::uint32_t> frontier{encode(a.initial, b.initial)};
    dag.sources = frontier;
    dag.node_count += frontier.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t node : frontier) {
            StateId p = node / b.state_count;
            StateId q = node % b.state_count;
            auto ia = a.arcs[p].begin();
            auto ib = b.arcs[q].begin();
            while (ia != a.arcs[p].end() && ib != b.arcs[q].end()) {
                if (ia->first < ib->first) {
                    ++ia;
                } else if (ib->first < ia->first) {
                    ++ib;
                } else {
                    MarkerId label = ia->first;
                    if (marker_sign(label) == doc[i]) {
                        for (StateId ta : ia->second)
                            for (StateId tb : ib->second) {
                                std::uint32_t to = encode(ta, tb);
                                dag.arcs[i].push_back({node, to, label});
                                next.push_back(to);
                            }
                    }
                    ++ia;
                    ++ib;
                }
            }
        }
        dag.arc_count += dag.arcs[i].size();
        sort_unique(next);
        dag.node_count += next.size();
        frontier = std::move(next);
    }
    for (std::uint32_t node : frontier) {
        StateId p = node / b.state_count;
        StateId q = node % b.state_count;
        if (a.is_final(p) && b.is_final(q)) dag.sinks.push_back(node);
    }
    return dag;
}

DfaComplement::DfaComplement(const Automaton& dfa) : dfa_(&dfa) {
    if (!dfa.deterministic)
        throw ContractViolation("complement view needs a deterministic automaton");
}

StateId DfaComplement::step(StateId s, MarkerId label) const {
    if (s == sink()) return sink();
    auto it = dfa_->arcs[s].find(label);
    if (it == dfa_->arcs[s].end() || it->second.empty()) return sink();
    return it->second.front();
}

bool DfaComplement::accepting(StateId s) const {
    return s == sink() || !dfa_->is_final(s);
}

SliceDag build_contains_dag(const Automaton& a, const DfaComplement& b, std::string_view doc) {
    SliceDag dag;
    dag.width = a.state_count * b.width();
    dag.layers = static_cast<std::uint32_t>(doc.size() + 1);
    dag.arcs.resize(doc.size());
    auto encode = [&](StateId p, StateId q) { return p * b.width() + q; };
    std::vector<std::uint32_t> frontier{encode(a.initial, b.initial())};
    dag.sources = frontier;
    dag.node_count += frontier.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t node : frontier) {
            StateId p = node / b.width();
            StateId q = node % b.width();
            for (const auto& [label, ts] : a.arcs[p]) {
                if (marker_sign(label) != doc[i]) continue;
                StateId tq = b.step(q, label);
                for (StateId tp : ts) {
                    std::uint32_t to = encode(tp, tq);
                    dag.arcs[i].push_back({node, to, label});
                    next.push_back(to);
                }
            }
        }
        dag.arc_count += dag.arcs[i].size();
        sort_unique(next);
        dag.node_count += next.size();
        frontier = std::move(next);
    }
    for (std::uint32_t node : frontier) {
        StateId p = node / b.width();
        StateId q = node % b.width();
        if (a.is_final(p) && b.accepting(q)) dag.sinks.push_back(node);
    }
    return dag;
}

bool dag_has_accepting_path(const SliceDag& dag) { return !dag.sinks.empty(); }

std::optional<MarkerString> dag_witness(const SliceDag& dag) {
    if (dag.sinks.empty()) return std::nullopt;
    const std::uint32_t n = dag.layers - 1;
    // useful[i]: nodes at layer i from which a sink is reachable
    std::vector<std::vector<std::uint32_t>> useful(n + 1);
    useful[n] = dag.sinks;
    sort_unique(useful[n]);
    for (std::uint32_t i = n; i-- > 0;) {
        for (const SliceDag::Arc& arc : dag.arcs[i])
            if (std::binary_search(useful[i + 1].begin(), useful[i + 1].end(), arc.to))
                useful[i].push_back(arc.from);
        sort_unique(useful[i]);
    }
    std::uint32_t node = 0;
    bool found = false;
    for (std::uint32_t s : dag.sources)
        if (std::binary_search(useful[0].begin(), useful[0].end(), s)) {
            node = s;
            found = true;
            break;
        }
    if (!found) return std::nullopt;
    MarkerString out;
    for (std::uint32_t i = 0; i < n; ++i) {
        const SliceDag::Arc* best = nullptr;
        for (const SliceDag::Arc& arc : dag.arcs[i]) {
            if (arc.from != node) continue;
            if (!std::binary_search(useful[i + 1].begin(), useful[i + 1].end(), arc.to)) continue;
            if (!best || marker_precedes(arc.label, best->label) ||
                (arc.label == best->label && arc.to < best->to))
                best = &arc;
        }
        if (!best) return std::nullopt;  // unreachable by construction
        out.push_back(best->label);
        node = best->to;
    }
    return out;
}

}  // namespace markex
