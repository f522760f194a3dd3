#include "markex/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "markex/errors.hpp"

namespace markex {

bool Automaton::is_final(StateId s) const {
    return std::binary_search(finals.begin(), finals.end(), s);
}

void Automaton::add_arc(StateId from, MarkerId label, StateId to) {
    if (from >= state_count || to >= state_count)
        throw ContractViolation("arc endpoint out of range");
    auto& ts = arcs[from][label];
    auto it = std::lower_bound(ts.begin(), ts.end(), to);
    if (it == ts.end() || *it != to) ts.insert(it, to);
}

void Automaton::refresh_flags() {
    std::sort(finals.begin(), finals.end());
    finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
    deterministic = true;
    for (auto& per_state : arcs) {
        for (auto& [m, ts] : per_state) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            if (ts.size() > 1) deterministic = false;
        }
    }
}

std::size_t Automaton::arc_count() const {
    std::size_t n = 0;
    for (const auto& per_state : arcs)
        for (const auto& [m, ts] : per_state) n += ts.size();
    return n;
}

std::vector<MarkerId> Automaton::marker_inventory() const {
    std::set<MarkerId> seen;
    for (const auto& per_state : arcs)
        for (const auto& [m, ts] : per_state) seen.insert(m);
    std::vector<MarkerId> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), marker_precedes);
    return out;
}

NfaBuilder::NfaBuilder(Alphabets context) : context_(std::move(context)) {}

StateId NfaBuilder::add_state() {
    arcs_.emplace_back();
    epsilon_.emplace_back();
    final_.push_back(false);
    return static_cast<StateId>(arcs_.size() - 1);
}

StateId NfaBuilder::import(const Automaton& m, bool keep_finals) {
    StateId offset = static_cast<StateId>(arcs_.size());
    for (StateId s = 0; s < m.state_count; ++s) add_state();
    for (StateId s = 0; s < m.state_count; ++s)
        for (const auto& [label, ts] : m.arcs[s])
            for (StateId t : ts) add_arc(offset + s, label, offset + t);
    if (keep_finals)
        for (StateId f : m.finals) mark_final(offset + f);
    return offset;
}

void NfaBuilder::add_arc(StateId from, MarkerId label, StateId to) {
    arcs_[from][label].push_back(to);
}

void NfaBuilder::add_epsilon(StateId from, StateId to) { epsilon_[from].push_back(to); }

void NfaBuilder::mark_final(StateId s) { final_[s] = true; }

Automaton NfaBuilder::finish(StateId initial) {
    const StateId n = static_cast<StateId>(arcs_.size());
    // epsilon closures by DFS
    std::vector<std::vector<StateId>> closure(n);
    for (StateId s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::vector<StateId> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            StateId p = stack.back();
            stack.pop_back();
            closure[s].push_back(p);
            for (StateId q : epsilon_[p])
                if (!seen[q]) {
                    seen[q] = true;
                    stack.push_back(q);
                }
        }
    }
    Automaton out;
    out.context = context_;
    out.state_count = n;
    out.initial = initial;
    out.arcs.resize(n);
    for (StateId s = 0; s < n; ++s) {
        bool fin = false;
        for (StateId r : closure[s]) {
            if (final_[r]) fin = true;
            for (const auto& [label, ts] : arcs_[r])
                for (StateId t : ts) out.arcs[s][label].push_back(t);
        }
        if (fin) out.finals.push_back(s);
    }
    out.refresh_flags();
    return trim(out);
}

Automaton trim(const Automaton& a, bool also_coreachable) {
    const StateId n = a.state_count;
    std::vector<bool> keep(n, false);
    std::vector<StateId> stack{a.initial};
    keep[a.initial] = true;
    while (!stack.empty()) {
        StateId p = stack.back();
        stack.pop_back();
        for (const auto& [label, ts] : a.arcs[p])
            for (StateId t : ts)
                if (!keep[t]) {
                    keep[t] = true;
                    stack.push_back(t);
                }
    }
    if (also_coreachable) {
        std::vector<std::vector<StateId>> rev(n);
        for (StateId p = 0; p < n; ++p)
            for (const auto& [label, ts] : a.arcs[p])
                for (StateId t : ts) rev[t].push_back(p);
        std::vector<bool> co(n, false);
        std::vector<StateId> st;
        for (StateId f : a.finals)
            if (keep[f] && !co[f]) {
                co[f] = true;
                st.push_back(f);
            }
        while (!st.empty()) {
            StateId p = st.back();
            st.pop_back();
            for (StateId q : rev[p])
                if (keep[q] && !co[q]) {
                    co[q] = true;
                    st.push_back(q);
                }
        }
        for (StateId s = 0; s < n; ++s) keep[s] = keep[s] && (co[s] || s == a.initial);
    }
    std::vector<StateId> remap(n, 0);
    StateId count = 0;
    for (StateId s = 0; s < n; ++s)
        if (keep[s]) remap[s] = count++;
    Automaton out;
    out.context = a.context;
    out.state_count = count;
    out.initial = remap[a.initial];
    out.arcs.resize(count);
    for (StateId s = 0; s < n; ++s) {
        if (!keep[s]) continue;
        for (const auto& [label, ts] : a.arcs[s])
            for (StateId t : ts)
                if (keep[t]) out.add_arc(remap[s], label, remap[t]);
    }
    for (StateId f : a.finals)
        if (keep[f]) out.finals.push_back(remap[f]);
    out.refresh_flags();
    return out;
}

Automaton automaton_for_marker(const AttrSet& marked, char sign, const Alphabets& context) {
    if (!context.has_sign(sign))
        throw ContractViolation("marker sign outside the terminal alphabet");
    if (!marked.subset_of(context.gamma))
        throw ContractViolation("marker attributes outside the attribute alphabet");
    Automaton out;
    out.context = context;
    out.state_count = 2;
    out.initial = 0;
    out.finals = {1};
    out.arcs.resize(2);
    out.add_arc(0, intern_marker(sign, marked), 1);
    out.refresh_flags();
    return out;
}

Automaton epsilon_language_automaton(const Alphabets& context) {
    Automaton out;
    out.context = context;
    out.state_count = 1;
    out.initial = 0;
    out.finals = {0};
    out.arcs.resize(1);
    out.refresh_flags();
    return out;
}

namespace {

void require_same_sigma(const Automaton& a, const Automaton& b) {
    if (a.context.sigma != b.context.sigma)
        throw ContractViolation("operands must share the terminal alphabet");
}

// Product over pairs of arcs with equal sign; `combine` decides whether a
// pair of co-signed arcs produces an arc and under which label.
template <typename Combine>
Automaton signed_product(const Automaton& a, const Automaton& b, Alphabets context,
                         Combine&& combine) {
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId p, StateId q) {
        std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        StateId id = static_cast<StateId>(pairs.size());
        ids.emplace(key, id);
        pairs.emplace_back(p, q);
        return id;
    };
    Automaton out;
    out.context = std::move(context);
    StateId start = intern(a.initial, b.initial);
    out.initial = start;
    std::deque<StateId> queue{start};
    std::vector<std::map<MarkerId, std::vector<StateId>>> arcs;
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        if (arcs.size() <= id) arcs.resize(pairs.size());
        auto [p, q] = pairs[id];
        for (const auto& [ma, tsa] : a.arcs[p]) {
            for (const auto& [mb, tsb] : b.arcs[q]) {
                if (marker_sign(ma) != marker_sign(mb)) continue;
                MarkerId label;
                if (!combine(ma, mb, label)) continue;
                for (StateId ta : tsa)
                    for (StateId tb : tsb) {
                        std::uint64_t key = (static_cast<std::uint64_t>(ta) << 32) | tb;
                        bool fresh = !ids.count(key);
                        StateId tid = intern(ta, tb);
                        if (fresh) queue.push_back(tid);
                        if (arcs.size() < pairs.size()) arcs.resize(pairs.size());
                        arcs[id][label].push_back(tid);
                    }
            }
        }
    }
    out.state_count = static_cast<StateId>(pairs.size());
    arcs.resize(pairs.size());
    out.arcs = std::move(arcs);
    for (StateId id = 0; id < out.state_count; ++id)
        if (a.is_final(pairs[id].first) && b.is_final(pairs[id].second)) out.finals.push_back(id);
    out.refresh_flags();
    return out;
}

}  // namespace

Automaton automaton_union(const Automaton& a, const Automaton& b) {
    require_same_sigma(a, b);
    NfaBuilder builder(a.context.unite(b.context));
    StateId start = builder.add_state();
    StateId offa = builder.import(a);
    StateId offb = builder.import(b);
    builder.add_epsilon(start, offa + a.initial);
    builder.add_epsilon(start, offb + b.initial);
    return builder.finish(start);
}

Automaton automaton_intersection(const Automaton& a, const Automaton& b) {
    require_same_sigma(a, b);
    return signed_product(a, b, a.context.unite(b.context),
                          [](MarkerId ma, MarkerId mb, MarkerId& label) {
                              if (ma != mb) return false;
                              label = ma;
                              return true;
                          });
}

Automaton automaton_complement(const Automaton& a, const Limits& limits) {
    Automaton det = determinize(a, limits);
    std::vector<StateId> flipped;
    for (StateId s = 0; s < det.state_count; ++s)
        if (!det.is_final(s)) flipped.push_back(s);
    det.finals = std::move(flipped);
    det.refresh_flags();
    return det;
}

Automaton automaton_difference(const Automaton& a, const Automaton& b, const Limits& limits) {
    require_same_sigma(a, b);
    Automaton widened = b;
    widened.context = a.context.unite(b.context);
    return automaton_intersection(a, automaton_complement(widened, limits));
}

Automaton automaton_concat(const Automaton& a, const Automaton& b) {
    NfaBuilder builder(a.context.unite(b.context));
    StateId offa = builder.import(a, /*keep_finals=*/false);
    StateId offb = builder.import(b);
    for (StateId f : a.finals) builder.add_epsilon(offa + f, offb + b.initial);
    return builder.finish(offa + a.initial);
}

Automaton automaton_star(const Automaton& a) {
    NfaBuilder builder(a.context);
    StateId hub = builder.add_state();
    StateId off = builder.import(a);
    builder.add_epsilon(hub, off + a.initial);
    for (StateId f : a.finals) builder.add_epsilon(off + f, hub);
    builder.mark_final(hub);
    return builder.finish(hub);
}

Automaton join_product(const Automaton& a, const Automaton& b, JoinKind kind) {
    require_same_sigma(a, b);
    const AttrSet& ga = a.context.gamma;
    const AttrSet& gb = b.context.gamma;
    AttrSet shared = ga.intersect(gb);
    SetOp op;
    switch (kind) {
        case JoinKind::Natural:
        case JoinKind::Union: op = SetOp::Union; break;
        case JoinKind::Intersect: op = SetOp::Intersect; break;
        case JoinKind::Difference: op = SetOp::Difference; break;
    }
    bool natural = kind == JoinKind::Natural;
    return signed_product(a, b, a.context.unite(b.context),
                          [&, op, natural](MarkerId ma, MarkerId mb, MarkerId& label) {
                              if (natural && !markers_agree_on(ma, mb, shared)) return false;
                              label = join_markers(ma, mb, op, ga, gb);
                              return true;
                          });
}

Automaton rewrite_labels(const Automaton& a, const UnaryOp& op) {
    Alphabets context{a.context.sigma, unary_result_attrs(a.context.gamma, op)};
    Automaton out;
    out.context = std::move(context);
    out.state_count = a.state_count;
    out.initial = a.initial;
    out.finals = a.finals;
    out.arcs.resize(a.state_count);
    for (StateId s = 0; s < a.state_count; ++s)
        for (const auto& [label, ts] : a.arcs[s])
            for (StateId t : ts) out.add_arc(s, apply_unary(label, op), t);
    out.refresh_flags();
    return trim(out);
}

Automaton determinize(const Automaton& a, const Limits& limits) {
    std::vector<MarkerId> alphabet = a.context.all_markers();
    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> subsets;
    std::uint64_t work = 0;
    auto intern = [&](std::vector<StateId> subset) {
        auto it = ids.find(subset);
        if (it != ids.end()) return std::make_pair(it->second, false);
        StateId id = static_cast<StateId>(subsets.size());
        if (++work > limits.max_det_states)
            throw ResourceLimitError("determinization state budget exceeded", work);
        ids.emplace(subset, id);
        subsets.push_back(std::move(subset));
        return std::make_pair(id, true);
    };
    Automaton out;
    out.context = a.context;
    auto [start, fresh0] = intern({a.initial});
    out.initial = start;
    std::deque<StateId> queue{start};
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        if (out.arcs.size() <= id) out.arcs.resize(subsets.size());
        std::vector<StateId> subset = subsets[id];
        for (MarkerId m : alphabet) {
            std::vector<StateId> next;
            for (StateId s : subset) {
                auto it = a.arcs[s].find(m);
                if (it == a.arcs[s].end()) continue;
                next.insert(next.end(), it->second.begin(), it->second.end());
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (++work > limits.max_det_states)
                throw ResourceLimitError("determinization work budget exceeded", work);
            auto [tid, fresh] = intern(std::move(next));
            if (fresh) queue.push_back(tid);
            if (out.arcs.size() < subsets.size()) out.arcs.resize(subsets.size());
            out.arcs[id][m].push_back(tid);
        }
    }
    out.state_count = static_cast<StateId>(subsets.size());
    out.arcs.resize(out.state_count);
    for (StateId id = 0; id < out.state_count; ++id)
        for (StateId s : subsets[id])
            if (a.is_final(s)) {
                out.finals.push_back(id);
                break;
            }
    out.refresh_flags();
    return out;
}

bool is_deterministic(const Automaton& a) { return a.deterministic; }

bool language_empty(const Automaton& a) {
    std::vector<bool> seen(a.state_count, false);
    std::vector<StateId> stack{a.initial};
    seen[a.initial] = true;
    while (!stack.empty()) {
        StateId p = stack.back();
        stack.pop_back();
        if (a.is_final(p)) return false;
        for (const auto& [label, ts] : a.arcs[p])
            for (StateId t : ts)
                if (!seen[t]) {
                    seen[t] = true;
                    stack.push_back(t);
                }
    }
    return true;
}

bool language_subset(const Automaton& a, const Automaton& b, const Limits& limits) {
    require_same_sigma(a, b);
    Automaton widened = b;
    widened.context = a.context.unite(b.context);
    return language_empty(automaton_intersection(a, automaton_complement(widened, limits)));
}

bool language_equivalent(const Automaton& a, const Automaton& b, const Limits& limits) {
    return language_subset(a, b, limits) && language_subset(b, a, limits);
}

bool accepts(const Automaton& a, const MarkerString& w) {
    std::vector<StateId> frontier{a.initial};
    for (MarkerId m : w) {
        std::vector<StateId> next;
        for (StateId s : frontier) {
            auto it = a.arcs[s].find(m);
            if (it == a.arcs[s].end()) continue;
            next.insert(next.end(), it->second.begin(), it->second.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) return false;
        frontier = std::move(next);
    }
    for (StateId s : frontier)
        if (a.is_final(s)) return true;
    return false;
}

namespace {

// alive[i][s]: from (s, i) some final state at the last layer is reachable
// along arcs whose signs spell the rest of the document.
std::vector<std::vector<bool>> alive_states(const Automaton& a, std::string_view doc) {
    const std::size_t n = doc.size();
    std::vector<std::vector<bool>> alive(n + 1, std::vector<bool>(a.state_count, false));
    for (StateId f : a.finals) alive[n][f] = true;
    for (std::size_t i = n; i-- > 0;) {
        for (StateId s = 0; s < a.state_count; ++s) {
            bool ok = false;
            for (const auto& [label, ts] : a.arcs[s]) {
                if (marker_sign(label) != doc[i]) continue;
                for (StateId t : ts)
                    if (alive[i + 1][t]) {
                        ok = true;
                        break;
                    }
                if (ok) break;
            }
            alive[i][s] = ok;
        }
    }
    return alive;
}

struct SliceDfs {
    const Automaton& a;
    std::string_view doc;
    const std::vector<std::vector<bool>>& alive;
    std::uint64_t max_rows;
    SliceEnumeration out;
    MarkerString prefix;

    bool run(std::size_t layer, const std::vector<StateId>& frontier) {
        if (layer == doc.size()) {
            if (out.strings.size() >= max_rows) {
                out.truncated = true;
                return false;
            }
            out.strings.push_back(prefix);
            return true;
        }
        std::map<MarkerId, std::vector<StateId>> step;
        for (StateId s : frontier) {
            for (const auto& [label, ts] : a.arcs[s]) {
                if (marker_sign(label) != doc[layer]) continue;
                auto& acc = step[label];
                for (StateId t : ts)
                    if (alive[layer + 1][t]) acc.push_back(t);
            }
        }
        std::vector<MarkerId> order;
        for (auto& [label, ts] : step) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            if (!ts.empty()) order.push_back(label);
        }
        std::sort(order.begin(), order.end(), marker_precedes);
        for (MarkerId m : order) {
            prefix.push_back(m);
            bool cont = run(layer + 1, step[m]);
            prefix.pop_back();
            if (!cont) return false;
        }
        return true;
    }
};

}  // namespace

SliceEnumeration enumerate_slice(const Automaton& a, std::string_view doc,
                                 std::uint64_t max_rows) {
    auto alive = alive_states(a, doc);
    SliceDfs dfs{a, doc, alive, max_rows, {}, {}};
    if (alive[0][a.initial]) dfs.run(0, {a.initial});
    return std::move(dfs.out);
}

Table evaluate(const Automaton& a, std::string_view doc, const Limits& limits) {
    SliceEnumeration e = enumerate_slice(a, doc, limits.max_rows);
    if (e.truncated)
        throw ResourceLimitError("slice row budget exceeded", e.strings.size());
    Table out(a.context.gamma, static_cast<std::uint32_t>(doc.size()));
    for (const MarkerString& w : e.strings) out.insert(decode(w, a.context.gamma).row);
    return out;
}

Automaton line_automaton(const Alphabets& context, std::string_view doc,
                         const std::vector<MarkerId>& inventory) {
    Automaton out;
    out.context = context;
    out.state_count = static_cast<StateId>(doc.size() + 1);
    out.initial = 0;
    out.finals = {static_cast<StateId>(doc.size())};
    out.arcs.resize(out.state_count);
    for (std::size_t i = 0; i < doc.size(); ++i)
        for (MarkerId m : inventory)
            if (marker_sign(m) == doc[i])
                out.add_arc(static_cast<StateId>(i), m, static_cast<StateId>(i + 1));
    out.refresh_flags();
    return out;
}

Automaton slice_automaton(const Automaton& a, std::string_view doc) {
    const std::size_t n = doc.size();
    Automaton out;
    out.context = a.context;
    out.state_count = static_cast<StateId>(a.state_count * (n + 1));
    out.initial = a.initial;  // layer 0 offset is zero
    out.arcs.resize(out.state_count);
    auto id = [&](StateId s, std::size_t layer) {
        return static_cast<StateId>(layer * a.state_count + s);
    };
    out.initial = id(a.initial, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (StateId s = 0; s < a.state_count; ++s)
            for (const auto& [label, ts] : a.arcs[s]) {
                if (marker_sign(label) != doc[i]) continue;
                for (StateId t : ts) out.add_arc(id(s, i), label, id(t, i + 1));
            }
    for (StateId f : a.finals) out.finals.push_back(id(f, n));
    out.refresh_flags();
    return trim(out, /*also_coreachable=*/true);
}

}  // namespace markex
