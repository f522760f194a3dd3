#include "markex/grammar.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "markex/errors.hpp"

namespace markex {

std::size_t Grammar::size() const {
    std::size_t n = 0;
    for (const GrammarRule& r : rules) n += 1 + r.body.size();
    return n;
}

std::vector<MarkerId> Grammar::marker_inventory() const {
    std::set<MarkerId> seen;
    for (const GrammarRule& r : rules)
        for (const GrammarSym& s : r.body)
            if (s.terminal) seen.insert(s.id);
    std::vector<MarkerId> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), marker_precedes);
    return out;
}

Grammar make_grammar(Alphabets context, std::vector<std::string> nonterminal_names,
                     std::vector<GrammarRule> rules, std::uint32_t start) {
    if (start >= nonterminal_names.size())
        throw ContractViolation("grammar start symbol out of range");
    for (const GrammarRule& r : rules) {
        if (r.head >= nonterminal_names.size())
            throw ContractViolation("grammar rule head out of range");
        for (const GrammarSym& s : r.body)
            if (!s.terminal && s.id >= nonterminal_names.size())
                throw ContractViolation("grammar rule body symbol out of range");
    }
    Grammar g;
    g.context = std::move(context);
    g.nonterminal_names = std::move(nonterminal_names);
    g.rules = std::move(rules);
    g.start = start;
    return g;
}

namespace {

void require_same_sigma(const Grammar& a, const Grammar& b) {
    if (a.context.sigma != b.context.sigma)
        throw ContractViolation("operands must share the terminal alphabet");
}

// Copies b's rules into a combined grammar, offsetting nonterminal ids.
std::uint32_t append_rules(Grammar& out, const Grammar& src, const std::string& suffix) {
    std::uint32_t offset = out.nonterminal_count();
    for (const std::string& n : src.nonterminal_names)
        out.nonterminal_names.push_back(n + suffix);
    for (const GrammarRule& r : src.rules) {
        GrammarRule copy;
        copy.head = r.head + offset;
        for (const GrammarSym& s : r.body)
            copy.body.push_back(s.terminal ? s : GrammarSym::nonterminal(s.id + offset));
        out.rules.push_back(std::move(copy));
    }
    return offset;
}

}  // namespace

Grammar grammar_union(const Grammar& a, const Grammar& b) {
    require_same_sigma(a, b);
    Grammar out;
    out.context = a.context.unite(b.context);
    out.nonterminal_names.push_back("S");
    out.start = 0;
    std::uint32_t offa = append_rules(out, a, "#l");
    std::uint32_t offb = append_rules(out, b, "#r");
    out.rules.push_back({0, {GrammarSym::nonterminal(offa + a.start)}});
    out.rules.push_back({0, {GrammarSym::nonterminal(offb + b.start)}});
    return out;
}

Grammar grammar_concat(const Grammar& a, const Grammar& b) {
    require_same_sigma(a, b);
    Grammar out;
    out.context = a.context.unite(b.context);
    out.nonterminal_names.push_back("S");
    out.start = 0;
    std::uint32_t offa = append_rules(out, a, "#l");
    std::uint32_t offb = append_rules(out, b, "#r");
    out.rules.push_back({0, {GrammarSym::nonterminal(offa + a.start),
                             GrammarSym::nonterminal(offb + b.start)}});
    return out;
}

Grammar grammar_star(const Grammar& a) {
    Grammar out;
    out.context = a.context;
    out.nonterminal_names.push_back("S");
    out.start = 0;
    std::uint32_t offa = append_rules(out, a, "#i");
    out.rules.push_back({0, {GrammarSym::nonterminal(0), GrammarSym::nonterminal(offa + a.start)}});
    out.rules.push_back({0, {}});
    return out;
}

Grammar rewrite_labels(const Grammar& g, const UnaryOp& op) {
    Grammar out;
    out.context = Alphabets{g.context.sigma, unary_result_attrs(g.context.gamma, op)};
    out.nonterminal_names = g.nonterminal_names;
    out.start = g.start;
    for (const GrammarRule& r : g.rules) {
        GrammarRule copy;
        copy.head = r.head;
        for (const GrammarSym& s : r.body)
            copy.body.push_back(s.terminal ? GrammarSym::marker(apply_unary(s.id, op)) : s);
        out.rules.push_back(std::move(copy));
    }
    return out;
}

namespace {

CnfGrammar build_cnf(const Grammar& g) {
    // working rule set over extended nonterminal space
    std::vector<GrammarRule> rules = g.rules;
    std::vector<std::string> names = g.nonterminal_names;
    auto fresh = [&](const std::string& label) {
        names.push_back(label);
        return static_cast<std::uint32_t>(names.size() - 1);
    };

    // fresh start, never on a right-hand side
    std::uint32_t start = fresh("S0");
    rules.push_back({start, {GrammarSym::nonterminal(g.start)}});

    // lift markers out of long bodies
    std::map<MarkerId, std::uint32_t> lifted;
    for (GrammarRule& r : rules) {
        if (r.body.size() < 2) continue;
        for (GrammarSym& s : r.body) {
            if (!s.terminal) continue;
            auto it = lifted.find(s.id);
            std::uint32_t nt;
            if (it == lifted.end()) {
                nt = fresh("T#");
                lifted.emplace(s.id, nt);
            } else {
                nt = it->second;
            }
            s = GrammarSym::nonterminal(nt);
        }
    }
    for (auto [m, nt] : lifted) rules.push_back({nt, {GrammarSym::marker(m)}});

    // binarize long bodies
    std::vector<GrammarRule> bin;
    for (const GrammarRule& r : rules) {
        if (r.body.size() <= 2) {
            bin.push_back(r);
            continue;
        }
        std::uint32_t head = r.head;
        for (std::size_t i = 0; i + 2 < r.body.size(); ++i) {
            std::uint32_t rest = fresh("B#");
            bin.push_back({head, {r.body[i], GrammarSym::nonterminal(rest)}});
            head = rest;
        }
        bin.push_back({head, {r.body[r.body.size() - 2], r.body.back()}});
    }
    rules = std::move(bin);

    // nullable elimination
    std::vector<bool> nullable(names.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GrammarRule& r : rules) {
            if (nullable[r.head]) continue;
            bool all = true;
            for (const GrammarSym& s : r.body)
                if (s.terminal || !nullable[s.id]) {
                    all = false;
                    break;
                }
            if (all) {
                nullable[r.head] = true;
                changed = true;
            }
        }
    }
    std::set<std::pair<std::uint32_t, std::vector<GrammarSym>>> expanded;
    for (const GrammarRule& r : rules) {
        // all variants with nullable symbols optionally dropped (bodies <= 2)
        std::vector<std::vector<GrammarSym>> variants{{}};
        for (const GrammarSym& s : r.body) {
            std::vector<std::vector<GrammarSym>> next;
            for (const auto& v : variants) {
                auto with = v;
                with.push_back(s);
                next.push_back(std::move(with));
                if (!s.terminal && nullable[s.id]) next.push_back(v);
            }
            variants = std::move(next);
        }
        for (auto& v : variants)
            if (!v.empty()) expanded.emplace(r.head, std::move(v));
    }

    // unit closure: reachable-by-unit-chains nonterminals per head
    std::vector<std::vector<std::uint32_t>> unit_next(names.size());
    std::set<std::pair<std::uint32_t, std::vector<GrammarSym>>> solid;
    for (const auto& [head, body] : expanded) {
        if (body.size() == 1 && !body[0].terminal)
            unit_next[head].push_back(body[0].id);
        else
            solid.emplace(head, body);
    }
    CnfGrammar out;
    out.context = g.context;
    out.nonterminal_count = static_cast<std::uint32_t>(names.size());
    out.start = start;
    out.start_nullable = nullable[g.start];
    std::set<std::array<std::uint32_t, 3>> binary;
    std::set<std::pair<std::uint32_t, MarkerId>> lexical;
    for (std::uint32_t a = 0; a < names.size(); ++a) {
        // unit-reachable set from a
        std::vector<bool> seen(names.size(), false);
        std::vector<std::uint32_t> stack{a};
        seen[a] = true;
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (auto [head, body] :
                 solid) {  // small grammars; scan is fine
                if (head != u) continue;
                if (body.size() == 2)
                    binary.insert({a, body[0].id, body[1].id});
                else
                    lexical.emplace(a, body[0].id);
            }
            for (std::uint32_t v : unit_next[u])
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
    }
    out.binary.assign(binary.begin(), binary.end());
    out.lexical.assign(lexical.begin(), lexical.end());
    return out;
}

}  // namespace

const CnfGrammar& cnf_of(const Grammar& g) {
    std::call_once(g.cnf_box->once, [&] {
        g.cnf_box->value = std::make_shared<const CnfGrammar>(build_cnf(g));
    });
    return *g.cnf_box->value;
}

CykStats cyk_run(const CnfGrammar& g, const MarkerString& w) {
    CykStats stats;
    const std::size_t n = w.size();
    if (n == 0) {
        stats.accepted = g.start_nullable;
        return stats;
    }
    const std::size_t nts = g.nonterminal_count;
    // cell(i, len) indexed from i=0, len>=1
    auto idx = [&](std::size_t i, std::size_t len) { return (len - 1) * n + i; };
    std::vector<std::vector<bool>> table(n * n, std::vector<bool>(nts, false));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, m] : g.lexical) {
            ++stats.steps;
            if (m == w[i] && !table[idx(i, 1)][a]) {
                table[idx(i, 1)][a] = true;
                ++stats.nodes;
            }
        }
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            auto& cell = table[idx(i, len)];
            for (std::size_t split = 1; split < len; ++split) {
                const auto& left = table[idx(i, split)];
                const auto& right = table[idx(i + split, len - split)];
                for (const auto& [a, b, c] : g.binary) {
                    ++stats.steps;
                    if (left[b] && right[c] && !cell[a]) {
                        cell[a] = true;
                        ++stats.nodes;
                    }
                }
            }
        }
    stats.accepted = table[idx(0, n)][g.start];
    return stats;
}

bool cyk_accepts(const Grammar& g, const MarkerString& w) {
    return cyk_run(cnf_of(g), w).accepted;
}

Grammar erase_to_sign(const Grammar& g) {
    Grammar out;
    out.context = g.context;
    out.nonterminal_names = g.nonterminal_names;
    out.start = g.start;
    for (const GrammarRule& r : g.rules) {
        GrammarRule copy;
        copy.head = r.head;
        for (const GrammarSym& s : r.body)
            copy.body.push_back(
                s.terminal ? GrammarSym::marker(intern_marker(marker_sign(s.id), AttrSet()))
                           : s);
        out.rules.push_back(std::move(copy));
    }
    return out;
}

namespace {

// Binarized view used by the intersection: bodies of length <= 2.
Grammar binarized(const Grammar& g) {
    Grammar out;
    out.context = g.context;
    out.nonterminal_names = g.nonterminal_names;
    out.start = g.start;
    for (const GrammarRule& r : g.rules) {
        if (r.body.size() <= 2) {
            out.rules.push_back(r);
            continue;
        }
        std::uint32_t head = r.head;
        for (std::size_t i = 0; i + 2 < r.body.size(); ++i) {
            out.nonterminal_names.push_back(g.nonterminal_names[r.head] + "#" +
                                            std::to_string(i));
            std::uint32_t rest = static_cast<std::uint32_t>(out.nonterminal_names.size() - 1);
            out.rules.push_back({head, {r.body[i], GrammarSym::nonterminal(rest)}});
            head = rest;
        }
        out.rules.push_back({head, {r.body[r.body.size() - 2], r.body.back()}});
    }
    return out;
}

}  // namespace

Grammar intersect_with_automaton(const Grammar& g0, const Automaton& m) {
    Grammar g = binarized(g0);
    const std::uint32_t nts = g.nonterminal_count();
    const StateId states = m.state_count;

    // reverse adjacency per marker
    std::unordered_map<MarkerId, std::vector<std::vector<StateId>>> rev;
    for (StateId p = 0; p < states; ++p)
        for (const auto& [label, ts] : m.arcs[p]) {
            auto& per = rev[label];
            if (per.empty()) per.resize(states);
            for (StateId t : ts) per[t].push_back(p);
        }

    auto terminal_succ = [&](StateId p, MarkerId label) -> const std::vector<StateId>* {
        auto it = m.arcs[p].find(label);
        return it == m.arcs[p].end() ? nullptr : &it->second;
    };
    auto terminal_pred = [&](StateId q, MarkerId label) -> const std::vector<StateId>* {
        auto it = rev.find(label);
        if (it == rev.end()) return nullptr;
        return &it->second[q];
    };

    // derivable spans per nonterminal
    std::vector<std::set<std::pair<StateId, StateId>>> spans(nts);
    std::vector<std::vector<std::vector<StateId>>> out_nt(nts), in_nt(nts);
    for (std::uint32_t a = 0; a < nts; ++a) {
        out_nt[a].resize(states);
        in_nt[a].resize(states);
    }
    std::deque<std::tuple<std::uint32_t, StateId, StateId>> queue;
    auto add = [&](std::uint32_t a, StateId p, StateId q) {
        if (!spans[a].emplace(p, q).second) return;
        out_nt[a][p].push_back(q);
        in_nt[a][q].push_back(p);
        queue.emplace_back(a, p, q);
    };

    // rule occurrence index by nonterminal body symbol
    struct Occurrence {
        std::uint32_t rule;
        int position;  // 0 or 1
    };
    std::vector<std::vector<Occurrence>> occ(nts);
    for (std::uint32_t ri = 0; ri < g.rules.size(); ++ri)
        for (int pos = 0; pos < static_cast<int>(g.rules[ri].body.size()); ++pos) {
            const GrammarSym& s = g.rules[ri].body[pos];
            if (!s.terminal) occ[s.id].push_back({ri, pos});
        }

    // seeding: rules whose bodies are all-terminal (or empty)
    for (const GrammarRule& r : g.rules) {
        if (r.body.empty()) {
            for (StateId p = 0; p < states; ++p) add(r.head, p, p);
        } else if (r.body.size() == 1 && r.body[0].terminal) {
            for (StateId p = 0; p < states; ++p)
                if (const auto* ts = terminal_succ(p, r.body[0].id))
                    for (StateId q : *ts) add(r.head, p, q);
        } else if (r.body.size() == 2 && r.body[0].terminal && r.body[1].terminal) {
            for (StateId p = 0; p < states; ++p)
                if (const auto* mid = terminal_succ(p, r.body[0].id))
                    for (StateId rmid : *mid)
                        if (const auto* ts = terminal_succ(rmid, r.body[1].id))
                            for (StateId q : *ts) add(r.head, p, q);
        }
    }

    while (!queue.empty()) {
        auto [b, p, q] = queue.front();
        queue.pop_front();
        for (const Occurrence& o : occ[b]) {
            const GrammarRule& r = g.rules[o.rule];
            if (r.body.size() == 1) {
                add(r.head, p, q);
                continue;
            }
            const GrammarSym& other = r.body[o.position == 0 ? 1 : 0];
            if (o.position == 0) {
                if (other.terminal) {
                    if (const auto* ts = terminal_succ(q, other.id))
                        for (StateId t : *ts) add(r.head, p, t);
                } else {
                    for (StateId t : out_nt[other.id][q]) add(r.head, p, t);
                }
            } else {
                if (other.terminal) {
                    if (const auto* ss = terminal_pred(p, other.id))
                        for (StateId s : *ss) add(r.head, s, q);
                } else {
                    for (StateId s : in_nt[other.id][p]) add(r.head, s, q);
                }
            }
        }
    }

    // materialize: nonterminal per derivable span
    std::map<std::tuple<std::uint32_t, StateId, StateId>, std::uint32_t> ids;
    Grammar out;
    out.context = g.context;
    out.nonterminal_names.push_back("S");
    out.start = 0;
    auto nt_id = [&](std::uint32_t a, StateId p, StateId q) {
        auto key = std::make_tuple(a, p, q);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        out.nonterminal_names.push_back(g.nonterminal_names[a] + "[" + std::to_string(p) + "," +
                                        std::to_string(q) + "]");
        std::uint32_t id = static_cast<std::uint32_t>(out.nonterminal_names.size() - 1);
        ids.emplace(key, id);
        return id;
    };
    for (std::uint32_t a = 0; a < nts; ++a)
        for (auto [p, q] : spans[a]) (void)nt_id(a, p, q);

    for (const GrammarRule& r : g.rules) {
        if (r.body.empty()) {
            for (StateId p = 0; p < states; ++p)
                if (spans[r.head].count({p, p})) out.rules.push_back({nt_id(r.head, p, p), {}});
        } else if (r.body.size() == 1) {
            if (r.body[0].terminal) {
                for (StateId p = 0; p < states; ++p)
                    if (const auto* ts = terminal_succ(p, r.body[0].id))
                        for (StateId q : *ts)
                            out.rules.push_back(
                                {nt_id(r.head, p, q), {GrammarSym::marker(r.body[0].id)}});
            } else {
                for (auto [p, q] : spans[r.body[0].id])
                    if (spans[r.head].count({p, q}))
                        out.rules.push_back({nt_id(r.head, p, q),
                                             {GrammarSym::nonterminal(nt_id(r.body[0].id, p, q))}});
            }
        } else {
            // body of two symbols: stitch spans at every midpoint
            const GrammarSym& s1 = r.body[0];
            const GrammarSym& s2 = r.body[1];
            for (StateId p = 0; p < states; ++p) {
                std::vector<StateId> midpoints;
                if (s1.terminal) {
                    if (const auto* ts = terminal_succ(p, s1.id))
                        midpoints.assign(ts->begin(), ts->end());
                } else {
                    midpoints = out_nt[s1.id][p];
                }
                for (StateId mid : midpoints) {
                    std::vector<StateId> ends;
                    if (s2.terminal) {
                        if (const auto* ts = terminal_succ(mid, s2.id))
                            ends = *ts;
                    } else {
                        ends = out_nt[s2.id][mid];
                    }
                    for (StateId q : ends) {
                        if (!spans[r.head].count({p, q})) continue;
                        GrammarRule inst;
                        inst.head = nt_id(r.head, p, q);
                        inst.body.push_back(s1.terminal
                                                ? GrammarSym::marker(s1.id)
                                                : GrammarSym::nonterminal(nt_id(s1.id, p, mid)));
                        inst.body.push_back(s2.terminal
                                                ? GrammarSym::marker(s2.id)
                                                : GrammarSym::nonterminal(nt_id(s2.id, mid, q)));
                        out.rules.push_back(std::move(inst));
                    }
                }
            }
        }
    }
    for (StateId f : m.finals)
        if (spans[g.start].count({m.initial, f}))
            out.rules.push_back({0, {GrammarSym::nonterminal(nt_id(g.start, m.initial, f))}});

    // prune to rules reachable from the fresh start
    std::vector<bool> reach(out.nonterminal_count(), false);
    reach[0] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GrammarRule& r : out.rules) {
            if (!reach[r.head]) continue;
            for (const GrammarSym& s : r.body)
                if (!s.terminal && !reach[s.id]) {
                    reach[s.id] = true;
                    changed = true;
                }
        }
    }
    std::vector<std::uint32_t> remap(out.nonterminal_count(), 0);
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < out.nonterminal_count(); ++i)
        if (reach[i]) {
            remap[i] = static_cast<std::uint32_t>(names.size());
            names.push_back(out.nonterminal_names[i]);
        }
    std::vector<GrammarRule> kept;
    for (GrammarRule& r : out.rules) {
        if (!reach[r.head]) continue;
        r.head = remap[r.head];
        for (GrammarSym& s : r.body)
            if (!s.terminal) s.id = remap[s.id];
        kept.push_back(std::move(r));
    }
    return make_grammar(out.context, std::move(names), std::move(kept), 0);
}

bool grammar_language_empty(const Grammar& g) {
    std::vector<bool> productive(g.nonterminal_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GrammarRule& r : g.rules) {
            if (productive[r.head]) continue;
            bool all = true;
            for (const GrammarSym& s : r.body)
                if (!s.terminal && !productive[s.id]) {
                    all = false;
                    break;
                }
            if (all) {
                productive[r.head] = true;
                changed = true;
            }
        }
    }
    return !productive[g.start];
}

std::optional<MarkerString> shortest_member(const Grammar& g) {
    constexpr std::uint64_t kInf = ~std::uint64_t{0};
    std::vector<std::uint64_t> best(g.nonterminal_count(), kInf);
    // minimal derivation trees never repeat a nonterminal on a path
    for (std::uint32_t round = 0; round <= g.nonterminal_count(); ++round) {
        bool changed = false;
        for (const GrammarRule& r : g.rules) {
            std::uint64_t total = 0;
            bool ok = true;
            for (const GrammarSym& s : r.body) {
                if (s.terminal) {
                    total += 1;
                } else if (best[s.id] == kInf) {
                    ok = false;
                    break;
                } else {
                    total += best[s.id];
                }
            }
            if (ok && total < best[r.head]) {
                best[r.head] = total;
                changed = true;
            }
        }
        if (!changed) break;
    }
    if (best[g.start] == kInf) return std::nullopt;
    // expand the first rule realizing each minimum
    std::vector<std::optional<MarkerString>> memo(g.nonterminal_count());
    auto expand = [&](auto&& self, std::uint32_t nt) -> const MarkerString& {
        if (memo[nt]) return *memo[nt];
        for (const GrammarRule& r : g.rules) {
            if (r.head != nt) continue;
            std::uint64_t total = 0;
            bool ok = true;
            for (const GrammarSym& s : r.body) {
                if (s.terminal)
                    total += 1;
                else if (best[s.id] == kInf) {
                    ok = false;
                    break;
                } else
                    total += best[s.id];
            }
            if (!ok || total != best[nt]) continue;
            MarkerString w;
            for (const GrammarSym& s : r.body) {
                if (s.terminal) {
                    w.push_back(s.id);
                } else {
                    const MarkerString& sub = self(self, s.id);
                    w.insert(w.end(), sub.begin(), sub.end());
                }
            }
            memo[nt] = std::move(w);
            return *memo[nt];
        }
        throw ContractViolation("inconsistent shortest-member table");
    };
    return expand(expand, g.start);
}

namespace {

// Grammar view of a CNF (without the start-nullable epsilon, handled by the
// caller for empty documents).
Grammar cnf_as_grammar(const CnfGrammar& cnf) {
    Grammar g;
    g.context = cnf.context;
    for (std::uint32_t i = 0; i < cnf.nonterminal_count; ++i)
        g.nonterminal_names.push_back("N" + std::to_string(i));
    g.start = cnf.start;
    for (const auto& [a, b, c] : cnf.binary)
        g.rules.push_back({a, {GrammarSym::nonterminal(b), GrammarSym::nonterminal(c)}});
    for (const auto& [a, m] : cnf.lexical) g.rules.push_back({a, {GrammarSym::marker(m)}});
    return g;
}

struct SliceCollector {
    const Grammar& g;
    std::uint64_t max_rows;
    bool truncated = false;
    std::vector<std::optional<std::vector<MarkerString>>> memo;

    explicit SliceCollector(const Grammar& grammar, std::uint64_t budget)
        : g(grammar), max_rows(budget), memo(grammar.nonterminal_count()) {}

    const std::vector<MarkerString>* collect(std::uint32_t nt) {
        if (memo[nt]) return &*memo[nt];
        std::vector<MarkerString> acc;
        for (const GrammarRule& r : g.rules) {
            if (truncated) return nullptr;
            if (r.head != nt) continue;
            if (r.body.empty()) {
                acc.push_back({});
            } else if (r.body.size() == 1) {
                if (r.body[0].terminal) {
                    acc.push_back({r.body[0].id});
                } else {
                    const auto* sub = collect(r.body[0].id);
                    if (!sub) return nullptr;
                    acc.insert(acc.end(), sub->begin(), sub->end());
                }
            } else {
                const std::vector<MarkerString>*left, *right;
                std::vector<MarkerString> one;
                if (r.body[0].terminal) {
                    one = {{r.body[0].id}};
                    left = &one;
                } else {
                    left = collect(r.body[0].id);
                    if (!left) return nullptr;
                }
                std::vector<MarkerString> two;
                if (r.body[1].terminal) {
                    two = {{r.body[1].id}};
                    right = &two;
                } else {
                    right = collect(r.body[1].id);
                    if (!right) return nullptr;
                }
                if (static_cast<std::uint64_t>(left->size()) * right->size() + acc.size() >
                    max_rows * 4 + 16) {
                    truncated = true;
                    return nullptr;
                }
                for (const MarkerString& l : *left)
                    for (const MarkerString& rr : *right) {
                        MarkerString w = l;
                        w.insert(w.end(), rr.begin(), rr.end());
                        acc.push_back(std::move(w));
                    }
            }
            if (acc.size() > max_rows * 4 + 16) {
                truncated = true;
                return nullptr;
            }
        }
        std::sort(acc.begin(), acc.end(), marker_string_precedes);
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        if (acc.size() > max_rows) {
            truncated = true;
            return nullptr;
        }
        memo[nt] = std::move(acc);
        return &*memo[nt];
    }
};

}  // namespace

SliceEnumeration enumerate_slice(const Grammar& g, std::string_view doc,
                                 std::uint64_t max_rows) {
    const CnfGrammar& cnf = cnf_of(g);
    SliceEnumeration out;
    if (doc.empty()) {
        if (cnf.start_nullable) {
            if (max_rows == 0) {
                out.truncated = true;
            } else {
                out.strings.push_back({});
            }
        }
        return out;
    }
    Grammar flat = cnf_as_grammar(cnf);
    Automaton line = line_automaton(g.context, doc, flat.marker_inventory());
    Grammar sliced = intersect_with_automaton(flat, line);
    SliceCollector collector(sliced, max_rows);
    const std::vector<MarkerString>* rows = collector.collect(sliced.start);
    if (!rows) {
        out.truncated = true;
        return out;
    }
    out.strings = *rows;
    return out;
}

Table evaluate(const Grammar& g, std::string_view doc, const Limits& limits) {
    SliceEnumeration e = enumerate_slice(g, doc, limits.max_rows);
    if (e.truncated) throw ResourceLimitError("slice row budget exceeded", limits.max_rows);
    Table out(g.context.gamma, static_cast<std::uint32_t>(doc.size()));
    for (const MarkerString& w : e.strings) out.insert(decode(w, g.context.gamma).row);
    return out;
}

}  // namespace markex
