#include "markex/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "markex/errors.hpp"

namespace markex {

SatReduction sat_to_containment(const CnfFormula& formula) {
    const std::uint32_t n = formula.variable_count;
    if (n == 0) throw ContractViolation("formula needs at least one variable");
    for (const auto& clause : formula.clauses)
        for (int lit : clause)
            if (lit == 0 || static_cast<std::uint32_t>(std::abs(lit)) > n)
                throw ContractViolation("literal out of range");

    Alphabets context = Alphabets::make("a", AttrSet::named({"t", "f"}));
    MarkerId mark_true = intern_marker('a', AttrSet::named({"t"}));
    MarkerId mark_false = intern_marker('a', AttrSet::named({"f"}));

    // chain DFA accepting exactly the 2^n assignment encodings
    Automaton assignments;
    assignments.context = context;
    assignments.state_count = n + 1;
    assignments.initial = 0;
    assignments.finals = {n};
    assignments.arcs.resize(n + 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        assignments.add_arc(i, mark_true, i + 1);
        assignments.add_arc(i, mark_false, i + 1);
    }
    assignments.refresh_flags();

    // one branch per clause, accepting the assignments that falsify it
    Automaton falsifying;
    falsifying.context = context;
    StateId next_state = 1;  // 0 is the shared initial state
    std::vector<std::vector<StateId>> branch_states;
    std::vector<std::vector<std::vector<MarkerId>>> branch_labels;
    for (const auto& clause : formula.clauses) {
        // allowed markers per variable position; empty set kills the branch
        std::vector<std::vector<MarkerId>> allowed(n, {mark_true, mark_false});
        bool dead = false;
        for (int lit : clause) {
            std::uint32_t var = static_cast<std::uint32_t>(std::abs(lit)) - 1;
            MarkerId required = lit > 0 ? mark_false : mark_true;
            auto& opts = allowed[var];
            if (std::find(opts.begin(), opts.end(), required) == opts.end()) {
                dead = true;  // clause contains a variable with both signs
                break;
            }
            opts = {required};
        }
        if (dead) continue;
        std::vector<StateId> states;
        for (std::uint32_t i = 0; i < n; ++i) states.push_back(next_state++);
        branch_states.push_back(std::move(states));
        branch_labels.push_back(std::move(allowed));
    }
    falsifying.state_count = next_state;
    falsifying.initial = 0;
    falsifying.arcs.resize(next_state);
    for (std::size_t b = 0; b < branch_states.size(); ++b) {
        const auto& states = branch_states[b];
        for (std::uint32_t i = 0; i < n; ++i) {
            StateId from = i == 0 ? 0 : states[i - 1];
            for (MarkerId m : branch_labels[b][i]) falsifying.add_arc(from, m, states[i]);
        }
        falsifying.finals.push_back(states[n - 1]);
    }
    falsifying.refresh_flags();

    return SatReduction{std::move(assignments), std::move(falsifying),
                        std::string(n, 'a')};
}

namespace {

struct PcpBuilder {
    const PcpInstance& instance;
    std::uint32_t longest;  // max word length over both sides
    Alphabets context;
    MarkerId blank_a;
    MarkerId blank_hash;
    std::vector<MarkerId> index_markers;              // per pair
    std::map<char, MarkerId> letter_markers;

    explicit PcpBuilder(const PcpInstance& inst) : instance(inst) {
        if (inst.pairs.empty()) throw ContractViolation("instance needs at least one pair");
        if (inst.bound < 1) throw ContractViolation("bound must be at least one");
        longest = 0;
        std::set<char> letters;
        for (const auto& [u, v] : inst.pairs) {
            if (u.empty() || v.empty())
                throw ContractViolation("pair words must be non-empty");
            longest = std::max({longest, static_cast<std::uint32_t>(u.size()),
                                static_cast<std::uint32_t>(v.size())});
            letters.insert(u.begin(), u.end());
            letters.insert(v.begin(), v.end());
        }
        // index attributes "i1".."in" cannot collide with the one-character
        // letter attributes
        std::vector<AttrId> gamma;
        for (std::size_t i = 0; i < inst.pairs.size(); ++i)
            gamma.push_back(intern_attr("i" + std::to_string(i + 1)));
        for (char c : letters) gamma.push_back(intern_attr(std::string(1, c)));
        context = Alphabets::make("a#", AttrSet(std::move(gamma)));
        blank_a = intern_marker('a', AttrSet());
        blank_hash = intern_marker('#', AttrSet());
        for (std::size_t i = 0; i < inst.pairs.size(); ++i)
            index_markers.push_back(
                intern_marker('a', AttrSet::named({"i" + std::to_string(i + 1)})));
        for (char c : letters)
            letter_markers[c] = intern_marker('a', AttrSet({intern_attr(std::string(1, c))}));
    }

    // grammar generating the encodings of all sequences of at most `bound`
    // picks; `side` selects the left or right words.
    Grammar build(bool left_side) const {
        const std::uint32_t kappa = instance.bound;
        const std::uint32_t pmax = longest;
        std::vector<std::string> names{"S"};
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> chain_ids;
        auto chain = [&](std::uint32_t picks, std::uint32_t emitted) {
            auto key = std::make_pair(picks, emitted);
            auto it = chain_ids.find(key);
            if (it != chain_ids.end()) return it->second;
            names.push_back("B" + std::to_string(picks) + "_" + std::to_string(emitted));
            std::uint32_t id = static_cast<std::uint32_t>(names.size() - 1);
            chain_ids.emplace(key, id);
            return id;
        };
        std::vector<GrammarRule> rules;
        auto word_of = [&](std::size_t pair) -> const std::string& {
            return left_side ? instance.pairs[pair].first : instance.pairs[pair].second;
        };
        auto word_markers = [&](const std::string& w) {
            std::vector<GrammarSym> out;
            for (char c : w) out.push_back(GrammarSym::marker(letter_markers.at(c)));
            return out;
        };
        // explore reachable (picks, emitted) pairs breadth-first
        std::vector<std::pair<std::uint32_t, std::uint32_t>> todo;
        for (std::size_t i = 0; i < instance.pairs.size(); ++i) {
            const std::string& w = word_of(i);
            std::uint32_t nt = chain(1, static_cast<std::uint32_t>(w.size()));
            GrammarRule rule{0, {GrammarSym::marker(index_markers[i]),
                                 GrammarSym::nonterminal(nt)}};
            auto tail = word_markers(w);
            rule.body.insert(rule.body.end(), tail.begin(), tail.end());
            rules.push_back(std::move(rule));
            todo.emplace_back(1, static_cast<std::uint32_t>(w.size()));
        }
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen(todo.begin(), todo.end());
        while (!todo.empty()) {
            auto [picks, emitted] = todo.back();
            todo.pop_back();
            std::uint32_t head = chain(picks, emitted);
            // close the sequence here, padding both segments with blanks
            GrammarRule closing{head, {}};
            for (std::uint32_t k = 0; k < kappa - picks; ++k)
                closing.body.push_back(GrammarSym::marker(blank_a));
            closing.body.push_back(GrammarSym::marker(blank_hash));
            for (std::uint32_t k = 0; k < kappa * pmax - emitted; ++k)
                closing.body.push_back(GrammarSym::marker(blank_a));
            rules.push_back(std::move(closing));
            if (picks + 1 > kappa) continue;
            for (std::size_t i = 0; i < instance.pairs.size(); ++i) {
                const std::string& w = word_of(i);
                std::uint32_t next_emitted = emitted + static_cast<std::uint32_t>(w.size());
                std::uint32_t nt = chain(picks + 1, next_emitted);
                GrammarRule rule{head, {GrammarSym::marker(index_markers[i]),
                                        GrammarSym::nonterminal(nt)}};
                auto tail = word_markers(w);
                rule.body.insert(rule.body.end(), tail.begin(), tail.end());
                rules.push_back(std::move(rule));
                if (seen.emplace(picks + 1, next_emitted).second)
                    todo.emplace_back(picks + 1, next_emitted);
            }
        }
        return make_grammar(context, std::move(names), std::move(rules), 0);
    }

    std::string doc() const {
        return std::string(instance.bound, 'a') + "#" +
               std::string(instance.bound * longest, 'a');
    }
};

}  // namespace

PcpReduction pcp_to_disjointness(const PcpInstance& instance) {
    PcpBuilder builder(instance);
    return PcpReduction{builder.build(true), builder.build(false), builder.doc()};
}

}  // namespace markex
