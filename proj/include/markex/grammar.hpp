#ifndef MARKEX_GRAMMAR_HPP
#define MARKEX_GRAMMAR_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "markex/automaton.hpp"

namespace markex {

struct GrammarSym {
    bool terminal = false;
    std::uint32_t id = 0;  // MarkerId when terminal, nonterminal index otherwise

    static GrammarSym marker(MarkerId m) { return GrammarSym{true, m}; }
    static GrammarSym nonterminal(std::uint32_t n) { return GrammarSym{false, n}; }
    bool operator==(const GrammarSym&) const = default;
};

struct GrammarRule {
    std::uint32_t head = 0;
    std::vector<GrammarSym> body;  // empty body derives the empty string
    bool operator==(const GrammarRule&) const = default;
};

// Chomsky normal form: A -> B C, A -> marker, plus a nullable-start flag
// standing in for S -> eps.
struct CnfGrammar {
    Alphabets context;
    std::uint32_t nonterminal_count = 0;
    std::uint32_t start = 0;
    bool start_nullable = false;
    std::vector<std::array<std::uint32_t, 3>> binary;       // {A, B, C}
    std::vector<std::pair<std::uint32_t, MarkerId>> lexical;  // {A, marker}
};

// Context-free grammar over markers. Treat as immutable once built; the CNF
// conversion is cached per grammar (copies share the cache).
struct Grammar {
    struct CnfBox {
        std::once_flag once;
        std::shared_ptr<const CnfGrammar> value;
    };

    Alphabets context;
    std::vector<std::string> nonterminal_names;
    std::vector<GrammarRule> rules;
    std::uint32_t start = 0;
    std::shared_ptr<CnfBox> cnf_box = std::make_shared<CnfBox>();

    std::uint32_t nonterminal_count() const {
        return static_cast<std::uint32_t>(nonterminal_names.size());
    }
    std::size_t size() const;  // total rule symbols, the |G| measure
    std::vector<MarkerId> marker_inventory() const;
};

Grammar make_grammar(Alphabets context, std::vector<std::string> nonterminal_names,
                     std::vector<GrammarRule> rules, std::uint32_t start);

// Closure constructions (fresh start nonterminal wiring).
Grammar grammar_union(const Grammar& a, const Grammar& b);
Grammar grammar_concat(const Grammar& a, const Grammar& b);
Grammar grammar_star(const Grammar& a);
Grammar rewrite_labels(const Grammar& g, const UnaryOp& op);

const CnfGrammar& cnf_of(const Grammar& g);

struct CykStats {
    bool accepted = false;
    std::uint64_t nodes = 0;  // placed table entries
    std::uint64_t steps = 0;  // examined rule/split combinations
};
CykStats cyk_run(const CnfGrammar& g, const MarkerString& w);
bool cyk_accepts(const Grammar& g, const MarkerString& w);

// Replaces every marker by the empty-attribute marker with the same sign.
Grammar erase_to_sign(const Grammar& g);

// Grammar for L(g) ∩ L(m) with nonterminals tracking automaton state pairs;
// m must be epsilon-free (all Automaton values are).
Grammar intersect_with_automaton(const Grammar& g, const Automaton& m);

bool grammar_language_empty(const Grammar& g);

// One member of L(g), if any; deterministic and of minimal length.
std::optional<MarkerString> shortest_member(const Grammar& g);

// All members of the document's slice of L(g), in position-major marker
// order; truncated when the row budget is hit.
SliceEnumeration enumerate_slice(const Grammar& g, std::string_view doc,
                                 std::uint64_t max_rows);

Table evaluate(const Grammar& g, std::string_view doc, const Limits& limits = {});

}  // namespace markex

#endif
