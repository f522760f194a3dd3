#ifndef MARKEX_PROBLEMS_HPP
#define MARKEX_PROBLEMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "markex/grammar.hpp"
#include "markex/slice_dag.hpp"

namespace markex {

enum class Verdict { True, False, Unknown };

struct Cost {
    std::uint64_t nodes = 0;
    std::uint64_t arcs = 0;
    double millis = 0.0;
};

// Outcome of a per-document decision. A witness, when present, decodes to a
// tuple proving the verdict (a shared row, a row outside the right table, a
// row showing non-emptiness). Unknown carries the resource note.
struct Answer {
    std::string problem;
    Verdict verdict = Verdict::Unknown;
    std::optional<MarkerString> witness;
    std::string note;
    Cost cost;
};

// An extractor in either representation.
class Extractor {
public:
    Extractor(Automaton a) : rep_(std::move(a)) {}
    Extractor(Grammar g) : rep_(std::move(g)) {}

    bool is_regular() const { return std::holds_alternative<Automaton>(rep_); }
    const Automaton& automaton() const { return std::get<Automaton>(rep_); }
    const Grammar& grammar() const { return std::get<Grammar>(rep_); }
    const Alphabets& context() const;
    std::size_t size() const;

private:
    std::variant<Automaton, Grammar> rep_;
};

bool tuple_member(const Extractor& e, std::string_view doc, const Row& row);

SliceEnumeration enumerate_slice(const Extractor& e, std::string_view doc,
                                 std::uint64_t max_rows);
Table evaluate(const Extractor& e, std::string_view doc, const Limits& limits = {});

// Verdict true means E(doc) is empty.
Answer table_empty(const Extractor& e, std::string_view doc);

// Verdict true means the two tables share no row after padding to the
// united context; a witness accompanies the intersecting case.
Answer table_disjoint(const Extractor& a, const Extractor& b, std::string_view doc,
                      const Limits& limits = {});

// Verdict true means A(doc) is contained in B(doc) after padding; a witness
// accompanies non-containment.
Answer table_contains(const Extractor& a, const Extractor& b, std::string_view doc,
                      const Limits& limits = {});

Answer table_equivalent(const Extractor& a, const Extractor& b, std::string_view doc,
                        const Limits& limits = {});

}  // namespace markex

#endif
