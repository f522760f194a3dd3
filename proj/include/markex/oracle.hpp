#ifndef MARKEX_ORACLE_HPP
#define MARKEX_ORACLE_HPP

#include <functional>
#include <string_view>

#include "markex/problems.hpp"

namespace markex {

// Reference semantics computed by definition: enumerate every candidate row
// and keep those whose marker encoding the extractor's language contains.
// Deliberately naive; the ground truth for all property tests.
class Oracle {
public:
    Oracle(std::function<bool(const MarkerString&)> member, Alphabets context)
        : member_(std::move(member)), context_(std::move(context)) {}

    static Oracle of(const Automaton& m);
    static Oracle of(const Grammar& g);
    static Oracle of(const Extractor& e);

    bool member(const MarkerString& w) const { return member_(w); }
    const Alphabets& context() const { return context_; }

private:
    std::function<bool(const MarkerString&)> member_;
    Alphabets context_;
};

// Hard guard on the 2^(length * |gamma|) candidate space.
inline constexpr std::uint32_t kUniverseBitGuard = 24;

// All rows for a document length and context, in a fixed order.
class Universe {
public:
    Universe(std::uint32_t length, AttrSet gamma);

    std::uint64_t size() const noexcept { return std::uint64_t{1} << bits_; }
    Row at(std::uint64_t index) const;

    class iterator {
    public:
        iterator(const Universe* u, std::uint64_t i) : u_(u), i_(i) {}
        Row operator*() const { return u_->at(i_); }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return i_ != o.i_; }

    private:
        const Universe* u_;
        std::uint64_t i_;
    };
    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size()); }

private:
    std::uint32_t length_;
    AttrSet gamma_;
    std::uint32_t bits_;
};

Table oracle_eval(const Oracle& e, std::string_view doc);

// Tables computed from the defining equations of the operators that quantify
// over document decompositions.
Table oracle_concat(const Oracle& a, const Oracle& b, std::string_view doc);
Table oracle_star(const Oracle& a, std::string_view doc);
Table oracle_complement(const Oracle& a, std::string_view doc);

// The operators checked against engine results.
enum class AlgebraOp {
    Union,
    Intersect,
    Difference,
    Complement,
    Concat,
    Star,
    JoinNatural,
    JoinUnion,
    JoinIntersect,
    JoinDifference,
    Project,
    Merge,
    Rename
};

// Table the operator should produce on this document, computed from the
// operands' oracle tables by the table-level definitions.
Table oracle_table_for(AlgebraOp op, const std::vector<Oracle>& operands, std::string_view doc,
                       const UnaryOp* unary = nullptr);

// True iff the engine-produced table matches the definition.
bool oracle_op_check(const Table& engine_result, AlgebraOp op,
                     const std::vector<Oracle>& operands, std::string_view doc,
                     const UnaryOp* unary = nullptr);

}  // namespace markex

#endif
