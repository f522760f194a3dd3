#ifndef MARKEX_TABLE_HPP
#define MARKEX_TABLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "markex/symbols.hpp"

namespace markex {

// 1-based positions, sorted unique.
using PositionSet = std::vector<std::uint32_t>;

PositionSet positions(std::initializer_list<std::uint32_t> ps);
PositionSet position_union(const PositionSet& a, const PositionSet& b);
PositionSet position_intersect(const PositionSet& a, const PositionSet& b);
PositionSet position_subtract(const PositionSet& a, const PositionSet& b);
PositionSet position_combine(SetOp op, const PositionSet& a, const PositionSet& b);
PositionSet position_shift(const PositionSet& a, std::uint32_t delta);

// One extracted row for a document of a fixed length: a total map from each
// attribute of its context to a set of positions. Immutable after build.
class Row {
public:
    Row() = default;
    Row(AttrSet attrs, std::uint32_t length);  // all entries empty
    Row(AttrSet attrs, std::uint32_t length, std::vector<PositionSet> entries);

    static Row empty_row(AttrSet attrs, std::uint32_t length) { return Row(std::move(attrs), length); }

    const AttrSet& attrs() const noexcept { return attrs_; }
    std::uint32_t length() const noexcept { return length_; }
    const std::vector<PositionSet>& entries() const noexcept { return entries_; }

    const PositionSet& at(AttrId a) const;
    bool marks(AttrId a, std::uint32_t pos) const;
    Row with_entry(AttrId a, PositionSet ps) const;

    bool operator==(const Row&) const = default;

private:
    AttrSet attrs_;
    std::uint32_t length_ = 0;
    std::vector<PositionSet> entries_;  // aligned with attrs_.ids()
};

// Canonical row order: attribute-major (in attribute-name order), then
// lexicographic on each position set. Requires equal contexts.
bool row_precedes(const Row& a, const Row& b);

// A set of rows sharing one context and document length; rows are kept in
// canonical sorted order with set semantics.
class Table {
public:
    Table() = default;
    Table(AttrSet attrs, std::uint32_t length);
    static Table of(AttrSet attrs, std::uint32_t length, std::vector<Row> rows);

    const AttrSet& attrs() const noexcept { return attrs_; }
    std::uint32_t length() const noexcept { return length_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    bool contains(const Row& r) const;
    void insert(Row r);

    bool operator==(const Table&) const = default;

private:
    AttrSet attrs_;
    std::uint32_t length_ = 0;
    std::vector<Row> rows_;  // sorted by row_precedes, unique
};

// Bijective code between (document, row) pairs and marker strings.
MarkerString encode(std::string_view doc, const Row& row);

struct Decoded {
    std::string doc;
    Row row;
};

// Decodes W into (sign(W), row); the given context must cover every
// attribute occurring in W.
Decoded decode(const MarkerString& w, const AttrSet& attrs);

// Extends a row to a larger context with empty entries for new attributes.
Row pad(const Row& row, const AttrSet& target);
Table pad(const Table& table, const AttrSet& target);

// Restriction of a row's domain (inverse of pad for empty columns).
Row restrict_to(const Row& row, const AttrSet& target);

}  // namespace markex

#endif
