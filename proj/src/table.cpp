#include "markex/table.hpp"

#include <algorithm>

#include "markex/errors.hpp"

namespace markex {

PositionSet positions(std::initializer_list<std::uint32_t> ps) {
    PositionSet out(ps);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PositionSet position_union(const PositionSet& a, const PositionSet& b) {
    PositionSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PositionSet position_intersect(const PositionSet& a, const PositionSet& b) {
    PositionSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PositionSet position_subtract(const PositionSet& a, const PositionSet& b) {
    PositionSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PositionSet position_combine(SetOp op, const PositionSet& a, const PositionSet& b) {
    switch (op) {
        case SetOp::Union: return position_union(a, b);
        case SetOp::Intersect: return position_intersect(a, b);
        case SetOp::Difference: return position_subtract(a, b);
    }
    throw ContractViolation("bad SetOp");
}

PositionSet position_shift(const PositionSet& a, std::uint32_t delta) {
    PositionSet out;
    out.reserve(a.size());
    for (std::uint32_t p : a) out.push_back(p + delta);
    return out;
}

namespace {

void check_entry(const PositionSet& ps, std::uint32_t length) {
    std::uint32_t prev = 0;
    for (std::uint32_t p : ps) {
        if (p < 1 || p > length) throw ContractViolation("position out of document range");
        if (p <= prev) throw ContractViolation("position set must be sorted and unique");
        prev = p;
    }
}

}  // namespace

Row::Row(AttrSet attrs, std::uint32_t length)
    : attrs_(std::move(attrs)), length_(length), entries_(attrs_.size()) {}

Row::Row(AttrSet attrs, std::uint32_t length, std::vector<PositionSet> entries)
    : attrs_(std::move(attrs)), length_(length), entries_(std::move(entries)) {
    if (entries_.size() != attrs_.size())
        throw ContractViolation("row needs exactly one entry per attribute");
    for (const PositionSet& ps : entries_) check_entry(ps, length_);
}

const PositionSet& Row::at(AttrId a) const {
    const auto& ids = attrs_.ids();
    auto it = std::lower_bound(ids.begin(), ids.end(), a, attr_precedes);
    if (it == ids.end() || *it != a) throw ContractViolation("attribute not in row context");
    return entries_[static_cast<std::size_t>(it - ids.begin())];
}

bool Row::marks(AttrId a, std::uint32_t pos) const {
    const PositionSet& ps = at(a);
    return std::binary_search(ps.begin(), ps.end(), pos);
}

Row Row::with_entry(AttrId a, PositionSet ps) const {
    check_entry(ps, length_);
    const auto& ids = attrs_.ids();
    auto it = std::lower_bound(ids.begin(), ids.end(), a, attr_precedes);
    if (it == ids.end() || *it != a) throw ContractViolation("attribute not in row context");
    Row out = *this;
    out.entries_[static_cast<std::size_t>(it - ids.begin())] = std::move(ps);
    return out;
}

bool row_precedes(const Row& a, const Row& b) {
    if (a.attrs() != b.attrs() || a.length() != b.length())
        throw ContractViolation("rows of different shape are not comparable");
    return a.entries() < b.entries();
}

Table::Table(AttrSet attrs, std::uint32_t length) : attrs_(std::move(attrs)), length_(length) {}

Table Table::of(AttrSet attrs, std::uint32_t length, std::vector<Row> rows) {
    Table t(std::move(attrs), length);
    for (Row& r : rows) t.insert(std::move(r));
    return t;
}

bool Table::contains(const Row& r) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), r, row_precedes);
    return it != rows_.end() && *it == r;
}

void Table::insert(Row r) {
    if (r.attrs() != attrs_ || r.length() != length_)
        throw ContractViolation("row shape does not match table");
    auto it = std::lower_bound(rows_.begin(), rows_.end(), r, row_precedes);
    if (it != rows_.end() && *it == r) return;
    rows_.insert(it, std::move(r));
}

MarkerString encode(std::string_view doc, const Row& row) {
    if (row.length() != doc.size())
        throw ContractViolation("row length does not match document length");
    MarkerString out;
    out.reserve(doc.size());
    for (std::uint32_t i = 1; i <= doc.size(); ++i) {
        std::vector<AttrId> marked;
        for (AttrId a : row.attrs())
            if (row.marks(a, i)) marked.push_back(a);
        out.push_back(intern_marker(doc[i - 1], AttrSet(std::move(marked))));
    }
    return out;
}

Decoded decode(const MarkerString& w, const AttrSet& attrs) {
    std::vector<PositionSet> entries(attrs.size());
    std::string doc;
    doc.reserve(w.size());
    for (std::uint32_t i = 0; i < w.size(); ++i) {
        doc.push_back(marker_sign(w[i]));
        for (AttrId a : marker_attrs(w[i])) {
            const auto& ids = attrs.ids();
            auto it = std::lower_bound(ids.begin(), ids.end(), a, attr_precedes);
            if (it == ids.end() || *it != a)
                throw ContractViolation("marker attribute outside decode context");
            entries[static_cast<std::size_t>(it - ids.begin())].push_back(i + 1);
        }
    }
    return Decoded{std::move(doc),
                   Row(attrs, static_cast<std::uint32_t>(w.size()), std::move(entries))};
}

Row pad(const Row& row, const AttrSet& target) {
    if (!row.attrs().subset_of(target))
        throw ContractViolation("pad target must contain the row context");
    Row out(target, row.length());
    for (AttrId a : row.attrs()) out = out.with_entry(a, row.at(a));
    return out;
}

Table pad(const Table& table, const AttrSet& target) {
    Table out(target, table.length());
    for (const Row& r : table.rows()) out.insert(pad(r, target));
    return out;
}

Row restrict_to(const Row& row, const AttrSet& target) {
    if (!target.subset_of(row.attrs()))
        throw ContractViolation("restriction target must be within the row context");
    Row out(target, row.length());
    for (AttrId a : target) out = out.with_entry(a, row.at(a));
    return out;
}

}  // namespace markex
