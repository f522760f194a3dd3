#ifndef MARKEX_SYMBOLS_HPP
#define MARKEX_SYMBOLS_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace markex {

// Attribute names and markers are interned process-wide: an id names the
// same symbol everywhere, so a marker built over one attribute context is
// usable over any larger context without rewriting.
using AttrId = std::uint32_t;
using MarkerId = std::uint32_t;

enum class SetOp { Union, Intersect, Difference };

AttrId intern_attr(std::string_view name);
const std::string& attr_name(AttrId id);

// Canonical order on attributes is their name order (not intern order), so
// serialized output does not depend on interning history.
bool attr_precedes(AttrId a, AttrId b);

// Sorted-unique set of attribute ids, ordered by attribute name.
class AttrSet {
public:
    AttrSet() = default;
    explicit AttrSet(std::vector<AttrId> ids);
    static AttrSet named(std::initializer_list<std::string_view> names);

    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<AttrId>& ids() const noexcept { return ids_; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }

    bool contains(AttrId id) const;
    bool subset_of(const AttrSet& other) const;

    AttrSet unite(const AttrSet& other) const;
    AttrSet intersect(const AttrSet& other) const;
    AttrSet subtract(const AttrSet& other) const;
    AttrSet combine(SetOp op, const AttrSet& other) const;

    AttrSet with(AttrId id) const;
    AttrSet without(AttrId id) const;

    bool operator==(const AttrSet&) const = default;

private:
    std::vector<AttrId> ids_;  // sorted by attr_precedes, unique
};

// Markers: one alphabet symbol pairing a terminal sign with an attribute set.
MarkerId intern_marker(char sign, const AttrSet& attrs);
char marker_sign(MarkerId m);
const AttrSet& marker_attrs(MarkerId m);

// Canonical marker order: by sign, then by attribute-name sequence
// (so {}:a < {x}:a < {x,y}:a < {y}:a).
std::strong_ordering marker_order(MarkerId a, MarkerId b);
bool marker_precedes(MarkerId a, MarkerId b);

// The (sigma, gamma) context an extractor lives over.
struct Alphabets {
    std::string sigma;  // sorted unique characters
    AttrSet gamma;

    static Alphabets make(std::string_view sigma_chars, AttrSet gamma);

    bool has_sign(char c) const;
    bool covers_marker(MarkerId m) const;
    Alphabets unite(const Alphabets& other) const;

    // Number of distinct markers |sigma| * 2^|gamma|; throws ResourceLimitError
    // beyond 2^24, since callers materialize the result.
    std::uint64_t marker_alphabet_size() const;
    std::vector<MarkerId> all_markers() const;            // guarded as above
    std::vector<MarkerId> all_markers_with_sign(char c) const;

    bool operator==(const Alphabets&) const = default;
};

using MarkerString = std::vector<MarkerId>;

std::string sign_of(const MarkerString& w);

// Position-major lexicographic order on marker strings (shorter first).
std::strong_ordering marker_string_order(const MarkerString& a, const MarkerString& b);
bool marker_string_precedes(const MarkerString& a, const MarkerString& b);

}  // namespace markex

#endif
