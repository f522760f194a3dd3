#include "markex/symbols.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "markex/errors.hpp"

namespace markex {

namespace {

struct MarkerData {
    char sign;
    AttrSet attrs;
};

struct MarkerKeyHash {
    std::size_t operator()(const std::pair<char, std::vector<AttrId>>& k) const {
        std::size_t h = std::hash<char>{}(k.first);
        for (AttrId id : k.second) h = h * 1000003u ^ std::hash<AttrId>{}(id);
        return h;
    }
};

// Process-wide interner. Append-only; lookups after interning are lock-free
// reads of stable deque slots.
struct Pool {
    std::mutex mu;
    std::deque<std::string> attr_names;
    std::unordered_map<std::string, AttrId> attr_ids;
    std::deque<MarkerData> markers;
    std::unordered_map<std::pair<char, std::vector<AttrId>>, MarkerId, MarkerKeyHash> marker_ids;
};

Pool& pool() {
    static Pool* p = new Pool();
    return *p;
}

}  // namespace

AttrId intern_attr(std::string_view name) {
    if (name.empty()) throw ContractViolation("attribute name must be non-empty");
    Pool& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    auto it = p.attr_ids.find(std::string(name));
    if (it != p.attr_ids.end()) return it->second;
    AttrId id = static_cast<AttrId>(p.attr_names.size());
    p.attr_names.emplace_back(name);
    p.attr_ids.emplace(std::string(name), id);
    return id;
}

const std::string& attr_name(AttrId id) {
    Pool& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    if (id >= p.attr_names.size()) throw ContractViolation("unknown attribute id");
    return p.attr_names[id];
}

bool attr_precedes(AttrId a, AttrId b) {
    if (a == b) return false;
    return attr_name(a) < attr_name(b);
}

AttrSet::AttrSet(std::vector<AttrId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end(), attr_precedes);
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

AttrSet AttrSet::named(std::initializer_list<std::string_view> names) {
    std::vector<AttrId> ids;
    ids.reserve(names.size());
    for (std::string_view n : names) ids.push_back(intern_attr(n));
    return AttrSet(std::move(ids));
}

bool AttrSet::contains(AttrId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id, attr_precedes);
}

bool AttrSet::subset_of(const AttrSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end(),
                         attr_precedes);
}

AttrSet AttrSet::unite(const AttrSet& other) const {
    std::vector<AttrId> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out), attr_precedes);
    AttrSet r;
    r.ids_ = std::move(out);
    return r;
}

AttrSet AttrSet::intersect(const AttrSet& other) const {
    std::vector<AttrId> out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out), attr_precedes);
    AttrSet r;
    r.ids_ = std::move(out);
    return r;
}

AttrSet AttrSet::subtract(const AttrSet& other) const {
    std::vector<AttrId> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out), attr_precedes);
    AttrSet r;
    r.ids_ = std::move(out);
    return r;
}

AttrSet AttrSet::combine(SetOp op, const AttrSet& other) const {
    switch (op) {
        case SetOp::Union: return unite(other);
        case SetOp::Intersect: return intersect(other);
        case SetOp::Difference: return subtract(other);
    }
    throw ContractViolation("bad SetOp");
}

AttrSet AttrSet::with(AttrId id) const {
    std::vector<AttrId> out = ids_;
    out.push_back(id);
    return AttrSet(std::move(out));
}

AttrSet AttrSet::without(AttrId id) const {
    std::vector<AttrId> out;
    out.reserve(ids_.size());
    for (AttrId x : ids_)
        if (x != id) out.push_back(x);
    AttrSet r;
    r.ids_ = std::move(out);
    return r;
}

MarkerId intern_marker(char sign, const AttrSet& attrs) {
    Pool& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    auto key = std::make_pair(sign, attrs.ids());
    auto it = p.marker_ids.find(key);
    if (it != p.marker_ids.end()) return it->second;
    MarkerId id = static_cast<MarkerId>(p.markers.size());
    p.markers.push_back(MarkerData{sign, attrs});
    p.marker_ids.emplace(std::move(key), id);
    return id;
}

char marker_sign(MarkerId m) {
    Pool& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    if (m >= p.markers.size()) throw ContractViolation("unknown marker id");
    return p.markers[m].sign;
}

const AttrSet& marker_attrs(MarkerId m) {
    Pool& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    if (m >= p.markers.size()) throw ContractViolation("unknown marker id");
    return p.markers[m].attrs;
}

std::strong_ordering marker_order(MarkerId a, MarkerId b) {
    if (a == b) return std::strong_ordering::equal;
    char sa = marker_sign(a), sb = marker_sign(b);
    if (sa != sb) return sa <=> sb;
    const auto& xa = marker_attrs(a).ids();
    const auto& xb = marker_attrs(b).ids();
    std::size_t n = std::min(xa.size(), xb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (xa[i] != xb[i]) return attr_precedes(xa[i], xb[i]) ? std::strong_ordering::less
                                                               : std::strong_ordering::greater;
    }
    return xa.size() <=> xb.size();
}

bool marker_precedes(MarkerId a, MarkerId b) { return marker_order(a, b) < 0; }

Alphabets Alphabets::make(std::string_view sigma_chars, AttrSet gamma) {
    std::string s(sigma_chars);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return Alphabets{std::move(s), std::move(gamma)};
}

bool Alphabets::has_sign(char c) const {
    return std::binary_search(sigma.begin(), sigma.end(), c);
}

bool Alphabets::covers_marker(MarkerId m) const {
    return has_sign(marker_sign(m)) && marker_attrs(m).subset_of(gamma);
}

Alphabets Alphabets::unite(const Alphabets& other) const {
    return make(sigma + other.sigma, gamma.unite(other.gamma));
}

std::uint64_t Alphabets::marker_alphabet_size() const {
    if (gamma.size() > 24)
        throw ResourceLimitError("marker alphabet too large to materialize", gamma.size());
    return static_cast<std::uint64_t>(sigma.size()) << gamma.size();
}

std::vector<MarkerId> Alphabets::all_markers() const {
    marker_alphabet_size();
    std::vector<MarkerId> out;
    for (char c : sigma) {
        std::vector<MarkerId> per = all_markers_with_sign(c);
        out.insert(out.end(), per.begin(), per.end());
    }
    return out;
}

std::vector<MarkerId> Alphabets::all_markers_with_sign(char c) const {
    if (gamma.size() > 24)
        throw ResourceLimitError("marker alphabet too large to materialize", gamma.size());
    const auto& ids = gamma.ids();
    std::uint64_t count = std::uint64_t{1} << ids.size();
    std::vector<MarkerId> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<AttrId> subset;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) subset.push_back(ids[i]);
        out.push_back(intern_marker(c, AttrSet(std::move(subset))));
    }
    std::sort(out.begin(), out.end(), marker_precedes);
    return out;
}

std::string sign_of(const MarkerString& w) {
    std::string s;
    s.reserve(w.size());
    for (MarkerId m : w) s.push_back(marker_sign(m));
    return s;
}

std::strong_ordering marker_string_order(const MarkerString& a, const MarkerString& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto c = marker_order(a[i], b[i]);
        if (c != 0) return c;
    }
    return std::strong_ordering::equal;
}

bool marker_string_precedes(const MarkerString& a, const MarkerString& b) {
    return marker_string_order(a, b) < 0;
}

}  // namespace markex
