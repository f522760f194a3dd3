#include "markex/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "markex/errors.hpp"

namespace markex {

namespace {

using nlohmann::json;

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line, col);
    }
    void expect(char c) {
        if (done() || peek() != c) fail(std::string("expected '") + c + "'");
        take();
    }
    std::string name() {
        std::string out;
        while (!done() && is_name_char(peek())) out.push_back(take());
        if (out.empty()) fail("expected a name");
        return out;
    }
};

MarkerId parse_marker_at(Cursor& cur) {
    cur.expect('{');
    std::vector<AttrId> attrs;
    cur.skip_space();
    if (!cur.done() && cur.peek() != '}') {
        while (true) {
            cur.skip_space();
            attrs.push_back(intern_attr(cur.name()));
            cur.skip_space();
            if (cur.done()) cur.fail("unterminated marker");
            if (cur.peek() == ',') {
                cur.take();
                continue;
            }
            break;
        }
    }
    cur.expect('}');
    cur.expect(':');
    if (cur.done()) cur.fail("marker needs a sign character");
    char sign = cur.take();
    if (std::isspace(static_cast<unsigned char>(sign))) cur.fail("marker needs a sign character");
    return intern_marker(sign, AttrSet(std::move(attrs)));
}

struct Line {
    std::size_t number;
    std::string text;
};

// strips comments and blank lines; a comment '#' must start the line or
// follow whitespace, so '#' can appear as a terminal symbol (`sigma a#`,
// `{}:#`)
std::vector<Line> data_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        std::size_t hash = std::string_view::npos;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (raw[i] == '#' &&
                (i == 0 || std::isspace(static_cast<unsigned char>(raw[i - 1])))) {
                hash = i;
                break;
            }
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string trimmed(raw);
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        std::size_t first = 0;
        while (first < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[first])))
            ++first;
        trimmed.erase(0, first);
        if (!trimmed.empty()) out.push_back({number, std::move(trimmed)});
        start = end + 1;
        if (end == text.size()) break;
    }
    return out;
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

json position_array(const PositionSet& ps) {
    json arr = json::array();
    for (std::uint32_t p : ps) arr.push_back(p);
    return arr;
}

std::string cell_braces(const PositionSet& ps) {
    std::string out = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ps[i]);
    }
    return out + "}";
}

}  // namespace

std::string format_marker(MarkerId m) {
    std::string out = "{";
    const auto& ids = marker_attrs(m).ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += attr_name(ids[i]);
    }
    out += "}:";
    out.push_back(marker_sign(m));
    return out;
}

std::string format_marker_string(const MarkerString& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += format_marker(w[i]);
    }
    return out;
}

MarkerId parse_marker(std::string_view text) {
    Cursor cur{text};
    cur.skip_space();
    MarkerId m = parse_marker_at(cur);
    cur.skip_space();
    if (!cur.done()) cur.fail("trailing input after marker");
    return m;
}

MarkerString parse_marker_string(std::string_view text) {
    Cursor cur{text};
    MarkerString out;
    cur.skip_space();
    while (!cur.done()) {
        out.push_back(parse_marker_at(cur));
        cur.skip_space();
    }
    return out;
}

std::string format_automaton(const Automaton& a) {
    std::ostringstream out;
    out << "sigma " << a.context.sigma << "\n";
    out << "gamma";
    for (AttrId id : a.context.gamma) out << " " << attr_name(id);
    out << "\n";
    out << "states " << a.state_count << "\n";
    out << "initial " << a.initial << "\n";
    out << "final";
    for (StateId f : a.finals) out << " " << f;
    out << "\n";
    for (StateId s = 0; s < a.state_count; ++s) {
        std::vector<MarkerId> labels;
        for (const auto& [label, ts] : a.arcs[s]) labels.push_back(label);
        std::sort(labels.begin(), labels.end(), marker_precedes);
        for (MarkerId label : labels)
            for (StateId t : a.arcs[s].at(label))
                out << "arc " << s << " " << t << " " << format_marker(label) << "\n";
    }
    return out.str();
}

Automaton parse_automaton(std::string_view text) {
    std::string sigma;
    std::vector<AttrId> gamma;
    std::optional<StateId> declared_states;
    std::optional<StateId> initial;
    std::vector<StateId> finals;
    struct RawArc {
        StateId from, to;
        std::optional<MarkerId> label;  // nullopt = epsilon
    };
    std::vector<RawArc> raw;
    StateId max_state = 0;

    auto parse_state = [&](const std::string& tok, std::size_t line) {
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("state ids are non-negative integers", line, 1);
        StateId s = static_cast<StateId>(std::stoul(tok));
        max_state = std::max(max_state, s);
        return s;
    };

    for (const Line& line : data_lines(text)) {
        std::vector<std::string> toks = split_tokens(line.text);
        const std::string& head = toks[0];
        if (head == "sigma") {
            for (std::size_t i = 1; i < toks.size(); ++i) sigma += toks[i];
        } else if (head == "gamma") {
            for (std::size_t i = 1; i < toks.size(); ++i) gamma.push_back(intern_attr(toks[i]));
        } else if (head == "states") {
            if (toks.size() != 2) throw ParseError("states line needs a count", line.number, 1);
            declared_states = parse_state(toks[1], line.number);
        } else if (head == "initial") {
            if (toks.size() != 2) throw ParseError("initial line needs a state", line.number, 1);
            initial = parse_state(toks[1], line.number);
        } else if (head == "final") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                finals.push_back(parse_state(toks[i], line.number));
        } else if (head == "arc") {
            if (toks.size() != 4)
                throw ParseError("arc line needs: arc FROM TO LABEL", line.number, 1);
            RawArc arc;
            arc.from = parse_state(toks[1], line.number);
            arc.to = parse_state(toks[2], line.number);
            if (toks[3] == "<eps>") {
                arc.label = std::nullopt;
            } else {
                try {
                    arc.label = parse_marker(toks[3]);
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), line.number, e.column());
                }
            }
            raw.push_back(arc);
        } else {
            throw ParseError("unknown automaton directive '" + head + "'", line.number, 1);
        }
    }
    if (!initial) throw ParseError("automaton needs an initial line", 1, 1);

    // context = declared plus whatever the labels mention
    for (const RawArc& arc : raw)
        if (arc.label) {
            sigma.push_back(marker_sign(*arc.label));
            for (AttrId id : marker_attrs(*arc.label)) gamma.push_back(id);
        }
    Alphabets context = Alphabets::make(sigma, AttrSet(std::move(gamma)));

    StateId count = std::max(declared_states.value_or(0), static_cast<StateId>(max_state + 1));
    if (count == 0) count = 1;
    NfaBuilder builder(context);
    for (StateId s = 0; s < count; ++s) builder.add_state();
    for (StateId f : finals) builder.mark_final(f);
    for (const RawArc& arc : raw) {
        if (arc.label)
            builder.add_arc(arc.from, *arc.label, arc.to);
        else
            builder.add_epsilon(arc.from, arc.to);
    }
    return builder.finish(*initial);
}

std::string format_grammar(const Grammar& g) {
    std::ostringstream out;
    out << "sigma " << g.context.sigma << "\n";
    out << "gamma";
    for (AttrId id : g.context.gamma) out << " " << attr_name(id);
    out << "\n";
    out << "start " << g.nonterminal_names[g.start] << "\n";
    // one line per head, alternatives joined; heads in id order
    std::map<std::uint32_t, std::vector<std::string>> alts;
    for (const GrammarRule& r : g.rules) {
        std::string body;
        if (r.body.empty()) {
            body = "<eps>";
        } else {
            for (std::size_t i = 0; i < r.body.size(); ++i) {
                if (i) body += " ";
                body += r.body[i].terminal ? format_marker(r.body[i].id)
                                           : g.nonterminal_names[r.body[i].id];
            }
        }
        alts[r.head].push_back(std::move(body));
    }
    for (const auto& [head, bodies] : alts) {
        out << g.nonterminal_names[head] << " ->";
        for (std::size_t i = 0; i < bodies.size(); ++i)
            out << (i ? " | " : " ") << bodies[i];
        out << "\n";
    }
    return out.str();
}

Grammar parse_grammar(std::string_view text) {
    std::string sigma;
    std::vector<AttrId> gamma;
    std::optional<std::string> start_name;
    std::vector<std::string> names;
    std::map<std::string, std::uint32_t> ids;
    auto nt = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        names.push_back(name);
        std::uint32_t id = static_cast<std::uint32_t>(names.size() - 1);
        ids.emplace(name, id);
        return id;
    };
    struct RawRule {
        std::uint32_t head;
        std::vector<std::string> body;
        std::size_t line;
    };
    std::vector<RawRule> raw;

    for (const Line& line : data_lines(text)) {
        std::vector<std::string> toks = split_tokens(line.text);
        if (toks[0] == "sigma" && (toks.size() < 2 || toks[1] != "->")) {
            for (std::size_t i = 1; i < toks.size(); ++i) sigma += toks[i];
            continue;
        }
        if (toks[0] == "gamma" && (toks.size() < 2 || toks[1] != "->")) {
            for (std::size_t i = 1; i < toks.size(); ++i) gamma.push_back(intern_attr(toks[i]));
            continue;
        }
        if (toks[0] == "start" && (toks.size() < 2 || toks[1] != "->")) {
            if (toks.size() != 2) throw ParseError("start line needs a name", line.number, 1);
            start_name = toks[1];
            continue;
        }
        if (toks.size() < 2 || toks[1] != "->")
            throw ParseError("expected a rule: HEAD -> BODY", line.number, 1);
        std::uint32_t head = nt(toks[0]);
        std::vector<std::string> body;
        for (std::size_t i = 2; i <= toks.size(); ++i) {
            if (i == toks.size() || toks[i] == "|") {
                raw.push_back({head, body, line.number});
                body.clear();
            } else {
                body.push_back(toks[i]);
            }
        }
    }
    if (raw.empty()) throw ParseError("grammar needs at least one rule", 1, 1);

    std::vector<GrammarRule> rules;
    for (const RawRule& r : raw) {
        GrammarRule rule;
        rule.head = r.head;
        if (!(r.body.size() == 1 && r.body[0] == "<eps>")) {
            for (const std::string& tok : r.body) {
                if (tok == "<eps>")
                    throw ParseError("<eps> must be the whole alternative", r.line, 1);
                if (tok[0] == '{') {
                    MarkerId m;
                    try {
                        m = parse_marker(tok);
                    } catch (const ParseError& e) {
                        throw ParseError(e.what(), r.line, e.column());
                    }
                    rule.body.push_back(GrammarSym::marker(m));
                    sigma.push_back(marker_sign(m));
                    for (AttrId id : marker_attrs(m)) gamma.push_back(id);
                } else {
                    rule.body.push_back(GrammarSym::nonterminal(nt(tok)));
                }
            }
        }
        rules.push_back(std::move(rule));
    }
    std::uint32_t start = 0;
    if (start_name) {
        auto it = ids.find(*start_name);
        if (it == ids.end()) throw ParseError("start symbol has no rule or mention", 1, 1);
        start = it->second;
    } else {
        start = raw.front().head;
    }
    Alphabets context = Alphabets::make(sigma, AttrSet(std::move(gamma)));
    return make_grammar(std::move(context), std::move(names), std::move(rules), start);
}

namespace {

// recursive-descent expression parser
struct ExprParser {
    Cursor cur;

    ExtractorExpr parse() {
        ExtractorExpr e = parse_join();
        cur.skip_space();
        if (!cur.done()) cur.fail("trailing input after expression");
        return e;
    }

    bool lookahead_word(std::string_view word) {
        cur.skip_space();
        if (cur.text.substr(cur.pos, word.size()) != word) return false;
        std::size_t after = cur.pos + word.size();
        // keywords must not run into a longer name
        if (after < cur.text.size() && is_name_char(cur.text[after]) && is_name_char(word.back()))
            return false;
        return true;
    }

    void eat_word(std::string_view word) {
        for (char c : word) {
            (void)c;
            cur.take();
        }
    }

    ExtractorExpr parse_join() {
        ExtractorExpr e = parse_union();
        while (lookahead_word("join[")) {
            eat_word("join[");
            if (cur.done()) cur.fail("join needs a kind");
            char k = cur.take();
            JoinKind kind;
            switch (k) {
                case 'u': kind = JoinKind::Union; break;
                case 'i': kind = JoinKind::Intersect; break;
                case 'd': kind = JoinKind::Difference; break;
                case 'n': kind = JoinKind::Natural; break;
                default: cur.fail("join kind must be one of u, i, d, n");
            }
            cur.expect(']');
            e = ExtractorExpr::joined(kind, std::move(e), parse_union());
        }
        return e;
    }

    ExtractorExpr parse_union() {
        ExtractorExpr e = parse_difference();
        while (true) {
            cur.skip_space();
            if (cur.done() || cur.peek() != '|') break;
            cur.take();
            e = ExtractorExpr::binary(ExtractorExpr::Kind::Union, std::move(e),
                                      parse_difference());
        }
        return e;
    }

    ExtractorExpr parse_difference() {
        ExtractorExpr e = parse_intersect();
        while (true) {
            cur.skip_space();
            if (cur.done() || cur.peek() != '\\') break;
            cur.take();
            e = ExtractorExpr::binary(ExtractorExpr::Kind::Difference, std::move(e),
                                      parse_intersect());
        }
        return e;
    }

    ExtractorExpr parse_intersect() {
        ExtractorExpr e = parse_concat();
        while (true) {
            cur.skip_space();
            if (cur.done() || cur.peek() != '&') break;
            cur.take();
            e = ExtractorExpr::binary(ExtractorExpr::Kind::Intersect, std::move(e),
                                      parse_concat());
        }
        return e;
    }

    bool starts_primary() {
        cur.skip_space();
        if (cur.done()) return false;
        char c = cur.peek();
        return c == '(' || c == '{' || c == '!' || lookahead_word("pi{") ||
               lookahead_word("merge(") || lookahead_word("rho(");
    }

    ExtractorExpr parse_concat() {
        ExtractorExpr e = parse_prefix();
        while (starts_primary())
            e = ExtractorExpr::binary(ExtractorExpr::Kind::Concat, std::move(e), parse_prefix());
        return e;
    }

    ExtractorExpr parse_prefix() {
        cur.skip_space();
        if (!cur.done() && cur.peek() == '!') {
            cur.take();
            return ExtractorExpr::complement(parse_prefix());
        }
        return parse_postfix();
    }

    ExtractorExpr parse_postfix() {
        ExtractorExpr e = parse_primary();
        while (true) {
            cur.skip_space();
            if (cur.done() || cur.peek() != '*') break;
            cur.take();
            e = ExtractorExpr::star(std::move(e));
        }
        return e;
    }

    ExtractorExpr parse_primary() {
        cur.skip_space();
        if (cur.done()) cur.fail("expected an expression");
        if (cur.peek() == '(') {
            cur.take();
            ExtractorExpr e = parse_join();
            cur.skip_space();
            cur.expect(')');
            return e;
        }
        if (lookahead_word("pi{")) {
            eat_word("pi");
            cur.expect('{');
            std::vector<AttrId> keep;
            cur.skip_space();
            if (!cur.done() && cur.peek() != '}') {
                while (true) {
                    cur.skip_space();
                    keep.push_back(intern_attr(cur.name()));
                    cur.skip_space();
                    if (!cur.done() && cur.peek() == ',') {
                        cur.take();
                        continue;
                    }
                    break;
                }
            }
            cur.expect('}');
            return ExtractorExpr::unary_op(Project{AttrSet(std::move(keep))}, parse_argument());
        }
        if (lookahead_word("merge(")) {
            eat_word("merge(");
            cur.skip_space();
            AttrId into = intern_attr(cur.name());
            cur.skip_space();
            cur.expect(',');
            cur.skip_space();
            AttrId from = intern_attr(cur.name());
            cur.skip_space();
            cur.expect(',');
            cur.skip_space();
            if (cur.done()) cur.fail("merge needs a set operation");
            char k = cur.take();
            SetOp op;
            switch (k) {
                case 'u': op = SetOp::Union; break;
                case 'i': op = SetOp::Intersect; break;
                case 'd': op = SetOp::Difference; break;
                default: cur.fail("merge operation must be one of u, i, d");
            }
            cur.skip_space();
            cur.expect(')');
            return ExtractorExpr::unary_op(Merge{into, from, op}, parse_argument());
        }
        if (lookahead_word("rho(")) {
            eat_word("rho(");
            cur.skip_space();
            AttrId from = intern_attr(cur.name());
            cur.skip_space();
            cur.expect('-');
            cur.expect('>');
            cur.skip_space();
            AttrId to = intern_attr(cur.name());
            cur.skip_space();
            cur.expect(')');
            return ExtractorExpr::unary_op(Rename{from, to}, parse_argument());
        }
        if (cur.peek() == '{') return ExtractorExpr::make_atom(parse_marker_at(cur));
        cur.fail("expected '(', '{', '!', 'pi', 'merge' or 'rho'");
    }

    ExtractorExpr parse_argument() {
        cur.skip_space();
        cur.expect('(');
        ExtractorExpr e = parse_join();
        cur.skip_space();
        cur.expect(')');
        return e;
    }
};

void collect_expr_context(const ExtractorExpr& e, std::string& sigma,
                          std::vector<AttrId>& gamma) {
    if (e.kind == ExtractorExpr::Kind::Atom) {
        sigma.push_back(marker_sign(e.atom));
        for (AttrId id : marker_attrs(e.atom)) gamma.push_back(id);
    }
    if (e.unary) {
        if (const Rename* r = std::get_if<Rename>(&*e.unary)) gamma.push_back(r->to);
    }
    for (const ExtractorExpr& child : e.children) collect_expr_context(child, sigma, gamma);
}

}  // namespace

ParsedExpression parse_expression_file(std::string_view text) {
    std::string sigma;
    std::vector<AttrId> gamma;
    std::string body;
    for (const Line& line : data_lines(text)) {
        std::vector<std::string> toks = split_tokens(line.text);
        if (toks[0] == "sigma") {
            for (std::size_t i = 1; i < toks.size(); ++i) sigma += toks[i];
        } else if (toks[0] == "gamma") {
            for (std::size_t i = 1; i < toks.size(); ++i) gamma.push_back(intern_attr(toks[i]));
        } else {
            body += line.text;
            body += " ";
        }
    }
    ExprParser parser{Cursor{body}};
    ExtractorExpr expr = parser.parse();
    collect_expr_context(expr, sigma, gamma);
    return ParsedExpression{std::move(expr), Alphabets::make(sigma, AttrSet(std::move(gamma)))};
}

Extractor parse_extractor(std::string_view text) {
    for (const Line& line : data_lines(text)) {
        if (line.text.find(" -> ") != std::string::npos) return Extractor(parse_grammar(text));
        if (line.text.size() > 3 && line.text.substr(line.text.size() - 3) == " ->")
            return Extractor(parse_grammar(text));
    }
    return Extractor(parse_automaton(text));
}

std::string format_rows_json(const AttrSet& attrs, std::uint32_t length,
                             const std::vector<Row>& rows) {
    json out;
    json names = json::array();
    for (AttrId id : attrs) names.push_back(attr_name(id));
    out["attributes"] = names;
    out["length"] = length;
    json arr = json::array();
    for (const Row& r : rows) {
        json obj;
        for (AttrId id : attrs) obj[attr_name(id)] = position_array(r.at(id));
        arr.push_back(obj);
    }
    out["rows"] = arr;
    return out.dump(2);
}

std::string format_table_json(const Table& t) {
    return format_rows_json(t.attrs(), t.length(), t.rows());
}

std::string format_rows_csv(const AttrSet& attrs, const std::vector<Row>& rows) {
    std::ostringstream out;
    bool first = true;
    for (AttrId id : attrs) {
        if (!first) out << ",";
        out << attr_name(id);
        first = false;
    }
    out << "\n";
    for (const Row& r : rows) {
        first = true;
        for (AttrId id : attrs) {
            if (!first) out << ",";
            out << '"' << cell_braces(r.at(id)) << '"';
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string format_table_csv(const Table& t) { return format_rows_csv(t.attrs(), t.rows()); }

Row parse_row_json(std::string_view text, const AttrSet& base, std::uint32_t length) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 1, e.byte);
    }
    if (!obj.is_object()) throw ParseError("row must be a JSON object", 1, 1);
    std::vector<AttrId> mentioned;
    for (const auto& [key, value] : obj.items()) mentioned.push_back(intern_attr(key));
    AttrSet attrs = base.unite(AttrSet(std::move(mentioned)));
    Row row(attrs, length);
    for (const auto& [key, value] : obj.items()) {
        if (!value.is_array()) throw ParseError("entry of '" + key + "' must be an array", 1, 1);
        std::vector<std::uint32_t> ps;
        for (const auto& v : value) {
            if (!v.is_number_unsigned()) throw ParseError("positions must be positive", 1, 1);
            ps.push_back(v.get<std::uint32_t>());
        }
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        try {
            row = row.with_entry(intern_attr(key), std::move(ps));
        } catch (const ContractViolation& e) {
            throw ParseError(e.what(), 1, 1);
        }
    }
    return row;
}

std::string format_answer_json(const Answer& a) {
    json out;
    out["problem"] = a.problem;
    switch (a.verdict) {
        case Verdict::True: out["verdict"] = "true"; break;
        case Verdict::False: out["verdict"] = "false"; break;
        case Verdict::Unknown: out["verdict"] = "unknown"; break;
    }
    if (a.witness) out["witness"] = format_marker_string(*a.witness);
    if (!a.note.empty()) out["note"] = a.note;
    out["cost"] = {{"nodes", a.cost.nodes}, {"arcs", a.cost.arcs}, {"millis", a.cost.millis}};
    return out.dump(2);
}

CnfFormula parse_cnf(std::string_view text) {
    CnfFormula out;
    bool seen_header = false;
    std::vector<int> pending;
    for (const Line& line : data_lines(text)) {
        std::vector<std::string> toks = split_tokens(line.text);
        if (toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (toks.size() != 4 || toks[1] != "cnf")
                throw ParseError("expected: p cnf VARS CLAUSES", line.number, 1);
            out.variable_count = static_cast<std::uint32_t>(std::stoul(toks[2]));
            seen_header = true;
            continue;
        }
        if (!seen_header) throw ParseError("clause before the p cnf header", line.number, 1);
        for (const std::string& tok : toks) {
            int lit;
            try {
                lit = std::stoi(tok);
            } catch (...) {
                throw ParseError("bad literal '" + tok + "'", line.number, 1);
            }
            if (lit == 0) {
                if (pending.size() != 3)
                    throw ParseError("clauses need exactly three literals", line.number, 1);
                out.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
    }
    if (!pending.empty()) throw ParseError("unterminated clause (missing 0)", 1, 1);
    if (!seen_header) throw ParseError("missing p cnf header", 1, 1);
    return out;
}

PcpInstance parse_pcp(std::string_view text) {
    PcpInstance out;
    bool seen_bound = false;
    for (const Line& line : data_lines(text)) {
        std::vector<std::string> toks = split_tokens(line.text);
        if (!seen_bound) {
            if (toks.size() != 1)
                throw ParseError("first data line must be the bound", line.number, 1);
            try {
                out.bound = static_cast<std::uint32_t>(std::stoul(toks[0]));
            } catch (...) {
                throw ParseError("bad bound '" + toks[0] + "'", line.number, 1);
            }
            seen_bound = true;
            continue;
        }
        if (toks.size() != 2)
            throw ParseError("pair lines need two words: LEFT RIGHT", line.number, 1);
        out.pairs.emplace_back(toks[0], toks[1]);
    }
    if (!seen_bound) throw ParseError("missing bound line", 1, 1);
    if (out.pairs.empty()) throw ParseError("instance needs at least one pair", 1, 1);
    return out;
}

}  // namespace markex
