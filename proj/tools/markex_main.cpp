#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "markex/errors.hpp"
#include "markex/text.hpp"

namespace {

using namespace markex;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

int verdict_exit(const Answer& answer) {
    std::cout << format_answer_json(answer) << "\n";
    switch (answer.verdict) {
        case Verdict::True: return kExitTrue;
        case Verdict::False: return kExitFalse;
        case Verdict::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

struct EvalOptions {
    std::string extractor_path;
    std::string doc;
    std::string format = "rows";
    std::uint64_t limit = 0;  // 0 = unlimited
    Limits limits;
};

int run_eval(const EvalOptions& opt) {
    Extractor e = parse_extractor(read_file(opt.extractor_path));
    std::uint64_t budget = opt.limits.max_rows;
    std::uint64_t cap = opt.limit == 0 ? budget : std::min(opt.limit, budget);
    SliceEnumeration rows = enumerate_slice(e, opt.doc, cap);
    bool user_capped = opt.limit != 0 && rows.strings.size() >= opt.limit;
    if (rows.truncated && !user_capped) {
        std::cerr << "row budget exceeded; raise --row-budget\n";
        return kExitUnknown;
    }
    std::vector<Row> out;
    out.reserve(rows.strings.size());
    for (const MarkerString& w : rows.strings)
        out.push_back(decode(w, e.context().gamma).row);
    if (opt.format == "csv")
        std::cout << format_rows_csv(e.context().gamma, out);
    else
        std::cout << format_rows_json(e.context().gamma,
                                      static_cast<std::uint32_t>(opt.doc.size()), out)
                  << "\n";
    return kExitTrue;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"marker-language information extraction toolkit"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "evaluate an extractor on a document");
    eval->add_option("extractor", eval_opt.extractor_path, "extractor file")->required();
    eval->add_option("document", eval_opt.doc, "document string");
    eval->add_option("--format", eval_opt.format, "rows | csv")
        ->check(CLI::IsMember({"rows", "csv"}));
    eval->add_option("--limit", eval_opt.limit, "cap on printed rows");
    eval->add_option("--row-budget", eval_opt.limits.max_rows, "enumeration budget");

    struct {
        std::string extractor, doc, row;
    } member_opt;
    CLI::App* member = app.add_subcommand("member", "is the row in the extracted table?");
    member->add_option("extractor", member_opt.extractor)->required();
    member->add_option("document", member_opt.doc);
    member->add_option("row", member_opt.row, "JSON object attr -> positions")->required();

    struct {
        std::string extractor, doc;
    } empty_opt;
    CLI::App* empty_cmd = app.add_subcommand("empty", "is the extracted table empty?");
    empty_cmd->add_option("extractor", empty_opt.extractor)->required();
    empty_cmd->add_option("document", empty_opt.doc);

    struct BinaryOpt {
        std::string left, right, doc;
        Limits limits;
    };
    BinaryOpt disjoint_opt, contains_opt, equiv_opt;
    auto add_binary = [&](const char* name, const char* help, BinaryOpt& opt) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("left", opt.left)->required();
        cmd->add_option("right", opt.right)->required();
        cmd->add_option("document", opt.doc);
        cmd->add_option("--row-budget", opt.limits.max_rows, "enumeration budget");
        cmd->add_option("--det-budget", opt.limits.max_det_states, "determinization budget");
        return cmd;
    };
    CLI::App* disjoint = add_binary("disjoint", "do the two tables share no row?", disjoint_opt);
    CLI::App* contains =
        add_binary("contains", "is the left table contained in the right?", contains_opt);
    CLI::App* equiv = add_binary("equiv", "are the two tables equal?", equiv_opt);

    struct {
        std::string expr_path, out_path;
    } compile_opt;
    CLI::App* compile_cmd = app.add_subcommand("compile", "compile an expression to an automaton");
    compile_cmd->add_option("expression", compile_opt.expr_path)->required();
    compile_cmd->add_option("-o,--output", compile_opt.out_path, "output file (default stdout)");

    struct {
        std::string extractor, doc;
        Limits limits;
    } verify_opt;
    CLI::App* verify = app.add_subcommand(
        "verify", "cross-check engine evaluation against the brute-force oracle");
    verify->add_option("extractor", verify_opt.extractor)->required();
    verify->add_option("document", verify_opt.doc);
    verify->add_option("--row-budget", verify_opt.limits.max_rows, "enumeration budget");

    struct {
        std::string instance, prefix;
    } sat_opt, pcp_opt;
    CLI::App* reduce = app.add_subcommand("reduce", "emit hardness-reduction fixtures");
    reduce->require_subcommand(1);
    CLI::App* reduce_sat = reduce->add_subcommand("sat", "containment fixture from a CNF formula");
    reduce_sat->add_option("instance", sat_opt.instance, "DIMACS-like file")->required();
    reduce_sat->add_option("-o,--output", sat_opt.prefix, "output path prefix")->required();
    CLI::App* reduce_pcp =
        reduce->add_subcommand("pcp", "disjointness fixture from a word-pair instance");
    reduce_pcp->add_option("instance", pcp_opt.instance, "bound + pair-per-line file")->required();
    reduce_pcp->add_option("-o,--output", pcp_opt.prefix, "output path prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitTrue : kExitUsage;
    }

    if (eval->parsed()) return run_eval(eval_opt);
    if (member->parsed()) {
        Extractor e = parse_extractor(read_file(member_opt.extractor));
        Row row = parse_row_json(member_opt.row, e.context().gamma,
                                 static_cast<std::uint32_t>(member_opt.doc.size()));
        bool in = tuple_member(e, member_opt.doc, row);
        std::cout << (in ? "true" : "false") << "\n";
        return in ? kExitTrue : kExitFalse;
    }
    if (empty_cmd->parsed()) {
        Extractor e = parse_extractor(read_file(empty_opt.extractor));
        return verdict_exit(table_empty(e, empty_opt.doc));
    }
    if (disjoint->parsed()) {
        Extractor a = parse_extractor(read_file(disjoint_opt.left));
        Extractor b = parse_extractor(read_file(disjoint_opt.right));
        return verdict_exit(table_disjoint(a, b, disjoint_opt.doc, disjoint_opt.limits));
    }
    if (contains->parsed()) {
        Extractor a = parse_extractor(read_file(contains_opt.left));
        Extractor b = parse_extractor(read_file(contains_opt.right));
        return verdict_exit(table_contains(a, b, contains_opt.doc, contains_opt.limits));
    }
    if (equiv->parsed()) {
        Extractor a = parse_extractor(read_file(equiv_opt.left));
        Extractor b = parse_extractor(read_file(equiv_opt.right));
        return verdict_exit(table_equivalent(a, b, equiv_opt.doc, equiv_opt.limits));
    }
    if (compile_cmd->parsed()) {
        ParsedExpression parsed = parse_expression_file(read_file(compile_opt.expr_path));
        Automaton compiled = compile(parsed.expr, parsed.context);
        std::string text = format_automaton(compiled);
        if (compile_opt.out_path.empty())
            std::cout << text;
        else
            write_file(compile_opt.out_path, text);
        return kExitTrue;
    }
    if (verify->parsed()) {
        Extractor e = parse_extractor(read_file(verify_opt.extractor));
        Table engine = evaluate(e, verify_opt.doc, verify_opt.limits);
        Table reference = oracle_eval(Oracle::of(e), verify_opt.doc);
        if (engine == reference) {
            std::cout << "match: " << engine.size() << " rows\n";
            return kExitTrue;
        }
        std::cout << "MISMATCH: engine " << engine.size() << " rows, oracle "
                  << reference.size() << " rows\n";
        return kExitFalse;
    }
    if (reduce_sat->parsed()) {
        SatReduction red = sat_to_containment(parse_cnf(read_file(sat_opt.instance)));
        write_file(sat_opt.prefix + ".left.aut", format_automaton(red.assignments));
        write_file(sat_opt.prefix + ".right.aut", format_automaton(red.falsifying));
        write_file(sat_opt.prefix + ".doc", red.doc);
        std::cout << red.doc << "\n";
        return kExitTrue;
    }
    if (reduce_pcp->parsed()) {
        PcpReduction red = pcp_to_disjointness(parse_pcp(read_file(pcp_opt.instance)));
        write_file(pcp_opt.prefix + ".left.cfg", format_grammar(red.left));
        write_file(pcp_opt.prefix + ".right.cfg", format_grammar(red.right));
        write_file(pcp_opt.prefix + ".doc", red.doc);
        std::cout << red.doc << "\n";
        return kExitTrue;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what()
                  << "\n";
        return kExitUsage;
    } catch (const ContractViolation& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << " (count " << e.count() << ")\n";
        return kExitUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
