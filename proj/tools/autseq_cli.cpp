// autseq: command-line front end.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "autseq/automaton.hpp"
#include "autseq/enumeration.hpp"
#include "autseq/error.hpp"
#include "autseq/factorization.hpp"
#include "autseq/oracle.hpp"
#include "autseq/predicate.hpp"
#include "autseq/sequences.hpp"

using namespace autseq;

namespace {

struct OracleMismatch : Error {
    using Error::Error;
};

SequenceDfao load_sequence(const std::string& name) {
    const auto& names = builtin_sequence_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return builtin_sequence(name);
    if (std::filesystem::is_regular_file(name)) {
        std::ifstream in(name);
        std::stringstream buf;
        buf << in.rdbuf();
        return sequence_from_text(buf.str());
    }
    throw InputError("unknown sequence (not a built-in name or a readable file): " + name);
}

std::string letters_text(const std::vector<Letter>& word) {
    bool small = std::all_of(word.begin(), word.end(), [](Letter a) { return a >= 0 && a <= 9; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (small) {
            out += static_cast<char>('0' + word[i]);
        } else {
            if (i) out += ',';
            out += std::to_string(word[i]);
        }
    }
    return out;
}

std::vector<Letter> digits_word(const std::string& text) {
    std::vector<Letter> out;
    for (char c : text) {
        if (c < '0' || c > '9') throw InputError("factor must be a string of digits: " + text);
        out.push_back(c - '0');
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::pair<Value, Value> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw InputError("range must look like a..b: " + text);
    try {
        Value a = std::stoull(text.substr(0, dots));
        Value b = std::stoull(text.substr(dots + 2));
        if (a > b) throw InputError("empty range: " + text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw InputError("range must look like a..b: " + text);
    }
}

oracle::FactorKind oracle_kind(CountKind kind) {
    return kind == CountKind::lyndon ? oracle::FactorKind::lyndon : oracle::FactorKind::primitive;
}

std::size_t oracle_count(const SequenceDfao& seq, CountKind kind, Value n, std::size_t window) {
    if (kind == CountKind::term_count) {
        auto pre = prefix(seq, static_cast<std::size_t>(n) + 1);
        return oracle::duval_factorization(pre).size();
    }
    if (n == 0) return 0;
    std::size_t w = window ? window : std::max<std::size_t>(4096, 40 * static_cast<std::size_t>(n));
    return oracle::count_factors(prefix(seq, w), static_cast<std::size_t>(n), oracle_kind(kind));
}

// seq -------------------------------------------------------------------

struct SeqShow {
    std::string name;
    std::size_t length = 32;
    void run() const { std::cout << letters_text(prefix(load_sequence(name), length)) << "\n"; }
};

// compile ---------------------------------------------------------------

struct Compile {
    std::string text;
    std::string seq;
    std::vector<std::string> vars;
    bool dot = false;
    std::string out;
    void run() const {
        Environment env(2);
        if (!seq.empty()) {
            SequenceDfao s = load_sequence(seq);
            env = Environment(s.base());
            env.add_sequence("X", s);
        }
        for (const auto& name : builtin_sequence_names()) {
            SequenceDfao b = builtin_sequence(name);
            if (b.base() != env.base()) continue;
            std::string upper = name;
            std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
            if (!env.find_sequence(name)) env.add_sequence(name, b);
            if (!env.find_sequence(upper)) env.add_sequence(upper, b);
        }
        CompiledPredicate p = compile(text, env, vars);
        std::string body;
        if (p.closed()) {
            body = p.truth() ? "true\n" : "false\n";
        } else if (dot) {
            body = to_dot(p.automaton, p.free_vars);
        } else {
            body = "# tracks:";
            for (const auto& v : p.free_vars) body += " " + v;
            body += "\n" + to_text(p.automaton);
        }
        if (out.empty())
            std::cout << body;
        else
            write_file(out, body);
    }
};

// factorize -------------------------------------------------------------

struct Factorize {
    std::string mode;
    std::string seq;
    Value n = 0;
    std::size_t length = 32;
    std::string out;
    int run() const {
        SequenceDfao s = load_sequence(seq);
        PredicateLibrary lib(s);
        if (mode == "encoding") {
            FactorizationEncoding enc = factorization_start_automaton(lib);
            if (!out.empty()) write_file(out, to_text(enc.marker_automaton));
            std::cout << enc.bits(length) << "\n";
        } else if (mode == "prefix") {
            if (n == 0) throw InputError("prefix length must be at least 1");
            Automaton last = prefix_last_term_automaton(lib);
            if (!out.empty()) write_file(out, to_text(last));
            std::cout << to_string(prefix_factorization(last, n)) << "\n";
        } else if (mode == "finite") {
            FactorizationEncoding enc = factorization_start_automaton(lib);
            if (enc.finite)
                std::cout << "finite: " << to_string(enc.terms_if_finite, ",") << "\n";
            else
                std::cout << "infinite\n";
        } else {
            throw InputError("unknown factorize mode: " + mode);
        }
        return 0;
    }
};

// count -----------------------------------------------------------------

struct Count {
    std::string seq;
    std::string kind = "lyndon";
    std::optional<Value> n;
    std::string range;
    bool check_oracle = false;
    std::size_t window = 0;
    std::string export_path;
    void run() const {
        if (n.has_value() == !range.empty()) throw InputError("give exactly one of --n and --range");
        SequenceDfao s = load_sequence(seq);
        CountKind k = parse_count_kind(kind);
        PredicateLibrary lib(s);
        LinearRepresentation rep = linear_representation(counting_pair_automaton(lib, k), 1);
        if (!export_path.empty()) write_file(export_path, to_text(rep));
        auto [lo, hi] = n ? std::pair{*n, *n} : parse_range(range);
        std::string line;
        for (Value m = lo; m <= hi; ++m) {
            BigInt value = evaluate_count(rep, m);
            if (check_oracle) {
                std::size_t expected = oracle_count(s, k, m, window);
                if (value != BigInt(expected)) {
                    throw OracleMismatch("oracle mismatch at n=" + std::to_string(m) + ": automaton " + value.str() +
                                         ", oracle " + std::to_string(expected));
                }
            }
            if (m != lo) line += ',';
            line += value.str();
        }
        std::cout << line << "\n";
        if (check_oracle) std::cerr << "oracle agrees on " << (hi - lo + 1) << " value(s)\n";
    }
};

// synthesize ------------------------------------------------------------

struct Synthesize {
    std::string seq;
    std::string kind = "lyndon";
    std::size_t cap = 100000;
    std::string out;
    int run() const {
        SequenceDfao s = load_sequence(seq);
        PredicateLibrary lib(s);
        LinearRepresentation rep = linear_representation(counting_pair_automaton(lib, parse_count_kind(kind)), 1);
        SynthesisResult res = synthesize_bounded(rep, cap);
        auto digits = [](const std::vector<int>& w) {
            std::string t;
            for (int d : w) t += std::to_string(d) + (w.size() > 1 ? " " : "");
            if (!t.empty() && t.back() == ' ') t.pop_back();
            return t.empty() ? std::string("(empty)") : t;
        };
        switch (res.outcome) {
            case SynthesisResult::Outcome::dfao: {
                std::cout << "outcome: dfao\n";
                std::cout << "states: " << res.states_explored << "\n";
                std::cout << "max output: " << res.max_output << "\n";
                std::vector<Letter> letters = res.dfao->letters();
                std::cout << "outputs:";
                for (Letter a : letters) std::cout << " " << a;
                std::cout << "\n";
                if (!out.empty()) write_file(out, to_text(*res.dfao));
                return 0;
            }
            case SynthesisResult::Outcome::unbounded:
                std::cout << "outcome: unbounded\n";
                std::cout << "states explored: " << res.states_explored << "\n";
                std::cout << "witness prefix: " << digits(res.witness_prefix) << "\n";
                std::cout << "witness cycle: " << digits(res.witness_cycle) << "\n";
                std::cout << "growing coordinate: " << res.witness_coordinate << "\n";
                return 4;
            case SynthesisResult::Outcome::cap_exceeded:
                std::cout << "outcome: cap exceeded\n";
                std::cout << "states explored: " << res.states_explored << "\n";
                std::cout << "max output seen: " << res.max_output << "\n";
                return 3;
        }
        return 0;
    }
};

// oracle ----------------------------------------------------------------

struct OracleCmd {
    std::string op;
    std::string arg;
    std::string factor;
    std::string kind = "lyndon";
    Value n = 1;
    std::size_t window = 0;
    std::size_t length = 32;
    void run() const {
        if (op == "duval") {
            auto w = oracle::word_from_string(arg);
            std::string line;
            for (const auto& piece : oracle::duval_factorization(w)) {
                if (!line.empty()) line += ' ';
                line += oracle::word_to_string(piece);
            }
            std::cout << line << "\n";
        } else if (op == "lyndon") {
            std::cout << (oracle::is_lyndon(oracle::word_from_string(arg)) ? "true" : "false") << "\n";
        } else if (op == "primitive") {
            std::cout << (oracle::is_primitive(oracle::word_from_string(arg)) ? "true" : "false") << "\n";
        } else if (op == "least-suffix") {
            std::cout << oracle::least_suffix(oracle::word_from_string(arg)) << "\n";
        } else if (op == "factorize") {
            auto pre = prefix(load_sequence(arg), length);
            std::string line;
            for (const auto& p : oracle::duval_pieces(pre))
                line += "[" + std::to_string(p.start) + ".." + std::to_string(p.start + p.length - 1) + "]";
            std::cout << line << "\n";
        } else if (op == "count") {
            std::cout << oracle_count(load_sequence(arg), parse_count_kind(kind), n, window) << "\n";
        } else if (op == "return-words") {
            auto u = digits_word(factor);
            std::size_t w = window ? window : 4096;
            for (const auto& r : oracle::return_words(prefix(load_sequence(arg), w), u))
                std::cout << letters_text(r) << "\n";
        } else {
            throw InputError("unknown oracle operation: " + op);
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyndon factorizations and factor counts of automatic sequences"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "autseq 0.1.0");

    SeqShow seq_show;
    auto* seq_cmd = app.add_subcommand("seq", "Built-in sequences");
    seq_cmd->require_subcommand(1);
    auto* show_cmd = seq_cmd->add_subcommand("show", "Print a prefix");
    show_cmd->add_option("name", seq_show.name, "Sequence name or DFAO file")->required();
    show_cmd->add_option("--length,-l", seq_show.length, "Prefix length");
    auto* list_cmd = seq_cmd->add_subcommand("list", "List built-in names");

    Compile comp;
    auto* compile_cmd = app.add_subcommand("compile", "Compile a predicate to an automaton");
    compile_cmd->add_option("predicate", comp.text, "Predicate text")->required();
    compile_cmd->add_option("--seq", comp.seq, "Sequence bound to X");
    compile_cmd->add_option("--vars", comp.vars, "Track order of the free variables")->delimiter(',');
    compile_cmd->add_flag("--dot", comp.dot, "Emit DOT instead of automaton text");
    compile_cmd->add_option("--out,-o", comp.out, "Write to a file");

    Factorize fact;
    auto* fact_cmd = app.add_subcommand("factorize", "Lyndon factorization of a sequence");
    fact_cmd->add_option("mode", fact.mode, "encoding | prefix | finite")
        ->required()
        ->check(CLI::IsMember({"encoding", "prefix", "finite"}));
    fact_cmd->add_option("seq", fact.seq, "Sequence name or DFAO file")->required();
    fact_cmd->add_option("n", fact.n, "Prefix length (prefix mode)");
    fact_cmd->add_option("--length,-l", fact.length, "Number of marker bits (encoding mode)");
    fact_cmd->add_option("--out,-o", fact.out, "Export the automaton used");

    Count count;
    auto* count_cmd = app.add_subcommand("count", "Primitive / Lyndon factor counts and term counts");
    count_cmd->add_option("seq", count.seq, "Sequence name or DFAO file")->required();
    count_cmd->add_option("--kind,-k", count.kind, "lyndon | primitive | terms")
        ->check(CLI::IsMember({"lyndon", "primitive", "terms"}));
    count_cmd->add_option("--n", count.n, "Single argument");
    count_cmd->add_option("--range", count.range, "Arguments a..b");
    count_cmd->add_flag("--check-oracle", count.check_oracle, "Cross-check against brute force");
    count_cmd->add_option("--window", count.window, "Oracle prefix length (default max(4096, 40n))");
    count_cmd->add_option("--export", count.export_path, "Write the linear representation");

    Synthesize synth;
    auto* synth_cmd = app.add_subcommand("synthesize", "Build a DFAO for a bounded count");
    synth_cmd->add_option("seq", synth.seq, "Sequence name or DFAO file")->required();
    synth_cmd->add_option("--kind,-k", synth.kind, "lyndon | primitive | terms")
        ->check(CLI::IsMember({"lyndon", "primitive", "terms"}));
    synth_cmd->add_option("--cap", synth.cap, "State budget")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--out,-o", synth.out, "Write the DFAO");

    OracleCmd orc;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
    oracle_cmd->add_option("op", orc.op, "duval | lyndon | primitive | least-suffix | factorize | count | return-words")
        ->required()
        ->check(CLI::IsMember({"duval", "lyndon", "primitive", "least-suffix", "factorize", "count", "return-words"}));
    oracle_cmd->add_option("arg", orc.arg, "Word, or sequence name / DFAO file")->required();
    oracle_cmd->add_option("factor", orc.factor, "Factor (return-words)");
    oracle_cmd->add_option("--kind,-k", orc.kind, "lyndon | primitive | terms");
    oracle_cmd->add_option("--n", orc.n, "Factor length (count)");
    oracle_cmd->add_option("--window", orc.window, "Prefix length examined");
    oracle_cmd->add_option("--length,-l", orc.length, "Prefix length (factorize)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*seq_cmd) {
            if (*list_cmd) {
                for (const auto& name : builtin_sequence_names()) std::cout << name << "\n";
            } else {
                seq_show.run();
            }
            return 0;
        }
        if (*compile_cmd) {
            comp.run();
            return 0;
        }
        if (*fact_cmd) return fact.run();
        if (*count_cmd) {
            count.run();
            return 0;
        }
        if (*synth_cmd) return synth.run();
        if (*oracle_cmd) {
            orc.run();
            return 0;
        }
    } catch (const OracleMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
