#pragma once

// First-order predicates over automatic sequences and their compilation to
// multi-track automata.
//
// Syntax, loosest binding first:
//   phi <=> psi      phi => psi (right associative)      phi | psi      phi & psi
//   ~phi   E x y phi   A x phi      (a quantifier body extends as far right as possible)
//   true  false  (phi)  $NAME(t1, ..., tn)
//   t1 rel t2                  rel in = != < <= > >=, t a sum/difference of
//                              variables and constants (no multiplication)
//   X[t] rel c   X[t] rel Y[s] sequence indexing; letters compare as integers
// Variables range over the natural numbers. A difference a-b only exists when
// a >= b: the atomic formula that contains it is false otherwise.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autseq/automaton.hpp"
#include "autseq/numeration.hpp"
#include "autseq/sequences.hpp"

namespace autseq {

struct SourcePos {
    int line = 1;
    int column = 1;
};

struct Term {
    enum class Kind { constant, variable, add, subtract };
    Kind kind = Kind::constant;
    Value value = 0;                 // constant
    std::string name;                // variable
    std::vector<Term> operands;      // add, subtract: exactly two
};

struct PredicateAst {
    enum class Kind {
        truth,        // `flag`
        compare,      // terms[0] rel terms[1]
        index_letter, // name[terms[0]] rel letter
        index_compare,// name[terms[0]] rel other_name[terms[1]]
        call,         // $name(terms...)
        negation,
        conjunction,
        disjunction,
        implication,
        equivalence,
        exists,       // name = bound variable, children[0] = body
        forall,
    };
    Kind kind = Kind::truth;
    bool flag = false;
    Relation rel = Relation::eq;
    std::string name;
    std::string other_name;
    Letter letter = 0;
    std::vector<Term> terms;
    std::vector<PredicateAst> children;
    SourcePos pos;
};

std::string to_string(const Term& term);
std::string to_string(const PredicateAst& ast);

/// Free variables in order of first appearance.
std::vector<std::string> free_variables(const PredicateAst& ast);

/// Compiled predicate: track t of `automaton` carries `free_vars[t]`.
/// A closed formula has no free variables and a one-track automaton that is
/// either universal or empty.
struct CompiledPredicate {
    Automaton automaton;
    std::vector<std::string> free_vars;

    bool closed() const noexcept { return free_vars.empty(); }
    /// Truth value of a closed formula; throws StructuralError otherwise.
    bool truth() const;
    /// Values in free_vars order.
    bool holds(std::span<const Value> values) const;
    bool holds(std::initializer_list<Value> values) const {
        return holds(std::span<const Value>(values.begin(), values.size()));
    }
};

/// Named sequences and named predicates ($NAME) visible to the compiler.
class Environment {
public:
    explicit Environment(int base = 2) : base_(base) {}

    int base() const noexcept { return base_; }
    Limits limits;

    /// Throws StructuralError if the sequence base differs from the environment base.
    void add_sequence(const std::string& name, SequenceDfao seq);
    void define(const std::string& name, CompiledPredicate predicate);

    const SequenceDfao* find_sequence(std::string_view name) const;
    const CompiledPredicate* find_predicate(std::string_view name) const;

private:
    int base_;
    std::map<std::string, SequenceDfao, std::less<>> sequences_;
    std::map<std::string, CompiledPredicate, std::less<>> predicates_;
};

/// Syntax only. Throws SyntaxError.
PredicateAst parse_predicate(std::string_view text);
/// Also checks sequence and predicate names against `env` (InputError).
PredicateAst parse_predicate(std::string_view text, const Environment& env);

/// `free_order`, when given, fixes the track order and must list every free
/// variable (extra names become unconstrained tracks). Throws InputError for
/// unknown names, ResourceError when a cap is hit (message names the subformula).
CompiledPredicate compile(const PredicateAst& ast, const Environment& env,
                          std::span<const std::string> free_order = {});
CompiledPredicate compile(std::string_view text, const Environment& env,
                          std::span<const std::string> free_order = {});

/// The predicates about one sequence used throughout the library, compiled on
/// demand and cached. Not thread-safe; use one instance per thread.
///
/// Names and tracks:
///   P(i,j)        x[i..j] is primitive (j >= i)
///   LL(i,j,m,n)   x[i..j] < x[m..n]
///   L(i,j)        x[i..j] is Lyndon
///   LLinf(i,j)    x[i..] < x[j..]
///   Linf(i)       x[i..] is an infinite Lyndon word
///   I, SI(i,j,i',j')  [i..j] inside / strictly inside [i'..j']
///   LF(i,j)       [i..j] is a term of the Lyndon factorization of x
///   FIRSTOCC(n,i) the length-n factor at i does not occur earlier
///   FEQ(i,m,n)    x[i..i+n-1] = x[m..m+n-1]
///   PRIM(i,n), LYN(i,n), LLEN(i,a,m,b)   length-based forms of P, L, LL
///   START(i)      i starts a term of the factorization (ray start included)
///   PLT(n,i)      x[i..n-1] is the last term of the factorization of x[0..n-1]
///   FLT(i,j,l)    x[l..j-1] is the last term of the factorization of x[i..j-1]
///   CP(n,i), CL(n,i)  first occurrence of a primitive / Lyndon length-n factor at i
///   TC(n,i)       i starts a term of the factorization of x[0..n]
class PredicateLibrary {
public:
    explicit PredicateLibrary(SequenceDfao seq, Limits limits = {});

    static const std::vector<std::string>& names();

    const CompiledPredicate& get(const std::string& name);
    const SequenceDfao& sequence() const noexcept { return seq_; }
    /// Environment with the sequence registered as X and every predicate compiled so far.
    const Environment& environment() const noexcept { return env_; }

private:
    SequenceDfao seq_;
    Environment env_;
};

/// One-shot form of PredicateLibrary::get.
CompiledPredicate builtin_predicate(const std::string& name, const SequenceDfao& seq);

}  // namespace autseq
