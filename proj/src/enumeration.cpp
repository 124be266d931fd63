#include "autseq/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "autseq/error.hpp"
#include "autseq/numeration.hpp"

namespace autseq {

namespace {

using Row = std::vector<BigInt>;

std::string row_text(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ' ';
        out += row[i].str();
    }
    return out;
}

// A state on a cycle of the M[0] support graph reachable from the support of `start`.
std::optional<std::size_t> zero_cycle_state(const LinearRepresentation& rep, const Row& start) {
    const std::size_t dim = rep.dimension();
    std::vector<std::vector<std::size_t>> succ(dim);
    for (const auto& e : rep.matrix(0)) succ[e.row].push_back(e.col);
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> mark(dim, 0);
    for (std::size_t root = 0; root < dim; ++root) {
        if (start[root] == 0 || mark[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        mark[root] = 1;
        while (!stack.empty()) {
            auto& [s, k] = stack.back();
            if (k < succ[s].size()) {
                std::size_t t = succ[s][k++];
                if (mark[t] == 1) return t;
                if (mark[t] == 0) {
                    mark[t] = 1;
                    stack.emplace_back(t, 0);
                }
            } else {
                mark[s] = 2;
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(CountKind kind) {
    switch (kind) {
        case CountKind::primitive: return "primitive";
        case CountKind::lyndon: return "lyndon";
        case CountKind::term_count: return "terms";
    }
    return "?";
}

CountKind parse_count_kind(std::string_view text) {
    if (text == "primitive") return CountKind::primitive;
    if (text == "lyndon") return CountKind::lyndon;
    if (text == "terms" || text == "term_count") return CountKind::term_count;
    throw InputError("unknown count kind: " + std::string(text));
}

LinearRepresentation::LinearRepresentation(int base, std::vector<BigInt> u, std::vector<SparseMatrix> matrices,
                                           std::vector<BigInt> v)
    : base_(base), u_(std::move(u)), matrices_(std::move(matrices)), v_(std::move(v)) {
    if (base_ < 2) throw InputError("base must be at least 2");
    const std::size_t dim = u_.size();
    if (dim == 0) throw InputError("representation dimension must be positive");
    if (v_.size() != dim) throw InputError("v has the wrong length");
    if (matrices_.size() != static_cast<std::size_t>(base_)) throw InputError("need one matrix per digit");
    auto nonneg = [](const BigInt& x) { return x >= 0; };
    if (!std::all_of(u_.begin(), u_.end(), nonneg) || !std::all_of(v_.begin(), v_.end(), nonneg))
        throw InputError("representation entries must be nonnegative");
    for (auto& m : matrices_) {
        std::sort(m.begin(), m.end(),
                  [](const Entry& a, const Entry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
        SparseMatrix merged;
        for (const auto& e : m) {
            if (e.row >= dim || e.col >= dim) throw InputError("matrix index out of range");
            if (e.count < 0) throw InputError("representation entries must be nonnegative");
            if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
                merged.back().count += e.count;
            else
                merged.push_back(e);
        }
        std::erase_if(merged, [](const Entry& e) { return e.count == 0; });
        m = std::move(merged);
    }

    Row x = u_;
    for (std::size_t iter = 0; iter <= dim + 1; ++iter) {
        Row next = step(x, 0);
        if (next == x) {
            u_eff_ = std::move(x);
            return;
        }
        x = std::move(next);
    }
    auto witness = zero_cycle_state(*this, u_);
    throw DivergenceError("zero-prefix closure does not converge" +
                          (witness ? " (state " + std::to_string(*witness) + " lies on a cycle of digit-0 transitions)"
                                   : std::string()));
}

BigInt LinearRepresentation::entry(int digit, std::size_t row, std::size_t col) const {
    for (const auto& e : matrix(digit))
        if (e.row == row && e.col == col) return e.count;
    return 0;
}

std::vector<BigInt> LinearRepresentation::step(const std::vector<BigInt>& row, int digit) const {
    if (digit < 0 || digit >= base_) throw InputError("digit out of range");
    Row out(dimension(), 0);
    for (const auto& e : matrices_[static_cast<std::size_t>(digit)])
        if (row[e.row] != 0) out[e.col] += row[e.row] * e.count;
    return out;
}

BigInt LinearRepresentation::dot_v(const std::vector<BigInt>& row) const {
    BigInt sum = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0 && v_[i] != 0) sum += row[i] * v_[i];
    return sum;
}

BigInt evaluate_count(const LinearRepresentation& rep, Value n) {
    Row x = rep.u_effective();
    for (int d : encode(n, rep.base())) x = rep.step(x, d);
    return rep.dot_v(x);
}

std::string to_text(const LinearRepresentation& rep) {
    const std::size_t dim = rep.dimension();
    std::ostringstream out;
    out << "dim " << dim << " base " << rep.base() << "\n";
    out << "u\n" << row_text(rep.u()) << "\n";
    for (int d = 0; d < rep.base(); ++d) {
        out << "M" << d << "\n";
        std::vector<Row> dense(dim, Row(dim, 0));
        for (const auto& e : rep.matrix(d)) dense[e.row][e.col] = e.count;
        for (const auto& row : dense) out << row_text(row) << "\n";
    }
    out << "v\n" << row_text(rep.v()) << "\n";
    return out.str();
}

LinearRepresentation representation_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    std::size_t dim = 0;
    int base = 0;
    auto expect = [&](const std::string& want) {
        if (!(in >> word) || word != want) throw InputError("expected '" + want + "' in representation text");
    };
    auto read_row = [&]() {
        Row row(dim);
        for (auto& x : row) {
            if (!(in >> word)) throw InputError("truncated representation text");
            try {
                x = BigInt(word);
            } catch (const std::exception&) {
                throw InputError("bad number in representation text: " + word);
            }
        }
        return row;
    };
    expect("dim");
    if (!(in >> dim)) throw InputError("bad dimension");
    expect("base");
    if (!(in >> base)) throw InputError("bad base");
    if (dim == 0 || base < 2) throw InputError("bad representation header");
    expect("u");
    Row u = read_row();
    std::vector<LinearRepresentation::SparseMatrix> mats(static_cast<std::size_t>(base));
    for (int d = 0; d < base; ++d) {
        expect("M" + std::to_string(d));
        for (std::size_t r = 0; r < dim; ++r) {
            Row row = read_row();
            for (std::size_t c = 0; c < dim; ++c)
                if (row[c] != 0) mats[static_cast<std::size_t>(d)].push_back({r, c, row[c]});
        }
    }
    expect("v");
    Row v = read_row();
    if (in >> word) throw InputError("trailing data in representation text: " + word);
    return LinearRepresentation(base, std::move(u), std::move(mats), std::move(v));
}

Automaton counting_pair_automaton(PredicateLibrary& library, CountKind kind) {
    switch (kind) {
        case CountKind::primitive: return library.get("CP").automaton;
        case CountKind::lyndon: return library.get("CL").automaton;
        case CountKind::term_count: return library.get("TC").automaton;
    }
    throw InputError("unknown count kind");
}

Automaton counting_pair_automaton(const SequenceDfao& seq, CountKind kind) {
    PredicateLibrary library(seq);
    return counting_pair_automaton(library, kind);
}

LinearRepresentation linear_representation(const Automaton& pairs, int counted_track) {
    if (pairs.tracks() != 2) throw StructuralError("linear_representation needs a two-track automaton");
    if (counted_track != 0 && counted_track != 1) throw InputError("counted track must be 0 or 1");
    const Automaton a = minimize(pairs);
    const int k = a.base();
    const int n_track = 1 - counted_track;
    const std::size_t states = a.state_count();
    const std::size_t symbols = a.alphabet().size();

    // Live states: reachable and co-reachable, numbered breadth-first.
    std::vector<std::vector<StateId>> pred(states);
    for (StateId s = 0; s < states; ++s)
        for (Symbol c = 0; c < symbols; ++c) pred[a.next(s, c)].push_back(s);
    std::vector<bool> co(states, false);
    std::deque<StateId> queue;
    for (StateId s = 0; s < states; ++s)
        if (a.accepting(s)) {
            co[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId p : pred[s])
            if (!co[p]) {
                co[p] = true;
                queue.push_back(p);
            }
    }
    if (!co[a.initial()]) {
        std::vector<LinearRepresentation::SparseMatrix> mats(static_cast<std::size_t>(k));
        return LinearRepresentation(k, {BigInt(1)}, std::move(mats), {BigInt(0)});
    }
    std::vector<std::int64_t> index(states, -1);
    std::vector<StateId> order{a.initial()};
    index[a.initial()] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (Symbol c = 0; c < symbols; ++c) {
            StateId t = a.next(order[h], c);
            if (co[t] && index[t] < 0) {
                index[t] = static_cast<std::int64_t>(order.size());
                order.push_back(t);
            }
        }
    const std::size_t dim = order.size();
    std::vector<LinearRepresentation::SparseMatrix> mats(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<std::map<std::size_t, long>> counts(static_cast<std::size_t>(k));
        for (Symbol c = 0; c < symbols; ++c) {
            StateId t = a.next(order[i], c);
            if (index[t] < 0) continue;
            ++counts[static_cast<std::size_t>(a.alphabet().digit(c, n_track))][static_cast<std::size_t>(index[t])];
        }
        for (int d = 0; d < k; ++d)
            for (const auto& [col, cnt] : counts[static_cast<std::size_t>(d)])
                mats[static_cast<std::size_t>(d)].push_back({i, col, BigInt(cnt)});
    }
    Row u(dim, 0), v(dim, 0);
    u[0] = 1;
    for (std::size_t i = 0; i < dim; ++i)
        if (a.accepting(order[i])) v[i] = 1;
    return LinearRepresentation(k, std::move(u), std::move(mats), std::move(v));
}

LinearRepresentation term_count_representation(PredicateLibrary& library) {
    return linear_representation(counting_pair_automaton(library, CountKind::term_count), 1);
}

LinearRepresentation term_count_representation(const SequenceDfao& seq) {
    PredicateLibrary library(seq);
    return term_count_representation(library);
}

SynthesisResult synthesize_bounded(const LinearRepresentation& rep, std::size_t cap) {
    if (cap == 0) throw InputError("cap must be at least 1");
    const int k = rep.base();
    const std::size_t dim = rep.dimension();
    SynthesisResult result;

    // Coordinates from which some accepting coordinate is reachable; only those can grow the output.
    std::vector<bool> useful(dim, false);
    {
        std::vector<std::vector<std::size_t>> pred(dim);
        for (int d = 0; d < k; ++d)
            for (const auto& e : rep.matrix(d)) pred[e.col].push_back(e.row);
        std::deque<std::size_t> queue;
        for (std::size_t i = 0; i < dim; ++i)
            if (rep.v()[i] != 0) {
                useful[i] = true;
                queue.push_back(i);
            }
        while (!queue.empty()) {
            std::size_t s = queue.front();
            queue.pop_front();
            for (std::size_t p : pred[s])
                if (!useful[p]) {
                    useful[p] = true;
                    queue.push_back(p);
                }
        }
    }

    std::vector<Row> vectors{rep.u_effective()};
    std::vector<std::int64_t> parent{-1};
    std::vector<int> via{-1};
    std::map<Row, StateId> ids{{rep.u_effective(), 0}};
    std::vector<StateId> transitions;

    auto path_to = [&](std::size_t id) {
        std::vector<int> digits;
        for (auto s = static_cast<std::int64_t>(id); parent[static_cast<std::size_t>(s)] >= 0;
             s = parent[static_cast<std::size_t>(s)])
            digits.push_back(via[static_cast<std::size_t>(s)]);
        std::reverse(digits.begin(), digits.end());
        return digits;
    };

    // Looks for an ancestor A of the new vector W = A * M_y with A <= W, A_s < W_s and (M_y)_ss >= 1.
    auto find_pump = [&](std::size_t new_id) -> bool {
        const Row& w = vectors[new_id];
        std::vector<int> full = path_to(new_id);
        std::vector<std::size_t> chain;
        for (auto s = static_cast<std::int64_t>(new_id); s >= 0; s = parent[static_cast<std::size_t>(s)])
            chain.push_back(static_cast<std::size_t>(s));
        // chain[0] = new_id, chain[j] = ancestor j steps up; y = last j digits of `full`.
        for (std::size_t j = 1; j < chain.size(); ++j) {
            const Row& anc = vectors[chain[j]];
            bool dominated = true;
            for (std::size_t i = 0; i < dim && dominated; ++i) dominated = anc[i] <= w[i];
            if (!dominated) continue;
            std::vector<int> y(full.end() - static_cast<std::ptrdiff_t>(j), full.end());
            for (std::size_t s = 0; s < dim; ++s) {
                if (!useful[s] || anc[s] >= w[s]) continue;
                Row unit(dim, 0);
                unit[s] = 1;
                for (int d : y) unit = rep.step(unit, d);
                if (unit[s] >= 1) {
                    result.outcome = SynthesisResult::Outcome::unbounded;
                    result.witness_prefix.assign(full.begin(), full.end() - static_cast<std::ptrdiff_t>(j));
                    result.witness_cycle = std::move(y);
                    result.witness_coordinate = s;
                    return true;
                }
            }
        }
        return false;
    };

    result.max_output = rep.dot_v(vectors[0]);
    for (std::size_t head = 0; head < vectors.size(); ++head) {
        for (int d = 0; d < k; ++d) {
            Row w = rep.step(vectors[head], d);
            auto it = ids.find(w);
            if (it != ids.end()) {
                transitions.push_back(it->second);
                continue;
            }
            if (vectors.size() >= cap) {
                result.outcome = SynthesisResult::Outcome::cap_exceeded;
                result.states_explored = vectors.size();
                return result;
            }
            auto id = static_cast<StateId>(vectors.size());
            ids.emplace(w, id);
            BigInt out = rep.dot_v(w);
            if (out > result.max_output) result.max_output = out;
            vectors.push_back(std::move(w));
            parent.push_back(static_cast<std::int64_t>(head));
            via.push_back(d);
            transitions.push_back(id);
            if (find_pump(id)) {
                result.states_explored = vectors.size();
                return result;
            }
        }
    }

    result.states_explored = vectors.size();
    std::vector<Letter> outputs;
    outputs.reserve(vectors.size());
    for (const auto& vec : vectors) {
        BigInt out = rep.dot_v(vec);
        if (out > BigInt(std::numeric_limits<Letter>::max()))
            throw ResourceError("synthesized output does not fit an output letter: " + out.str());
        outputs.push_back(static_cast<Letter>(out));
    }
    std::vector<bool> accepting(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) accepting[i] = outputs[i] != 0;
    Automaton automaton(DigitTupleAlphabet(k, 1), 0, std::move(transitions), std::move(accepting));
    result.dfao.emplace(std::move(automaton), std::move(outputs));
    result.outcome = SynthesisResult::Outcome::dfao;
    return result;
}

}  // namespace autseq
