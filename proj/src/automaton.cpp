#include "autseq/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "autseq/error.hpp"
#include "autseq/numeration.hpp"

namespace autseq {

// ---------------------------------------------------------------------------
// DigitTupleAlphabet

DigitTupleAlphabet::DigitTupleAlphabet(int base, int tracks) : base_(base), tracks_(tracks) {
    if (base < 2) throw StructuralError("alphabet base must be at least 2");
    if (tracks < 1) throw StructuralError("alphabet needs at least one track");
    weight_.assign(static_cast<std::size_t>(tracks), 1);
    std::size_t size = 1;
    for (int t = tracks - 1; t >= 0; --t) {
        weight_[static_cast<std::size_t>(t)] = static_cast<Symbol>(size);
        size *= static_cast<std::size_t>(base);
        if (size > (std::size_t{1} << 24)) throw StructuralError("alphabet too large");
    }
    size_ = size;
}

Symbol DigitTupleAlphabet::encode(std::span<const int> digits) const {
    if (digits.size() != static_cast<std::size_t>(tracks_)) {
        throw InputError("digit tuple has wrong arity");
    }
    Symbol s = 0;
    for (std::size_t t = 0; t < digits.size(); ++t) {
        if (digits[t] < 0 || digits[t] >= base_) throw InputError("digit out of range");
        s += static_cast<Symbol>(digits[t]) * weight_[t];
    }
    return s;
}

std::vector<int> DigitTupleAlphabet::decode(Symbol symbol) const {
    std::vector<int> out(static_cast<std::size_t>(tracks_));
    for (int t = 0; t < tracks_; ++t) out[static_cast<std::size_t>(t)] = digit(symbol, t);
    return out;
}

// ---------------------------------------------------------------------------
// Automaton

Automaton::Automaton(DigitTupleAlphabet alphabet, StateId initial, std::vector<StateId> transitions,
                     std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)),
      accepting_(std::move(accepting)) {
    const std::size_t n = accepting_.size();
    if (n == 0) throw StructuralError("automaton needs at least one state");
    if (initial_ >= n) throw StructuralError("initial state out of range");
    if (transitions_.size() != n * alphabet_.size()) {
        throw StructuralError("transition table size does not match states x symbols");
    }
    for (StateId q : transitions_) {
        if (q >= n) throw StructuralError("transition target out of range");
    }
}

Automaton Automaton::universal(DigitTupleAlphabet alphabet) {
    std::vector<StateId> tr(alphabet.size(), 0);
    return Automaton(std::move(alphabet), 0, std::move(tr), {true});
}

Automaton Automaton::empty(DigitTupleAlphabet alphabet) {
    std::vector<StateId> tr(alphabet.size(), 0);
    return Automaton(std::move(alphabet), 0, std::move(tr), {false});
}

bool Automaton::run(std::span<const Symbol> word) const {
    StateId q = initial_;
    for (Symbol s : word) {
        if (s >= alphabet_.size()) throw InputError("symbol outside the alphabet");
        q = next(q, s);
    }
    return accepting_[q];
}

bool Automaton::accepts(std::span<const Value> values) const {
    if (values.size() != static_cast<std::size_t>(tracks())) {
        throw InputError("value tuple has wrong arity");
    }
    return run(encode_tuple(alphabet_, values));
}

namespace {

std::vector<bool> coreachable(const Automaton& a) {
    const std::size_t n = a.state_count();
    const std::size_t sigma = a.alphabet().size();
    std::vector<std::vector<StateId>> preds(n);
    for (StateId q = 0; q < n; ++q) {
        for (Symbol s = 0; s < sigma; ++s) {
            StateId r = a.next(q, s);
            if (preds[r].empty() || preds[r].back() != q) preds[r].push_back(q);
        }
    }
    std::vector<bool> seen(n, false);
    std::vector<StateId> stack;
    for (StateId q = 0; q < n; ++q) {
        if (a.accepting(q)) {
            seen[q] = true;
            stack.push_back(q);
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : preds[q]) {
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    return seen;
}

}  // namespace

bool Automaton::is_empty() const {
    const std::size_t sigma = alphabet_.size();
    std::vector<bool> seen(state_count(), false);
    std::vector<StateId> stack{initial_};
    seen[initial_] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        if (accepting_[q]) return false;
        for (Symbol s = 0; s < sigma; ++s) {
            StateId r = next(q, s);
            if (!seen[r]) {
                seen[r] = true;
                stack.push_back(r);
            }
        }
    }
    return true;
}

std::size_t Automaton::live_state_count() const {
    auto live = coreachable(*this);
    return static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
}

// ---------------------------------------------------------------------------
// Minimization (Hopcroft, block-level splitters)

namespace {

// Restriction to reachable states, renumbered in BFS order; `order` maps new ids to old.
Automaton reachable_part(const Automaton& a, std::vector<StateId>& order) {
    const std::size_t sigma = a.alphabet().size();
    order.assign(1, a.initial());
    std::vector<StateId> id(a.state_count(), UINT32_MAX);
    id[a.initial()] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        StateId q = order[head];
        for (Symbol s = 0; s < sigma; ++s) {
            StateId r = a.next(q, s);
            if (id[r] == UINT32_MAX) {
                id[r] = static_cast<StateId>(order.size());
                order.push_back(r);
            }
        }
    }
    std::vector<StateId> tr(order.size() * sigma);
    std::vector<bool> acc(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        acc[i] = a.accepting(order[i]);
        for (Symbol s = 0; s < sigma; ++s) tr[i * sigma + s] = id[a.next(order[i], s)];
    }
    return Automaton(a.alphabet(), 0, std::move(tr), std::move(acc));
}

// Returns block index per state. The initial partition groups states by label.
std::vector<StateId> hopcroft_blocks(const Automaton& a, std::span<const int> labels,
                                     std::size_t& block_count) {
    const std::size_t n = a.state_count();
    const std::size_t sigma = a.alphabet().size();

    // Inverse transitions in CSR form, indexed by (symbol, target).
    std::vector<std::uint32_t> inv_start(sigma * n + 1, 0);
    for (StateId q = 0; q < n; ++q) {
        for (Symbol s = 0; s < sigma; ++s) ++inv_start[s * n + a.next(q, s) + 1];
    }
    std::partial_sum(inv_start.begin(), inv_start.end(), inv_start.begin());
    std::vector<StateId> inv(sigma * n);
    {
        std::vector<std::uint32_t> fill(inv_start.begin(), inv_start.end() - 1);
        for (StateId q = 0; q < n; ++q) {
            for (Symbol s = 0; s < sigma; ++s) inv[fill[s * n + a.next(q, s)]++] = q;
        }
    }

    std::vector<StateId> elems(n);
    std::vector<std::uint32_t> pos(n);
    std::vector<StateId> block_of(n);
    std::vector<std::uint32_t> bstart;
    std::vector<std::uint32_t> bend;
    std::vector<std::uint32_t> marked;
    std::vector<StateId> work;

    {
        std::iota(elems.begin(), elems.end(), StateId{0});
        std::stable_sort(elems.begin(), elems.end(),
                         [&](StateId x, StateId y) { return labels[x] < labels[y]; });
        std::size_t lo = 0;
        while (lo < n) {
            std::size_t hi = lo;
            while (hi < n && labels[elems[hi]] == labels[elems[lo]]) ++hi;
            const auto b = static_cast<StateId>(bstart.size());
            bstart.push_back(static_cast<std::uint32_t>(lo));
            bend.push_back(static_cast<std::uint32_t>(hi));
            marked.push_back(0);
            for (std::size_t i = lo; i < hi; ++i) block_of[elems[i]] = b;
            lo = hi;
        }
        for (std::size_t i = 0; i < n; ++i) pos[elems[i]] = static_cast<std::uint32_t>(i);
        // Every initial block except a largest one.
        StateId largest = 0;
        for (StateId b = 1; b < bstart.size(); ++b) {
            if (bend[b] - bstart[b] > bend[largest] - bstart[largest]) largest = b;
        }
        for (StateId b = 0; b < bstart.size(); ++b) {
            if (b != largest) work.push_back(b);
        }
    }

    std::vector<StateId> splitter;
    std::vector<StateId> touched;
    while (!work.empty()) {
        const StateId c = work.back();
        work.pop_back();
        splitter.assign(elems.begin() + bstart[c], elems.begin() + bend[c]);
        for (Symbol s = 0; s < sigma; ++s) {
            touched.clear();
            for (StateId r : splitter) {
                const std::size_t idx = s * n + r;
                for (std::uint32_t e = inv_start[idx]; e < inv_start[idx + 1]; ++e) {
                    const StateId q = inv[e];
                    const StateId b = block_of[q];
                    if (marked[b] == 0) touched.push_back(b);
                    // Move q into the marked prefix of its block.
                    const std::uint32_t target = bstart[b] + marked[b];
                    const std::uint32_t p = pos[q];
                    const StateId other = elems[target];
                    elems[target] = q;
                    pos[q] = target;
                    elems[p] = other;
                    pos[other] = p;
                    ++marked[b];
                }
            }
            for (StateId b : touched) {
                const std::uint32_t size = bend[b] - bstart[b];
                const std::uint32_t m = marked[b];
                marked[b] = 0;
                if (m == size) continue;
                // The smaller half becomes the new block and is always queued.
                const auto nb = static_cast<StateId>(bstart.size());
                std::uint32_t lo = 0;
                std::uint32_t hi = 0;
                if (m <= size - m) {
                    lo = bstart[b];
                    hi = bstart[b] + m;
                    bstart[b] = hi;
                } else {
                    lo = bstart[b] + m;
                    hi = bend[b];
                    bend[b] = lo;
                }
                bstart.push_back(lo);
                bend.push_back(hi);
                marked.push_back(0);
                for (std::uint32_t i = lo; i < hi; ++i) block_of[elems[i]] = nb;
                work.push_back(nb);
            }
        }
    }
    block_count = bstart.size();
    return block_of;
}

}  // namespace

LabelledAutomaton minimize_labelled(const Automaton& input, std::span<const int> input_labels,
                                    bool dead_last) {
    if (input_labels.size() != input.state_count()) {
        throw StructuralError("minimize_labelled: one label per state required");
    }
    std::vector<StateId> order;
    const Automaton a = reachable_part(input, order);
    std::vector<int> labels(a.state_count());
    for (std::size_t i = 0; i < order.size(); ++i) labels[i] = input_labels[order[i]];
    const std::size_t sigma = a.alphabet().size();
    std::size_t block_count = 0;
    const std::vector<StateId> block_of = hopcroft_blocks(a, labels, block_count);

    std::vector<StateId> rep(block_count, UINT32_MAX);
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (rep[block_of[q]] == UINT32_MAX) rep[block_of[q]] = q;
    }

    StateId dead = UINT32_MAX;
    if (dead_last) {
        for (StateId b = 0; b < block_count; ++b) {
            const StateId q = rep[b];
            if (a.accepting(q)) continue;
            bool self = true;
            for (Symbol s = 0; s < sigma && self; ++s) self = block_of[a.next(q, s)] == b;
            if (self) {
                dead = b;
                break;
            }
        }
    }

    // Canonical BFS numbering; the dead block (if requested) is numbered last.
    std::vector<StateId> id(block_count, UINT32_MAX);
    order.clear();
    order.reserve(block_count);
    const StateId init_block = block_of[a.initial()];
    if (init_block != dead) {
        id[init_block] = 0;
        order.push_back(init_block);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        const StateId q = rep[order[head]];
        for (Symbol s = 0; s < sigma; ++s) {
            const StateId b = block_of[a.next(q, s)];
            if (b != dead && id[b] == UINT32_MAX) {
                id[b] = static_cast<StateId>(order.size());
                order.push_back(b);
            }
        }
    }
    if (dead != UINT32_MAX) {
        id[dead] = static_cast<StateId>(order.size());
        order.push_back(dead);
    }

    std::vector<StateId> tr(order.size() * sigma);
    std::vector<bool> acc(order.size());
    std::vector<int> out_labels(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId q = rep[order[i]];
        acc[i] = a.accepting(q);
        out_labels[i] = labels[q];
        for (Symbol s = 0; s < sigma; ++s) tr[i * sigma + s] = id[block_of[a.next(q, s)]];
    }
    return {Automaton(a.alphabet(), id[init_block], std::move(tr), std::move(acc)),
            std::move(out_labels)};
}

Automaton minimize(const Automaton& a) {
    std::vector<int> labels(a.state_count());
    for (StateId q = 0; q < a.state_count(); ++q) labels[q] = a.accepting(q) ? 1 : 0;
    return minimize_labelled(a, labels, true).automaton;
}

bool equivalent(const Automaton& a, const Automaton& b) {
    if (!(a.alphabet() == b.alphabet())) return false;
    return minimize(a) == minimize(b);
}

// ---------------------------------------------------------------------------
// Boolean operations

Automaton boolean_combine(const Automaton& a, const Automaton& b, BoolOp op) {
    if (!(a.alphabet() == b.alphabet())) {
        throw StructuralError("boolean_combine: alphabets differ");
    }
    const std::size_t sigma = a.alphabet().size();
    const std::size_t nb = b.state_count();
    auto combine = [op](bool x, bool y) {
        switch (op) {
            case BoolOp::conjunction: return x && y;
            case BoolOp::disjunction: return x || y;
            case BoolOp::exclusive_or: return x != y;
            case BoolOp::implication: return !x || y;
        }
        return false;
    };

    std::unordered_map<std::uint64_t, StateId> index;
    std::vector<std::uint64_t> pairs;
    auto key = [nb](StateId p, StateId q) { return static_cast<std::uint64_t>(p) * nb + q; };
    auto intern = [&](StateId p, StateId q) {
        auto [it, fresh] = index.try_emplace(key(p, q), static_cast<StateId>(pairs.size()));
        if (fresh) pairs.push_back(key(p, q));
        return it->second;
    };
    intern(a.initial(), b.initial());
    std::vector<StateId> tr;
    std::vector<bool> acc;
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        const auto p = static_cast<StateId>(pairs[head] / nb);
        const auto q = static_cast<StateId>(pairs[head] % nb);
        acc.push_back(combine(a.accepting(p), b.accepting(q)));
        for (Symbol s = 0; s < sigma; ++s) tr.push_back(intern(a.next(p, s), b.next(q, s)));
    }
    return minimize(Automaton(a.alphabet(), 0, std::move(tr), std::move(acc)));
}

Automaton negate(const Automaton& a) {
    std::vector<bool> acc(a.state_count());
    for (StateId q = 0; q < a.state_count(); ++q) acc[q] = !a.accepting(q);
    std::vector<StateId> tr(a.transitions().begin(), a.transitions().end());
    return minimize(Automaton(a.alphabet(), a.initial(), std::move(tr), std::move(acc)));
}

Automaton cylindrify(const Automaton& a, int new_tracks, std::span<const int> track_map) {
    if (track_map.size() != static_cast<std::size_t>(a.tracks())) {
        throw StructuralError("cylindrify: track map arity mismatch");
    }
    std::vector<bool> used(static_cast<std::size_t>(new_tracks), false);
    for (int t : track_map) {
        if (t < 0 || t >= new_tracks || used[static_cast<std::size_t>(t)]) {
            throw StructuralError("cylindrify: invalid track map");
        }
        used[static_cast<std::size_t>(t)] = true;
    }
    const DigitTupleAlphabet target(a.base(), new_tracks);
    const std::size_t sigma = target.size();
    const std::size_t old_sigma = a.alphabet().size();
    std::vector<Symbol> old_symbol(sigma);
    std::vector<int> digits(track_map.size());
    for (Symbol s = 0; s < sigma; ++s) {
        for (std::size_t t = 0; t < track_map.size(); ++t) digits[t] = target.digit(s, track_map[t]);
        old_symbol[s] = a.alphabet().encode(digits);
    }
    std::vector<StateId> tr(a.state_count() * sigma);
    for (StateId q = 0; q < a.state_count(); ++q) {
        const StateId* row = a.transitions().data() + static_cast<std::size_t>(q) * old_sigma;
        for (Symbol s = 0; s < sigma; ++s) tr[q * sigma + s] = row[old_symbol[s]];
    }
    std::vector<bool> acc(a.state_count());
    for (StateId q = 0; q < a.state_count(); ++q) acc[q] = a.accepting(q);
    return Automaton(target, a.initial(), std::move(tr), std::move(acc));
}

// ---------------------------------------------------------------------------
// Projection

namespace {

struct StateSetHash {
    std::size_t operator()(const std::vector<StateId>& v) const noexcept {
        return std::hash<std::string_view>{}(std::string_view(
            reinterpret_cast<const char*>(v.data()), v.size() * sizeof(StateId)));
    }
};

}  // namespace

Automaton project(const Automaton& a, int track, const Limits& limits) {
    if (a.tracks() < 2) throw StructuralError("project: automaton has a single track");
    if (track < 0 || track >= a.tracks()) throw StructuralError("project: track out of range");
    const int k = a.base();
    const DigitTupleAlphabet reduced(k, a.tracks() - 1);
    const std::size_t rsigma = reduced.size();

    // full[r * k + d]: the full symbol with reduced part r and digit d on `track`.
    std::vector<Symbol> full(rsigma * static_cast<std::size_t>(k));
    std::vector<int> digits(static_cast<std::size_t>(a.tracks()));
    for (Symbol r = 0; r < rsigma; ++r) {
        for (int d = 0; d < k; ++d) {
            int j = 0;
            for (int t = 0; t < a.tracks(); ++t) {
                digits[static_cast<std::size_t>(t)] = (t == track) ? d : reduced.digit(r, j++);
            }
            full[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)] =
                a.alphabet().encode(digits);
        }
    }

    // Start set: everything reachable on columns that are zero on the kept tracks.
    std::vector<bool> mark(a.state_count(), false);
    std::vector<StateId> start{a.initial()};
    mark[a.initial()] = true;
    for (std::size_t head = 0; head < start.size(); ++head) {
        for (int d = 0; d < k; ++d) {
            const StateId r = a.next(start[head], full[static_cast<std::size_t>(d)]);
            if (!mark[r]) {
                mark[r] = true;
                start.push_back(r);
            }
        }
    }
    std::sort(start.begin(), start.end());
    std::fill(mark.begin(), mark.end(), false);

    std::unordered_map<std::vector<StateId>, StateId, StateSetHash> index;
    std::vector<const std::vector<StateId>*> sets;
    auto intern = [&](std::vector<StateId>&& set) {
        auto [it, fresh] = index.try_emplace(std::move(set), static_cast<StateId>(sets.size()));
        if (fresh) {
            if (sets.size() >= limits.max_states) {
                throw ResourceError("project: subset construction exceeded " +
                                    std::to_string(limits.max_states) + " states");
            }
            sets.push_back(&it->first);
        }
        return it->second;
    };
    intern(std::move(start));

    std::vector<StateId> tr;
    std::vector<bool> acc;
    std::vector<StateId> scratch;
    for (std::size_t head = 0; head < sets.size(); ++head) {
        const std::vector<StateId>& cur = *sets[head];
        bool accept = false;
        for (StateId q : cur) accept = accept || a.accepting(q);
        acc.push_back(accept);
        for (Symbol r = 0; r < rsigma; ++r) {
            scratch.clear();
            const Symbol* f = full.data() + r * static_cast<std::size_t>(k);
            for (StateId q : cur) {
                for (int d = 0; d < k; ++d) {
                    const StateId t = a.next(q, f[d]);
                    if (!mark[t]) {
                        mark[t] = true;
                        scratch.push_back(t);
                    }
                }
            }
            for (StateId t : scratch) mark[t] = false;
            std::sort(scratch.begin(), scratch.end());
            // `sets` holds pointers into `index` nodes, which stay put on rehash.
            tr.push_back(intern(std::vector<StateId>(scratch)));
        }
    }
    return minimize(Automaton(reduced, 0, std::move(tr), std::move(acc)));
}

// ---------------------------------------------------------------------------
// Value-language queries

namespace {

// States reachable after a first nonzero column and from which acceptance is possible.
struct CanonicalCore {
    std::vector<bool> live;
    std::vector<StateId> roots;
};

CanonicalCore canonical_core(const Automaton& a) {
    CanonicalCore core;
    core.live = coreachable(a);
    const std::size_t sigma = a.alphabet().size();
    std::vector<bool> seen(a.state_count(), false);
    for (Symbol s = 1; s < sigma; ++s) {
        const StateId r = a.next(a.initial(), s);
        if (core.live[r] && !seen[r]) {
            seen[r] = true;
            core.roots.push_back(r);
        }
    }
    return core;
}

bool has_cycle_from(const Automaton& a, const CanonicalCore& core) {
    const std::size_t sigma = a.alphabet().size();
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<std::uint8_t> color(a.state_count(), 0);
    std::vector<std::pair<StateId, Symbol>> stack;
    for (StateId root : core.roots) {
        if (color[root] != 0) continue;
        stack.emplace_back(root, 0);
        color[root] = 1;
        while (!stack.empty()) {
            auto& [q, s] = stack.back();
            if (s == sigma) {
                color[q] = 2;
                stack.pop_back();
                continue;
            }
            const StateId r = a.next(q, s++);
            if (!core.live[r]) continue;
            if (color[r] == 1) return true;
            if (color[r] == 0) {
                color[r] = 1;
                stack.emplace_back(r, 0);
            }
        }
    }
    return false;
}

}  // namespace

bool is_value_language_finite(const Automaton& a) {
    return !has_cycle_from(a, canonical_core(a));
}

std::vector<std::vector<Value>> enumerate_values(const Automaton& a) {
    const CanonicalCore core = canonical_core(a);
    if (has_cycle_from(a, core)) throw DivergenceError("enumerate_values: infinite language");
    const std::size_t m = static_cast<std::size_t>(a.tracks());
    const std::size_t sigma = a.alphabet().size();
    const auto k = static_cast<Value>(a.base());
    std::vector<std::vector<Value>> out;
    if (a.accepting(a.next(a.initial(), 0))) out.emplace_back(m, 0);

    std::vector<Value> values(m, 0);
    std::function<void(StateId)> walk = [&](StateId q) {
        if (a.accepting(q)) out.push_back(values);
        for (Symbol s = 0; s < sigma; ++s) {
            const StateId r = a.next(q, s);
            if (!core.live[r]) continue;
            const std::vector<Value> saved = values;
            for (std::size_t t = 0; t < m; ++t) {
                values[t] = values[t] * k + static_cast<Value>(a.alphabet().digit(s, static_cast<int>(t)));
            }
            walk(r);
            values = saved;
        }
    };
    for (Symbol s = 1; s < sigma; ++s) {
        const StateId r = a.next(a.initial(), s);
        if (!core.live[r]) continue;
        for (std::size_t t = 0; t < m; ++t) {
            values[t] = static_cast<Value>(a.alphabet().digit(s, static_cast<int>(t)));
        }
        walk(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Value> accepted_completions(const Automaton& a, std::span<const Value> fixed, int free_track,
                                        std::size_t width) {
    if (fixed.size() != static_cast<std::size_t>(a.tracks())) throw InputError("accepted_completions: arity");
    if (free_track < 0 || free_track >= a.tracks()) throw StructuralError("accepted_completions: bad track");
    const int k = a.base();
    std::vector<Digits> rows;
    for (std::size_t t = 0; t < fixed.size(); ++t) {
        rows.push_back(encode(static_cast<int>(t) == free_track ? 0 : fixed[t], k, width));
    }
    std::vector<int> column(fixed.size());
    auto symbol = [&](std::size_t pos, int free_digit) {
        for (std::size_t t = 0; t < fixed.size(); ++t) {
            column[t] = static_cast<int>(t) == free_track ? free_digit : rows[t][pos];
        }
        return a.alphabet().encode(column);
    };
    // good[pos][q]: from state q before reading position pos, acceptance is reachable.
    const std::size_t n = a.state_count();
    std::vector<std::vector<bool>> good(width + 1, std::vector<bool>(n, false));
    for (StateId q = 0; q < n; ++q) good[width][q] = a.accepting(q);
    for (std::size_t pos = width; pos-- > 0;) {
        for (StateId q = 0; q < n; ++q) {
            for (int d = 0; d < k && !good[pos][q]; ++d) good[pos][q] = good[pos + 1][a.next(q, symbol(pos, d))];
        }
    }
    std::vector<Value> out;
    std::function<void(std::size_t, StateId, Value)> walk = [&](std::size_t pos, StateId q, Value v) {
        if (pos == width) {
            out.push_back(v);
            return;
        }
        for (int d = 0; d < k; ++d) {
            const StateId r = a.next(q, symbol(pos, d));
            if (good[pos + 1][r]) walk(pos + 1, r, v * static_cast<Value>(k) + static_cast<Value>(d));
        }
    };
    if (good[0][a.initial()]) walk(0, a.initial(), 0);
    return out;
}

// ---------------------------------------------------------------------------
// Text and DOT

namespace {

std::string tuple_label(const DigitTupleAlphabet& alphabet, Symbol s) {
    std::string out;
    for (int t = 0; t < alphabet.tracks(); ++t) {
        if (t > 0) out += ',';
        out += std::to_string(alphabet.digit(s, t));
    }
    return out;
}

// Dead state of a complete automaton, or UINT32_MAX.
StateId find_dead(const Automaton& a) {
    const auto live = coreachable(a);
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (!live[q]) return q;
    }
    return UINT32_MAX;
}

}  // namespace

std::string to_text(const Automaton& input) {
    const Automaton a = minimize(input);
    const StateId dead = find_dead(a);
    const std::size_t sigma = a.alphabet().size();
    std::ostringstream out;
    out << "base " << a.base() << " tracks " << a.tracks() << '\n';
    out << "initial " << a.initial() << '\n';
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (q == dead && q != a.initial()) continue;
        out << "state " << q << " accepting " << (a.accepting(q) ? 1 : 0) << '\n';
        if (q == dead) continue;
        for (Symbol s = 0; s < sigma; ++s) {
            const StateId r = a.next(q, s);
            if (r == dead) continue;
            out << tuple_label(a.alphabet(), s) << " -> " << r << '\n';
        }
    }
    return out.str();
}

namespace {

[[noreturn]] void text_error(std::size_t line, const std::string& what) {
    throw InputError("automaton text line " + std::to_string(line) + ": " + what);
}

long parse_number(std::string_view token, std::size_t line) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
        text_error(line, "expected a nonnegative integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Automaton from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    int base = 0;
    int tracks = 0;
    long initial = -1;
    long current = -1;
    std::vector<std::pair<long, bool>> states;               // id, accepting
    std::vector<std::tuple<long, Symbol, long>> edges;       // from, symbol, to
    std::optional<DigitTupleAlphabet> alphabet;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok[0] == "base") {
            if (tok.size() != 4 || tok[2] != "tracks") text_error(line_no, "expected 'base k tracks m'");
            base = static_cast<int>(parse_number(tok[1], line_no));
            tracks = static_cast<int>(parse_number(tok[3], line_no));
            alphabet.emplace(base, tracks);
        } else if (tok[0] == "initial") {
            if (tok.size() != 2) text_error(line_no, "expected 'initial <id>'");
            initial = parse_number(tok[1], line_no);
        } else if (tok[0] == "state") {
            if (tok.size() != 4 || tok[2] != "accepting" || (tok[3] != "0" && tok[3] != "1")) {
                text_error(line_no, "expected 'state <id> accepting <0|1>'");
            }
            current = parse_number(tok[1], line_no);
            states.emplace_back(current, tok[3] == "1");
        } else if (tok[0] == "output") {
            continue;  // DFAO annotation, read by the sequence loader
        } else if (tok.size() == 3 && tok[1] == "->") {
            if (!alphabet) text_error(line_no, "transition before header");
            if (current < 0) text_error(line_no, "transition before any state");
            std::vector<int> digits;
            std::string_view column = tok[0];
            while (true) {
                const auto comma = column.find(',');
                digits.push_back(static_cast<int>(parse_number(column.substr(0, comma), line_no)));
                if (comma == std::string_view::npos) break;
                column.remove_prefix(comma + 1);
            }
            Symbol s = 0;
            try {
                s = alphabet->encode(digits);
            } catch (const InputError& e) {
                text_error(line_no, e.what());
            }
            edges.emplace_back(current, s, parse_number(tok[2], line_no));
        } else {
            text_error(line_no, "unrecognized line");
        }
    }
    if (!alphabet) throw InputError("automaton text: missing header");
    if (initial < 0) throw InputError("automaton text: missing initial state");
    const std::size_t n = states.size();
    std::vector<bool> declared(n, false);
    std::vector<bool> acc(n + 1, false);
    for (auto [id, accepting] : states) {
        if (id < 0 || static_cast<std::size_t>(id) >= n || declared[static_cast<std::size_t>(id)]) {
            throw InputError("automaton text: state ids must be 0..N-1 without repeats");
        }
        declared[static_cast<std::size_t>(id)] = true;
        acc[static_cast<std::size_t>(id)] = accepting;
    }
    if (static_cast<std::size_t>(initial) >= n) throw InputError("automaton text: bad initial state");
    const std::size_t sigma = alphabet->size();
    const auto dead = static_cast<StateId>(n);
    std::vector<StateId> tr((n + 1) * sigma, dead);
    for (auto [from, s, to] : edges) {
        if (static_cast<std::size_t>(to) >= n) throw InputError("automaton text: bad transition target");
        StateId& slot = tr[static_cast<std::size_t>(from) * sigma + s];
        if (slot != dead) throw InputError("automaton text: duplicate transition");
        slot = static_cast<StateId>(to);
    }
    return Automaton(*alphabet, static_cast<StateId>(initial), std::move(tr), std::move(acc));
}

std::string to_dot(const Automaton& input, std::span<const std::string> track_names) {
    const Automaton a = minimize(input);
    const StateId dead = find_dead(a);
    const std::size_t sigma = a.alphabet().size();
    std::ostringstream out;
    out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    if (!track_names.empty()) {
        out << "  label=\"(";
        for (std::size_t t = 0; t < track_names.size(); ++t) out << (t ? "," : "") << track_names[t];
        out << ")\";\n";
    }
    out << "  start [shape=point];\n  start -> q" << a.initial() << ";\n";
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (q == dead && q != a.initial()) continue;
        out << "  q" << q << " [label=\"" << q << "\"" << (a.accepting(q) ? ", shape=doublecircle" : "")
            << "];\n";
    }
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (q == dead) continue;
        // Group parallel edges into one labelled edge.
        std::vector<std::string> labels(a.state_count());
        for (Symbol s = 0; s < sigma; ++s) {
            const StateId r = a.next(q, s);
            if (r == dead) continue;
            auto& l = labels[r];
            if (!l.empty()) l += "\\n";
            l += "[" + tuple_label(a.alphabet(), s) + "]";
        }
        for (StateId r = 0; r < a.state_count(); ++r) {
            if (!labels[r].empty()) out << "  q" << q << " -> q" << r << " [label=\"" << labels[r] << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace autseq
