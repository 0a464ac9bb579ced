// Copyright 2026 The qcut Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "qcut/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <thread>

#include "qcut/rng.hpp"

namespace qcut {

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::kExact: return "exact";
        case SolverKind::kSimulatedAnnealing: return "sa";
        case SolverKind::kTabu: return "tabu";
        case SolverKind::kHybrid: return "hybrid";
    }
    return "unknown";
}

SolverKind parse_solver_kind(const std::string& name) {
    if (name == "exact") return SolverKind::kExact;
    if (name == "sa") return SolverKind::kSimulatedAnnealing;
    if (name == "tabu") return SolverKind::kTabu;
    if (name == "hybrid") return SolverKind::kHybrid;
    throw SolverError("unknown solver '" + name + "' (expected exact, sa, tabu or hybrid)");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Compressed copy of a model for the inner loops.
struct Flat {
    std::size_t n = 0;
    Value lo = 0;
    Value hi = 1;
    double offset = 0.0;
    std::vector<double> lin;
    std::vector<std::size_t> row;  // sparse neighbors, CSR
    std::vector<VarId> col;
    std::vector<double> val;
    std::vector<double> coupling;                // per block
    std::vector<std::vector<VarId>> members;     // per block
    std::vector<std::size_t> brow;               // var -> blocks, CSR
    std::vector<std::uint32_t> bid;
};

template <Vartype V>
Flat flatten(const QuadraticModel<V>& m) {
    Flat f;
    f.n = m.num_variables();
    f.lo = QuadraticModel<V>::kLow;
    f.hi = QuadraticModel<V>::kHigh;
    f.offset = m.offset();
    f.lin.assign(m.linear().begin(), m.linear().end());
    f.row.assign(f.n + 1, 0);
    for (std::size_t i = 0; i < f.n; ++i) {
        for (const auto& nb : m.neighborhood(static_cast<VarId>(i))) {
            f.col.push_back(nb.var);
            f.val.push_back(nb.bias);
        }
        f.row[i + 1] = f.col.size();
    }
    std::vector<std::size_t> count(f.n, 0);
    for (const auto& b : m.blocks()) {
        f.coupling.push_back(b.coupling);
        f.members.push_back(b.vars);
        for (VarId v : b.vars) ++count[v];
    }
    f.brow.assign(f.n + 1, 0);
    for (std::size_t i = 0; i < f.n; ++i) f.brow[i + 1] = f.brow[i] + count[i];
    f.bid.resize(f.brow[f.n]);
    std::vector<std::size_t> fill(f.brow.begin(), f.brow.end() - 1);
    for (std::size_t k = 0; k < f.members.size(); ++k) {
        for (VarId v : f.members[k]) f.bid[fill[v]++] = static_cast<std::uint32_t>(k);
    }
    return f;
}

// Current assignment with local fields for O(degree) flip deltas.
class Walker {
 public:
    Walker(const Flat& f, State x) : f_(&f), x_(std::move(x)) { resync(); }

    void resync() {
        const Flat& f = *f_;
        field_ = f.lin;
        energy_ = f.offset;
        for (std::size_t i = 0; i < f.n; ++i) {
            double pair = 0.0;
            for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) {
                field_[i] += f.val[p] * x_[f.col[p]];
                if (static_cast<std::size_t>(f.col[p]) > i) pair += f.val[p] * x_[f.col[p]];
            }
            energy_ += x_[i] * (f.lin[i] + pair);
        }
        bsum_.assign(f.members.size(), 0);
        for (std::size_t k = 0; k < f.members.size(); ++k) {
            long long sq = 0;
            for (VarId v : f.members[k]) {
                bsum_[k] += x_[v];
                sq += x_[v] * x_[v];
            }
            energy_ += f.coupling[k] * static_cast<double>((bsum_[k] * bsum_[k] - sq) / 2);
        }
        flips_ = 0;
    }

    double delta(std::size_t i) const {
        const Flat& f = *f_;
        const Value v = x_[i];
        const double d = (v == f.hi ? f.lo : f.hi) - v;
        double h = field_[i];
        for (std::size_t p = f.brow[i]; p < f.brow[i + 1]; ++p) h += f.coupling[f.bid[p]] * static_cast<double>(bsum_[f.bid[p]] - v);
        return d * h;
    }

    void flip(std::size_t i, double delta) {
        const Flat& f = *f_;
        const Value nv = x_[i] == f.hi ? f.lo : f.hi;
        const int d = nv - x_[i];
        for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) field_[f.col[p]] += f.val[p] * d;
        for (std::size_t p = f.brow[i]; p < f.brow[i + 1]; ++p) bsum_[f.bid[p]] += d;
        x_[i] = nv;
        energy_ += delta;
        // Bound drift of the running energy and fields.
        if (++flips_ >= (std::size_t{1} << 16)) resync();
    }

    void flip(std::size_t i) { flip(i, delta(i)); }

    void set(std::size_t i, Value v) {
        if (x_[i] != v) flip(i);
    }

    double energy() const { return energy_; }
    const State& state() const { return x_; }
    std::size_t size() const { return x_.size(); }

 private:
    const Flat* f_;
    State x_;
    std::vector<double> field_;
    std::vector<long long> bsum_;
    double energy_ = 0.0;
    std::size_t flips_ = 0;
};

State random_state(const Flat& f, SplitMix64& rng) {
    State x(f.n);
    for (auto& v : x) v = rng.below(2) ? f.hi : f.lo;
    return x;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
    unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(tasks, 1)));
}

// fn(task, worker) over tasks [0, count). Task-to-worker assignment is
// dynamic, so callers must merge results order-independently.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i, w);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next.store(count);
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

constexpr double kImproveEps = 1e-9;

// Best-move lookup for models where every variable sits in at most one
// block. Within a (block, value) group the block part of a flip delta is
// shared, so the group is ranked by the sparse part alone and a flip only
// re-keys the flipped variable and its sparse neighbors.
class MoveIndex {
 public:
    static bool applicable(const Flat& f) {
        for (std::size_t i = 0; i < f.n; ++i) {
            if (f.brow[i + 1] - f.brow[i] > 1) return false;
        }
        return true;
    }

    MoveIndex(const Flat& f, State x) : f_(&f), x_(std::move(x)) { rebuild(); }

    double energy() const { return energy_; }
    const State& state() const { return x_; }

    double delta(std::size_t i) const { return key_[i] + group_shift(group_of(i)); }

    // Lowest (delta, index) among variables with allowed(i, delta).
    template <class Allowed>
    std::pair<std::size_t, double> best(Allowed&& allowed) const {
        std::size_t pick = f_->n;
        double pick_d = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const double shift = group_shift(g);
            for (const auto& [key, var] : groups_[g]) {
                const double d = key + shift;
                if (d > pick_d || (d == pick_d && static_cast<std::size_t>(var) > pick)) break;
                if (allowed(static_cast<std::size_t>(var), d)) {
                    pick = static_cast<std::size_t>(var);
                    pick_d = d;
                    break;
                }
            }
        }
        return {pick, pick_d};
    }

    void flip(std::size_t i, double delta) {
        const Flat& f = *f_;
        const Value nv = x_[i] == f.hi ? f.lo : f.hi;
        const int d = nv - x_[i];
        erase(i);
        for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) {
            const auto j = static_cast<std::size_t>(f.col[p]);
            erase(j);
            field_[j] += f.val[p] * d;
        }
        if (f.brow[i] < f.brow[i + 1]) bsum_[f.bid[f.brow[i]]] += d;
        x_[i] = nv;
        energy_ += delta;
        insert(i);
        for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) insert(static_cast<std::size_t>(f.col[p]));
        if (++flips_ >= (std::size_t{1} << 16)) rebuild();
    }

 private:
    std::size_t block_of(std::size_t i) const {
        return f_->brow[i] < f_->brow[i + 1] ? f_->bid[f_->brow[i]] : f_->members.size();
    }
    std::size_t group_of(std::size_t i) const { return 2 * block_of(i) + (x_[i] == f_->hi ? 1 : 0); }

    double group_shift(std::size_t g) const {
        const std::size_t b = g / 2;
        if (b == f_->members.size()) return 0.0;
        const Value v = (g % 2 == 1) ? f_->hi : f_->lo;
        const int d = (v == f_->hi ? f_->lo : f_->hi) - v;
        return d * f_->coupling[b] * static_cast<double>(bsum_[b] - v);
    }

    void erase(std::size_t i) { groups_[group_of(i)].erase({key_[i], static_cast<VarId>(i)}); }

    void insert(std::size_t i) {
        const Value v = x_[i];
        const int d = (v == f_->hi ? f_->lo : f_->hi) - v;
        key_[i] = d * field_[i];
        groups_[group_of(i)].insert({key_[i], static_cast<VarId>(i)});
    }

    void rebuild() {
        const Flat& f = *f_;
        Walker w(f, x_);
        energy_ = w.energy();
        field_ = f.lin;
        for (std::size_t i = 0; i < f.n; ++i) {
            for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) field_[i] += f.val[p] * x_[f.col[p]];
        }
        bsum_.assign(f.members.size(), 0);
        for (std::size_t b = 0; b < f.members.size(); ++b) {
            for (VarId v : f.members[b]) bsum_[b] += x_[v];
        }
        groups_.assign(2 * (f.members.size() + 1), {});
        key_.assign(f.n, 0.0);
        for (std::size_t i = 0; i < f.n; ++i) insert(i);
        flips_ = 0;
    }

    const Flat* f_;
    State x_;
    std::vector<double> field_;
    std::vector<long long> bsum_;
    std::vector<double> key_;
    std::vector<std::set<std::pair<double, VarId>>> groups_;
    double energy_ = 0.0;
    std::size_t flips_ = 0;
};

// Plain O(n) scan for the general case.
std::pair<std::size_t, double> scan_best(const Walker& w, auto&& allowed) {
    std::size_t pick = w.size();
    double pick_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = w.delta(i);
        if (d < pick_d && allowed(i, d)) {
            pick = i;
            pick_d = d;
        }
    }
    return {pick, pick_d};
}

template <class Mover, class Best>
Sample tabu_loop(Mover& mv, Best&& best_move, std::size_t n, int tenure, long stall_limit, std::uint64_t* evaluated) {
    Sample best{mv.state(), mv.energy()};
    const long eff_tenure = std::min<long>(tenure, static_cast<long>(n) - 1);
    std::vector<long> tabu_until(n, 0);
    long stall = 0;
    for (long it = 1; stall < stall_limit; ++it) {
        const double bar = best.energy - kImproveEps - mv.energy();
        const auto [pick, pick_d] =
            best_move(mv, [&](std::size_t i, double d) { return tabu_until[i] < it || d < bar; });
        if (evaluated != nullptr) *evaluated += n;
        if (pick == n) break;
        mv.flip(pick, pick_d);
        tabu_until[pick] = it + eff_tenure;
        if (mv.energy() < best.energy - kImproveEps) {
            best.state = mv.state();
            best.energy = mv.energy();
            stall = 0;
        } else {
            ++stall;
        }
    }
    return best;
}

// Steepest-descent tabu from `init`: recency tabu list with aspiration,
// lowest index on ties. Returns the best state seen.
Sample run_tabu(const Flat& f, State init, int tenure, long max_no_improve, std::uint64_t* evaluated) {
    const long n = static_cast<long>(f.n);
    if (n == 0) return Sample{std::move(init), f.offset};
    const long stall_limit = max_no_improve > 0 ? max_no_improve : std::max(1000L, 20 * n);
    if (MoveIndex::applicable(f)) {
        MoveIndex mv(f, std::move(init));
        return tabu_loop(mv, [](const MoveIndex& m, auto&& ok) { return m.best(ok); }, f.n, tenure, stall_limit,
                         evaluated);
    }
    Walker w(f, std::move(init));
    return tabu_loop(w, [](const Walker& m, auto&& ok) { return scan_best(m, ok); }, f.n, tenure, stall_limit,
                     evaluated);
}

// Repeatedly flips the most improving variable (lowest index on ties).
void greedy_descent(Walker& w) {
    for (;;) {
        std::size_t pick = w.size();
        double pick_d = -kImproveEps;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double d = w.delta(i);
            if (d < pick_d) {
                pick = i;
                pick_d = d;
            }
        }
        if (pick == w.size()) return;
        w.flip(pick, pick_d);
    }
}

// Same objective over spins, up to a constant: x = (1 + s) / 2 for bits.
// In this form a balance block carries no linear bias, so scaling its
// coupling softens the constraint without moving its target.
Flat spin_form(const Flat& f) {
    Flat s = f;
    if (f.lo == -1) return s;
    s.lo = -1;
    for (std::size_t i = 0; i < f.n; ++i) {
        s.lin[i] = f.lin[i] / 2.0;
        for (std::size_t p = f.row[i]; p < f.row[i + 1]; ++p) {
            s.lin[i] += f.val[p] / 4.0;
            s.val[p] = f.val[p] / 4.0;
        }
    }
    for (std::size_t k = 0; k < f.members.size(); ++k) {
        s.coupling[k] = f.coupling[k] / 4.0;
        const double pull = s.coupling[k] * static_cast<double>(f.members[k].size() - 1);
        for (VarId v : f.members[k]) s.lin[v] += pull;
    }
    return s;
}

// Metropolis anneal whose temperature range comes from the sparse and
// linear terms only. Stiff blocks (penalties) freeze single-flip dynamics
// long before the sparse structure is resolved, so block couplings start
// near the final temperature and grow geometrically back to full strength
// over the last quarter of the sweeps.
State softened_anneal(const Flat& f, int sweeps, SplitMix64& rng) {
    Flat s = spin_form(f);
    double t_hi = 0.0;
    double t_lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.n; ++i) {
        double row = std::abs(s.lin[i]);
        if (row > 0.0) t_lo = std::min(t_lo, row);
        for (std::size_t p = s.row[i]; p < s.row[i + 1]; ++p) {
            row += std::abs(s.val[p]);
            if (s.val[p] != 0.0) t_lo = std::min(t_lo, std::abs(s.val[p]));
        }
        t_hi = std::max(t_hi, row);
    }
    State x = random_state(s, rng);
    if (t_hi == 0.0) return x;
    t_lo = std::min(t_lo / 4.0, t_hi);

    const std::vector<double> full = s.coupling;
    double c_max = 0.0;
    for (double c : full) c_max = std::max(c_max, std::abs(c));
    const double lambda0 = c_max > 0.0 ? std::min(1.0, t_lo / c_max) : 1.0;
    const int ramp_from = sweeps - sweeps / 4;
    const double t_ratio = sweeps > 1 ? std::pow(t_lo / t_hi, 1.0 / (sweeps - 1)) : 1.0;
    const double l_ratio = sweeps - ramp_from > 1 ? std::pow(1.0 / lambda0, 1.0 / (sweeps - ramp_from - 1)) : 1.0;

    double lambda = lambda0;
    for (std::size_t k = 0; k < full.size(); ++k) s.coupling[k] = full[k] * lambda;
    Walker w(s, std::move(x));
    double temp = t_hi;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < s.n; ++i) {
            const double d = w.delta(i);
            if (d <= 0.0 || rng.uniform() < std::exp(-d / temp)) w.flip(i, d);
        }
        temp *= t_ratio;
        if (sweep >= ramp_from) {
            lambda = std::min(1.0, lambda * l_ratio);
            for (std::size_t k = 0; k < full.size(); ++k) s.coupling[k] = full[k] * lambda;
        }
    }
    State out = w.state();
    for (auto& v : out) v = v == 1 ? f.hi : f.lo;
    return out;
}

bool sample_less(const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.state < b.state;
}

template <Vartype V>
SolveResult trivial_result(const QuadraticModel<V>& m, std::string name, std::uint64_t seed) {
    SolveResult r;
    r.best_energy = m.offset();
    r.samples = {Sample{{}, m.offset()}};
    r.samples_evaluated = 1;
    r.seed = seed;
    r.solver_name = std::move(name);
    return r;
}

// Exact enumeration entry: energy plus the state packed with variable 0 in
// the most significant bit, so integer order is lexicographic order.
struct Packed {
    double energy;
    std::uint64_t key;
    bool operator<(const Packed& o) const { return energy != o.energy ? energy < o.energy : key < o.key; }
};

}  // namespace

template <Vartype V>
SolveResult solve_exact(const QuadraticModel<V>& m, const ExactOptions& opts) {
    const auto t0 = Clock::now();
    const std::size_t n = m.num_variables();
    if (n > kExactMaxVariables) {
        throw SolverError("exact solver is limited to " + std::to_string(kExactMaxVariables) + " variables, model has " +
                          std::to_string(n));
    }
    if (opts.max_samples == 0) throw SolverError("max_samples must be positive");
    if (n == 0) return trivial_result(m, "exact", 0);

    const Flat f = flatten(m);
    // Low variables are Gray-code enumerated inside a chunk; each chunk fixes
    // the high ones and starts from a fresh evaluation.
    const std::size_t low = std::min<std::size_t>(n, 16);
    const std::size_t chunks = std::size_t{1} << (n - low);
    const std::size_t per_chunk = std::size_t{1} << low;
    const std::size_t cap = opts.max_samples;
    const unsigned workers = worker_count(opts.threads, chunks);

    std::vector<std::priority_queue<Packed>> heaps(workers);
    parallel_for(chunks, workers, [&](std::size_t c, unsigned wid) {
        auto& heap = heaps[wid];
        State x(n, f.lo);
        std::uint64_t key = 0;
        for (std::size_t t = 0; t < n - low; ++t) {
            if ((c >> t) & 1U) {
                x[low + t] = f.hi;
                key |= std::uint64_t{1} << (n - 1 - (low + t));
            }
        }
        Walker w(f, std::move(x));
        auto consider = [&](double e) {
            if (heap.size() < cap) {
                heap.push({e, key});
            } else if (Packed{e, key} < heap.top()) {
                heap.pop();
                heap.push({e, key});
            }
        };
        consider(w.energy());
        for (std::size_t s = 1; s < per_chunk; ++s) {
            const auto i = static_cast<std::size_t>(std::countr_zero(s));
            w.flip(i);
            key ^= std::uint64_t{1} << (n - 1 - i);
            consider(w.energy());
        }
    });

    std::vector<Packed> all;
    for (auto& h : heaps) {
        for (; !h.empty(); h.pop()) all.push_back(h.top());
    }
    std::sort(all.begin(), all.end());
    if (all.size() > cap) all.resize(cap);

    SolveResult r;
    r.solver_name = "exact";
    r.samples_evaluated = std::uint64_t{1} << n;
    for (const auto& p : all) {
        State x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = ((p.key >> (n - 1 - i)) & 1U) ? f.hi : f.lo;
        const double e = m.energy(x);
        r.samples.push_back({std::move(x), e});
    }
    std::sort(r.samples.begin(), r.samples.end(), sample_less);
    const double emin = r.samples.front().energy;
    const double tol = 1e-9 * std::max(1.0, std::abs(emin));
    // Lexicographically smallest state among the co-optima.
    const Sample* best = &r.samples.front();
    std::size_t co = 0;
    for (const auto& s : r.samples) {
        if (s.energy > emin + tol) break;
        ++co;
        if (s.state < best->state) best = &s;
    }
    r.co_optima_truncated = co == r.samples.size() && all.size() == cap && (std::uint64_t{1} << n) > cap;
    r.best_assignment = best->state;
    r.best_energy = best->energy;
    r.wall_time = seconds_since(t0);
    return r;
}

template <Vartype V>
SolveResult solve_sa(const QuadraticModel<V>& m, const SaSchedule& sched, std::uint64_t seed, unsigned threads) {
    const auto t0 = Clock::now();
    if (sched.sweeps < 1) throw SolverError("sweeps must be at least 1");
    if (sched.restarts < 1) throw SolverError("restarts must be at least 1");
    if (!std::isfinite(sched.t_initial) || !std::isfinite(sched.t_final)) throw SolverError("temperatures must be finite");
    const std::size_t n = m.num_variables();
    if (n == 0) {
        auto r = trivial_result(m, "sa", seed);
        r.history = {r.best_energy};
        return r;
    }

    const Flat f = flatten(m);
    double t_hi = sched.t_initial;
    if (t_hi <= 0.0) {
        t_hi = m.max_abs_coefficient();
        if (t_hi == 0.0) t_hi = 1.0;
    }
    const double t_lo = sched.t_final > 0.0 ? sched.t_final : 1e-3 * t_hi;
    if (t_lo > t_hi) throw SolverError("t_final exceeds t_initial");
    const double ratio = sched.sweeps > 1 ? std::pow(t_lo / t_hi, 1.0 / (sched.sweeps - 1)) : 1.0;

    const auto restarts = static_cast<std::size_t>(sched.restarts);
    std::vector<Sample> per_restart(restarts);
    parallel_for(restarts, worker_count(threads, restarts), [&](std::size_t r, unsigned) {
        SplitMix64 rng(derive_seed(seed, r));
        Walker w(f, random_state(f, rng));
        Sample best{w.state(), w.energy()};
        double temp = t_hi;
        for (int s = 0; s < sched.sweeps; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = w.delta(i);
                if (d <= 0.0 || rng.uniform() < std::exp(-d / temp)) w.flip(i, d);
            }
            if (w.energy() < best.energy) {
                best.state = w.state();
                best.energy = w.energy();
            }
            temp *= ratio;
        }
        best.energy = m.energy(best.state);
        per_restart[r] = std::move(best);
    });

    SolveResult res;
    res.solver_name = "sa";
    res.seed = seed;
    res.samples_evaluated = static_cast<std::uint64_t>(restarts) * static_cast<std::uint64_t>(sched.sweeps) * n;
    std::size_t best = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        if (per_restart[r].energy < per_restart[best].energy) best = r;
        res.history.push_back(per_restart[best].energy);
    }
    res.best_assignment = per_restart[best].state;
    res.best_energy = per_restart[best].energy;
    res.samples = std::move(per_restart);
    std::stable_sort(res.samples.begin(), res.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
    res.wall_time = seconds_since(t0);
    return res;
}

template <Vartype V>
SolveResult solve_tabu(const QuadraticModel<V>& m, const TabuParams& params, std::uint64_t seed) {
    const auto t0 = Clock::now();
    if (params.tenure < 1) throw SolverError("tabu tenure must be at least 1");
    if (params.restarts < 1) throw SolverError("restarts must be at least 1");
    if (params.max_no_improve < 0) throw SolverError("max_no_improve must be non-negative");
    const std::size_t n = m.num_variables();
    if (n == 0) return trivial_result(m, "tabu", seed);

    const Flat f = flatten(m);
    SolveResult res;
    res.solver_name = "tabu";
    res.seed = seed;
    for (int r = 0; r < params.restarts; ++r) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Sample s = run_tabu(f, random_state(f, rng), params.tenure, params.max_no_improve, &res.samples_evaluated);
        s.energy = m.energy(s.state);
        res.samples.push_back(std::move(s));
        const double prev = res.history.empty() ? std::numeric_limits<double>::infinity() : res.history.back();
        res.history.push_back(std::min(prev, res.samples.back().energy));
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < res.samples.size(); ++r) {
        if (res.samples[r].energy < res.samples[best].energy) best = r;
    }
    res.best_assignment = res.samples[best].state;
    res.best_energy = res.samples[best].energy;
    std::stable_sort(res.samples.begin(), res.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
    res.wall_time = seconds_since(t0);
    return res;
}

template <Vartype V>
ClampedModel<V> clamp(const QuadraticModel<V>& m, std::span<const Value> state, std::span<const VarId> vars) {
    const std::size_t n = m.num_variables();
    if (state.size() != n) throw ModelError("clamp: state length does not match the model");
    std::vector<VarId> local(n, -1);
    for (std::size_t a = 0; a < vars.size(); ++a) {
        const VarId v = vars[a];
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw ModelError("clamp: variable out of range");
        if (local[v] != -1) throw ModelError("clamp: variable selected twice");
        local[v] = static_cast<VarId>(a);
    }
    for (Value v : state) {
        if (v != QuadraticModel<V>::kLow && v != QuadraticModel<V>::kHigh) throw ModelError("clamp: value out of domain");
    }

    ClampedModel<V> out{QuadraticModel<V>(vars.size()), {vars.begin(), vars.end()}, 0.0};
    double c = m.offset();
    for (std::size_t i = 0; i < n; ++i) {
        const auto vi = static_cast<VarId>(i);
        if (local[i] < 0) {
            double pair = 0.0;
            for (const auto& nb : m.neighborhood(vi)) {
                if (local[nb.var] < 0 && static_cast<std::size_t>(nb.var) > i) pair += nb.bias * state[nb.var];
            }
            c += state[i] * (m.linear(vi) + pair);
            continue;
        }
        double h = m.linear(vi);
        for (const auto& nb : m.neighborhood(vi)) {
            if (local[nb.var] < 0) {
                h += nb.bias * state[nb.var];
            } else if (static_cast<std::size_t>(nb.var) > i) {
                out.sub.add_quadratic(local[i], local[nb.var], nb.bias);
            }
        }
        if (h != 0.0) out.sub.add_linear(local[i], h);
    }
    for (const auto& b : m.blocks()) {
        long long s = 0;
        long long sq = 0;
        std::vector<VarId> picked;
        for (VarId v : b.vars) {
            if (local[v] >= 0) {
                picked.push_back(local[v]);
            } else {
                s += state[v];
                sq += state[v] * state[v];
            }
        }
        c += b.coupling * static_cast<double>((s * s - sq) / 2);
        if (s != 0) {
            for (VarId a : picked) out.sub.add_linear(a, b.coupling * static_cast<double>(s));
        }
        if (picked.size() >= 2) out.sub.add_block(std::move(picked), b.coupling);
    }
    out.sub.add_offset(c);
    out.constant = c;
    return out;
}

template <Vartype V>
SolveResult solve_hybrid(const QuadraticModel<V>& m, const HybridParams& params, std::uint64_t seed) {
    const auto t0 = Clock::now();
    if (params.sub_size < 1) throw SolverError("sub_size must be at least 1");
    if (params.rounds < 1) throw SolverError("rounds must be at least 1");
    if (params.inner != SolverKind::kExact && params.inner != SolverKind::kTabu) {
        throw SolverError("hybrid inner solver must be exact or tabu");
    }
    if (params.inner == SolverKind::kExact && static_cast<std::size_t>(params.sub_size) > kExactMaxVariables) {
        throw SolverError("sub_size " + std::to_string(params.sub_size) + " exceeds the exact solver's " +
                          std::to_string(kExactMaxVariables) + "-variable limit");
    }
    if (params.inner_tabu.tenure < 1) {
        throw SolverError("tabu tenure must be at least 1");
    }
    const std::size_t n = m.num_variables();
    if (n == 0) {
        auto r = trivial_result(m, "hybrid", seed);
        r.history = {r.best_energy};
        return r;
    }

    if (n <= static_cast<std::size_t>(params.sub_size)) {
        // Nothing to decompose: one round over the whole model.
        SolveResult r = params.inner == SolverKind::kExact && n <= kExactMaxVariables
                            ? solve_exact(m, ExactOptions{1, 1})
                            : solve_tabu(m, params.inner_tabu, seed);
        r.solver_name = "hybrid";
        r.seed = seed;
        r.history = {r.best_energy};
        r.wall_time = seconds_since(t0);
        return r;
    }

    const Flat f = flatten(m);
    SplitMix64 rng(derive_seed(seed, 0));
    Walker w(f, random_state(f, rng));
    greedy_descent(w);

    SolveResult res;
    res.solver_name = "hybrid";
    res.seed = seed;
    res.history.push_back(w.energy());

    auto full_pass = [&] {
        Sample s = run_tabu(f, w.state(), params.inner_tabu.tenure, std::max<long>(1000, static_cast<long>(2 * n)),
                            &res.samples_evaluated);
        if (s.energy < w.energy() - kImproveEps) {
            w = Walker(f, std::move(s.state));
            return true;
        }
        return false;
    };
    if (params.anneal_sweeps > 0) {
        Walker a(f, softened_anneal(f, params.anneal_sweeps, rng));
        greedy_descent(a);
        res.samples_evaluated += static_cast<std::uint64_t>(params.anneal_sweeps) * n;
        if (a.energy() < w.energy() - kImproveEps) w = std::move(a);
    }
    if (params.full_passes) full_pass();

    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(params.sub_size), n);
    std::vector<VarId> order(n);
    std::vector<double> gain(n);
    int fails = 0;
    for (std::uint64_t round = 0; fails < params.rounds; ++round) {
        std::vector<VarId> vars;
        if (round % 2 == 0) {
            // Variables whose single flip would lower the energy most.
            for (std::size_t i = 0; i < n; ++i) gain[i] = w.delta(i);
            std::iota(order.begin(), order.end(), 0);
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                              [&](VarId a, VarId b) { return gain[a] != gain[b] ? gain[a] < gain[b] : a < b; });
            vars.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(vars.begin(), vars.end());
        } else {
            const std::size_t start = rng.below(n - k + 1);
            vars.resize(k);
            std::iota(vars.begin(), vars.end(), static_cast<VarId>(start));
        }

        const auto cm = clamp(m, w.state(), vars);
        State current(k);
        for (std::size_t a = 0; a < k; ++a) current[a] = w.state()[vars[a]];
        State proposal;
        double proposal_e = 0.0;
        if (params.inner == SolverKind::kExact && k <= kExactMaxVariables) {
            const auto r = solve_exact(cm.sub, ExactOptions{1, 1});
            res.samples_evaluated += r.samples_evaluated;
            proposal = r.best_assignment;
            proposal_e = r.best_energy;
        } else {
            const Flat sf = flatten(cm.sub);
            Sample s = run_tabu(sf, current, params.inner_tabu.tenure, params.inner_tabu.max_no_improve,
                                &res.samples_evaluated);
            SplitMix64 sub_rng(derive_seed(seed, round + 1));
            for (int extra = 1; extra < params.inner_tabu.restarts; ++extra) {
                Sample t = run_tabu(sf, random_state(sf, sub_rng), params.inner_tabu.tenure,
                                    params.inner_tabu.max_no_improve, &res.samples_evaluated);
                if (t.energy < s.energy) s = std::move(t);
            }
            proposal = std::move(s.state);
            proposal_e = cm.sub.energy(proposal);
        }

        if (proposal_e < w.energy() - kImproveEps) {
            for (std::size_t a = 0; a < k; ++a) w.set(static_cast<std::size_t>(vars[a]), proposal[a]);
            w.resync();
            if (params.full_passes) full_pass();
            fails = 0;
        } else {
            ++fails;
        }
        res.history.push_back(w.energy());
    }

    res.best_assignment = w.state();
    res.best_energy = m.energy(res.best_assignment);
    res.samples = {Sample{res.best_assignment, res.best_energy}};
    res.wall_time = seconds_since(t0);
    return res;
}

template <Vartype V>
SolveResult solve(const QuadraticModel<V>& m, const SolverConfig& cfg, std::uint64_t seed) {
    SolveResult r;
    switch (cfg.kind) {
        case SolverKind::kExact: r = solve_exact(m, ExactOptions{4096, cfg.threads}); break;
        case SolverKind::kSimulatedAnnealing: r = solve_sa(m, cfg.sa, seed, cfg.threads); break;
        case SolverKind::kTabu: r = solve_tabu(m, cfg.tabu, seed); break;
        case SolverKind::kHybrid: r = solve_hybrid(m, cfg.hybrid, seed); break;
    }
    r.seed = seed;
    return r;
}

template <Vartype V>
SolveResult solve(const QuadraticModel<V>& m, const SolverConfig& cfg) {
    return solve(m, cfg, cfg.seed);
}

#define QCUT_INSTANTIATE(V)                                                                                      \
    template SolveResult solve_exact(const QuadraticModel<V>&, const ExactOptions&);                             \
    template SolveResult solve_sa(const QuadraticModel<V>&, const SaSchedule&, std::uint64_t, unsigned);          \
    template SolveResult solve_tabu(const QuadraticModel<V>&, const TabuParams&, std::uint64_t);                 \
    template SolveResult solve_hybrid(const QuadraticModel<V>&, const HybridParams&, std::uint64_t);             \
    template SolveResult solve(const QuadraticModel<V>&, const SolverConfig&);                                   \
    template SolveResult solve(const QuadraticModel<V>&, const SolverConfig&, std::uint64_t);                    \
    template ClampedModel<V> clamp(const QuadraticModel<V>&, std::span<const Value>, std::span<const VarId>);

QCUT_INSTANTIATE(Vartype::kSpin)
QCUT_INSTANTIATE(Vartype::kBinary)

#undef QCUT_INSTANTIATE

}  // namespace qcut
