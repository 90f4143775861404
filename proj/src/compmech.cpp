#include "compmech.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qc {

namespace {

constexpr double kEmissionFloor = 1e-12;

long checked_power(long d, long w) {
    double bits = static_cast<double>(w) * std::log2(static_cast<double>(d));
    if (bits > 26.0)
        fail(ErrorCode::capacity, "word table with d=" + std::to_string(d) + ", w=" + std::to_string(w) +
                                      " exceeds the 2^26 cap");
    long out = 1;
    for (long i = 0; i < w; ++i) out *= d;
    return out;
}

struct UnionFind {
    std::vector<long> parent;

    explicit UnionFind(long n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    long find(long x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(long a, long b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

long word_count(long d, long w) {
    if (d < 2 || w < 1) fail(ErrorCode::invalid_input, "word table needs d >= 2 and w >= 1");
    return checked_power(d, w);
}

void serialize_words(const WordDistribution& wd, std::ostream& os) {
    const long total = word_count(wd.d, wd.w);
    if (wd.p.size() != total) fail(ErrorCode::invalid_input, "serialize_words: table size mismatch");
    os << "qcwords 1\n";
    os << "d " << wd.d << "\n";
    os << "w " << wd.w << "\n";
    for (const auto& [key, value] : wd.metadata) os << "meta " << key << " " << value << "\n";
    for (long i = 0; i < total; ++i) os << i << " " << fmt17(wd.p(i)) << "\n";
    if (!os) fail(ErrorCode::io, "serialize_words: write failed");
}

WordDistribution parse_words(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "qcwords 1")
        fail(ErrorCode::io, "parse_words: missing or unsupported header");

    WordDistribution wd;
    long total = -1;
    long seen = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "d") {
            if (!(ls >> wd.d)) fail(ErrorCode::io, "parse_words: bad d line");
        } else if (tag == "w") {
            if (!(ls >> wd.w)) fail(ErrorCode::io, "parse_words: bad w line");
        } else if (tag == "meta") {
            std::string key, rest;
            ls >> key;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            wd.metadata.emplace_back(key, rest);
        } else {
            if (total < 0) {
                if (wd.d < 2 || wd.w < 1) fail(ErrorCode::io, "parse_words: probability row before d/w fields");
                total = word_count(wd.d, wd.w);
                wd.p = VecR::Zero(total);
            }
            long idx = -1;
            double prob = 0;
            std::istringstream row(line);
            if (!(row >> idx >> prob) || idx < 0 || idx >= total)
                fail(ErrorCode::io, "parse_words: bad probability row '" + line + "'");
            wd.p(idx) = prob;
            ++seen;
        }
    }
    if (total < 0 || seen != total)
        fail(ErrorCode::io, "parse_words: expected " + std::to_string(std::max<long>(total, 0)) +
                                " probability rows, got " + std::to_string(seen));
    return wd;
}

ConditionalFamily conditionals(const WordDistribution& wd, double p_floor) {
    if (p_floor < 0) fail(ErrorCode::invalid_input, "conditionals: p_floor must be >= 0");
    if (wd.w % 2 != 0 || wd.w < 2) fail(ErrorCode::invalid_input, "conditionals: need an even word length");
    const long L = wd.w / 2;
    const long n_l = word_count(wd.d, L);
    if (wd.p.size() != n_l * n_l) fail(ErrorCode::invalid_input, "conditionals: table size mismatch");

    ConditionalFamily cf;
    cf.d = wd.d;
    cf.L = L;

    VecR marginal = VecR::Zero(n_l);
    for (long u = 0; u < n_l; ++u)
        for (long v = 0; v < n_l; ++v) marginal(u) += wd.p(u * n_l + v);

    double kept_mass = 0;
    for (long u = 0; u < n_l; ++u) {
        if (marginal(u) > 0 && marginal(u) >= p_floor) {
            cf.pasts.push_back(u);
            kept_mass += marginal(u);
        }
    }
    if (cf.pasts.empty()) fail(ErrorCode::degenerate, "conditionals: every past fell below the probability floor");
    cf.dropped_mass = std::max(0.0, 1.0 - kept_mass);

    const long n = static_cast<long>(cf.pasts.size());
    cf.past_p = VecR(n);
    cf.cond = MatR(n, n_l);
    for (long row = 0; row < n; ++row) {
        const long u = cf.pasts[static_cast<std::size_t>(row)];
        cf.past_p(row) = marginal(u) / kept_mass;
        for (long v = 0; v < n_l; ++v) cf.cond(row, v) = wd.p(u * n_l + v) / marginal(u);
    }
    return cf;
}

EpsilonMachine build_machine(const ConditionalFamily& cf, double merge_tol) {
    if (merge_tol < 0) fail(ErrorCode::invalid_input, "build_machine: merge_tol must be >= 0");
    const long n = static_cast<long>(cf.pasts.size());
    const long d = cf.d;
    const long n_l = word_count(d, cf.L);
    const long n_prev = n_l / d;  // d^(L-1)

    // Single-linkage merge on total variation between future conditionals.
    UnionFind uf(n);
    double max_tv_inside = 0;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            const double tv = 0.5 * (cf.cond.row(i) - cf.cond.row(j)).cwiseAbs().sum();
            if (tv <= merge_tol) uf.unite(i, j);
        }
    }

    std::vector<long> state_of(static_cast<std::size_t>(n));
    auto relabel = [&](std::vector<long>& labels) {
        std::map<long, long> compact;
        for (long i = 0; i < n; ++i) {
            auto [it, fresh] = compact.try_emplace(labels[static_cast<std::size_t>(i)],
                                                   static_cast<long>(compact.size()));
            labels[static_cast<std::size_t>(i)] = it->second;
        }
        return static_cast<long>(compact.size());
    };
    for (long i = 0; i < n; ++i) state_of[static_cast<std::size_t>(i)] = uf.find(i);
    long n_states = relabel(state_of);

    // Map from past word to retained row; single-symbol conditionals.
    std::map<long, long> row_of_past;
    for (long i = 0; i < n; ++i) row_of_past[cf.pasts[static_cast<std::size_t>(i)]] = i;
    MatR step(n, d);  // P(next symbol r | past u)
    for (long i = 0; i < n; ++i) {
        for (long r = 0; r < d; ++r) {
            double s = 0;
            for (long rest = 0; rest < n_prev; ++rest) s += cf.cond(i, r * n_prev + rest);
            step(i, r) = s;
        }
    }
    auto suffix_row = [&](long i, long r) -> long {  // row index of suffix(u, r), or -1
        const long u = cf.pasts[static_cast<std::size_t>(i)];
        const long shifted = (u % n_prev) * d + r;
        auto it = row_of_past.find(shifted);
        return it == row_of_past.end() ? -1 : it->second;
    };

    // Refine until the partition is unifilar: pasts in one state must agree on
    // the follow-state for every symbol they can emit.
    const long iter_cap = std::max(n, n_l) + 2;
    long iters = 0;
    while (true) {
        if (++iters > iter_cap)
            fail(ErrorCode::internal, "build_machine: unifilar refinement failed to stabilize");
        bool split = false;
        std::vector<long> next_labels(static_cast<std::size_t>(n));
        std::map<std::pair<long, std::vector<long>>, long> signature_label;
        for (long i = 0; i < n; ++i) {
            std::vector<long> sig(static_cast<std::size_t>(d), -1);
            for (long r = 0; r < d; ++r) {
                if (step(i, r) <= kEmissionFloor) continue;
                const long srow = suffix_row(i, r);
                sig[static_cast<std::size_t>(r)] = srow < 0 ? -1 : state_of[static_cast<std::size_t>(srow)];
            }
            auto key = std::make_pair(state_of[static_cast<std::size_t>(i)], std::move(sig));
            auto [it, fresh] =
                signature_label.try_emplace(std::move(key), static_cast<long>(signature_label.size()));
            next_labels[static_cast<std::size_t>(i)] = it->second;
        }
        const long next_count = relabel(next_labels);
        if (next_count > n_states) split = true;
        state_of = std::move(next_labels);
        n_states = next_count;
        if (!split) break;
    }

    EpsilonMachine m;
    m.d = d;
    m.L = cf.L;
    m.n_states = n_states;
    m.state_pasts.assign(static_cast<std::size_t>(n_states), {});
    for (long i = 0; i < n; ++i) m.state_pasts[static_cast<std::size_t>(state_of[static_cast<std::size_t>(i)])].push_back(i);

    // Chaining diagnostic: worst intra-state distance between conditionals.
    for (const auto& members : m.state_pasts)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const double tv =
                    0.5 * (cf.cond.row(members[a]) - cf.cond.row(members[b])).cwiseAbs().sum();
                max_tv_inside = std::max(max_tv_inside, tv);
            }
    m.max_intra_state_tv = max_tv_inside;

    m.stationary = VecR::Zero(n_states);
    for (long i = 0; i < n; ++i) m.stationary(state_of[static_cast<std::size_t>(i)]) += cf.past_p(i);

    m.emission = MatR::Zero(n_states, d);
    m.successor.assign(static_cast<std::size_t>(n_states), std::vector<long>(static_cast<std::size_t>(d), -1));
    double lost = 0;
    for (long j = 0; j < n_states; ++j) {
        const auto& members = m.state_pasts[static_cast<std::size_t>(j)];
        const double pj = m.stationary(j);
        for (long r = 0; r < d; ++r) {
            double e = 0;
            long succ = -2;  // unset
            for (long i : members) {
                const double w = cf.past_p(i) * step(i, r);
                if (step(i, r) <= kEmissionFloor) continue;
                const long srow = suffix_row(i, r);
                if (srow < 0) {
                    lost += w;  // suffix fell below the past floor
                    continue;
                }
                e += w;
                const long target = state_of[static_cast<std::size_t>(srow)];
                if (succ == -2) succ = target;
                else if (succ != target)
                    fail(ErrorCode::internal, "build_machine: refinement left a non-unifilar transition");
            }
            if (e > 0) {
                m.emission(j, r) = e / pj;
                m.successor[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] = succ;
            }
        }
        // Renormalize the row; floored symbols and lost suffixes leave a gap.
        const double row_sum = m.emission.row(j).sum();
        if (row_sum <= 0) fail(ErrorCode::degenerate, "build_machine: state " + std::to_string(j) + " cannot emit");
        m.emission.row(j) /= row_sum;
    }
    m.lost_transition_mass = lost;
    return m;
}

double statistical_complexity(const EpsilonMachine& m) { return entropy_bits(m.stationary); }

double excess_entropy(const WordDistribution& wd) {
    if (wd.w % 2 != 0 || wd.w < 2) fail(ErrorCode::invalid_input, "excess_entropy: need an even word length");
    const long n_l = word_count(wd.d, wd.w / 2);
    if (wd.p.size() != n_l * n_l) fail(ErrorCode::invalid_input, "excess_entropy: table size mismatch");

    VecR past = VecR::Zero(n_l);
    VecR fut = VecR::Zero(n_l);
    for (long u = 0; u < n_l; ++u)
        for (long v = 0; v < n_l; ++v) {
            past(u) += wd.p(u * n_l + v);
            fut(v) += wd.p(u * n_l + v);
        }
    const double e = entropy_bits(past) + entropy_bits(fut) - entropy_bits(wd.p);
    return std::max(0.0, e);
}

double entropy_rate(const ConditionalFamily& cf) {
    const long n_prev = word_count(cf.d, cf.L) / cf.d;
    double h = 0;
    for (long i = 0; i < static_cast<long>(cf.pasts.size()); ++i) {
        for (long r = 0; r < cf.d; ++r) {
            double s = 0;
            for (long rest = 0; rest < n_prev; ++rest) s += cf.cond(i, r * n_prev + rest);
            if (s > 0) h -= cf.past_p(i) * s * std::log2(s);
        }
    }
    return h;
}

}  // namespace qc
