#pragma once

// Right-angled Coxeter presentations and their word problem.
//
// Letters are 0-based internally; the string form "1.3.2" and all JSON
// input use 1-based generator labels.

#include "errors.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace racg {

using Word = std::vector<int>;

enum class EdgeOrder { Identity = 1, Commuting = 2, Free = 0 };

class CoxeterGraph {
public:
    CoxeterGraph() = default;
    explicit CoxeterGraph(int k) : k_(k), free_(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), false) {
        if (k < 1) throw ConfigError("a Coxeter graph needs at least one generator");
    }

    /// infinite_edges are 1-based label pairs; every other pair commutes.
    static CoxeterGraph from_infinite_edges(int k, const std::vector<std::pair<int, int>>& infinite_edges) {
        CoxeterGraph g(k);
        for (auto [a, b] : infinite_edges) {
            if (a < 1 || b < 1 || a > k || b > k)
                throw ConfigError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range 1.." + std::to_string(k));
            if (a == b) throw ConfigError("self-loop on generator " + std::to_string(a));
            g.set_free(a - 1, b - 1);
        }
        return g;
    }

    int k() const { return k_; }

    void set_free(int i, int j) {
        free_[idx(i, j)] = true;
        free_[idx(j, i)] = true;
    }

    /// m_ij: Identity on the diagonal, Free for infinity, Commuting for 2.
    EdgeOrder order(int i, int j) const {
        if (i == j) return EdgeOrder::Identity;
        return free_[idx(i, j)] ? EdgeOrder::Free : EdgeOrder::Commuting;
    }
    bool is_free(int i, int j) const { return i != j && free_[idx(i, j)]; }
    bool commute(int i, int j) const { return i == j || !free_[idx(i, j)]; }

    std::vector<std::pair<int, int>> infinite_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < k_; ++i)
            for (int j = i + 1; j < k_; ++j)
                if (free_[idx(i, j)]) out.emplace_back(i + 1, j + 1);
        return out;
    }

    friend bool operator==(const CoxeterGraph&, const CoxeterGraph&) = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j);
    }

    int k_ = 0;
    std::vector<bool> free_;
};

/// True iff the graph of infinity-edges is connected.
inline bool is_irreducible(const CoxeterGraph& g) {
    const int k = g.k();
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < k; ++j)
            if (!seen[static_cast<std::size_t>(j)] && g.is_free(i, j)) {
                seen[static_cast<std::size_t>(j)] = true;
                ++count;
                stack.push_back(j);
            }
    }
    return count == k;
}

/// Reduced word, ShortLex-least in its commutation class.
inline Word normal_form(const CoxeterGraph& g, const Word& w) {
    Word r;
    r.reserve(w.size());
    for (int s : w) {
        if (s < 0 || s >= g.k()) throw ConfigError("letter " + std::to_string(s + 1) + " out of range");
        bool cancelled = false;
        for (std::size_t j = r.size(); j-- > 0;) {
            if (r[j] == s) {
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
                cancelled = true;
                break;
            }
            if (!g.commute(r[j], s)) break;
        }
        if (!cancelled) r.push_back(s);
    }
    // Lex-least linear extension of the heap: position a must precede b when
    // a < b and the letters do not commute (equal letters count as such).
    const std::size_t n = r.size();
    std::vector<int> pending(n, 0);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < b; ++a)
            if (r[a] == r[b] || !g.commute(r[a], r[b])) ++pending[b];
    std::vector<bool> used(n, false);
    Word out;
    out.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && pending[i] == 0 && (best == n || r[i] < r[best])) best = i;
        used[best] = true;
        out.push_back(r[best]);
        for (std::size_t b = best + 1; b < n; ++b)
            if (!used[b] && (r[best] == r[b] || !g.commute(r[best], r[b]))) --pending[b];
    }
    return out;
}

inline Word inverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// "1.3.2" form; the identity is the empty string.
inline std::string word_to_string(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(w[i] + 1);
    }
    return s;
}

inline Word word_from_string(std::string_view s, int k) {
    Word w;
    if (s.empty() || s == "e") return w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t dot = s.find('.', pos);
        const std::string_view tok = s.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ConfigError("malformed word '" + std::string(s) + "'");
        const int letter = std::stoi(std::string(tok));
        if (letter < 1 || letter > k) throw ConfigError("letter " + std::string(tok) + " out of range in '" + std::string(s) + "'");
        w.push_back(letter - 1);
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return w;
}

/// Elements of word length exactly `length`, as sorted normal forms.
/// Throws BudgetError once more than `budget` elements would be held.
inline std::vector<Word> enumerate_sphere(const CoxeterGraph& g, int length, std::size_t budget = 5'000'000) {
    if (length < 0) throw ConfigError("sphere length must be nonnegative");
    std::vector<Word> sphere{Word{}};
    for (int l = 1; l <= length; ++l) {
        std::set<Word> next;
        for (const auto& w : sphere) {
            for (int s = 0; s < g.k(); ++s) {
                Word x = w;
                x.push_back(s);
                Word nf = normal_form(g, x);
                if (static_cast<int>(nf.size()) == l) next.insert(std::move(nf));
            }
            if (next.size() > budget)
                throw BudgetError("enumeration budget exceeded at length " + std::to_string(l), static_cast<std::size_t>(l));
        }
        sphere.assign(next.begin(), next.end());
    }
    return sphere;
}

/// Elements of length ≤ max_length, ordered by length then lexicographically.
inline std::vector<Word> enumerate_ball(const CoxeterGraph& g, int max_length, std::size_t budget = 5'000'000) {
    std::vector<Word> ball{Word{}};
    std::vector<Word> sphere{Word{}};
    for (int l = 1; l <= max_length; ++l) {
        std::set<Word> next;
        for (const auto& w : sphere)
            for (int s = 0; s < g.k(); ++s) {
                Word x = w;
                x.push_back(s);
                Word nf = normal_form(g, x);
                if (static_cast<int>(nf.size()) == l) next.insert(std::move(nf));
            }
        if (ball.size() + next.size() > budget)
            throw BudgetError("enumeration budget exceeded at length " + std::to_string(l), static_cast<std::size_t>(l));
        sphere.assign(next.begin(), next.end());
        ball.insert(ball.end(), sphere.begin(), sphere.end());
    }
    return ball;
}

}  // namespace racg
