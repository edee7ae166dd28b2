#pragma once

// Hand-rolled generators shared by the property tests.

#include "racg/coxeter.hpp"
#include "racg/rational.hpp"

#include <random>

namespace testgen {

inline racg::Word random_word(std::mt19937_64& rng, int k, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, k - 1);
    racg::Word w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = letter(rng);
    return w;
}

/// Random right-angled graph on k generators; each pair is infinity with probability p.
inline racg::CoxeterGraph random_graph(std::mt19937_64& rng, int k, double p = 0.5) {
    racg::CoxeterGraph g(k);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (coin(rng)) g.set_free(i, j);
    return g;
}

inline racg::CoxeterGraph random_irreducible_graph(std::mt19937_64& rng, int k, double p = 0.5) {
    for (;;) {
        auto g = random_graph(rng, k, p);
        if (racg::is_irreducible(g)) return g;
    }
}

/// Uniform rational in [lo, hi] with denominator up to max_den.
inline racg::Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den = 12) {
    std::uniform_int_distribution<int> den(1, max_den);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(lo * d, hi * d);
    return racg::Rational(num(rng), d);
}

}  // namespace testgen
