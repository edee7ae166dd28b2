#pragma once

// Sylvester inertia of a symmetric rational matrix by exact congruence
// diagonalization.

#include "dense_matrix.hpp"

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace racg {

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Inertia& s) {
    return os << "(" << s.positive << "," << s.negative << "," << s.zero << ")";
}

inline Inertia signature(const RationalMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("signature: matrix not symmetric");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    std::vector<bool> done(n, false);
    Inertia out;
    std::size_t remaining = n;

    auto eliminate_one = [&](std::size_t i) {
        const Rational inv = Rational(1) / a(i, i);
        for (std::size_t r = 0; r < n; ++r) {
            if (done[r] || r == i || a(r, i).is_zero()) continue;
            const Rational f = a(r, i) * inv;
            for (std::size_t c = 0; c < n; ++c)
                if (!done[c] && c != i) a(r, c) -= f * a(i, c);
        }
        (a(i, i).sign() > 0 ? out.positive : out.negative) += 1;
        done[i] = true;
        --remaining;
    };

    while (remaining > 0) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !a(i, i).is_zero()) { piv = i; break; }
        if (piv != n) {
            eliminate_one(piv);
            continue;
        }
        // All remaining diagonal entries vanish: look for a 2x2 block [[0,b],[b,0]].
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n && bi == n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (!done[j] && !a(i, j).is_zero()) { bi = i; bj = j; break; }
        }
        if (bi == n) {
            out.zero += static_cast<int>(remaining);
            break;
        }
        // Schur complement against the block B = [[0,b],[b,0]], B^{-1} = [[0,1/b],[1/b,0]].
        const Rational binv = Rational(1) / a(bi, bj);
        for (std::size_t r = 0; r < n; ++r) {
            if (done[r] || r == bi || r == bj) continue;
            const Rational ri = a(r, bi), rj = a(r, bj);
            if (ri.is_zero() && rj.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (done[c] || c == bi || c == bj) continue;
                a(r, c) -= (ri * a(bj, c) + rj * a(bi, c)) * binv;
            }
        }
        out.positive += 1;
        out.negative += 1;
        done[bi] = done[bj] = true;
        remaining -= 2;
    }
    return out;
}

}  // namespace racg
