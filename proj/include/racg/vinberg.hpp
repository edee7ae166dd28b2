#pragma once

// The chamber Delta_t = {<v, e_i>_t <= 0}, its truncation Sigma_t (nonnegative
// coordinates as well), and greedy reflection reduction into Delta_t. Works
// exactly with DeformedRep or in doubles with FloatRep.

#include "coxeter.hpp"
#include "errors.hpp"
#include "gram_rep.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace racg {

namespace detail {

inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

inline std::vector<Rational> root_pairings(const DeformedRep& rep, const RationalVector& v) {
    std::vector<Rational> out;
    for (int i = 0; i < rep.family().k(); ++i) out.push_back(rep.pairing_with_root(v, i));
    return out;
}

inline std::vector<double> root_pairings(const FloatRep& rep, const Eigen::VectorXd& v) {
    const Eigen::VectorXd mv = rep.gram() * v;
    return std::vector<double>(mv.data(), mv.data() + mv.size());
}

inline std::vector<Rational> coords(const RationalVector& v) { return v; }
inline RationalVector negated(RationalVector v) {
    for (auto& x : v) x = -x;
    return v;
}
inline Eigen::VectorXd negated(const Eigen::VectorXd& v) { return -v; }
inline std::vector<double> coords(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace detail

/// All pairings <v, e_i>_t <= 0 (strict when `interior`).
template <class Rep, class Vec>
bool in_delta(const Rep& rep, const Vec& v, bool interior = false) {
    for (const auto& p : detail::root_pairings(rep, v)) {
        const int s = detail::sign_of(p);
        if (s > 0 || (interior && s == 0)) return false;
    }
    return true;
}

/// In Delta_t with nonnegative coordinates (strict when `interior`).
template <class Rep, class Vec>
bool in_sigma(const Rep& rep, const Vec& v, bool interior = false) {
    if (!in_delta(rep, v, interior)) return false;
    for (const auto& c : detail::coords(v)) {
        const int s = detail::sign_of(c);
        if (s < 0 || (interior && s == 0)) return false;
    }
    return true;
}

template <class Vec>
struct ChamberReduction {
    Word word;        // represent(word) * v_reduced == v
    Vec v_reduced;
};

inline int default_reduction_budget(int word_length_bound, int k) { return 10 * (word_length_bound + k); }

/// While some <v, e_i>_t > 0, reflect in the smallest such i.
template <class Rep, class Vec>
ChamberReduction<Vec> reduce_to_chamber(const Rep& rep, Vec v, int max_steps) {
    ChamberReduction<Vec> out;
    for (int step = 0;; ++step) {
        int violated = -1;
        const auto pairs = detail::root_pairings(rep, v);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (detail::sign_of(pairs[i]) > 0) {
                violated = static_cast<int>(i);
                break;
            }
        if (violated < 0) break;
        if (step >= max_steps)
            throw ReductionError("point not reduced within budget of " + std::to_string(max_steps) + " steps");
        rep.reflect(violated, v);
        out.word.push_back(violated);
    }
    out.v_reduced = std::move(v);
    return out;
}

enum class Membership { Inside, Outside, Undetermined };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::Inside: return "inside";
        case Membership::Outside: return "outside";
        default: return "undetermined";
    }
}

/// Semi-decision of [v] in the interior of the orbit of Sigma_t: exact on
/// orbit points, Undetermined when reduction does not finish.
template <class Rep, class Vec>
Membership in_omega(const Rep& rep, Vec v, int budget) {
    if (detail::sign_of(rep.pairing(v, v)) >= 0) return Membership::Outside;
    // The orbit of Sigma_t lies in the positive cone; pick that lift.
    const auto cs = detail::coords(v);
    typename decltype(cs)::value_type sum{0};
    for (const auto& c : cs) sum += c;
    if (detail::sign_of(sum) < 0) v = detail::negated(v);
    try {
        const auto red = reduce_to_chamber(rep, v, budget);
        return in_sigma(rep, red.v_reduced, true) ? Membership::Inside : Membership::Outside;
    } catch (const ReductionError&) {
        return Membership::Undetermined;
    }
}

}  // namespace racg
