#pragma once

// Quantum integers, factorials and binomials in both conventions,
//   (i)_tt = 1 + tt + ... + tt^(i-1)        in Z[tt^{+-1}],
//   [i]_q  = q^(i-1) + q^(i-3) + ... + q^(1-i)   in Z[q^{+-1}],
// together with the bridge identities relating them under tt -> q^-2.

#include <atomic>
#include <mutex>

#include "vermahom/ring.hpp"

namespace vermahom {

inline LaurentPoly t_integer(const VarsPtr& vars, int i)
{
    if (i < 0)
        throw std::invalid_argument("t_integer: negative argument");
    LaurentPoly p = LaurentPoly::zero(vars);
    for (int j = 0; j < i; ++j)
        p += LaurentPoly::variable(vars, VariableSet::tt_index, j);
    return p;
}

inline LaurentPoly q_integer(const VarsPtr& vars, int i)
{
    if (i < 0)
        throw std::invalid_argument("q_integer: negative argument");
    LaurentPoly p = LaurentPoly::zero(vars);
    for (int j = 0; j < i; ++j)
        p += LaurentPoly::variable(vars, VariableSet::q_index, i - 1 - 2 * j);
    return p;
}

namespace detail {

// Factorials are memoized per color count; entries are written once under the
// lock and never mutated, so concurrent readers are fine.
inline std::atomic<int>& factorial_memo_limit()
{
    static std::atomic<int> limit{64};
    return limit;
}

template <typename IntegerFn>
inline LaurentPoly memoized_factorial(const VarsPtr& vars, int k, IntegerFn integer_fn,
                                      std::map<int, std::vector<LaurentPoly>>& cache,
                                      std::mutex& mtx)
{
    if (k < 0)
        throw std::invalid_argument("factorial: negative argument");
    std::lock_guard<std::mutex> lock(mtx);
    auto& memo = cache[vars->colors()];
    if (memo.empty())
        memo.push_back(LaurentPoly::one(vars));
    int limit = factorial_memo_limit().load();
    if (k <= limit) {
        while (static_cast<int>(memo.size()) <= k)
            memo.push_back(memo.back() * integer_fn(vars, static_cast<int>(memo.size())));
        return memo[k];
    }
    LaurentPoly p = memo[std::min<int>(limit, static_cast<int>(memo.size()) - 1)];
    for (int i = static_cast<int>(std::min<size_t>(memo.size(), limit + 1)); i <= k; ++i)
        p *= integer_fn(vars, i);
    return p;
}

}  // namespace detail

inline void set_factorial_memo_limit(int limit) { detail::factorial_memo_limit() = limit; }

inline LaurentPoly t_factorial(const VarsPtr& vars, int k)
{
    static std::map<int, std::vector<LaurentPoly>> cache;
    static std::mutex mtx;
    return detail::memoized_factorial(vars, k, &t_integer, cache, mtx);
}

inline LaurentPoly q_factorial(const VarsPtr& vars, int k)
{
    static std::map<int, std::vector<LaurentPoly>> cache;
    static std::mutex mtx;
    return detail::memoized_factorial(vars, k, &q_integer, cache, mtx);
}

// Both binomials are computed by exact division of factorials; a failed
// division would mean a broken ring, so it throws rather than report.
inline LaurentPoly t_binomial(const VarsPtr& vars, int k, int l)
{
    if (l < 0 || l > k)
        return LaurentPoly::zero(vars);
    return poly_exact_div_or_throw(t_factorial(vars, k), t_factorial(vars, k - l) * t_factorial(vars, l),
                                   "t_binomial");
}

inline LaurentPoly q_binomial(const VarsPtr& vars, int k, int l)
{
    if (l < 0 || l > k)
        return LaurentPoly::zero(vars);
    return poly_exact_div_or_throw(q_factorial(vars, k), q_factorial(vars, k - l) * q_factorial(vars, l),
                                   "q_binomial");
}

// Checks, after tt -> q^-2:
//   (i)_tt            == q^(1-i)   [i]_q
//   (k)_tt!           == q^(-k(k-1)/2) [k]_q!
//   binom_tt(k+l, l)  == q^(-kl)   qbinom(k+l, l)
inline bool bridge_check(const VarsPtr& vars, int i, int k, int l)
{
    const RingHom b = RingHom::bridge(vars);
    auto qpow = [&](long e) { return LaurentPoly::variable(vars, VariableSet::q_index, static_cast<int>(e)); };

    if (b(t_integer(vars, i)) != qpow(1 - i) * q_integer(vars, i))
        return false;
    if (b(t_factorial(vars, k)) != qpow(-static_cast<long>(k) * (k - 1) / 2) * q_factorial(vars, k))
        return false;
    if (b(t_binomial(vars, k + l, l)) != qpow(-static_cast<long>(k) * l) * q_binomial(vars, k + l, l))
        return false;
    return true;
}

}  // namespace vermahom
