#pragma once

// Exact sparse multivariate Laurent polynomial arithmetic over Z, in the
// variables q, tt and s1..sn.  Every coefficient computation in this library
// happens in this ring; all values are immutable after construction.

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace vermahom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Json = nlohmann::ordered_json;

// Exponent vector, one signed entry per variable of the VariableSet.
using ExpVec = std::vector<int>;

class VariableSet;
using VarsPtr = std::shared_ptr<const VariableSet>;

// Ordered list of variable names: always "q", "tt", then "s1".."sn" for a
// declared color count n >= 1.  Instances are interned per color count so
// that pointer equality decides compatibility.
class VariableSet {
  public:
    static VarsPtr with_colors(int n_colors)
    {
        if (n_colors < 1)
            throw std::invalid_argument("VariableSet: need at least one color");
        static std::mutex mtx;
        static std::map<int, VarsPtr> interned;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = interned.find(n_colors);
        if (it != interned.end())
            return it->second;
        auto vs = VarsPtr(new VariableSet(n_colors));
        interned.emplace(n_colors, vs);
        return vs;
    }

    int size() const { return static_cast<int>(names_.size()); }
    int colors() const { return colors_; }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // q = 0, tt = 1, s_i = 1 + i.
    static constexpr int q_index = 0;
    static constexpr int tt_index = 1;
    static int s_index(int i) { return 1 + i; }

    std::optional<int> index_of(const std::string& name) const
    {
        for (int i = 0; i < size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

  private:
    explicit VariableSet(int n_colors) : colors_(n_colors)
    {
        names_.reserve(2 + n_colors);
        names_.push_back("q");
        names_.push_back("tt");
        for (int i = 1; i <= n_colors; ++i)
            names_.push_back("s" + std::to_string(i));
    }

    std::vector<std::string> names_;
    int colors_;
};

struct VariableSetMismatch : std::invalid_argument {
    VariableSetMismatch() : std::invalid_argument("operands live over different variable sets") {}
};

class LaurentPoly {
  public:
    using TermMap = std::map<ExpVec, BigInt>;

    LaurentPoly() = default;
    explicit LaurentPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static LaurentPoly zero(VarsPtr vars) { return LaurentPoly(std::move(vars)); }

    static LaurentPoly constant(VarsPtr vars, BigInt c)
    {
        LaurentPoly p(std::move(vars));
        if (c != 0)
            p.terms_.emplace(ExpVec(p.vars_->size(), 0), std::move(c));
        return p;
    }

    static LaurentPoly one(VarsPtr vars) { return constant(std::move(vars), 1); }

    static LaurentPoly monomial(VarsPtr vars, BigInt c, ExpVec exps)
    {
        if (static_cast<int>(exps.size()) != vars->size())
            throw std::invalid_argument("monomial: exponent vector has wrong length");
        LaurentPoly p(std::move(vars));
        if (c != 0)
            p.terms_.emplace(std::move(exps), std::move(c));
        return p;
    }

    // c * v^power for a single variable v given by index.
    static LaurentPoly variable(VarsPtr vars, int var_index, int power = 1, BigInt c = 1)
    {
        ExpVec e(vars->size(), 0);
        e.at(var_index) = power;
        return monomial(std::move(vars), std::move(c), std::move(e));
    }

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    bool is_one() const
    {
        return terms_.size() == 1 && terms_.begin()->second == 1 &&
               std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                           [](int e) { return e == 0; });
    }

    // A unit of the Laurent ring is +/- one monomial.
    bool is_unit_monomial() const
    {
        if (terms_.size() != 1)
            return false;
        const BigInt& c = terms_.begin()->second;
        return c == 1 || c == -1;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    BigInt coeff(const ExpVec& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b)
    {
        if (a.vars_ && b.vars_ && a.vars_ != b.vars_)
            return false;
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
    {
        check_compatible(a, b);
        LaurentPoly r(a.vars_ ? a.vars_ : b.vars_);
        r.terms_ = a.terms_;
        for (const auto& [e, c] : b.terms_) {
            auto [it, inserted] = r.terms_.emplace(e, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0)
                    r.terms_.erase(it);
            }
        }
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a)
    {
        LaurentPoly r(a.vars_);
        for (const auto& [e, c] : a.terms_)
            r.terms_.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        check_compatible(a, b);
        LaurentPoly r(a.vars_ ? a.vars_ : b.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                for (size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                auto [it, inserted] = r.terms_.emplace(std::move(e), ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                    if (it->second == 0)
                        r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const BigInt& c)
    {
        LaurentPoly r(a.vars_);
        if (c == 0)
            return r;
        for (const auto& [e, k] : a.terms_)
            r.terms_.emplace(e, k * c);
        return r;
    }
    friend LaurentPoly operator*(const BigInt& c, const LaurentPoly& a) { return a * c; }

    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    // gcd of the integer coefficients (non-negative; 0 for the zero polynomial).
    BigInt content() const
    {
        BigInt g = 0;
        for (const auto& [e, c] : terms_) {
            g = boost::multiprecision::gcd(g, c);
            if (g == 1)
                break;
        }
        return g;
    }

  private:
    static void check_compatible(const LaurentPoly& a, const LaurentPoly& b)
    {
        if (a.vars_ && b.vars_ && a.vars_ != b.vars_)
            throw VariableSetMismatch{};
    }

    VarsPtr vars_;
    TermMap terms_;

    friend std::optional<LaurentPoly> poly_exact_div(const LaurentPoly&, const LaurentPoly&);
};

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

inline LaurentPoly pow(const LaurentPoly& p, int k)
{
    if (k < 0) {
        if (!p.is_monomial())
            throw std::invalid_argument("pow: negative power of a non-monomial");
        const auto& [e, c] = *p.terms().begin();
        if (c != 1 && c != -1)
            throw std::invalid_argument("pow: negative power of a non-unit");
        ExpVec inv(e.size());
        for (size_t i = 0; i < e.size(); ++i)
            inv[i] = -e[i];
        LaurentPoly q = LaurentPoly::monomial(p.vars(), c, std::move(inv));
        return pow(q, -k);
    }
    LaurentPoly r = LaurentPoly::one(p.vars());
    LaurentPoly base = p;
    while (k > 0) {
        if (k & 1)
            r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

// Exact division in the Laurent ring: returns c with b*c == a, or nullopt.
// The quotient, when it exists, is unique (the ring is a domain), and its
// per-variable exponent range is pinned by deg_v(a) = deg_v(b) + deg_v(c);
// the box derived from that bound makes the leading-term loop terminate.
inline std::optional<LaurentPoly> poly_exact_div(const LaurentPoly& a, const LaurentPoly& b)
{
    if (b.is_zero())
        throw std::invalid_argument("poly_exact_div: division by zero");
    if (a.vars() && b.vars() && a.vars() != b.vars())
        throw VariableSetMismatch{};
    if (a.is_zero())
        return LaurentPoly::zero(a.vars() ? a.vars() : b.vars());

    const size_t nv = a.terms().begin()->first.size();
    ExpVec lo(nv), hi(nv);
    for (size_t v = 0; v < nv; ++v) {
        int a_min = 0, a_max = 0, b_min = 0, b_max = 0;
        bool first = true;
        for (const auto& [e, c] : a.terms()) {
            if (first || e[v] < a_min) a_min = e[v];
            if (first || e[v] > a_max) a_max = e[v];
            first = false;
        }
        first = true;
        for (const auto& [e, c] : b.terms()) {
            if (first || e[v] < b_min) b_min = e[v];
            if (first || e[v] > b_max) b_max = e[v];
            first = false;
        }
        lo[v] = a_min - b_min;
        hi[v] = a_max - b_max;
        if (lo[v] > hi[v])
            return std::nullopt;
    }

    const auto& bt = *b.terms_.rbegin();  // lex-leading term of b
    LaurentPoly r = a;
    LaurentPoly quot(a.vars() ? a.vars() : b.vars());
    while (!r.is_zero()) {
        const auto& rt = *r.terms_.rbegin();
        if (rt.second % bt.second != 0)
            return std::nullopt;
        ExpVec e(nv);
        for (size_t v = 0; v < nv; ++v) {
            e[v] = rt.first[v] - bt.first[v];
            if (e[v] < lo[v] || e[v] > hi[v])
                return std::nullopt;
        }
        LaurentPoly t = LaurentPoly::monomial(r.vars(), rt.second / bt.second, std::move(e));
        quot += t;
        r -= t * b;
    }
    return quot;
}

struct NotDivisibleError : std::runtime_error {
    explicit NotDivisibleError(const std::string& what) : std::runtime_error(what) {}
};

inline LaurentPoly poly_exact_div_or_throw(const LaurentPoly& a, const LaurentPoly& b,
                                           const char* context = "poly_exact_div")
{
    auto q = poly_exact_div(a, b);
    if (!q)
        throw NotDivisibleError(std::string(context) + ": division is not exact");
    return *q;
}

// ---------------------------------------------------------------------------
// Ring homomorphisms sending each variable to a signed monomial.

struct SignedMonomial {
    int sign = 1;  // +1 or -1
    ExpVec exps;   // over the target variable set
};

class RingHom {
  public:
    RingHom(VarsPtr source, VarsPtr target, std::vector<SignedMonomial> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
        if (static_cast<int>(images_.size()) != source_->size())
            throw std::invalid_argument("RingHom: one image per source variable required");
        for (const auto& im : images_)
            if (static_cast<int>(im.exps.size()) != target_->size() || (im.sign != 1 && im.sign != -1))
                throw std::invalid_argument("RingHom: malformed image");
    }

    static RingHom identity(const VarsPtr& vars)
    {
        std::vector<SignedMonomial> im;
        for (int i = 0; i < vars->size(); ++i) {
            ExpVec e(vars->size(), 0);
            e[i] = 1;
            im.push_back({1, std::move(e)});
        }
        return RingHom(vars, vars, std::move(im));
    }

    // The quantum bridge tt -> q^-2.
    static RingHom bridge(const VarsPtr& vars)
    {
        RingHom h = identity(vars);
        ExpVec e(vars->size(), 0);
        e[VariableSet::q_index] = -2;
        h.images_[VariableSet::tt_index] = {1, std::move(e)};
        return h;
    }

    // Unicolor specialization s_i -> s_1 for every i.
    static RingHom unicolor(const VarsPtr& vars)
    {
        RingHom h = identity(vars);
        for (int i = 2; i <= vars->colors(); ++i) {
            ExpVec e(vars->size(), 0);
            e[VariableSet::s_index(1)] = 1;
            h.images_[VariableSet::s_index(i)] = {1, std::move(e)};
        }
        return h;
    }

    // Permutation of the color variables: s_i -> s_{perm[i]} (1-based).
    static RingHom color_permutation(const VarsPtr& vars, const std::vector<int>& perm)
    {
        if (static_cast<int>(perm.size()) != vars->colors())
            throw std::invalid_argument("color_permutation: wrong permutation length");
        RingHom h = identity(vars);
        for (int i = 1; i <= vars->colors(); ++i) {
            ExpVec e(vars->size(), 0);
            e[VariableSet::s_index(perm[i - 1])] = 1;
            h.images_[VariableSet::s_index(i)] = {1, std::move(e)};
        }
        return h;
    }

    const VarsPtr& source() const { return source_; }
    const VarsPtr& target() const { return target_; }

    LaurentPoly operator()(const LaurentPoly& p) const
    {
        if (p.vars() && p.vars() != source_)
            throw VariableSetMismatch{};
        LaurentPoly r(target_);
        for (const auto& [e, c] : p.terms()) {
            int sign = 1;
            ExpVec out(target_->size(), 0);
            for (size_t v = 0; v < e.size(); ++v) {
                if (e[v] == 0)
                    continue;
                const auto& im = images_[v];
                if (im.sign == -1 && (e[v] % 2 != 0))
                    sign = -sign;
                for (size_t w = 0; w < out.size(); ++w)
                    out[w] += im.exps[w] * e[v];
            }
            r += LaurentPoly::monomial(target_, sign > 0 ? c : -c, std::move(out));
        }
        return r;
    }

  private:
    VarsPtr source_, target_;
    std::vector<SignedMonomial> images_;
};

inline LaurentPoly apply_hom(const RingHom& h, const LaurentPoly& p) { return h(p); }

// ---------------------------------------------------------------------------
// Numeric evaluation.

inline Rational evaluate_rational(const LaurentPoly& p, const std::vector<Rational>& values)
{
    if (p.vars() && static_cast<int>(values.size()) != p.vars()->size())
        throw std::invalid_argument("evaluate: one value per variable required");
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational term(c);
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0)
                continue;
            if (values[v] == 0) {
                if (e[v] < 0)
                    throw std::domain_error("evaluate: zero assigned to variable " +
                                            p.vars()->name(static_cast<int>(v)) +
                                            " appearing with a negative exponent");
                term = 0;
                continue;
            }
            Rational base = e[v] > 0 ? values[v] : Rational(1) / values[v];
            for (int k = std::abs(e[v]); k > 0; --k)
                term *= base;
        }
        sum += term;
    }
    return sum;
}

// Complex evaluation carries the precision of the supplied values; no rounding
// is applied beyond the double arithmetic itself.
inline std::complex<double> evaluate_complex(const LaurentPoly& p,
                                             const std::vector<std::complex<double>>& values)
{
    if (p.vars() && static_cast<int>(values.size()) != p.vars()->size())
        throw std::invalid_argument("evaluate: one value per variable required");
    std::complex<double> sum = 0;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> term = static_cast<double>(c);
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0)
                continue;
            if (values[v] == std::complex<double>(0.0, 0.0) && e[v] < 0)
                throw std::domain_error("evaluate: zero assigned to variable " +
                                        p.vars()->name(static_cast<int>(v)) +
                                        " appearing with a negative exponent");
            std::complex<double> base = e[v] > 0 ? values[v] : 1.0 / values[v];
            for (int k = std::abs(e[v]); k > 0; --k)
                term *= base;
        }
        sum += term;
    }
    return sum;
}

// Assignment-map forms; every variable of the set must be assigned.
inline Rational poly_evaluate(const LaurentPoly& p, const std::map<std::string, Rational>& assignment)
{
    std::vector<Rational> values;
    for (int i = 0; i < p.vars()->size(); ++i) {
        auto it = assignment.find(p.vars()->name(i));
        if (it == assignment.end())
            throw std::invalid_argument("poly_evaluate: no value for variable " + p.vars()->name(i));
        values.push_back(it->second);
    }
    return evaluate_rational(p, values);
}

inline std::complex<double> poly_evaluate(const LaurentPoly& p,
                                          const std::map<std::string, std::complex<double>>& assignment)
{
    std::vector<std::complex<double>> values;
    for (int i = 0; i < p.vars()->size(); ++i) {
        auto it = assignment.find(p.vars()->name(i));
        if (it == assignment.end())
            throw std::invalid_argument("poly_evaluate: no value for variable " + p.vars()->name(i));
        values.push_back(it->second);
    }
    return evaluate_complex(p, values);
}

// ---------------------------------------------------------------------------
// Text rendering, `3*q^2*tt^-1*s1` grammar, canonical term order.

inline std::string to_string(const LaurentPoly& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        BigInt abs_c = c < 0 ? BigInt(-c) : c;
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;

        std::string factors;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0)
                continue;
            if (!factors.empty())
                factors += "*";
            factors += p.vars()->name(static_cast<int>(v));
            if (e[v] != 1)
                factors += "^" + std::to_string(e[v]);
        }
        if (factors.empty())
            out << abs_c.str();
        else if (abs_c == 1)
            out << factors;
        else
            out << abs_c.str() << "*" << factors;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON serialization.  Terms are emitted in the canonical order, so dumping
// the same polynomial always produces identical bytes.

inline Json poly_to_json(const LaurentPoly& p)
{
    Json j;
    j["vars"] = p.vars() ? p.vars()->names() : std::vector<std::string>{};
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["coeff"] = c.str();
        t["exp"] = e;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline LaurentPoly poly_from_json(const Json& j)
{
    const auto& names = j.at("vars");
    int n_colors = static_cast<int>(names.size()) - 2;
    VarsPtr vars = VariableSet::with_colors(n_colors);
    for (int i = 0; i < vars->size(); ++i)
        if (names.at(i).get<std::string>() != vars->name(i))
            throw std::invalid_argument("poly_from_json: unexpected variable name " +
                                        names.at(i).get<std::string>());
    LaurentPoly p = LaurentPoly::zero(vars);
    for (const auto& t : j.at("terms")) {
        BigInt c(t.at("coeff").get<std::string>());
        ExpVec e = t.at("exp").get<ExpVec>();
        p += LaurentPoly::monomial(vars, std::move(c), std::move(e));
    }
    return p;
}

}  // namespace vermahom
