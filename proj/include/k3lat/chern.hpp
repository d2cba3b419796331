#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// Coefficients: polynomials in formal integer parameters over Q
// ---------------------------------------------------------------------------

/// Sparse polynomial in the ring's formal parameters (e.g. a rank r) with
/// exact rational coefficients.
struct ParamPoly {
    std::map<std::vector<int>, Rat> terms;  // exponents over the parameter list

    static ParamPoly constant(const Rat& c, std::size_t nparams) {
        ParamPoly p;
        if (c != 0) p.terms[std::vector<int>(nparams, 0)] = c;
        return p;
    }
    static ParamPoly parameter(std::size_t index, std::size_t nparams) {
        ParamPoly p;
        std::vector<int> e(nparams, 0);
        e[index] = 1;
        p.terms[std::move(e)] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const ParamPoly& o) const { return terms == o.terms; }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (const auto& [e, c] : o.terms) {
            auto it = terms.find(e);
            if (it == terms.end()) {
                terms[e] = c;
            } else {
                it->second += c;
                if (it->second == 0) terms.erase(it);
            }
        }
        return *this;
    }
    ParamPoly operator+(const ParamPoly& o) const {
        ParamPoly r = *this;
        r += o;
        return r;
    }
    ParamPoly operator-() const {
        ParamPoly r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    ParamPoly operator-(const ParamPoly& o) const { return *this + (-o); }
    ParamPoly operator*(const ParamPoly& o) const {
        ParamPoly r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::vector<int> e = e1;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                auto it = r.terms.find(e);
                if (it == r.terms.end()) {
                    Rat c = c1 * c2;
                    if (c != 0) r.terms[std::move(e)] = c;
                } else {
                    it->second += c1 * c2;
                    if (it->second == 0) r.terms.erase(it);
                }
            }
        return r;
    }
    ParamPoly operator*(const Rat& c) const {
        ParamPoly r;
        if (c == 0) return r;
        r = *this;
        for (auto& [e, v] : r.terms) v *= c;
        return r;
    }

    std::string to_string(const std::vector<std::string>& param_names) const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            bool has_param = false;
            for (int x : e)
                if (x) has_param = true;
            if (!has_param || c != 1) os << rat_to_string(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) os << "*" << param_names[i];
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Truncated graded polynomial rings on formal Chern-class generators
// ---------------------------------------------------------------------------

struct GradedRing {
    struct Generator {
        std::string name;
        int degree;  // cohomological degree, even
    };
    std::vector<Generator> gens;
    std::vector<std::string> params;
    int truncation_degree;

    std::size_t gen_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return i;
        throw std::invalid_argument("GradedRing: unknown generator " + name);
    }
};

using RingPtr = std::shared_ptr<const GradedRing>;

inline RingPtr make_ring(std::vector<GradedRing::Generator> gens, int truncation_degree,
                         std::vector<std::string> params = {}) {
    for (const auto& g : gens)
        if (g.degree <= 0 || g.degree % 2 != 0)
            throw std::invalid_argument("make_ring: generator degrees must be positive even");
    return std::make_shared<GradedRing>(GradedRing{std::move(gens), std::move(params), truncation_degree});
}

using Monomial = std::vector<int>;  // exponents over ring generators

inline int monomial_degree(const GradedRing& ring, const Monomial& m) {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * ring.gens[i].degree;
    return d;
}

/// Membership in the subring generated by classes of degree <= d: every
/// generator occurring in the monomial has degree <= d.
inline bool monomial_in_subring(const GradedRing& ring, const Monomial& m, int d) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0 && ring.gens[i].degree > d) return false;
    return true;
}

/// Element of a truncated graded ring: monomial -> coefficient, zero
/// coefficients never stored.
class GradedElem {
  public:
    GradedElem() = default;
    explicit GradedElem(RingPtr ring) : ring_(std::move(ring)) {}

    static GradedElem zero(RingPtr ring) { return GradedElem(std::move(ring)); }
    static GradedElem one(RingPtr ring) {
        GradedElem e(ring);
        e.terms_[Monomial(ring->gens.size(), 0)] = ParamPoly::constant(1, ring->params.size());
        return e;
    }
    static GradedElem generator(RingPtr ring, std::size_t index) {
        GradedElem e(ring);
        Monomial m(ring->gens.size(), 0);
        m[index] = 1;
        if (monomial_degree(*ring, m) <= ring->truncation_degree)
            e.terms_[std::move(m)] = ParamPoly::constant(1, ring->params.size());
        return e;
    }
    static GradedElem generator(RingPtr ring, const std::string& name) {
        return generator(ring, ring->gen_index(name));
    }
    static GradedElem constant(RingPtr ring, const Rat& c) {
        GradedElem e(ring);
        if (c != 0) e.terms_[Monomial(ring->gens.size(), 0)] = ParamPoly::constant(c, ring->params.size());
        return e;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, ParamPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, ParamPoly c) {
        if (c.is_zero()) return;
        if (monomial_degree(*ring_, m) > ring_->truncation_degree) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[std::move(m)] = std::move(c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const GradedElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const GradedElem& o) const { return !(*this == o); }

    GradedElem operator+(const GradedElem& o) const {
        require_same_ring(o);
        GradedElem r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    GradedElem operator-(const GradedElem& o) const {
        require_same_ring(o);
        GradedElem r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    GradedElem operator-() const {
        GradedElem r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    GradedElem operator*(const GradedElem& o) const {
        require_same_ring(o);
        GradedElem r(ring_);
        for (const auto& [m1, c1] : terms_) {
            int d1 = monomial_degree(*ring_, m1);
            for (const auto& [m2, c2] : o.terms_) {
                if (d1 + monomial_degree(*ring_, m2) > ring_->truncation_degree) continue;
                Monomial m = m1;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += m2[i];
                r.add_term(std::move(m), c1 * c2);
            }
        }
        return r;
    }
    GradedElem operator*(const Rat& c) const {
        GradedElem r(ring_);
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }
    GradedElem operator*(const ParamPoly& c) const {
        GradedElem r(ring_);
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }

    GradedElem pow(int k) const {
        GradedElem r = one(ring_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Drops the monomials lying entirely in the subring generated by
    /// classes of degree <= d.
    GradedElem reduce_mod_subring(int d) const {
        GradedElem r(ring_);
        for (const auto& [m, c] : terms_)
            if (!monomial_in_subring(*ring_, m, d)) r.add_term(m, c);
        return r;
    }

    bool in_subring(int d) const {
        for (const auto& [m, c] : terms_)
            if (!monomial_in_subring(*ring_, m, d)) return false;
        return true;
    }

    /// Canonical printing: graded lexicographic on generator names.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Monomial, const ParamPoly*>> sorted;
        for (const auto& [m, c] : terms_) sorted.emplace_back(m, &c);
        auto name_seq = [&](const Monomial& m) {
            std::vector<std::string> s;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k) s.push_back(ring_->gens[i].name);
            std::sort(s.begin(), s.end());
            return s;
        };
        std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
            int da = monomial_degree(*ring_, a.first), db = monomial_degree(*ring_, b.first);
            if (da != db) return da < db;
            return name_seq(a.first) < name_seq(b.first);
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : sorted) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c->to_string(ring_->params) << ")";
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k) os << "*" << ring_->gens[i].name;
        }
        return os.str();
    }

  private:
    void require_same_ring(const GradedElem& o) const {
        if (ring_.get() != o.ring_.get()) throw std::invalid_argument("GradedElem: mixed rings");
    }

    RingPtr ring_;
    std::map<Monomial, ParamPoly> terms_;
};

/// Ring homomorphism determined by generator images: gen i of the source
/// maps to images[i] in the target ring (parameters must agree).
inline GradedElem substitute(const GradedElem& e, const std::vector<GradedElem>& images, RingPtr target) {
    GradedElem out = GradedElem::zero(target);
    for (const auto& [m, c] : e.terms()) {
        GradedElem term = GradedElem::one(target);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term = term * images[i].pow(m[i]);
        out = out + term * c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Newton-Girard conversions between Chern classes and the Chern character
// ---------------------------------------------------------------------------

/// Ring on c_1 .. c_k, truncated at degree 2k.
inline RingPtr chern_ring(int k, int truncation_degree = 0) {
    std::vector<GradedRing::Generator> gens;
    for (int i = 1; i <= k; ++i) gens.push_back({"c" + std::to_string(i), 2 * i});
    return make_ring(std::move(gens), truncation_degree ? truncation_degree : 2 * k);
}

inline RingPtr character_ring(int k, int truncation_degree = 0) {
    std::vector<GradedRing::Generator> gens;
    for (int i = 1; i <= k; ++i) gens.push_back({"ch" + std::to_string(i), 2 * i});
    return make_ring(std::move(gens), truncation_degree ? truncation_degree : 2 * k);
}

/// Power sums from elementary symmetric functions by the Newton identity
/// p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k, with e_i the
/// generators of the given chern_ring.
inline std::vector<GradedElem> power_sums_from_chern(const RingPtr& ring, int k) {
    std::vector<GradedElem> e(static_cast<std::size_t>(k) + 1, GradedElem::zero(ring));
    e[0] = GradedElem::one(ring);
    for (int i = 1; i <= k; ++i) e[static_cast<std::size_t>(i)] = GradedElem::generator(ring, static_cast<std::size_t>(i - 1));
    std::vector<GradedElem> p(static_cast<std::size_t>(k) + 1, GradedElem::zero(ring));
    for (int j = 1; j <= k; ++j) {
        GradedElem sum = GradedElem::zero(ring);
        for (int i = 1; i < j; ++i) {
            GradedElem term = e[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j - i)];
            sum = (i % 2 == 1) ? sum + term : sum - term;
        }
        GradedElem last = e[static_cast<std::size_t>(j)] * Rat(j);
        p[static_cast<std::size_t>(j)] = (j % 2 == 1) ? sum + last : sum - last;
    }
    return p;
}

/// ch_1 .. ch_k as polynomials in c_1 .. c_k (index 0 of the result is ch_1).
inline std::vector<GradedElem> chern_to_character(int k) {
    if (k < 1) throw std::invalid_argument("chern_to_character: k must be >= 1");
    auto ring = chern_ring(k);
    auto p = power_sums_from_chern(ring, k);
    std::vector<GradedElem> ch;
    for (int j = 1; j <= k; ++j) ch.push_back(p[static_cast<std::size_t>(j)] * Rat(1, factorial(static_cast<unsigned>(j))));
    return ch;
}

/// c_1 .. c_k as polynomials in ch_1 .. ch_k, by the inverse Newton
/// recursion k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i with p_i = i! ch_i.
inline std::vector<GradedElem> character_to_chern(int k) {
    if (k < 1) throw std::invalid_argument("character_to_chern: k must be >= 1");
    auto ring = character_ring(k);
    std::vector<GradedElem> p(static_cast<std::size_t>(k) + 1, GradedElem::zero(ring));
    for (int i = 1; i <= k; ++i)
        p[static_cast<std::size_t>(i)] =
            GradedElem::generator(ring, static_cast<std::size_t>(i - 1)) * Rat(factorial(static_cast<unsigned>(i)));
    std::vector<GradedElem> e(static_cast<std::size_t>(k) + 1, GradedElem::zero(ring));
    e[0] = GradedElem::one(ring);
    for (int j = 1; j <= k; ++j) {
        GradedElem sum = GradedElem::zero(ring);
        for (int i = 1; i <= j; ++i) {
            GradedElem term = e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i)];
            sum = (i % 2 == 1) ? sum + term : sum - term;
        }
        e[static_cast<std::size_t>(j)] = sum * Rat(1, j);
    }
    std::vector<GradedElem> c;
    for (int j = 1; j <= k; ++j) c.push_back(e[static_cast<std::size_t>(j)]);
    return c;
}

// ---------------------------------------------------------------------------
// Whitney sums
// ---------------------------------------------------------------------------

/// Total-class convolution: given c_.(x) and c_.(y) as lists indexed from
/// degree 0, returns c_.(x + y) up to index k.
inline std::vector<GradedElem> whitney_sum(const std::vector<GradedElem>& cx,
                                           const std::vector<GradedElem>& cy, int k) {
    if (cx.empty() || cy.empty()) throw std::invalid_argument("whitney_sum: empty inputs");
    auto ring = cx[0].ring();
    std::vector<GradedElem> out;
    for (int j = 0; j <= k; ++j) {
        GradedElem sum = GradedElem::zero(ring);
        for (int a = 0; a <= j; ++a) {
            if (a >= static_cast<int>(cx.size()) || j - a >= static_cast<int>(cy.size())) continue;
            sum = sum + cx[static_cast<std::size_t>(a)] * cy[static_cast<std::size_t>(j - a)];
        }
        out.push_back(sum);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The sigma splitting is linear modulo low-degree classes
// ---------------------------------------------------------------------------

struct SigmaLinearResult {
    bool linear = false;
    GradedElem residual;  // D(i), the failure of literal additivity
};

/// Expands D(i) = sigma(x+y) - sigma(x) - sigma(y) for the splitting
/// sigma(x) = c_i(x) - c_{i-1}(x) c_1(x) via the Whitney formula and tests
/// that every monomial lies in the subring generated by classes of degree
/// <= 2i - 4.
inline SigmaLinearResult verify_sigma_linear(int i) {
    if (i < 3) throw std::invalid_argument("verify_sigma_linear: i must be >= 3");
    std::vector<GradedRing::Generator> gens;
    for (int j = 1; j <= i; ++j) gens.push_back({"c" + std::to_string(j) + "(x)", 2 * j});
    for (int j = 1; j <= i; ++j) gens.push_back({"c" + std::to_string(j) + "(y)", 2 * j});
    auto ring = make_ring(std::move(gens), 2 * i);

    std::vector<GradedElem> cx{GradedElem::one(ring)}, cy{GradedElem::one(ring)};
    for (int j = 1; j <= i; ++j) {
        cx.push_back(GradedElem::generator(ring, static_cast<std::size_t>(j - 1)));
        cy.push_back(GradedElem::generator(ring, static_cast<std::size_t>(i + j - 1)));
    }
    auto cxy = whitney_sum(cx, cy, i);

    auto sigma = [&](const std::vector<GradedElem>& c) {
        return c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i - 1)] * c[1];
    };
    GradedElem d = sigma(cxy) - sigma(cx) - sigma(cy);
    return SigmaLinearResult{d.in_subring(2 * i - 4), d};
}

/// The i = 2 branch: sigma = 2 c_2 - c_1^2 = -2 ch_2 is literally additive.
inline bool sigma_quadratic_is_additive() {
    std::vector<GradedRing::Generator> gens = {
        {"c1(x)", 2}, {"c2(x)", 4}, {"c1(y)", 2}, {"c2(y)", 4}};
    auto ring = make_ring(std::move(gens), 4);
    auto g = [&](const char* n) { return GradedElem::generator(ring, std::string(n)); };
    std::vector<GradedElem> cx{GradedElem::one(ring), g("c1(x)"), g("c2(x)")};
    std::vector<GradedElem> cy{GradedElem::one(ring), g("c1(y)"), g("c2(y)")};
    auto cxy = whitney_sum(cx, cy, 2);
    auto sigma = [&](const std::vector<GradedElem>& c) { return c[2] * Rat(2) - c[1] * c[1]; };
    return (sigma(cxy) - sigma(cx) - sigma(cy)).is_zero();
}

// ---------------------------------------------------------------------------
// Twisting by a line bundle
// ---------------------------------------------------------------------------

/// binom(r - j, m) as a polynomial in the formal rank parameter r.
inline ParamPoly binom_in_rank(const RingPtr& ring, int j, int m) {
    std::size_t np = ring->params.size();
    ParamPoly out = ParamPoly::constant(1, np);
    for (int t = 0; t < m; ++t) {
        ParamPoly factor = ParamPoly::parameter(0, np) + ParamPoly::constant(Rat(-j - t), np);
        out = out * factor;
    }
    return out * Rat(1, factorial(static_cast<unsigned>(m)));
}

/// Verifies c_i(alpha tensor ell) = c_i(alpha) + (r+1-i) c_{i-1}(alpha) c_1(ell)
/// (i != 2; with the quadratic correction for i = 2) modulo the subring of
/// classes of degree <= 2i - 4, as a polynomial identity in the formal rank r.
inline bool verify_twist_formula(int i) {
    if (i < 1) throw std::invalid_argument("verify_twist_formula: i must be >= 1");
    std::vector<GradedRing::Generator> gens;
    for (int j = 1; j <= i; ++j) gens.push_back({"c" + std::to_string(j) + "(a)", 2 * j});
    gens.push_back({"c1(l)", 2});
    auto ring = make_ring(std::move(gens), 2 * i, {"r"});

    auto c = [&](int j) {
        if (j == 0) return GradedElem::one(ring);
        return GradedElem::generator(ring, static_cast<std::size_t>(j - 1));
    };
    GradedElem ell = GradedElem::generator(ring, static_cast<std::size_t>(i));

    // c_i(alpha ox ell) = sum_j binom(r - j, i - j) c_j(alpha) c_1(ell)^{i-j}.
    GradedElem lhs = GradedElem::zero(ring);
    for (int j = 0; j <= i; ++j)
        lhs = lhs + c(j) * ell.pow(i - j) * binom_in_rank(ring, j, i - j);

    ParamPoly r = ParamPoly::parameter(0, 1);
    GradedElem rhs = GradedElem::zero(ring);
    if (i != 2) {
        rhs = c(i) + c(i - 1) * ell * (r + ParamPoly::constant(Rat(1 - i), 1));
    } else {
        rhs = c(2) + c(1) * ell * (r + ParamPoly::constant(-1, 1)) +
              ell * ell * (r * r - r) * Rat(1, 2);
    }
    return lhs.reduce_mod_subring(2 * i - 4) == rhs.reduce_mod_subring(2 * i - 4);
}

// ---------------------------------------------------------------------------
// The difference between the equivariant and the integral splitting
// ---------------------------------------------------------------------------

/// psi - sigma as a formal class: (i-1)/(2n-2) c_{i-1}(u_x) c_1(u_w) for
/// i >= 3; for i = 2 the two-term expression
/// 2/(2n-2) c_1(u_w) c_1(u_x) - (v,x)/(2n-2)^2 c_1(u_w)^2 with (v,x) formal.
inline GradedElem psi_minus_sigma(int i, int n) {
    if (i < 2) throw std::invalid_argument("psi_minus_sigma: i must be >= 2");
    if (n < 2) throw std::invalid_argument("psi_minus_sigma: n must be >= 2");
    Int vv = 2 * Int(n) - 2;
    if (i >= 3) {
        std::vector<GradedRing::Generator> gens = {
            {"c" + std::to_string(i - 1) + "(ux)", 2 * (i - 1)}, {"c1(uw)", 2}};
        auto ring = make_ring(std::move(gens), 2 * i);
        auto cx = GradedElem::generator(ring, std::size_t(0));
        auto cw = GradedElem::generator(ring, std::size_t(1));
        return cx * cw * Rat(Int(i - 1), vv);
    }
    std::vector<GradedRing::Generator> gens = {{"c1(ux)", 2}, {"c1(uw)", 2}};
    auto ring = make_ring(std::move(gens), 4, {"(v,x)"});
    auto cx = GradedElem::generator(ring, std::size_t(0));
    auto cw = GradedElem::generator(ring, std::size_t(1));
    ParamPoly vx = ParamPoly::parameter(0, 1);
    return cw * cx * Rat(Int(2), vv) - (cw * cw) * (vx * Rat(Int(1), vv * vv));
}

}  // namespace k3lat
