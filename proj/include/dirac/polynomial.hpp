#ifndef DIRAC_POLYNOMIAL_HPP
#define DIRAC_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac/monomial.hpp"
#include "dirac/variable_table.hpp"

namespace dirac {

/// Multivariate polynomial over a coefficient field K, kept as a term list in
/// strictly descending order under the active monomial order. K is a value
/// type providing field arithmetic (+,-,*,/, unary -), is_zero/is_one,
/// times_int, is_negative_lead and factor_str for rendering.
template <class K>
class Polynomial {
public:
    struct Term {
        Monomial mono;
        K coeff;
    };

    Polynomial(TablePtr table, OrderPtr order) : table_(std::move(table)), order_(std::move(order)) {}

    Polynomial(TablePtr table, OrderPtr order, std::vector<Term> raw_terms)
        : table_(std::move(table)), order_(std::move(order)) {
        normalize(std::move(raw_terms));
    }

    static Polynomial constant(TablePtr table, OrderPtr order, K value) {
        Polynomial p(std::move(table), std::move(order));
        if (!value.is_zero())
            p.terms_.push_back(Term{Monomial(p.table_->size()), std::move(value)});
        return p;
    }

    static Polynomial variable(TablePtr table, OrderPtr order, VarId v, K one_value,
                               std::uint32_t e = 1) {
        Polynomial p(std::move(table), std::move(order));
        if (e == 0)
            return constant(p.table_, p.order_, std::move(one_value));
        p.terms_.push_back(Term{Monomial::variable(p.table_->size(), v, e), std::move(one_value)});
        return p;
    }

    const TablePtr& table() const { return table_; }
    const OrderPtr& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    std::size_t term_count() const { return terms_.size(); }

    const Term& leading_term() const {
        if (terms_.empty())
            throw DomainError("leading term of the zero polynomial");
        return terms_.front();
    }
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const K& leading_coeff() const { return leading_term().coeff; }

    /// Coefficient of the constant monomial; nullptr when absent.
    const K* constant_coeff() const {
        if (!terms_.empty() && terms_.back().mono.is_one())
            return &terms_.back().coeff;
        return nullptr;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const Term& t : terms_)
            d = std::max(d, t.mono.degree());
        return d;
    }

    bool contains_var(VarId v) const {
        for (const Term& t : terms_)
            if (t.mono.exp(v) > 0)
                return true;
        return false;
    }

    bool supported_within(const std::vector<char>& allowed) const {
        for (const Term& t : terms_)
            for (VarId v = 0; v < table_->size(); ++v)
                if (t.mono.exp(v) > 0 && !allowed[v])
                    return false;
        return true;
    }

    std::vector<VarId> support_vars() const {
        std::vector<char> seen(table_->size(), 0);
        for (const Term& t : terms_)
            for (VarId v = 0; v < table_->size(); ++v)
                if (t.mono.exp(v) > 0)
                    seen[v] = 1;
        std::vector<VarId> out;
        for (VarId v = 0; v < table_->size(); ++v)
            if (seen[v])
                out.push_back(v);
        return out;
    }

    std::uint32_t degree_in(VarId v) const {
        std::uint32_t d = 0;
        for (const Term& t : terms_)
            d = std::max(d, t.mono.exp(v));
        return d;
    }

    /// Largest monomial dividing every term (all-zero for the zero polynomial).
    Monomial monomial_content() const {
        Monomial m(table_->size());
        if (terms_.empty())
            return m;
        for (VarId v = 0; v < table_->size(); ++v) {
            std::uint32_t e = UINT32_MAX;
            for (const Term& t : terms_)
                e = std::min(e, t.mono.exp(v));
            m.set_exp(v, e);
        }
        return m;
    }

    Polynomial divided_by_monomial(const Monomial& m) const {
        Polynomial r(table_, order_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_)
            r.terms_.push_back(Term{t.mono.quotient_by(m), t.coeff});
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        check_compatible(o);
        Polynomial r(table_, order_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            auto c = order_->compare(terms_[i].mono, o.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                K s = terms_[i].coeff + o.terms_[j].coeff;
                if (!s.is_zero())
                    r.terms_.push_back(Term{terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i)
            r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j)
            r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (Term& t : r.terms_)
            t.coeff = -t.coeff;
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        check_compatible(o);
        auto desc = [this](const Monomial& a, const Monomial& b) { return order_->greater(a, b); };
        std::map<Monomial, K, decltype(desc)> acc(desc);
        for (const Term& a : terms_) {
            for (const Term& b : o.terms_) {
                Monomial m = a.mono * b.mono;
                K c = a.coeff * b.coeff;
                auto it = acc.find(m);
                if (it == acc.end()) {
                    if (!c.is_zero())
                        acc.emplace(std::move(m), std::move(c));
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero())
                        acc.erase(it);
                }
            }
        }
        Polynomial r(table_, order_);
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            r.terms_.push_back(Term{m, c});
        return r;
    }

    Polynomial scaled(const K& c) const {
        Polynomial r(table_, order_);
        if (c.is_zero())
            return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            K v = t.coeff * c;
            if (!v.is_zero())
                r.terms_.push_back(Term{t.mono, std::move(v)});
        }
        return r;
    }

    /// this * c * m  (single-term multiplication, the workhorse of reduction).
    Polynomial times_term(const K& c, const Monomial& m) const {
        Polynomial r(table_, order_);
        if (c.is_zero())
            return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            K v = t.coeff * c;
            if (!v.is_zero())
                r.terms_.push_back(Term{t.mono * m, std::move(v)});
        }
        return r;
    }

    /// Formal partial derivative.
    Polynomial diff(VarId v) const {
        if (v >= table_->size())
            throw DomainError("derivative by unknown variable");
        Polynomial r(table_, order_);
        for (const Term& t : terms_) {
            std::uint32_t e = t.mono.exp(v);
            if (e == 0)
                continue;
            K c = t.coeff.times_int(static_cast<long>(e));
            if (c.is_zero())
                continue;
            Monomial m = t.mono;
            m.set_exp(v, e - 1);
            r.terms_.push_back(Term{std::move(m), std::move(c)});
        }
        return Polynomial(table_, order_, std::move(r.terms_));
    }

    /// Simultaneous substitution of variables by polynomials.
    Polynomial subst(const std::map<VarId, Polynomial>& bindings) const {
        Polynomial acc(table_, order_);
        for (const Term& t : terms_) {
            Polynomial piece = constant(table_, order_, t.coeff);
            for (VarId v = 0; v < table_->size(); ++v) {
                std::uint32_t e = t.mono.exp(v);
                if (e == 0)
                    continue;
                auto it = bindings.find(v);
                if (it == bindings.end()) {
                    piece = piece * variable(table_, order_, v, one_like(t.coeff), e);
                } else {
                    if (it->second.table_ != table_)
                        throw DomainError("substitution binding from a different table");
                    Polynomial p = it->second.with_order(order_);
                    for (std::uint32_t k = 0; k < e; ++k)
                        piece = piece * p;
                }
            }
            acc = acc + piece;
        }
        return acc;
    }

    /// Evaluation at a full point (one value per table variable).
    K evaluate(std::span<const K> point) const {
        if (point.size() != table_->size())
            throw DomainError("evaluation point width mismatch");
        std::optional<K> acc;
        for (const Term& t : terms_) {
            K v = t.coeff;
            for (VarId i = 0; i < table_->size(); ++i)
                for (std::uint32_t e = 0; e < t.mono.exp(i); ++e)
                    v = v * point[i];
            acc = acc ? *acc + v : v;
        }
        if (acc)
            return *acc;
        if (!point.empty()) {
            K z = point[0];
            return z - z;
        }
        throw DomainError("cannot evaluate empty polynomial at empty point");
    }

    Polynomial with_order(const OrderPtr& order) const {
        if (order == order_ || *order == *order_)
            return *this;
        Polynomial r(table_, order);
        r.normalize(terms_);
        return r;
    }

    Polynomial lifted(const TablePtr& table, const OrderPtr& order) const {
        if (table->size() < table_->size())
            throw DomainError("table lift must not shrink");
        Polynomial r(table, order);
        std::vector<Term> raw;
        raw.reserve(terms_.size());
        for (const Term& t : terms_)
            raw.push_back(Term{t.mono.lifted(table->size()), t.coeff});
        r.normalize(std::move(raw));
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size())
            return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || !(terms_[i].coeff == o.terms_[i].coeff))
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Canonical rendering: descending terms, `^` exponents, explicit `*`.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const Term& t = terms_[i];
            bool neg = t.coeff.is_negative_lead();
            K mag = neg ? -t.coeff : t.coeff;
            std::string mono;
            for (VarId v = 0; v < table_->size(); ++v) {
                std::uint32_t e = t.mono.exp(v);
                if (e == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += table_->name(v);
                if (e > 1)
                    mono += "^" + std::to_string(e);
            }
            std::string piece;
            if (mono.empty())
                piece = mag.factor_str();
            else if (mag.is_one())
                piece = mono;
            else
                piece = mag.factor_str() + "*" + mono;
            if (i == 0)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            out += piece;
        }
        return out;
    }

private:
    template <class>
    friend class Polynomial;

    static K one_like(const K& sample) {
        if (sample.is_zero())
            throw DomainError("cannot derive unit from zero coefficient");
        return sample / sample;
    }

    void check_compatible(const Polynomial& o) const {
        if (table_ != o.table_)
            throw DomainError("polynomial table mismatch");
        if (order_ != o.order_ && !(*order_ == *o.order_))
            throw DomainError("polynomial order mismatch");
    }

    void normalize(std::vector<Term> raw) {
        std::sort(raw.begin(), raw.end(), [this](const Term& a, const Term& b) {
            return order_->greater(a.mono, b.mono);
        });
        terms_.clear();
        terms_.reserve(raw.size());
        for (Term& t : raw) {
            if (t.coeff.is_zero())
                continue;
            if (!terms_.empty() && terms_.back().mono == t.mono) {
                terms_.back().coeff = terms_.back().coeff + t.coeff;
                if (terms_.back().coeff.is_zero())
                    terms_.pop_back();
            } else {
                terms_.push_back(std::move(t));
            }
        }
    }

    TablePtr table_;
    OrderPtr order_;
    std::vector<Term> terms_;
};

} // namespace dirac

#endif
