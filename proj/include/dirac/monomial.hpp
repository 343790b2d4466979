#ifndef DIRAC_MONOMIAL_HPP
#define DIRAC_MONOMIAL_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "dirac/error.hpp"
#include "dirac/variable_table.hpp"

namespace dirac {

/// Dense exponent vector indexed by a VariableTable, with cached total degree.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

    static Monomial variable(std::size_t nvars, VarId v, std::uint32_t e = 1) {
        Monomial m(nvars);
        m.exps_[v] = e;
        m.degree_ = e;
        return m;
    }

    std::size_t width() const { return exps_.size(); }
    std::uint64_t degree() const { return degree_; }
    std::uint32_t exp(VarId v) const { return exps_[v]; }
    bool is_one() const { return degree_ == 0; }

    void set_exp(VarId v, std::uint32_t e) {
        degree_ += e;
        degree_ -= exps_[v];
        exps_[v] = e;
    }

    Monomial operator*(const Monomial& o) const {
        check_width(o);
        Monomial r(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] = exps_[i] + o.exps_[i];
        r.degree_ = degree_ + o.degree_;
        return r;
    }

    bool divides(const Monomial& o) const {
        check_width(o);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > o.exps_[i])
                return false;
        return true;
    }

    /// this / o; requires o.divides(*this).
    Monomial quotient_by(const Monomial& o) const {
        check_width(o);
        Monomial r(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (o.exps_[i] > exps_[i])
                throw DomainError("monomial quotient of non-divisor");
            r.exps_[i] = exps_[i] - o.exps_[i];
        }
        r.degree_ = degree_ - o.degree_;
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        a.check_width(b);
        Monomial r(a.exps_.size());
        std::uint64_t deg = 0;
        for (std::size_t i = 0; i < a.exps_.size(); ++i) {
            r.exps_[i] = a.exps_[i] > b.exps_[i] ? a.exps_[i] : b.exps_[i];
            deg += r.exps_[i];
        }
        r.degree_ = deg;
        return r;
    }

    /// Pads with zero exponents up to `nvars` (table extension).
    Monomial lifted(std::size_t nvars) const {
        if (nvars < exps_.size())
            throw DomainError("monomial lift must not shrink");
        Monomial r(nvars);
        std::copy(exps_.begin(), exps_.end(), r.exps_.begin());
        r.degree_ = degree_;
        return r;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }

    std::span<const std::uint32_t> exponents() const { return exps_; }

private:
    void check_width(const Monomial& o) const {
        if (exps_.size() != o.exps_.size())
            throw DomainError("monomial width mismatch (different variable tables)");
    }

    std::vector<std::uint32_t> exps_;
    std::uint64_t degree_ = 0;
};

/// Admissible term order: lex, degrevlex, or a block (elimination) order with
/// an inner order per block. Earlier table index = more significant variable.
class MonomialOrder {
public:
    enum class Kind : std::uint8_t { Lex, DegRevLex, Block };

    struct Block {
        std::vector<VarId> vars; // listed in significance order
        Kind inner = Kind::DegRevLex;
        bool operator==(const Block&) const = default;
    };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex); }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex); }
    static MonomialOrder block(std::vector<Block> blocks) {
        MonomialOrder o(Kind::Block);
        o.blocks_ = std::move(blocks);
        return o;
    }

    Kind kind() const { return kind_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    /// True when this order eliminates every variable of `first_block` ahead of
    /// the rest, i.e. it is a block order whose leading blocks cover exactly
    /// those variables.
    bool eliminates(std::span<const VarId> eliminated, std::size_t nvars) const;

    bool operator==(const MonomialOrder&) const = default;

    std::string describe() const;

private:
    explicit MonomialOrder(Kind k) : kind_(k) {}

    static std::strong_ordering compare_flat(Kind kind, const Monomial& a, const Monomial& b,
                                             std::span<const VarId> vars);

    Kind kind_;
    std::vector<Block> blocks_;
};

using OrderPtr = std::shared_ptr<const MonomialOrder>;

inline OrderPtr make_order(MonomialOrder o) {
    return std::make_shared<MonomialOrder>(std::move(o));
}

/// Block order with `front` variables eliminated ahead of everything else.
OrderPtr make_elimination_order(std::span<const VarId> front, std::size_t nvars,
                                MonomialOrder::Kind inner);

} // namespace dirac

#endif
