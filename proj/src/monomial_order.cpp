#include "dirac/monomial.hpp"

#include <algorithm>
#include <set>

namespace dirac {

std::strong_ordering MonomialOrder::compare_flat(Kind kind, const Monomial& a, const Monomial& b,
                                                 std::span<const VarId> vars) {
    switch (kind) {
    case Kind::Lex:
        for (VarId v : vars) {
            if (a.exp(v) != b.exp(v))
                return a.exp(v) <=> b.exp(v);
        }
        return std::strong_ordering::equal;
    case Kind::DegRevLex: {
        std::uint64_t da = 0, db = 0;
        for (VarId v : vars) {
            da += a.exp(v);
            db += b.exp(v);
        }
        if (da != db)
            return da <=> db;
        // Tie: the last variable where they differ; smaller exponent wins.
        for (std::size_t i = vars.size(); i-- > 0;) {
            VarId v = vars[i];
            if (a.exp(v) != b.exp(v))
                return b.exp(v) <=> a.exp(v);
        }
        return std::strong_ordering::equal;
    }
    case Kind::Block:
        throw DomainError("block order cannot nest");
    }
    return std::strong_ordering::equal;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    if (kind_ != Kind::Block) {
        if (a.width() != b.width())
            throw DomainError("monomial width mismatch (different variable tables)");
        // Full-width fast path without materialising a VarId list.
        if (kind_ == Kind::Lex) {
            for (VarId v = 0; v < a.width(); ++v)
                if (a.exp(v) != b.exp(v))
                    return a.exp(v) <=> b.exp(v);
            return std::strong_ordering::equal;
        }
        if (a.degree() != b.degree())
            return a.degree() <=> b.degree();
        for (std::size_t i = a.width(); i-- > 0;) {
            VarId v = static_cast<VarId>(i);
            if (a.exp(v) != b.exp(v))
                return b.exp(v) <=> a.exp(v);
        }
        return std::strong_ordering::equal;
    }
    for (const Block& blk : blocks_) {
        auto c = compare_flat(blk.inner, a, b, blk.vars);
        if (c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

bool MonomialOrder::eliminates(std::span<const VarId> eliminated, std::size_t nvars) const {
    if (kind_ != Kind::Block)
        return eliminated.empty();
    std::set<VarId> want(eliminated.begin(), eliminated.end());
    std::set<VarId> seen;
    for (const Block& blk : blocks_) {
        bool block_in_want = true;
        for (VarId v : blk.vars)
            block_in_want = block_in_want && want.count(v) > 0;
        if (seen.size() < want.size()) {
            // Still consuming elimination blocks; they must lie inside `want`.
            if (!block_in_want)
                return false;
            seen.insert(blk.vars.begin(), blk.vars.end());
        } else {
            // Trailing blocks must avoid eliminated variables entirely.
            for (VarId v : blk.vars)
                if (want.count(v))
                    return false;
        }
    }
    (void)nvars;
    return seen == want;
}

std::string MonomialOrder::describe() const {
    switch (kind_) {
    case Kind::Lex:
        return "lex";
    case Kind::DegRevLex:
        return "degrevlex";
    case Kind::Block: {
        std::string s = "block(";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i)
                s += " >> ";
            s += blocks_[i].inner == Kind::Lex ? "lex" : "degrevlex";
            s += "[" + std::to_string(blocks_[i].vars.size()) + "]";
        }
        return s + ")";
    }
    }
    return "?";
}

OrderPtr make_elimination_order(std::span<const VarId> front, std::size_t nvars,
                                MonomialOrder::Kind inner) {
    std::set<VarId> in_front(front.begin(), front.end());
    MonomialOrder::Block b1, b2;
    b1.vars.assign(front.begin(), front.end());
    b1.inner = inner;
    for (VarId v = 0; v < nvars; ++v)
        if (!in_front.count(v))
            b2.vars.push_back(v);
    b2.inner = inner;
    return make_order(MonomialOrder::block({std::move(b1), std::move(b2)}));
}

} // namespace dirac
