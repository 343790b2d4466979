#include "dirac/parser.hpp"

#include <cctype>
#include <vector>

namespace dirac {

namespace {

constexpr std::uint32_t kMaxExponent = 4096;
constexpr int kMaxDepth = 200;

enum class Tok { Ident, UInt, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t pos = 0;
    int line = 1, col = 1;
    auto advance = [&] {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    };
    while (pos < text.size()) {
        char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                s += text[pos];
                advance();
            }
            out.push_back({Tok::Ident, std::move(s), tl, tc});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                s += text[pos];
                advance();
            }
            out.push_back({Tok::UInt, std::move(s), tl, tc});
            continue;
        }
        advance();
        switch (c) {
        case '+': out.push_back({Tok::Plus, "+", tl, tc}); break;
        case '-': out.push_back({Tok::Minus, "-", tl, tc}); break;
        case '*': out.push_back({Tok::Star, "*", tl, tc}); break;
        case '/': out.push_back({Tok::Slash, "/", tl, tc}); break;
        case '^': out.push_back({Tok::Caret, "^", tl, tc}); break;
        case '(': out.push_back({Tok::LParen, "(", tl, tc}); break;
        case ')': out.push_back({Tok::RParen, ")", tl, tc}); break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const RingPtr& ring, const OrderPtr& order)
        : toks_(tokenize(text)), ring_(ring), order_(order) {}

    PhasePoly run() {
        PhasePoly p = expr();
        if (cur().kind != Tok::End)
            throw ParseError("unexpected token '" + cur().text + "'", cur().line, cur().col);
        return p;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        std::size_t i = pos_ + n;
        return toks_[i < toks_.size() ? i : toks_.size() - 1];
    }
    void bump() {
        if (pos_ + 1 < toks_.size())
            ++pos_;
    }

    PhasePoly expr() {
        DepthGuard guard(this);
        PhasePoly p = term();
        while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            bool minus = cur().kind == Tok::Minus;
            bump();
            PhasePoly q = term();
            p = minus ? p - q : p + q;
        }
        return p;
    }

    PhasePoly term() {
        DepthGuard guard(this);
        PhasePoly p = factor();
        while (cur().kind == Tok::Star || cur().kind == Tok::Slash) {
            bool divide = cur().kind == Tok::Slash;
            int line = cur().line, col = cur().col;
            bump();
            PhasePoly q = factor();
            if (!divide) {
                p = p * q;
                continue;
            }
            if (q.is_zero())
                throw ParseError("division by zero", line, col);
            if (!q.is_constant())
                throw ParseError("division by an expression containing variables "
                                 "(only numbers and parameters may divide)",
                                 line, col);
            p = p.scaled(q.leading_coeff().inverse());
        }
        return p;
    }

    PhasePoly factor() {
        DepthGuard guard(this);
        PhasePoly p = base();
        if (cur().kind == Tok::Caret) {
            bump();
            if (cur().kind == Tok::Minus)
                throw ParseError("negative exponent not allowed", cur().line, cur().col);
            if (cur().kind != Tok::UInt)
                throw ParseError("expected nonnegative integer exponent", cur().line, cur().col);
            std::uint32_t e = parse_uint(cur());
            bump();
            return pow(p, e);
        }
        return p;
    }

    PhasePoly base() {
        DepthGuard guard(this);
        switch (cur().kind) {
        case Tok::Minus: {
            bump();
            return -base();
        }
        case Tok::UInt: {
            Token first = cur();
            // Greedy rational literal: uint '/' uint.
            if (peek().kind == Tok::Slash && peek(2).kind == Tok::UInt) {
                Token slash = peek();
                Token denom = peek(2);
                bump();
                bump();
                bump();
                if (denom.text.find_first_not_of('0') == std::string::npos)
                    throw ParseError("division by zero", slash.line, slash.col);
                Rational r = Rational::from_string(first.text + "/" + denom.text);
                return ring_->constant(order_, ring_->coeff_rational(r));
            }
            bump();
            Rational r = Rational::from_string(first.text);
            return ring_->constant(order_, ring_->coeff_rational(r));
        }
        case Tok::LParen: {
            bump();
            PhasePoly p = expr();
            if (cur().kind != Tok::RParen)
                throw ParseError("expected ')'", cur().line, cur().col);
            bump();
            return p;
        }
        case Tok::Ident: {
            Token id = cur();
            bump();
            if (id.text == "dot" && cur().kind == Tok::LParen) {
                bump();
                if (cur().kind != Tok::Ident)
                    throw ParseError("expected coordinate name inside dot()", cur().line,
                                     cur().col);
                Token inner = cur();
                bump();
                if (cur().kind != Tok::RParen)
                    throw ParseError("expected ')'", cur().line, cur().col);
                bump();
                auto v = ring_->vars()->find(inner.text);
                if (!v)
                    throw ParseError("unknown identifier '" + inner.text + "'", inner.line,
                                     inner.col);
                if (ring_->vars()->role(*v) != VarRole::Coordinate)
                    throw ParseError("dot() requires a coordinate, got '" + inner.text + "'",
                                     inner.line, inner.col);
                std::int32_t vel = ring_->vars()->velocity_of(*v);
                if (vel < 0)
                    throw ParseError("coordinate '" + inner.text + "' has no velocity symbol",
                                     inner.line, inner.col);
                return ring_->var(order_, static_cast<VarId>(vel));
            }
            if (auto v = ring_->vars()->find(id.text))
                return ring_->var(order_, *v);
            if (auto p = ring_->params()->find(id.text))
                return ring_->constant(order_, ring_->coeff_param(*p));
            throw ParseError("unknown identifier '" + id.text + "'", id.line, id.col);
        }
        default:
            throw ParseError("unexpected token '" +
                                 (cur().kind == Tok::End ? std::string("end of input")
                                                         : cur().text) +
                                 "'",
                             cur().line, cur().col);
        }
    }

    std::uint32_t parse_uint(const Token& t) {
        if (t.text.size() > 9)
            throw ParseError("exponent too large", t.line, t.col);
        unsigned long v = std::stoul(t.text);
        if (v > kMaxExponent)
            throw ParseError("exponent too large", t.line, t.col);
        return static_cast<std::uint32_t>(v);
    }

    PhasePoly pow(const PhasePoly& p, std::uint32_t e) {
        if (e > 64 && p.term_count() > 1)
            throw ParseError("exponent too large for expansion", cur().line, cur().col);
        PhasePoly r = ring_->one(order_);
        for (std::uint32_t i = 0; i < e; ++i)
            r = r * p;
        return r;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser* p) : p_(p) {
            if (++p_->depth_ > kMaxDepth)
                throw ParseError("expression too deeply nested", p_->cur().line, p_->cur().col);
        }
        ~DepthGuard() { --p_->depth_; }
        Parser* p_;
    };

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    RingPtr ring_;
    OrderPtr order_;
    int depth_ = 0;
};

} // namespace

PhasePoly parse_expression(const std::string& text, const RingPtr& ring, const OrderPtr& order) {
    return Parser(text, ring, order).run();
}

} // namespace dirac
