#include "pcurv/parse.hpp"

#include <cctype>
#include <string>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {

class Parser {
public:
    Parser(std::string_view src, const RingPtr& ring) : src_(src), ring_(ring) {}

    Poly run() {
        skip_ws();
        if (pos_ == src_.size()) throw ParseError("empty polynomial", pos_);
        Poly result = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        bool negate = accept('-');
        Poly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    std::uint64_t exponent() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("expected a nonnegative integer exponent", pos_);
        std::uint64_t e = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            e = e * 10 + static_cast<std::uint64_t>(src_[pos_++] - '0');
            if (e > ring_->degree_bound()) throw ResourceError("exponent at position " + std::to_string(start) +
                                                               " exceeds the degree bound");
        }
        return e;
    }

    Poly factor() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            if (accept('^')) return inner.pow(exponent());
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto& field = ring_->field();
            Coeff value = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                value = field.add(field.mul(value, field.reduce_unsigned(10)),
                                  field.reduce_unsigned(static_cast<std::uint64_t>(src_[pos_] - '0')));
                ++pos_;
            }
            return Poly::constant(ring_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            auto index = ring_->index_of(name);
            if (!index) throw ParseError("unknown variable '" + name + "'", start);
            Exponents e(ring_->num_vars(), 0);
            e[*index] = 1;
            if (accept('^')) e[*index] = static_cast<std::uint32_t>(exponent());
            return Poly::monomial(ring_, std::move(e), 1);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view src_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view src, const RingPtr& ring) { return Parser(src, ring).run(); }

}  // namespace pcurv
