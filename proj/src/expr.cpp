#include "mldiff/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "mldiff/errors.hpp"

namespace mldiff {

namespace {

using Fn = std::function<double(double)>;

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    Fn parse() {
        Fn e = expression();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    Fn expression() {
        Fn left = term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                Fn right = term();
                left = [l = std::move(left), r = std::move(right)](double x) { return l(x) + r(x); };
            } else if (accept('-')) {
                Fn right = term();
                left = [l = std::move(left), r = std::move(right)](double x) { return l(x) - r(x); };
            } else {
                return left;
            }
        }
    }

    Fn term() {
        Fn left = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                Fn right = unary();
                left = [l = std::move(left), r = std::move(right)](double x) { return l(x) * r(x); };
            } else if (accept('/')) {
                Fn right = unary();
                left = [l = std::move(left), r = std::move(right)](double x) { return l(x) / r(x); };
            } else {
                return left;
            }
        }
    }

    Fn unary() {
        skip_space();
        if (accept('-')) {
            Fn inner = unary();
            return [f = std::move(inner)](double x) { return -f(x); };
        }
        if (accept('+')) return unary();
        return power();
    }

    Fn power() {
        Fn base = atom();
        skip_space();
        if (accept('^')) {
            Fn exponent = unary(); // right-associative
            return [b = std::move(base), e = std::move(exponent)](double x) {
                return std::pow(b(x), e(x));
            };
        }
        return base;
    }

    Fn atom() {
        skip_space();
        if (accept('(')) {
            Fn inner = expression();
            skip_space();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'x' || src_[pos_] == 'X')) {
            ++pos_;
            return [](double x) { return x; };
        }
        if (pos_ < src_.size() &&
            (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return [value](double) { return value; };
        }
        fail("expected number, 'x' or '('");
        return {};
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw ConfigError("expression error at position " + std::to_string(pos_) + ": " + why +
                          " in \"" + src_ + "\"");
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

} // namespace

std::function<double(double)> parse_expression(const std::string& source) {
    return Parser(source).parse();
}

} // namespace mldiff
