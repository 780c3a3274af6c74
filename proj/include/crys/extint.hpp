#pragma once

#include <cassert>
#include <stdexcept>
#include <string>

namespace crys {

// Z extended by -infinity, the value taken by eps/phi on frozen crystals
// like T_lambda.  -inf absorbs addition and loses every comparison.
class ExtInt {
public:
    constexpr ExtInt() : finite_(true), v_(0) {}
    constexpr ExtInt(long long v) : finite_(true), v_(v) {}

    static constexpr ExtInt minus_inf() {
        ExtInt x;
        x.finite_ = false;
        x.v_ = 0;
        return x;
    }

    bool is_finite() const { return finite_; }

    long long value() const {
        if (!finite_) throw std::logic_error("ExtInt: value() on -inf");
        return v_;
    }

    ExtInt operator+(long long n) const {
        return finite_ ? ExtInt(v_ + n) : minus_inf();
    }
    ExtInt operator-(long long n) const { return *this + (-n); }
    ExtInt operator+(const ExtInt& o) const {
        return (finite_ && o.finite_) ? ExtInt(v_ + o.v_) : minus_inf();
    }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
    friend bool operator<(const ExtInt& a, const ExtInt& b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
    friend bool operator<=(const ExtInt& a, const ExtInt& b) { return !(b < a); }
    friend bool operator>=(const ExtInt& a, const ExtInt& b) { return !(a < b); }

    friend ExtInt max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

    std::string str() const {
        return finite_ ? std::to_string(v_) : std::string("-inf");
    }

private:
    bool finite_;
    long long v_;
};

}  // namespace crys
