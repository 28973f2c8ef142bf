#include "svsparse/dyadic.hpp"

#include <cmath>
#include <limits>

#include "svsparse/errors.hpp"

namespace svsparse {

namespace {

constexpr u128 U128_MAX = ~static_cast<u128>(0);

int bit_width(u128 v) {
    int w = 0;
    while (v) {
        v >>= 1;
        ++w;
    }
    return w;
}

// v << k with overflow detection.
u128 shl_checked(u128 v, int k) {
    if (v == 0) return 0;
    if (k >= 128 || bit_width(v) + k > 128) throw OverflowError("dyadic shift overflow");
    return v << k;
}

}  // namespace

Dyadic::Dyadic(u128 num, int scale) : num_(num), scale_(scale) {
    if (num_ == 0) {
        scale_ = 0;
        return;
    }
    while ((num_ & 1) == 0) {
        num_ >>= 1;
        --scale_;
    }
    if (scale_ < -100000 || scale_ > 100000) throw OverflowError("dyadic scale out of range");
}

std::optional<Dyadic> Dyadic::from_double(double v, int max_bits) {
    if (!(v >= 0) || !std::isfinite(v)) return std::nullopt;
    if (v == 0) return Dyadic();
    int e;
    double m = std::frexp(v, &e);  // v = m * 2^e, m in [1/2, 1)
    u128 num = 0;
    int frac = 0;
    for (int i = 0; i < 64 && m != 0; ++i) {
        m *= 2;
        num <<= 1;
        if (m >= 1) {
            num |= 1;
            m -= 1;
        }
        ++frac;
    }
    if (m != 0) return std::nullopt;  // needs more than 64 mantissa bits
    int scale = frac - e;
    Dyadic d(num, scale);
    if (d.scale() > max_bits) return std::nullopt;
    return d;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int s = std::max(scale_, o.scale_);
    u128 a = shl_checked(num_, s - scale_);
    u128 b = shl_checked(o.num_, s - o.scale_);
    if (a > U128_MAX - b) throw OverflowError("dyadic addition overflow");
    return Dyadic(a + b, s);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
    if (o.is_zero()) return *this;
    int s = std::max(scale_, o.scale_);
    u128 a = shl_checked(num_, s - scale_);
    u128 b = shl_checked(o.num_, s - o.scale_);
    if (a < b) throw OverflowError("dyadic subtraction would be negative");
    return Dyadic(a - b, s);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    if (is_zero() || o.is_zero()) return Dyadic();
    if (num_ > U128_MAX / o.num_) throw OverflowError("dyadic multiplication overflow");
    return Dyadic(num_ * o.num_, scale_ + o.scale_);
}

Dyadic Dyadic::mul_pow2(int k) const {
    if (is_zero()) return Dyadic();
    return Dyadic(num_, scale_ - k);
}

std::optional<Dyadic> Dyadic::div_exact(const Dyadic& o) const {
    if (o.is_zero()) return std::nullopt;
    if (is_zero()) return Dyadic();
    if (num_ % o.num_ != 0) return std::nullopt;
    return Dyadic(num_ / o.num_, scale_ - o.scale_);
}

Dyadic Dyadic::floor_to_grid(int t) const {
    if (is_zero()) return Dyadic();
    if (scale_ <= t) return *this;  // already on a coarser or equal grid
    int k = scale_ - t;
    if (k >= 128) return Dyadic();
    return Dyadic(num_ >> k, t);
}

bool Dyadic::operator<(const Dyadic& o) const {
    if (is_zero()) return !o.is_zero();
    if (o.is_zero()) return false;
    // Align to the finer grid. One shift is always zero, so the shifted
    // width is bounded by the other operand's width and cannot overflow
    // when the widths agree.
    int s = std::max(scale_, o.scale_);
    int ka = s - scale_, kb = s - o.scale_;
    int wa = bit_width(num_) + ka, wb = bit_width(o.num_) + kb;
    if (wa != wb) return wa < wb;
    return (num_ << ka) < (o.num_ << kb);
}

double Dyadic::to_double() const {
    double d = static_cast<double>(static_cast<uint64_t>(num_ >> 64)) * 0x1.0p64 +
               static_cast<double>(static_cast<uint64_t>(num_));
    return std::ldexp(d, -scale_);
}

u128 Dyadic::to_integer() const {
    if (!is_integer()) throw OverflowError("dyadic value is not an integer");
    return shl_checked(num_, -scale_);
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

std::string Dyadic::to_string() const {
    if (is_integer()) return u128_to_string(to_integer());
    if (scale_ >= 128) {
        // Denominator exceeds u128; render as num/2^k explicitly.
        return u128_to_string(num_) + "/2^" + std::to_string(scale_);
    }
    return u128_to_string(num_) + "/" + u128_to_string(static_cast<u128>(1) << scale_);
}

}  // namespace svsparse
