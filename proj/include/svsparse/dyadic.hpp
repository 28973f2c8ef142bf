#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace svsparse {

using u128 = unsigned __int128;

// Nonnegative dyadic rational num * 2^(-scale), kept canonical: num is odd or
// zero, and zero forces scale 0. Canonical form makes equality structural and
// lets graphs share a common denominator on demand (see common_scale users).
// All arithmetic is exact; anything that would not fit in the 128-bit
// numerator throws OverflowError instead of wrapping.
class Dyadic {
  public:
    Dyadic() : num_(0), scale_(0) {}
    Dyadic(u128 num, int scale);

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1, 0); }
    static Dyadic from_int(uint64_t v) { return Dyadic(v, 0); }
    // Exact conversion; rejects negatives, non-finite, and fractions finer
    // than max_bits fractional bits.
    static std::optional<Dyadic> from_double(double v, int max_bits = 1074);

    u128 num() const { return num_; }
    int scale() const { return scale_; }
    bool is_zero() const { return num_ == 0; }
    // True if the value is a nonnegative integer.
    bool is_integer() const { return scale_ <= 0; }
    // True if the value is 2^k for some integer k.
    bool is_pow2() const { return num_ == 1; }

    Dyadic operator+(const Dyadic& o) const;
    // Requires *this >= o; the weights this library manipulates never go
    // negative, so a negative difference is a logic error upstream.
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    // Value * 2^k (k may be negative).
    Dyadic mul_pow2(int k) const;
    // Exact quotient if o divides *this exactly in the dyadic ring.
    std::optional<Dyadic> div_exact(const Dyadic& o) const;
    // Largest multiple of 2^(-t) that is <= *this.
    Dyadic floor_to_grid(int t) const;

    bool operator==(const Dyadic& o) const { return num_ == o.num_ && scale_ == o.scale_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const;
    bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }
    bool operator>(const Dyadic& o) const { return o < *this; }
    bool operator>=(const Dyadic& o) const { return o <= *this; }

    double to_double() const;
    // Integer value; requires is_integer() and a value that fits in u128.
    u128 to_integer() const;
    // Rendered as "<int>" when integral, else "<num>/<2^scale>" in decimal.
    std::string to_string() const;

  private:
    u128 num_;
    int scale_;
};

std::string u128_to_string(u128 v);

}  // namespace svsparse
