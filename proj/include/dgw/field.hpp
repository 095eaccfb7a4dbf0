#ifndef DGW_FIELD_HPP
#define DGW_FIELD_HPP

#include <cstdint>
#include <iosfwd>

namespace dgw {

/// Prime field GF(p). The characteristic is process-global and must be set
/// before any objects are compiled; changing it afterwards invalidates them.
class Field {
public:
    static constexpr std::uint32_t kDefaultCharacteristic = 32003;

    static std::uint32_t characteristic() noexcept { return p_; }
    /// Throws InputError unless p is a prime below 2^31.
    static void set_characteristic(std::uint32_t p);

private:
    static inline std::uint32_t p_ = kDefaultCharacteristic;
};

/// Element of GF(p), always held in canonical form 0 <= v < p.
class Fp {
public:
    constexpr Fp() noexcept = default;
    Fp(std::int64_t v) noexcept  // NOLINT(google-explicit-constructor)
    {
        const auto p = static_cast<std::int64_t>(Field::characteristic());
        v %= p;
        if (v < 0) v += p;
        v_ = static_cast<std::uint32_t>(v);
    }

    std::uint32_t value() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) noexcept
    {
        std::uint64_t s = std::uint64_t{a.v_} + b.v_;
        if (s >= Field::characteristic()) s -= Field::characteristic();
        return raw(static_cast<std::uint32_t>(s));
    }
    friend Fp operator-(Fp a, Fp b) noexcept
    {
        return a.v_ >= b.v_ ? raw(a.v_ - b.v_) : raw(a.v_ + Field::characteristic() - b.v_);
    }
    friend Fp operator*(Fp a, Fp b) noexcept
    {
        return raw(static_cast<std::uint32_t>(std::uint64_t{a.v_} * b.v_ % Field::characteristic()));
    }
    Fp operator-() const noexcept { return v_ == 0 ? *this : raw(Field::characteristic() - v_); }
    Fp& operator+=(Fp o) noexcept { return *this = *this + o; }
    Fp& operator-=(Fp o) noexcept { return *this = *this - o; }
    Fp& operator*=(Fp o) noexcept { return *this = *this * o; }

    /// Multiplicative inverse; the zero element maps to zero.
    Fp inverse() const noexcept;

    friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) noexcept { return a.v_ != b.v_; }
    friend bool operator<(Fp a, Fp b) noexcept { return a.v_ < b.v_; }

    /// Signed representative in (-p/2, p/2], used for printing.
    std::int64_t balanced() const noexcept;

private:
    static Fp raw(std::uint32_t v) noexcept
    {
        Fp r;
        r.v_ = v;
        return r;
    }
    std::uint32_t v_ = 0;
};

inline Fp sign_fp(int parity) noexcept { return (parity & 1) ? Fp(-1) : Fp(1); }

std::ostream& operator<<(std::ostream& os, Fp x);

}  // namespace dgw

#endif
