#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace orthoqmc {

// Digit source: the base-b Champernowne number 0.(1)(2)(3)... written in base b.
// Positions are 1-based.
std::uint32_t champernowne_digit(std::uint64_t position, std::uint32_t base = 10);

// Sequential reader of the same digits, one number at a time.
class ChampernowneDigits {
public:
    explicit ChampernowneDigits(std::uint32_t base = 10);

    // Digit at position() + 1; advances.
    std::uint32_t next();
    std::uint64_t position() const { return position_; }

private:
    void load_number();

    std::uint32_t base_;
    std::uint64_t number_ = 0;
    std::vector<std::uint32_t> digits_; // most significant first
    std::size_t cursor_ = 0;
    std::uint64_t position_ = 0;
};

// Interval J = [t/b, (t+1)/b); alpha_q lies in J exactly when digit a_q == t.
struct GeneratorSpec {
    std::uint32_t target_digit = 5;
    std::uint32_t base = 10;

    void validate() const;
    bool operator==(const GeneratorSpec&) const = default;
};

// First `count` positions q with a_q == target digit, increasing.
std::vector<std::uint64_t> occurrence_positions(const GeneratorSpec& spec, std::size_t count);

// r_1 = q_1 - 1, r_m = q_m - q_{m-1}.
std::vector<std::uint64_t> r_sequence(const GeneratorSpec& spec, std::size_t count);

// Streams (q_m, r_m) without storing the prefix.
class VeechGenerator {
public:
    struct Step {
        std::uint64_t m;
        std::uint64_t q;
        std::uint64_t r;
    };

    explicit VeechGenerator(GeneratorSpec spec = {});
    Step next();

private:
    GeneratorSpec spec_;
    ChampernowneDigits digits_;
    std::uint64_t m_ = 0;
    std::uint64_t last_q_ = 1;
};

// w_m = z(r_1) * z(r_2) * ... * z(r_m), accumulated left to right. Requires m <= r.size().
template <class T, class ZFn, class MulFn>
T generate(std::span<const std::uint64_t> r, std::size_t m, ZFn&& z, MulFn&& mul, T identity)
{
    T acc = std::move(identity);
    for (std::size_t j = 0; j < m; ++j) acc = mul(acc, z(r[j]));
    return acc;
}

template <class T, class ZFn, class MulFn>
T generate(const GeneratorSpec& spec, std::size_t m, ZFn&& z, MulFn&& mul, T identity)
{
    const auto r = r_sequence(spec, m);
    return generate(std::span<const std::uint64_t>(r), m, z, mul, std::move(identity));
}

} // namespace orthoqmc
