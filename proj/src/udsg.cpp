#include "orthoqmc/udsg.hpp"

#include "orthoqmc/error.hpp"

#include <algorithm>

namespace orthoqmc {

std::uint32_t champernowne_digit(std::uint64_t position, std::uint32_t base)
{
    if (position < 1) throw DomainError("champernowne_digit: position must be >= 1");
    if (base < 2) throw DomainError("champernowne_digit: base must be >= 2");

    // Block of k-digit numbers: (b-1) b^(k-1) numbers, k (b-1) b^(k-1) digits.
    std::uint64_t offset = position - 1;
    std::uint64_t width = 1;
    std::uint64_t first = 1;
    std::uint64_t count = base - 1;
    while (offset / width >= count) {
        offset -= width * count;
        ++width;
        first *= base;
        count *= base;
    }
    std::uint64_t number = first + offset / width;
    const std::uint64_t from_right = width - 1 - offset % width;
    for (std::uint64_t s = 0; s < from_right; ++s) number /= base;
    return static_cast<std::uint32_t>(number % base);
}

ChampernowneDigits::ChampernowneDigits(std::uint32_t base)
    : base_(base)
{
    if (base_ < 2) throw DomainError("ChampernowneDigits: base must be >= 2");
}

void ChampernowneDigits::load_number()
{
    ++number_;
    digits_.clear();
    for (std::uint64_t v = number_; v > 0; v /= base_) digits_.push_back(static_cast<std::uint32_t>(v % base_));
    std::reverse(digits_.begin(), digits_.end());
    cursor_ = 0;
}

std::uint32_t ChampernowneDigits::next()
{
    if (cursor_ >= digits_.size()) load_number();
    ++position_;
    return digits_[cursor_++];
}

void GeneratorSpec::validate() const
{
    if (base < 2) throw DomainError("generator base must be >= 2");
    if (target_digit >= base) throw DomainError("generator target digit must be < base");
}

VeechGenerator::VeechGenerator(GeneratorSpec spec)
    : spec_(spec), digits_(spec.base)
{
    spec_.validate();
}

VeechGenerator::Step VeechGenerator::next()
{
    while (digits_.next() != spec_.target_digit) {}
    const std::uint64_t q = digits_.position();
    const Step step{++m_, q, q - last_q_};
    last_q_ = q;
    return step;
}

std::vector<std::uint64_t> occurrence_positions(const GeneratorSpec& spec, std::size_t count)
{
    if (count < 1) throw DomainError("occurrence_positions: count must be >= 1");
    VeechGenerator gen(spec);
    std::vector<std::uint64_t> q(count);
    for (auto& v : q) v = gen.next().q;
    return q;
}

std::vector<std::uint64_t> r_sequence(const GeneratorSpec& spec, std::size_t count)
{
    if (count < 1) return {};
    VeechGenerator gen(spec);
    std::vector<std::uint64_t> r(count);
    for (auto& v : r) v = gen.next().r;
    return r;
}

} // namespace orthoqmc
