#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orthoqmc {

// Point of the half-open unit cube [0,1)^d.
struct UnitPoint {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

enum class SequenceKind { VanDerCorput, Halton, ScrambledHalton };

std::string to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(const std::string& name);

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Halton;
    std::size_t dims = 1;
    std::vector<std::uint64_t> bases;   // empty -> first `dims` primes
    std::uint64_t skip = 0;
    std::uint64_t permutation_seed = 0; // scrambled-halton only

    // Throws DomainError when bases are invalid (size mismatch, < 2, not pairwise coprime).
    void validate() const;
    std::vector<std::uint64_t> resolved_bases() const;

    bool operator==(const SequenceSpec&) const = default;
};

// The first `count` primes, optionally skipping the first `offset` of them.
std::vector<std::uint64_t> first_primes(std::size_t count, std::size_t offset = 0);

// Van der Corput radical inverse of `index` in `base`. index >= 1, base >= 2.
double radical_inverse(std::uint64_t index, std::uint64_t base);

// Radical inverse with each digit passed through `perm` (a permutation of {0..base-1}).
double scrambled_radical_inverse(std::uint64_t index, std::uint64_t base,
                                 std::span<const std::uint32_t> perm);

// Deterministic digit permutation of {0..base-1} with perm[0] == 0, drawn by a
// Fisher-Yates shuffle of {1..base-1} driven by a 64-bit LCG seeded from (seed, base).
std::vector<std::uint32_t> digit_permutation(std::uint64_t base, std::uint64_t seed);

// Random-access generator for one SequenceSpec. Digit permutations are built once
// at construction; point() is const and safe to call concurrently.
class LowDiscrepancySequence {
public:
    explicit LowDiscrepancySequence(SequenceSpec spec);
    // Scrambled variant with caller-supplied permutations (one per base).
    LowDiscrepancySequence(SequenceSpec spec, std::vector<std::vector<std::uint32_t>> permutations);

    const SequenceSpec& spec() const { return spec_; }
    std::size_t dims() const { return bases_.size(); }

    UnitPoint point(std::uint64_t index) const;
    void point_into(std::uint64_t index, std::span<double> out) const;

    const std::vector<std::uint64_t>& bases() const { return bases_; }
    // Empty unless the sequence is scrambled.
    const std::vector<std::vector<std::uint32_t>>& permutations() const { return permutations_; }

private:
    SequenceSpec spec_;
    std::vector<std::uint64_t> bases_;
    std::vector<std::vector<std::uint32_t>> permutations_; // empty unless scrambled
};

// Sequential reader of the same points. Keeps one digit counter per base and
// increments it with carries instead of re-expanding the index.
class SequenceStream {
public:
    explicit SequenceStream(const LowDiscrepancySequence& source);

    // Point at index position() + 1; advances.
    UnitPoint next();
    std::uint64_t position() const { return position_; }

private:
    const LowDiscrepancySequence* source_;
    std::vector<std::vector<std::uint32_t>> digits_; // least significant first, per base
    std::uint64_t position_ = 0;
};

// Pure function of (spec, index). index >= 1.
UnitPoint point_at(const SequenceSpec& spec, std::uint64_t index);

} // namespace orthoqmc
