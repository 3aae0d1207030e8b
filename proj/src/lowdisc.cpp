#include "orthoqmc/lowdisc.hpp"

#include "orthoqmc/error.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace orthoqmc {

namespace {

constexpr double kDigitFloor = 0x1p-63;

bool is_prime(std::uint64_t v)
{
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

double below_one(double x)
{
    return x < 1.0 ? x : std::nextafter(1.0, 0.0);
}

} // namespace

std::string to_string(SequenceKind kind)
{
    switch (kind) {
    case SequenceKind::VanDerCorput: return "van-der-corput";
    case SequenceKind::Halton: return "halton";
    case SequenceKind::ScrambledHalton: return "scrambled-halton";
    }
    return "unknown";
}

SequenceKind sequence_kind_from_string(const std::string& name)
{
    if (name == "van-der-corput") return SequenceKind::VanDerCorput;
    if (name == "halton") return SequenceKind::Halton;
    if (name == "scrambled-halton") return SequenceKind::ScrambledHalton;
    throw DomainError("unknown sequence kind '" + name + "'");
}

std::vector<std::uint64_t> first_primes(std::size_t count, std::size_t offset)
{
    std::vector<std::uint64_t> primes;
    primes.reserve(count);
    std::size_t seen = 0;
    for (std::uint64_t v = 2; primes.size() < count; ++v) {
        if (!is_prime(v)) continue;
        if (seen++ >= offset) primes.push_back(v);
    }
    return primes;
}

void SequenceSpec::validate() const
{
    if (dims < 1) throw DomainError("sequence dims must be >= 1");
    if (kind == SequenceKind::VanDerCorput && dims != 1)
        throw DomainError("van-der-corput sequences are one-dimensional");
    if (bases.empty()) return;
    if (bases.size() != dims) throw DomainError("bases list length must equal dims");
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] < 2) throw DomainError("sequence bases must be >= 2");
        for (std::size_t j = i + 1; j < bases.size(); ++j)
            if (std::gcd(bases[i], bases[j]) != 1) throw DomainError("sequence bases must be pairwise coprime");
    }
}

std::vector<std::uint64_t> SequenceSpec::resolved_bases() const
{
    return bases.empty() ? first_primes(dims) : bases;
}

double radical_inverse(std::uint64_t index, std::uint64_t base)
{
    if (base < 2) throw DomainError("radical_inverse: base must be >= 2");
    if (index < 1) throw DomainError("radical_inverse: index must be >= 1");
    const double inv = 1.0 / static_cast<double>(base);
    double factor = inv;
    double result = 0.0;
    while (index > 0 && factor >= kDigitFloor) {
        result += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv;
    }
    return below_one(result);
}

double scrambled_radical_inverse(std::uint64_t index, std::uint64_t base, std::span<const std::uint32_t> perm)
{
    if (base < 2) throw DomainError("radical_inverse: base must be >= 2");
    if (index < 1) throw DomainError("radical_inverse: index must be >= 1");
    if (perm.size() != base) throw DimensionMismatch("digit permutation size must equal base");
    const double inv = 1.0 / static_cast<double>(base);
    double factor = inv;
    double result = 0.0;
    // perm[0] == 0, so the infinite tail of leading zeros contributes nothing.
    while (index > 0 && factor >= kDigitFloor) {
        result += static_cast<double>(perm[index % base]) * factor;
        index /= base;
        factor *= inv;
    }
    return below_one(result);
}

std::vector<std::uint32_t> digit_permutation(std::uint64_t base, std::uint64_t seed)
{
    if (base < 2) throw DomainError("digit_permutation: base must be >= 2");
    std::vector<std::uint32_t> perm(base);
    std::iota(perm.begin(), perm.end(), 0u);

    std::uint64_t state = seed ^ (base * 0x9E3779B97F4A7C15ull);
    auto next = [&state] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    for (int warmup = 0; warmup < 4; ++warmup) next();

    for (std::uint64_t i = base - 1; i >= 2; --i) {
        const std::uint64_t j = 1 + next() % i; // j in [1, i]
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

LowDiscrepancySequence::LowDiscrepancySequence(SequenceSpec spec)
    : spec_(std::move(spec))
{
    spec_.validate();
    bases_ = spec_.resolved_bases();
    if (spec_.kind == SequenceKind::ScrambledHalton) {
        permutations_.reserve(bases_.size());
        for (auto b : bases_) permutations_.push_back(digit_permutation(b, spec_.permutation_seed));
    }
}

LowDiscrepancySequence::LowDiscrepancySequence(SequenceSpec spec, std::vector<std::vector<std::uint32_t>> permutations)
    : spec_(std::move(spec)), permutations_(std::move(permutations))
{
    spec_.validate();
    bases_ = spec_.resolved_bases();
    if (permutations_.size() != bases_.size())
        throw DimensionMismatch("one digit permutation per base is required");
    for (std::size_t j = 0; j < bases_.size(); ++j) {
        const auto& p = permutations_[j];
        if (p.size() != bases_[j] || p[0] != 0)
            throw DomainError("digit permutation must cover {0..b-1} and fix 0");
        std::vector<bool> hit(p.size(), false);
        for (auto d : p) {
            if (d >= p.size() || hit[d]) throw DomainError("digit permutation is not a bijection");
            hit[d] = true;
        }
    }
}

void LowDiscrepancySequence::point_into(std::uint64_t index, std::span<double> out) const
{
    if (index < 1) throw DomainError("sequence index must be >= 1");
    if (out.size() != bases_.size()) throw DimensionMismatch("output span size must equal sequence dims");
    const std::uint64_t shifted = index + spec_.skip;
    for (std::size_t j = 0; j < bases_.size(); ++j) {
        out[j] = permutations_.empty()
            ? radical_inverse(shifted, bases_[j])
            : scrambled_radical_inverse(shifted, bases_[j], permutations_[j]);
    }
}

UnitPoint LowDiscrepancySequence::point(std::uint64_t index) const
{
    UnitPoint p;
    p.coords.resize(bases_.size());
    point_into(index, p.coords);
    return p;
}

SequenceStream::SequenceStream(const LowDiscrepancySequence& source)
    : source_(&source), digits_(source.dims())
{
    const std::uint64_t skip = source.spec().skip;
    for (std::size_t j = 0; j < digits_.size(); ++j)
        for (std::uint64_t v = skip; v > 0; v /= source.bases()[j])
            digits_[j].push_back(static_cast<std::uint32_t>(v % source.bases()[j]));
}

UnitPoint SequenceStream::next()
{
    ++position_;
    const auto& bases = source_->bases();
    const auto& perms = source_->permutations();
    UnitPoint p;
    p.coords.resize(bases.size());
    for (std::size_t j = 0; j < bases.size(); ++j) {
        auto& d = digits_[j];
        std::size_t pos = 0;
        while (pos < d.size() && d[pos] + 1 == bases[j]) d[pos++] = 0;
        if (pos == d.size()) d.push_back(1);
        else ++d[pos];

        const double inv = 1.0 / static_cast<double>(bases[j]);
        double factor = inv;
        double value = 0.0;
        for (std::size_t i = 0; i < d.size() && factor >= kDigitFloor; ++i) {
            value += static_cast<double>(perms.empty() ? d[i] : perms[j][d[i]]) * factor;
            factor *= inv;
        }
        p.coords[j] = below_one(value);
    }
    return p;
}

UnitPoint point_at(const SequenceSpec& spec, std::uint64_t index)
{
    return LowDiscrepancySequence(spec).point(index);
}

} // namespace orthoqmc
