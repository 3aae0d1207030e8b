#include "reference.hpp"

#include "orthoqmc/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace orthoqmc::cli {

std::optional<double> analytic_reference(const std::string& label, int n, int k)
{
    if (label == "3-cube" && n == 3 && (k == 1 || k == 2)) return 1.5;
    if (label == "4-cube" && n == 4 && k == 3) return 16.0 / (3.0 * std::numbers::pi);
    if (label == "3-simplex" && n == 3 && k == 1) return (1.5 + std::sqrt(3.0) / 2.0) / 4.0;
    return std::nullopt;
}

ReferenceCache::ReferenceCache(std::filesystem::path path) : path_(std::move(path))
{
    std::ifstream in(path_);
    if (!in) return;
    try {
        const auto doc = nlohmann::json::parse(in);
        for (const auto& [key, value] : doc.items()) values_[key] = value.get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("unreadable reference cache " + path_.string() + ": " + e.what());
    }
}

double ReferenceCache::oracle(const Polytope& polytope, int k, std::uint64_t samples, std::uint64_t seed)
{
    const int n = static_cast<int>(polytope.n());
    const std::string key = polytope.label + "|" + std::to_string(n) + "|" + std::to_string(k) + "|" +
                            std::to_string(samples) + "|" + std::to_string(seed);
    {
        std::lock_guard lock(mutex_);
        if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    ExperimentSpec spec;
    spec.polytope = polytope;
    spec.n = n;
    spec.k = k;
    spec.samples = samples;
    spec.mode = Mode::Random;
    spec.seed = seed;
    const double value = run(spec).estimate;

    std::lock_guard lock(mutex_);
    values_[key] = value;
    save();
    return value;
}

double ReferenceCache::reference(const Polytope& polytope, int k, std::uint64_t samples)
{
    if (auto exact = analytic_reference(polytope.label, static_cast<int>(polytope.n()), k)) return *exact;
    return oracle(polytope, k, samples);
}

void ReferenceCache::save() const
{
    if (path_.empty()) return;
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [key, value] : values_) doc[key] = value;
    write_atomically(path_, doc.dump(2) + "\n");
}

void write_atomically(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace orthoqmc::cli
