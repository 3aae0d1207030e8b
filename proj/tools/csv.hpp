#pragma once

#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace orthoqmc::cli {

// CSV text with a fixed header; doubles carry 17 significant digits, empty optionals an empty field.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header)
    {
        out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << '\n';
    }

    template <class... Fields>
    void row(const Fields&... fields)
    {
        bool first = true;
        ((put(fields, first)), ...);
        out_ << '\n';
    }

    void values(const std::vector<double>& fields, std::uint64_t index)
    {
        out_ << index;
        for (double v : fields) out_ << ',' << v;
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    template <class T>
    void put(const T& v, bool& first)
    {
        if (!first) out_ << ',';
        first = false;
        if constexpr (std::is_same_v<T, std::optional<double>>) {
            if (v) out_ << *v;
        } else {
            out_ << v;
        }
    }

    std::ostringstream out_;
};

} // namespace orthoqmc::cli
