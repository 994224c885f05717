#include "sievelab/csv.hpp"

#include <charconv>
#include <cmath>

namespace sievelab::csv {

std::string format(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) < 9007199254740992.0) {
        const int64_t i = static_cast<int64_t>(v);
        char buf[24];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), i);
        return std::string(buf, ptr);
    }
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format(uint64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void Writer::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void Writer::header(const std::vector<std::string>& columns) { row(columns); }

void Writer::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        out_ << cells[i];
    }
    out_ << "\n";
}

} // namespace sievelab::csv
