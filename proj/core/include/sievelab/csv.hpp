#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sievelab::csv {

/// Shortest decimal representation that round-trips to the same double.
/// Integral values below 2^53 print without a fractional part; non-finite
/// values print as "nan" / "inf" / "-inf".
std::string format(double v);
std::string format(uint64_t v);

/// Streams comment lines ('# ...'), a header row, and data rows. All
/// formatting is locale-independent, so identical inputs give identical bytes.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
};

} // namespace sievelab::csv
