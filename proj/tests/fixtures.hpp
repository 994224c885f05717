#pragma once

#include "sievelab/arith.hpp"

namespace fixtures {

// Shared tables so each test case does not rebuild the sieve.
inline const sievelab::PrimeTables& tables_small() {
    static sievelab::PrimeTables t(20'000);
    return t;
}

inline const sievelab::PrimeTables& tables_medium() {
    static sievelab::PrimeTables t(200'000);
    return t;
}

inline const sievelab::PrimeTables& tables_large() {
    static sievelab::PrimeTables t(1'100'000);
    return t;
}

} // namespace fixtures
