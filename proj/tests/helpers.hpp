#pragma once

#include <initializer_list>

#include "coreep/matrix.hpp"

namespace test_helpers {

// Row-major real-entry matrix literal.
inline coreep::CMatrix rm(std::initializer_list<std::initializer_list<double>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    coreep::CMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline coreep::CMatrix diag(std::initializer_list<coreep::Complex> entries) {
    int n = static_cast<int>(entries.size());
    coreep::CMatrix m = coreep::CMatrix::Zero(n, n);
    int i = 0;
    for (const auto& v : entries) m(i, i) = v, ++i;
    return m;
}

}  // namespace test_helpers
