#pragma once

#include <initializer_list>

#include <mgsda/linalg.hpp>

namespace mgsda_test {

inline mgsda::Vector vec(std::initializer_list<double> xs) {
    mgsda::Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

} // namespace mgsda_test
