#pragma once

#include "qdu/sampling.hpp"

#include <initializer_list>
#include <vector>

namespace qdu::testing {

using qdu::random_element;
using qdu::random_params;
using qdu::random_path;
using qdu::random_scalar;

inline std::vector<Scalar> scalars(std::initializer_list<long> xs) {
    std::vector<Scalar> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace qdu::testing
