#pragma once

#include <cstddef>

#include "ncreal/realization.hpp"

namespace ncreal {

FMRealization fm_add(const FMRealization& r, const FMRealization& s);
FMRealization fm_mul(const FMRealization& r, const FMRealization& s);
FMRealization fm_inv(const FMRealization& r);
// (A, B, -C, -D)
FMRealization fm_negate(const FMRealization& r);

FMRealization desc_to_fm(const DescriptorRealization& r);
DescriptorRealization fm_to_desc(const FMRealization& r);

FMRealization constant_fm(const ComplexMatrix& m, const CentrePoint& y);
// f(X) = X_k; k is 0-based.
FMRealization coordinate_fm(std::size_t k, const CentrePoint& y);

}  // namespace ncreal
