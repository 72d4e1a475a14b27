#pragma once

#include "escom/kernels.hpp"

namespace escom::kernels::detail {

extern const Table kScalarTable;

#if defined(ESCOM_WITH_AVX2)
extern const Table kAvx2Table;
#endif

}  // namespace escom::kernels::detail
