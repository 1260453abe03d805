#pragma once

#include "poncelet/kernels.hpp"

namespace poncelet::kernels {

#ifdef PONCELET_HAVE_AVX2
const Kernels& avx2_table();
#endif

}  // namespace poncelet::kernels
