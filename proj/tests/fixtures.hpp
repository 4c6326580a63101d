#pragma once

#include <cstdint>
#include <vector>

#include "vancycle/exactlin.hpp"

namespace fixtures {

// Worked example: six and four real critical points with distinct values.
inline constexpr const char* kExampleG = "(x+3)*(x+2)*(x+1)*(x-1)*(x-2)*(x-4)";
inline constexpr const char* kExampleH = "(3-y)*(y-1)*(y+1)*(y+2)";

// Its published 15x15 intersection matrix, column-major cycle order.
inline vancycle::IntMatrix reference_psi() {
  return vancycle::IntMatrix(15, std::vector<std::int64_t>{
     0, -1,  0, -1,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,
     1,  0,  1,  0, -1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,
     0, -1,  0,  0,  1, -1,  0,  0,  0,  0,  0,  0,  0,  0,  0,
     1,  0,  0,  0, -1,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,
    -1,  1, -1,  1,  0,  1, -1,  1, -1,  0,  0,  0,  0,  0,  0,
     0,  0,  1,  0, -1,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,
     0,  0,  0, -1,  1,  0,  0, -1,  0, -1,  1,  0,  0,  0,  0,
     0,  0,  0,  0, -1,  0,  1,  0,  1,  0, -1,  0,  0,  0,  0,
     0,  0,  0,  0,  1, -1,  0, -1,  0,  0,  1, -1,  0,  0,  0,
     0,  0,  0,  0,  0,  0,  1,  0,  0,  0, -1,  0,  1,  0,  0,
     0,  0,  0,  0,  0,  0, -1,  1, -1,  1,  0,  1, -1,  1, -1,
     0,  0,  0,  0,  0,  0,  0,  0,  1,  0, -1,  0,  0,  0,  1,
     0,  0,  0,  0,  0,  0,  0,  0,  0, -1,  1,  0,  0, -1,  0,
     0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -1,  0,  1,  0,  1,
     0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -1,  0, -1,  0});
}

}  // namespace fixtures
