// Text format for chains and towers:
//
//   ballean v1
//   points 8
//   levels 3
//   level 1 cells: 0 1 | 2 3 | 4 5 | 6 7
//   level 2 cells: 0 1 2 3 | 4 5 6 7
//
// Level 0 (diagonal) and level `levels` (full) are implicit. Non-cellular
// levels are written as `level i pairs: (0,1) (2,5)` listing each
// off-diagonal pair once with x < y; symmetry and reflexivity are implied.

#pragma once

#include <string>
#include <string_view>

#include "coarsekit/ballean.hpp"
#include "coarsekit/text_format.hpp"

namespace coarsekit {

std::string write_ballean(const Tower& tower);
std::string write_ballean(const EntourageChain& chain);

// Reads one `ballean v1` block, leaving the reader after its last line.
EntourageChain read_chain(LineReader& in);

EntourageChain parse_chain(std::string_view text);
// Throws FormatError if the file does not describe a tower.
Tower parse_tower(std::string_view text);
Tower read_tower(LineReader& in);

}  // namespace coarsekit
