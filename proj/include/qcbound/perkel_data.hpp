#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace qcb::detail {

extern const std::array<std::pair<std::uint8_t, std::uint8_t>, 171> kPerkelEdges;

} // namespace qcb::detail
