#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cpccms::text::detail {

struct HtmlEntity {
  std::string_view name;
  std::uint32_t codepoint;
};

extern const std::array<HtmlEntity, 252> kHtmlEntities;

}  // namespace cpccms::text::detail
