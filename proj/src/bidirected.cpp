#include "olmat/bidirected.hpp"

namespace olmat {

std::string_view to_string(Head h) { return h == Head::In ? "IN" : "OUT"; }

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Forward: return "forward";
    case Category::Reverse: return "reverse";
    case Category::Inner: return "inner";
    case Category::Outer: return "outer";
  }
  return "?";
}

std::optional<Head> parse_head(std::string_view s) {
  if (s == "IN") return Head::In;
  if (s == "OUT") return Head::Out;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view s) {
  for (Category c : {Category::Forward, Category::Reverse, Category::Inner, Category::Outer}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

}  // namespace olmat
