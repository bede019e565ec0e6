#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace olmat {

/// Arrowhead at one endpoint of a bidirected edge.
enum class Head : std::uint8_t { In = 0, Out = 1 };

/// Overlap orientation of a directed read pair (src, dst), classified in the
/// alignment frame (dst reverse-complemented when the pair is rc):
///   forward: src starts later than dst, no rc   (src end meets dst start)
///   reverse: src starts earlier than dst, no rc (src start meets dst end)
///   inner:   rc, src starts later               (src end meets dst end)
///   outer:   rc, src starts earlier             (src start meets dst start)
enum class Category : std::uint8_t { Forward, Reverse, Inner, Outer };

struct HeadPair {
  Head src = Head::Out;
  Head dst = Head::In;

  bool operator==(const HeadPair&) const = default;
};

/// The head convention: a read's end side carries OUT, its start side IN.
constexpr HeadPair heads_for(Category c) {
  switch (c) {
    case Category::Forward: return {Head::Out, Head::In};
    case Category::Reverse: return {Head::In, Head::Out};
    case Category::Inner: return {Head::Out, Head::Out};
    case Category::Outer: return {Head::In, Head::In};
  }
  return {};
}

/// Category of the same overlap seen from the other read.
constexpr Category mirror(Category c) {
  switch (c) {
    case Category::Forward: return Category::Reverse;
    case Category::Reverse: return Category::Forward;
    default: return c;
  }
}

constexpr Category category_for(HeadPair h) {
  if (h.src == Head::Out) return h.dst == Head::In ? Category::Forward : Category::Inner;
  return h.dst == Head::Out ? Category::Reverse : Category::Outer;
}

constexpr Head opposite(Head h) { return h == Head::In ? Head::Out : Head::In; }

std::string_view to_string(Head h);
std::string_view to_string(Category c);
std::optional<Head> parse_head(std::string_view s);
std::optional<Category> parse_category(std::string_view s);

/// Nonzero of the overlap and string matrices: the bases of dst extending past
/// the overlap, plus orientation.
struct OverhangEdge {
  std::uint32_t suffix = 0;
  Category category = Category::Forward;

  HeadPair heads() const { return heads_for(category); }
  bool operator==(const OverhangEdge&) const = default;
};

}  // namespace olmat
