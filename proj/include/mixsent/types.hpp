#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace mixsent {

// Token-level language tags as they appear in the data.
enum class Lang { EN, BN, HI };

inline constexpr std::array<Lang, 3> kAllLangs = {Lang::EN, Lang::BN, Lang::HI};

inline constexpr std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::EN: return "EN";
    case Lang::BN: return "BN";
    case Lang::HI: return "HI";
  }
  return "?";
}

inline std::optional<Lang> parse_lang(std::string_view s) {
  if (s == "EN") return Lang::EN;
  if (s == "BN") return Lang::BN;
  if (s == "HI") return Lang::HI;
  return std::nullopt;
}

// The three sentiment classes, in the fixed order used everywhere
// (class indices, tie-breaking, report rows).
enum class Label { Positive, Negative, Neutral };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::Positive, Label::Negative, Label::Neutral};

inline constexpr std::string_view to_string(Label label) {
  switch (label) {
    case Label::Positive: return "positive";
    case Label::Negative: return "negative";
    case Label::Neutral: return "neutral";
  }
  return "?";
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "positive") return Label::Positive;
  if (s == "negative") return Label::Negative;
  if (s == "neutral") return Label::Neutral;
  return std::nullopt;
}

inline constexpr std::size_t label_index(Label label) {
  return static_cast<std::size_t>(label);
}

inline constexpr std::size_t lang_index(Lang lang) {
  return static_cast<std::size_t>(lang);
}

}  // namespace mixsent
