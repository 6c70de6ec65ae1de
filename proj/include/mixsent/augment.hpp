#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixsent/corpus.hpp"
#include "mixsent/lexicon.hpp"

namespace mixsent {

enum class TokenKind { Word, SentiTag };

// Element of the augmented stream: either a fused `surface_LANG` word or a
// sentiment-tag token (`<Positive>`, `<Negative>`, `<UNK>`). Both flow
// through the n-gram featurizer as ordinary tokens.
struct AugmentedToken {
  std::string text;
  TokenKind kind = TokenKind::Word;

  bool operator==(const AugmentedToken&) const = default;
};

inline std::string_view senti_tag_token(SentimentTag tag) {
  switch (tag) {
    case SentimentTag::Positive: return "<Positive>";
    case SentimentTag::Negative: return "<Negative>";
    case SentimentTag::Unk: return "<UNK>";
  }
  return "<UNK>";
}

inline AugmentedToken attach_language_tag(const TaggedToken& token) {
  std::string text = token.surface;
  text += '_';
  text += to_string(token.lang);
  return {std::move(text), TokenKind::Word};
}

// Routes by language tag: EN and BN words consult their lexicons, HI words
// are always UNK (there is no Hindi lexicon). Lookup uses the bare surface,
// not the fused `surface_LANG` form.
inline SentimentTag sentiment_tag_for(const TaggedToken& token,
                                      const SentimentLexicon& en_lexicon,
                                      const SentimentLexicon& bn_lexicon) {
  switch (token.lang) {
    case Lang::EN: return en_lexicon.lookup(token.surface);
    case Lang::BN: return bn_lexicon.lookup(token.surface);
    case Lang::HI: return SentimentTag::Unk;
  }
  return SentimentTag::Unk;
}

/// Each input token becomes two output tokens: `surface_LANG` followed by
/// its sentiment tag. Output length is exactly 2x the input length.
inline std::vector<AugmentedToken> augment_tokens(std::span<const TaggedToken> tokens,
                                                  const SentimentLexicon& en_lexicon,
                                                  const SentimentLexicon& bn_lexicon) {
  std::vector<AugmentedToken> out;
  out.reserve(tokens.size() * 2);
  for (const auto& token : tokens) {
    out.push_back(attach_language_tag(token));
    const auto tag = sentiment_tag_for(token, en_lexicon, bn_lexicon);
    out.push_back({std::string(senti_tag_token(tag)), TokenKind::SentiTag});
  }
  return out;
}

inline std::vector<AugmentedToken> augment_tweet(const LabeledTweet& tweet,
                                                 const SentimentLexicon& en_lexicon,
                                                 const SentimentLexicon& bn_lexicon) {
  return augment_tokens(tweet.tokens, en_lexicon, bn_lexicon);
}

}  // namespace mixsent
