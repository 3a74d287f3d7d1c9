#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "lindiv/space.hpp"

namespace lindiv {

inline std::vector<std::string> split_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

// Parses a whitespace-separated generator word in the family's token syntax.
template <typename S>
std::vector<Label> parse_word(const S& space, const std::string& text) {
  std::vector<Label> out;
  for (const auto& token : split_tokens(text)) out.push_back(space.parse_token(token));
  return out;
}

template <MarkedSpace S>
typename S::vertex_type evaluate_word(const S& space, const std::vector<Label>& word) {
  typename S::vertex_type v = space.basepoint();
  for (const auto& label : word) v = space.apply(v, label);
  return v;
}

template <MarkedSpace S>
std::string word_text(const S& space, const std::vector<Label>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += " ";
    out += space.label_text(word[i]);
  }
  return out;
}

}  // namespace lindiv
