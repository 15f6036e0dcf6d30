#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace expertrank {

/// Lowercases ASCII letters and splits on every ASCII character that is not a
/// letter or digit. Bytes >= 0x80 belong to tokens, so UTF-8 words stay whole.
/// No stemming, no stopword list.
std::vector<std::string> tokenize(std::string_view text);

/// Number of tokens tokenize() would return, without allocating them.
std::size_t count_tokens(std::string_view text);

/// tokenize() with duplicate terms removed, first occurrence kept.
std::vector<std::string> query_terms(std::string_view text);

}  // namespace expertrank
