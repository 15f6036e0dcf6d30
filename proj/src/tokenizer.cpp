#include "expertrank/tokenizer.hpp"

#include <algorithm>

namespace expertrank {

namespace {

bool is_token_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char fold(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

template <typename Sink>
void scan(std::string_view text, Sink&& sink) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_token_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > start) {
            sink(text.substr(start, i - start));
        }
    }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    scan(text, [&](std::string_view token) {
        std::string term(token.size(), '\0');
        std::transform(token.begin(), token.end(), term.begin(),
                       [](char c) { return fold(static_cast<unsigned char>(c)); });
        out.push_back(std::move(term));
    });
    return out;
}

std::size_t count_tokens(std::string_view text) {
    std::size_t n = 0;
    scan(text, [&](std::string_view) { ++n; });
    return n;
}

std::vector<std::string> query_terms(std::string_view text) {
    std::vector<std::string> terms;
    for (auto& term : tokenize(text)) {
        if (std::find(terms.begin(), terms.end(), term) == terms.end()) {
            terms.push_back(std::move(term));
        }
    }
    return terms;
}

}  // namespace expertrank
