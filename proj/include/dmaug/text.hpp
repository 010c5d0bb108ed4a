#pragma once

// Unicode helpers over UTF-8 std::string. All functions are pure.

#include <string>
#include <string_view>

namespace dmaug::text {

std::string nfc(std::string_view s);

// Full Unicode case folding; used for every case-insensitive comparison.
std::string fold(std::string_view s);

bool equals_ci(std::string_view a, std::string_view b);

// Upper/lower-case the first alphabetic code point, leaving the rest as is.
std::string upper_first(std::string_view s);
std::string lower_first(std::string_view s);

// True if every code point is punctuation or a symbol (and s is non-empty).
bool is_punct(std::string_view s);

// Sentence terminators: . ! ? and ellipsis.
bool is_terminal(std::string_view token);

// Lowercases the first letter of a sentence-initial token unless it looks
// like the pronoun "I", an acronym, or otherwise not a plain capitalized word.
std::string decapitalize_word(std::string_view token);

std::string trim(std::string_view s);

}  // namespace dmaug::text
