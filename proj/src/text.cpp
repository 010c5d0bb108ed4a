#include "dmaug/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <stdexcept>

namespace dmaug::text {
namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

// Applies `map` to the first alphabetic code point of s.
template <typename Map>
std::string map_first_alpha(std::string_view s, Map map) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0 || !u_isalpha(c)) continue;
    const UChar32 mapped = map(c);
    if (mapped == c) return std::string(s);
    std::string out(s.substr(0, static_cast<std::size_t>(start)));
    uint8_t buf[4];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, mapped);
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    out.append(s.substr(static_cast<std::size_t>(i)));
    return out;
  }
  return std::string(s);
}

}  // namespace

std::string nfc(std::string_view s) {
  if (is_ascii(s)) return std::string(s);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString out = norm->normalize(in, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

std::string fold(std::string_view s) {
  if (is_ascii(s)) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>((c >= 'A' && c <= 'Z') ? c + 32 : c); });
    return out;
  }
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  u.foldCase();
  std::string result;
  u.toUTF8String(result);
  return result;
}

bool equals_ci(std::string_view a, std::string_view b) {
  if (a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin())) return true;
  return fold(a) == fold(b);
}

std::string upper_first(std::string_view s) {
  return map_first_alpha(s, [](UChar32 c) { return u_totitle(c); });
}

std::string lower_first(std::string_view s) {
  return map_first_alpha(s, [](UChar32 c) { return u_tolower(c); });
}

bool is_punct(std::string_view s) {
  if (s.empty()) return false;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
    const int8_t type = u_charType(c);
    const bool symbol = type == U_MATH_SYMBOL || type == U_CURRENCY_SYMBOL ||
                        type == U_MODIFIER_SYMBOL || type == U_OTHER_SYMBOL;
    if (!u_ispunct(c) && !symbol) return false;
  }
  return true;
}

bool is_terminal(std::string_view token) {
  return token == "." || token == "!" || token == "?" || token == "..." || token == "\xE2\x80\xA6";
}

std::string decapitalize_word(std::string_view token) {
  if (token == "I" || token.rfind("I'", 0) == 0) return std::string(token);
  const auto* bytes = reinterpret_cast<const uint8_t*>(token.data());
  const int32_t length = static_cast<int32_t>(token.size());
  int32_t i = 0;
  int upper = 0;
  int letters = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return std::string(token);
    if (u_isalpha(c)) {
      ++letters;
      if (u_isupper(c) || u_istitle(c)) ++upper;
    }
  }
  // Acronyms and mixed-case words keep their casing.
  if (letters == 0 || upper != 1) return std::string(token);
  return lower_first(token);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace dmaug::text
