#include <doctest.h>

#include <random>

#include "dmaug/core.hpp"
#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

using namespace dmaug;

namespace {
std::vector<std::string> toks(std::string_view s) { return tokenize(s).tokens(); }
}  // namespace

TEST_CASE("tokenize splits punctuation and keeps word-internal marks") {
  CHECK(toks("Hello, world!") == std::vector<std::string>{"Hello", ",", "world", "!"});
  CHECK(toks("It costs 3.50 or 1,000 at 10:30.") ==
        std::vector<std::string>{"It", "costs", "3.50", "or", "1,000", "at", "10:30", "."});
  CHECK(toks("a well-known e-mail") == std::vector<std::string>{"a", "well-known", "e-mail"});
  CHECK(toks("the U.S. economy") == std::vector<std::string>{"the", "U.S", ".", "economy"});
  CHECK(toks("Wait...") == std::vector<std::string>{"Wait", "..."});
  CHECK(toks("(see above)") == std::vector<std::string>{"(", "see", "above", ")"});
}

TEST_CASE("tokenize splits clitics and keeps name apostrophes") {
  CHECK(toks("don't") == std::vector<std::string>{"don", "'t"});
  CHECK(toks("it's John's") == std::vector<std::string>{"it", "'s", "John", "'s"});
  CHECK(toks("we\xE2\x80\x99re") == std::vector<std::string>{"we", "\xE2\x80\x99re"});
  CHECK(toks("O'Neil") == std::vector<std::string>{"O'Neil"});
}

TEST_CASE("tokenize keeps placeholders whole and normalizes to NFC") {
  CHECK(toks("<mask> people") == std::vector<std::string>{"<mask>", "people"});
  CHECK(toks("we should <STANCE> taxes") == std::vector<std::string>{"we", "should", "<STANCE>", "taxes"});
  // e + combining acute -> precomposed
  CHECK(toks("caf\x65\xCC\x81") == std::vector<std::string>{"caf\xC3\xA9"});
  CHECK(tokenize("   ").empty());
}

TEST_CASE("detokenize undoes tokenize on ordinary text") {
  for (const char* s : {"Hello, world!", "However, it may also harm people.", "I think that we're right (mostly).",
                        "He said \"go home\" and left.", "It costs 3.50 dollars; don't pay.", "Wait... what?"}) {
    CHECK(detokenize(tokenize(s)) == s);
  }
}

TEST_CASE("tokenize is idempotent over detokenize") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pieces = {"the", "cat", ",", ".", "(", ")", "don", "'t", "3.5", "well-known",
                                           "!", "?", "\"", ";", ":", "U.S", "<mask>", "However", "..."};
  for (int n = 0; n < 1000; ++n) {
    std::vector<std::string> t;
    const std::size_t len = 1 + rng() % 12;
    for (std::size_t k = 0; k < len; ++k) t.push_back(pieces[rng() % pieces.size()]);
    const std::string once = detokenize(TokenSequence(t));
    const TokenSequence again = tokenize(once);
    CHECK(detokenize(again) == detokenize(tokenize(detokenize(again))));
    CHECK(tokenize(detokenize(again)) == again);
  }
}

TEST_CASE("TokenSequence rejects empty tokens") {
  CHECK_THROWS_AS(TokenSequence({"a", ""}), DataError);
  CHECK(TokenSequence({"a", "b"}).slice(1, 2) == TokenSequence({"b"}));
}

TEST_CASE("bio helpers") {
  CHECK(bio_prefix("B-Claim") == 'B');
  CHECK(bio_prefix("I-Premise") == 'I');
  CHECK(bio_prefix("O") == 'O');
  CHECK(bio_type("B-MajorClaim") == "MajorClaim");
  CHECK(bio_type("O").empty());
}

TEST_CASE("spans_to_bio and bio_to_spans") {
  const std::vector<AduSpan> spans{{0, 2, "Claim"}, {3, 5, "Premise"}};
  const LabelSequence bio = spans_to_bio(spans, 6);
  CHECK(bio == LabelSequence{"B-Claim", "I-Claim", "O", "B-Premise", "I-Premise", "O"});
  CHECK(bio_to_spans(bio) == spans);
  CHECK(bio_to_spans(bio, BioMode::strict) == spans);
}

TEST_CASE("spans_to_bio reports the offending span") {
  try {
    spans_to_bio({{0, 2, "Claim"}, {1, 3, "Premise"}}, 4);
    FAIL("overlap accepted");
  } catch (const InvalidSpanError& e) {
    CHECK(e.index() == 1);
  }
  try {
    spans_to_bio({{0, 2, "Claim"}, {3, 9, "Premise"}}, 4);
    FAIL("out of range accepted");
  } catch (const InvalidSpanError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(spans_to_bio({{2, 2, "Claim"}}, 4), InvalidSpanError);
}

TEST_CASE("tolerant decoding promotes stray I tags, strict mode rejects them") {
  const LabelSequence l{"O", "I-Claim", "I-Claim", "B-Premise", "I-Claim"};
  CHECK(bio_to_spans(l) == std::vector<AduSpan>{{1, 3, "Claim"}, {3, 4, "Premise"}, {4, 5, "Claim"}});
  try {
    bio_to_spans(l, BioMode::strict);
    FAIL("strict accepted invalid BIO");
  } catch (const InvalidBioError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_FALSE(is_valid_bio(l));
  CHECK(repair_bio(l) == LabelSequence{"O", "B-Claim", "I-Claim", "B-Premise", "B-Claim"});
  CHECK(is_valid_bio(repair_bio(l)));
}

TEST_CASE("BIO round trip on random valid span sets") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> types{"Claim", "Premise", "MajorClaim"};
  for (int n = 0; n < 1000; ++n) {
    const std::size_t len = 1 + rng() % 30;
    std::vector<AduSpan> spans;
    std::size_t pos = rng() % 3;
    while (pos < len) {
      const std::size_t end = std::min(len, pos + 1 + rng() % 6);
      spans.push_back({pos, end, types[rng() % types.size()]});
      pos = end + rng() % 3;
    }
    const LabelSequence bio = spans_to_bio(spans, len);
    CHECK(is_valid_bio(bio));
    CHECK(bio_to_spans(bio, BioMode::strict) == spans);
  }
}

TEST_CASE("sentence_starts uses terminal punctuation") {
  const auto t = tokenize("One two. Three? \"Four five.\" Six");
  const auto starts = sentence_starts(t);
  REQUIRE(starts.size() == 4);
  CHECK(t[starts[1]] == "Three");
  CHECK(t[starts[2]] == "\"");
  CHECK(sentence_starts(tokenize("He said \"stop.\" Then left."))[1] == 6);
  CHECK(t[starts[3]] == "Six");
  CHECK(sentence_starts(TokenSequence{}).empty());
}

TEST_CASE("normalize_dm") {
  CHECK(normalize_dm("  Moreover, ") == "moreover");
  CHECK(normalize_dm("In my opinion") == "in my opinion");
  CHECK(normalize_dm(normalize_dm("However,")) == normalize_dm("However,"));
}

TEST_CASE("text helpers") {
  CHECK(text::upper_first("however") == "However");
  CHECK(text::upper_first("\xC3\xA9tait") == "\xC3\x89tait");
  CHECK(text::lower_first("The") == "the");
  CHECK(text::decapitalize_word("The") == "the");
  CHECK(text::decapitalize_word("I") == "I");
  CHECK(text::decapitalize_word("NASA") == "NASA");
  CHECK(text::decapitalize_word("iPhone") == "iPhone");
  CHECK(text::equals_ci("STRASSE", "strasse"));
  CHECK(text::is_punct(","));
  CHECK(text::is_punct("\xE2\x80\x94"));
  CHECK_FALSE(text::is_punct("a,"));
  CHECK(text::is_terminal("?"));
  CHECK(CorpusSchema::by_name("PEC").has_label("MajorClaim"));
  CHECK_THROWS_AS(CorpusSchema::by_name("nope"), DataError);
}
