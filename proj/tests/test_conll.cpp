#include <doctest.h>

#include <sstream>

#include "dmaug/conll.hpp"
#include "dmaug/errors.hpp"

using namespace dmaug;

TEST_CASE("CoNLL read/write round trip") {
  const std::string src = "However\tO\n,\tO\nit\tB-Claim\nrains\tI-Claim\n.\tO\n\nOK\tB-Premise\n";
  std::istringstream in(src);
  const auto corpus = read_conll(in);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].tokens.size() == 5);
  CHECK(corpus[0].labels[2] == "B-Claim");
  CHECK(corpus[1].tokens[0] == "OK");
  std::ostringstream out;
  write_conll(out, corpus);
  std::istringstream again(out.str());
  const auto back = read_conll(again);
  REQUIRE(back.size() == 2);
  CHECK(back[0].tokens == corpus[0].tokens);
  CHECK(back[1].labels == corpus[1].labels);
}

TEST_CASE("CoNLL tolerates CRLF and several blank lines") {
  std::istringstream in("a\tO\r\n\r\n\r\nb\tB-Claim\r\n");
  const auto corpus = read_conll(in);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[1].labels[0] == "B-Claim");
}

TEST_CASE("CoNLL rejects malformed lines") {
  std::istringstream no_tab("word O\n");
  CHECK_THROWS_AS(read_conll(no_tab), DataError);
  std::istringstream bad_tag("word\tX-Claim\n");
  CHECK_THROWS_AS(read_conll(bad_tag), DataError);
  CHECK_THROWS_AS(read_conll(std::filesystem::path("/nonexistent/file.conll")), DataError);
}
