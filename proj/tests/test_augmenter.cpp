#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <sstream>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <httplib.h>

#include "dmaug/augmenter.hpp"
#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"
#include "support.hpp"
#include "test_server.hpp"

using namespace dmaug;

namespace {

std::vector<std::string> texts(const std::vector<DmSlot>& slots) {
  std::vector<std::string> out;
  for (const auto& s : slots) out.push_back(s.text);
  return out;
}

std::vector<std::size_t> adu_starts(const std::vector<AduSpan>& adus) {
  std::vector<std::size_t> out;
  for (const auto& a : adus) out.push_back(a.start);
  return out;
}

RemoteOptions quick() {
  RemoteOptions o;
  o.timeout = std::chrono::milliseconds(2000);
  return o;
}

}  // namespace

TEST_CASE("rule augmenter leaves explicit slots and inserts the rest") {
  const auto p = support::four_adu_paragraph();
  const auto slots = gold_dms_left_context(p);
  const auto r = rule_based_augment(p, slots, DmPolicy{}, default_role_map(CorpusSchema::pec()), "fig");
  REQUIRE(r.inserted.size() == 4);
  CHECK(r.inserted[1].text.empty());
  CHECK(r.inserted[3].text.empty());
  CHECK_FALSE(r.inserted[0].text.empty());
  CHECK_FALSE(r.inserted[2].text.empty());
  const DmPolicy policy;
  // lone premise sentences take the lead set with a comma
  for (std::size_t k : {0u, 2u}) {
    const std::string dm = text::lower_first(r.inserted[k].text);
    CHECK(std::count(policy.support_lead_dms.begin(), policy.support_lead_dms.end(), dm) == 1);
  }
  CHECK(r.text().find("However, it may also harm") != std::string::npos);
  CHECK(r.text().find("In my opinion, cooperation") != std::string::npos);
  // the diff shows insertions only, and recovers them
  const auto diff = diff_predicted_dms(p.tokens, r.tokens, adu_starts(p.adus));
  CHECK(texts(diff) == texts(r.inserted));
  CHECK(project(p.tokens, p.labels(), r.tokens) == spans_to_bio(r.adus, r.tokens.size()));
}

TEST_CASE("rule augmenter: fully explicit paragraph is unchanged") {
  const auto p = support::annotate("Because it rains, I think that we stay.",
                                   {{"it rains", "Premise"}, {"we stay", "Claim"}});
  const auto r = rule_based_augment(p, gold_dms_left_context(p), DmPolicy{}, default_role_map(CorpusSchema::pec()),
                                    "k");
  CHECK(r.tokens == p.tokens);
  CHECK(r.adus == p.adus);
}

TEST_CASE("rule augmenter: subordinate slot and unknown label") {
  const auto p = support::annotate("It rains, we stay.", {{"It rains", "Premise"}, {"we stay", "Claim"}});
  const DmPolicy policy;
  const auto r = rule_based_augment(p, policy, default_role_map(CorpusSchema::pec()));
  const std::string first = text::lower_first(r.inserted[0].text);
  CHECK(std::count(policy.support_mid_dms.begin(), policy.support_mid_dms.end(), first) == 1);
  // mid-set DM opening a sentence takes no comma
  CHECK(r.tokens[tokenize(r.inserted[0].text).size()] != ",");
  CHECK(r.text().rfind(text::upper_first(r.inserted[0].text) + " it rains, ", 0) == 0);
  const auto bad = support::annotate("It rains.", {{"It rains", "Evidence"}});
  CHECK_THROWS_AS(rule_based_augment(bad, policy, default_role_map(CorpusSchema::pec())), DataError);
}

TEST_CASE("default role maps") {
  const auto pec = default_role_map(CorpusSchema::pec());
  CHECK(pec.at("MajorClaim") == RoleClass::claim);
  CHECK(pec.at("Premise") == RoleClass::support);
  CHECK(default_role_map(CorpusSchema::artificial()).at("Attack") == RoleClass::attack);
  CHECK(default_role_map(CorpusSchema::hotel()).at("Recommendation") == RoleClass::claim);
}

TEST_CASE("discovery pair preparation") {
  const DiscoveryPair d{
      "The survey shows that most riders leave their bikes at home when the forecast calls for rain.",
      "The new covered racks near the station offer a cheap way to keep commuters cycling all year.",
      "overall,"};
  const auto [in, out] = prepare_discovery_pair(d);
  CHECK(in == d.s1 + " " + d.s2);
  CHECK(out == d.s1 + " Overall, the new covered racks near the station offer a cheap way to keep commuters "
                      "cycling all year.");
  const auto [in2, out2] = prepare_discovery_pair({"It rained", "we stayed.", "So"});
  CHECK(in2 == "It rained. we stayed.");
  CHECK(out2 == "It rained. So we stayed.");
  CHECK(prepare_discovery_pair({"Really?!..", "Yes.", "indeed"}).first == "Really? Yes.");
  CHECK(prepare_discovery_pair({"NASA flew.", "NASA landed.", "then"}).second == "NASA flew. Then NASA landed.");
  CHECK_THROWS_AS(prepare_discovery_pair({"", "x", "y"}), DataError);
  CHECK_THROWS_AS(prepare_discovery_pair({"x", " ", "y"}), DataError);
  CHECK_THROWS_AS(prepare_discovery_pair({"x", "y", ""}), DataError);
  // round trip through the diff
  const auto in_t = tokenize(in);
  const std::size_t s2_start = tokenize(d.s1).size();
  const auto slots = diff_predicted_dms(in_t, tokenize(out), {s2_start});
  CHECK(texts(slots) == std::vector<std::string>{"Overall"});
  CHECK(prepare_discovery_pair(d) == prepare_discovery_pair(d));
}

TEST_CASE("PDTB-style preparation") {
  const std::string doc = "this is a pleasant rally but it's very selective";
  const auto start = doc.find("but");
  PdtbRecord r{doc, {{start, start + 3, "but"}}, {}};
  CHECK(prepare_pdtb_pairs(r).first == "this is a pleasant rally, it's very selective");
  CHECK(prepare_pdtb_pairs(r).second == doc);

  CHECK(prepare_pdtb_pairs({"However, prices rose.", {{0, 7, "However"}}, {}}).first == "Prices rose.");
  CHECK(prepare_pdtb_pairs({"Prices rose; however demand fell.", {{13, 20, "however"}}, {}}).first ==
        "Prices rose; demand fell.");
  CHECK(prepare_pdtb_pairs({"Prices rose, but demand fell.", {{13, 16, "but"}}, {}}).first ==
        "Prices rose, demand fell.");

  const PdtbRecord plain{"Nothing here.", {}, {}};
  CHECK(prepare_pdtb_pairs(plain) == std::make_pair(plain.text, plain.text));

  const std::string two = "Prices rose. Demand fell.";
  const PdtbRecord imp{two, {}, {{13, "in contrast,"}}};
  CHECK(prepare_pdtb_pairs(imp).second == "Prices rose. In contrast, demand fell.");
  const PdtbRecord mid{"Prices rose demand fell.", {}, {{12, "and"}}};
  CHECK(prepare_pdtb_pairs(mid).second == "Prices rose and demand fell.");

  CHECK_THROWS_AS(prepare_pdtb_pairs({"abc", {{1, 9, "x"}}, {}}), DataError);
  CHECK_THROWS_AS(prepare_pdtb_pairs({"abcdef", {{0, 3, "x"}, {2, 5, "y"}}, {}}), DataError);
  CHECK_THROWS_AS(prepare_pdtb_pairs({"abcdef", {{0, 3, "x"}}, {{1, "y"}}}), DataError);
}

TEST_CASE("training-pair readers") {
  std::istringstream tsv("s1\ts2\ty\nA b.\tC d.\tso\n");
  const auto pairs = read_discovery_tsv(tsv);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].y == "so");
  std::istringstream bad("only\ttwo\n");
  CHECK_THROWS_AS(read_discovery_tsv(bad), DataError);
  std::istringstream jl(
      R"({"text":"However, prices rose.","explicit":[{"start":0,"end":7,"connective":"However"}],"implicit":[]})"
      "\n\n");
  const auto docs = read_pdtb_jsonl(jl);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].explicit_dms[0].end == 7);
  std::istringstream badjl("{not json}\n");
  CHECK_THROWS_AS(read_pdtb_jsonl(badjl), DataError);
}

TEST_CASE("remote augmenter against a local service") {
  support::TestServer server;
  SUBCASE("echo round trip is byte-identical") {
    const RemoteAugmenter client(server.url(), quick());
    const std::string t = "Competition can promote the economy. \xE2\x80\x9CQuoted\xE2\x80\x9D caf\xC3\xA9.";
    CHECK(client.augment(t) == t);
    CHECK(client.augment(AugmentRequest{t, {0, 5}}) == t);
  }
  SUBCASE("path prefix") {
    CHECK(RemoteAugmenter(server.url("/prefixed"), quick()).augment("x") == "x");
    CHECK(RemoteAugmenter(server.url("/prefixed/"), quick()).augment("y") == "y");
  }
  SUBCASE("5xx is retried once then reported") {
    const RemoteAugmenter client(server.url("/status500"), quick());
    try {
      client.augment("x");
      FAIL("no error");
    } catch (const RemoteStatusError& e) {
      CHECK(e.status() == 500);
    }
    CHECK(server.hits == 2);
  }
  SUBCASE("a transient 503 recovers on retry") {
    CHECK(RemoteAugmenter(server.url("/flaky"), quick()).augment("ok") == "ok");
  }
  SUBCASE("4xx is not retried") {
    const RemoteAugmenter client(server.url("/status400"), quick());
    CHECK_THROWS_AS(client.augment("x"), RemoteStatusError);
    CHECK(server.hits == 1);
  }
  SUBCASE("malformed bodies") {
    CHECK_THROWS_AS(RemoteAugmenter(server.url("/malformed"), quick()).augment("x"), RemoteMalformedResponse);
    CHECK_THROWS_AS(RemoteAugmenter(server.url("/notjson"), quick()).augment("x"), RemoteMalformedResponse);
  }
  SUBCASE("timeout") {
    RemoteOptions o;
    o.timeout = std::chrono::milliseconds(150);
    o.retries = 0;
    CHECK_THROWS_AS(RemoteAugmenter(server.url("/slow"), o).augment("x"), RemoteTimeoutError);
  }
  SUBCASE("batch keeps input order and isolates failures") {
    RemoteOptions o = quick();
    o.max_in_flight = 3;
    const RemoteAugmenter client(server.url("/upper"), o);
    std::vector<std::string> in;
    for (int i = 0; i < 20; ++i) in.push_back("text " + std::to_string(i));
    const auto out = client.augment_batch(in);
    REQUIRE(out.size() == in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      REQUIRE(out[i].text.has_value());
      CHECK(*out[i].text == "TEXT " + std::to_string(i));
    }
    const auto failed = RemoteAugmenter(server.url("/status400"), o).augment_batch({"a", "b"});
    CHECK_FALSE(failed[0].text.has_value());
    CHECK_FALSE(failed[1].error.empty());
  }
}

TEST_CASE("remote augmenter: unreachable endpoint and bad URLs") {
  // bind then close a port so nothing listens there
  int port = 0;
  {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    port = ntohs(addr.sin_port);
    ::close(fd);
  }
  RemoteOptions o;
  o.timeout = std::chrono::milliseconds(500);
  const RemoteAugmenter client("http://127.0.0.1:" + std::to_string(port), o);
  CHECK_THROWS_AS(client.augment("x"), RemoteConnectionError);
  CHECK_THROWS_AS(RemoteAugmenter("not a url"), std::invalid_argument);
  CHECK_THROWS_AS(RemoteAugmenter("ftp://host:1"), std::invalid_argument);
}
