#include <doctest.h>

#include <random>
#include <set>

#include "zsum/builder.hpp"
#include "zsum/certificate_json.hpp"

using namespace zsum;

namespace {

InputSequence seq(std::size_t id, std::vector<Value> terms) { return {id, std::move(terms)}; }

std::vector<Value> range_terms(Value from, Value to, Value step = 1) {
  std::vector<Value> out;
  for (Value v = from; v <= to; v += step) out.push_back(v);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::Internal;
}

// Chain sums by explicit enumeration of (skip | j) choices per level.
std::set<Value> brute_chain_sums(const ConfigCertificate& cert, std::size_t upto) {
  std::set<Value> out;
  std::vector<std::size_t> choice(upto, 0);
  for (;;) {
    std::size_t pos = 0;
    while (pos < upto && choice[pos] == cert.m) choice[pos++] = 0;
    if (pos == upto) break;
    ++choice[pos];
    std::set<Value> sums{0};
    for (std::size_t lvl = 0; lvl < upto; ++lvl) {
      if (choice[lvl] == 0) continue;
      const Block* b = cert.find(lvl + 1, choice[lvl]);
      std::set<Value> next;
      for (auto s : sums) {
        for (auto v : b->values) next.insert(s + v + b->z);
      }
      sums = next;
    }
    out.insert(sums.begin(), sums.end());
  }
  return out;
}

}  // namespace

TEST_SUITE("builder") {
  TEST_CASE("single sequence, mod 3, two levels") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 30))};
    const auto surrogate = CentralSurrogate::modulus_oracle(3);
    const auto cert = build_configuration(s, Modulus(2), surrogate, 2);
    REQUIRE(cert.blocks.size() == 2);

    // level 1 agrees with translate_into_core on {1..9}: x = 1, the t = 1 class is {1, 4, 7}
    const Block& b1 = *cert.find(1, 1);
    CHECK(b1.indices == std::vector<std::size_t>{0, 6});
    CHECK(b1.values == std::vector<Value>{1, 7});
    CHECK(b1.z == 2);
    const Block& b2 = *cert.find(2, 1);
    CHECK(b2.indices == std::vector<std::size_t>{9, 15});
    CHECK(b2.values == std::vector<Value>{10, 16});
    CHECK(b2.z == 2);
    for (const auto& b : cert.blocks) {
      CHECK((b.values[0] + b.values[1]) % 2 == 0);
      for (auto v : b.values) CHECK((v + b.z) % 3 == 0);
    }

    const auto report = verify_certificate(s, cert, base_set(cert.surrogate));
    CHECK(report.valid());
    CHECK(report.visited == 3);

    const auto z = enumerate_chain_sums(cert, 2);
    CHECK(z == std::vector<Value>{3, 9, 12, 15, 18, 21, 27});
    CHECK(z.size() <= 8);
  }

  TEST_CASE("modulus one accepts a constant sequence") {
    const std::vector<InputSequence> s{seq(1, std::vector<Value>(5, 3))};
    const auto cert = build_configuration(s, Modulus(3), CentralSurrogate::modulus_oracle(1), 1);
    const Block& b = *cert.find(1, 1);
    CHECK(b.indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(b.values == std::vector<Value>{3, 3, 3});
    CHECK(b.z == 2);
    CHECK(verify_certificate(s, cert, base_set(cert.surrogate)).valid());
    CHECK(enumerate_chain_sums(cert, 1) == std::vector<Value>{5});
  }

  TEST_CASE("two sequences, three levels") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 18)), seq(2, range_terms(2, 36, 2))};
    const auto cert = build_configuration(s, Modulus(2), CentralSurrogate::modulus_oracle(2), 3);
    const auto report = verify_certificate(s, cert, base_set(cert.surrogate));
    CHECK(report.valid());
    CHECK(report.visited == 26);
    CHECK(report.expected == 26);

    const auto z = enumerate_chain_sums(cert, 3);
    for (auto v : z) CHECK(v % 2 == 0);
    const auto brute = brute_chain_sums(cert, 3);
    CHECK(std::vector<Value>(brute.begin(), brute.end()) == z);
  }

  TEST_CASE("chain count formula") {
    CHECK(expected_chain_count(1, 2) == 3);
    CHECK(expected_chain_count(2, 3) == 26);
    CHECK(expected_chain_count(3, 5) == 1023);
  }

  TEST_CASE("builder errors") {
    const std::vector<InputSequence> short_seq{seq(1, range_terms(1, 17))};
    CHECK(kind_of([&] { build_configuration(short_seq, Modulus(2), CentralSurrogate::modulus_oracle(3), 2); }) ==
          ErrorKind::InsufficientElements);

    const std::vector<InputSequence> bad_ids{seq(2, range_terms(1, 30))};
    CHECK(kind_of([&] { build_configuration(bad_ids, Modulus(2), CentralSurrogate::modulus_oracle(3), 1); }) ==
          ErrorKind::InvalidArgument);

    // consecutive fresh terms cannot dodge the supports used at level 1 with G = {1}
    const std::vector<InputSequence> s{seq(1, range_terms(1, 9))};
    CHECK(kind_of([&] { build_configuration(s, Modulus(2), CentralSurrogate::ip_oracle({1, 2, 4, 8, 16}), 2); }) ==
          ErrorKind::TranslationNotFound);

    const std::vector<InputSequence> big{seq(1, range_terms(1, 300)), seq(2, range_terms(1, 300))};
    CHECK(kind_of([&] { build_configuration(big, Modulus(4), CentralSurrogate::modulus_oracle(1), 8, 1000); }) ==
          ErrorKind::BudgetExceeded);
  }

  TEST_CASE("IP surrogate builds a verifying level when translations exist") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 48))};
    const auto ip = CentralSurrogate::ip_oracle({1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}, 8);
    const auto cert = build_configuration(s, Modulus(2), ip, 2);
    const auto report = verify_certificate(s, cert, base_set(cert.surrogate));
    CHECK(report.valid());
    CHECK(report.visited == 3);
  }

  TEST_CASE("verifier rejects tampering") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 18)), seq(2, range_terms(2, 36, 2))};
    const auto cert = build_configuration(s, Modulus(2), CentralSurrogate::modulus_oracle(2), 3);
    const auto in_b = base_set(cert.surrogate);

    SUBCASE("value incremented") {
      auto bad = cert;
      bad.blocks[0].values[0] += 1;
      const auto r = verify_certificate(s, bad, in_b);
      CHECK_FALSE(r.valid());
      CHECK(r.first_violation() == Clause::ValueMismatch);
      bool congruence = false;
      for (const auto& f : r.failures) congruence = congruence || f.clause == Clause::Congruence;
      CHECK(congruence);
      CHECK_FALSE(r.chain_failures.empty());
    }
    SUBCASE("shared index across levels") {
      auto bad = cert;
      Block& top = bad.blocks.back();
      const Block& first = *bad.find(1, top.seq);
      top.indices[0] = first.indices[0];
      top.values[0] = first.values[0];
      const auto r = verify_certificate(s, bad, in_b);
      CHECK_FALSE(r.valid());
      bool disjoint = false;
      for (const auto& f : r.failures) disjoint = disjoint || f.clause == Clause::Disjointness;
      CHECK(disjoint);
    }
    SUBCASE("translate moved") {
      auto bad = cert;
      bad.blocks[1].z += 1;
      const auto r = verify_certificate(s, bad, in_b);
      CHECK(r.failures.empty());
      CHECK(r.first_violation() == Clause::ChainMembership);
      CHECK(r.chain_failures.size() == 9);  // every chain through block (1, 2): 3 * 3
    }
    SUBCASE("missing block") {
      auto bad = cert;
      bad.blocks.pop_back();
      const auto r = verify_certificate(s, bad, in_b);
      CHECK(r.first_violation() == Clause::Shape);
      CHECK(r.visited == 0);
    }
    SUBCASE("wrong sequences") {
      auto other = s;
      other[1].terms[0] += 1;
      CHECK(kind_of([&] { verify_certificate(other, cert, in_b); }) == ErrorKind::FingerprintMismatch);
      CHECK(kind_of([&] { verify_certificate(std::span(s).first(1), cert, in_b); }) ==
            ErrorKind::FingerprintMismatch);
    }
  }

  TEST_CASE("soundness and truncation over random inputs") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
      const std::uint64_t n = 1 + rng() % 4;
      const std::uint64_t d = 1 + rng() % 5;
      const std::size_t m = 1 + rng() % 3;
      const std::size_t levels = 1 + rng() % 3;
      const auto surrogate = CentralSurrogate::modulus_oracle(d);
      std::vector<InputSequence> s;
      for (std::size_t j = 1; j <= m; ++j) {
        std::vector<Value> terms(levels * (2 * n - 1) * d + rng() % 5);
        for (auto& t : terms) t = rng() % 10'000;
        s.push_back(seq(j, terms));
      }
      auto cert = build_configuration(s, Modulus(n), surrogate, levels);
      const auto in_b = base_set(cert.surrogate);
      auto report = verify_certificate(s, cert, in_b);
      REQUIRE(report.valid());
      CHECK(report.visited == expected_chain_count(m, levels));
      for (auto v : enumerate_chain_sums(cert, levels)) REQUIRE(v % d == 0);
      while (cert.levels > 1) {
        cert = truncate_top_level(cert);
        report = verify_certificate(s, cert, in_b);
        REQUIRE(report.valid());
        CHECK(report.visited == expected_chain_count(m, cert.levels));
      }
    }
  }

  TEST_CASE("certificate JSON round trip") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 30))};
    const auto cert = build_configuration(s, Modulus(2), CentralSurrogate::modulus_oracle(3), 2);
    const auto text = serialize_certificate(cert);
    CHECK(parse_certificate(text) == cert);
    CHECK(text.rfind("{\"L\":\"2\",\"blocks\":[{\"indices\":[\"0\",\"6\"],\"level\":\"1\",\"seq\":\"1\","
                     "\"values\":[\"1\",\"7\"],\"z\":\"2\"}",
                     0) == 0);
    CHECK(text.find("\"surrogate\":\"mod:3\",\"version\":\"1\"}") != std::string::npos);
    CHECK(serialize_certificate(parse_certificate(text)) == text);

    const auto big = Value{1} << 60;
    auto wide = cert;
    wide.blocks[0].z = big;
    CHECK(parse_certificate(serialize_certificate(wide)).blocks[0].z == big);
  }

  TEST_CASE("certificate JSON rejects malformed input") {
    const std::vector<InputSequence> s{seq(1, range_terms(1, 30))};
    const auto good = certificate_to_json(build_configuration(s, Modulus(2), CentralSurrogate::modulus_oracle(3), 1));
    auto expect_bad = [](const nlohmann::json& doc) {
      CHECK(kind_of([&] { certificate_from_json(doc); }) == ErrorKind::InvalidArgument);
    };
    auto doc = good;
    doc["n"] = 2;  // number, not decimal string
    expect_bad(doc);
    doc = good;
    doc["n"] = "0";
    expect_bad(doc);
    doc = good;
    doc["version"] = "2";
    expect_bad(doc);
    doc = good;
    doc.erase("blocks");
    expect_bad(doc);
    doc = good;
    doc["blocks"][0]["z"] = "-1";
    expect_bad(doc);
    doc = good;
    doc["blocks"][0]["z"] = "18446744073709551616";
    expect_bad(doc);
    CHECK(kind_of([] { parse_certificate("{not json"); }) == ErrorKind::InvalidArgument);
  }
}
