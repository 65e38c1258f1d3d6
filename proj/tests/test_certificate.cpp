#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "momext/certificate_io.hpp"

using namespace momext;

namespace {

MatchingCertificate sample_certificate(int d, long q) {
  const PartitionPoset poset(d);
  const WeightTable table = WeightTable::build(poset, q);
  const BipartiteInstance inst = BipartiteInstance::from_table(table, poset);
  MatchingCertificate cert = construct_certificate(inst, table, poset);
  cert.generator_version = "test";
  return cert;
}

}  // namespace

TEST_CASE("json round trip preserves every field") {
  const MatchingCertificate cert = sample_certificate(5, 7);
  const std::string text = certificate_to_json(cert);
  const MatchingCertificate back = certificate_from_json(text);

  CHECK(back.schema_version == cert.schema_version);
  CHECK(back.d == cert.d);
  CHECK(back.q == cert.q);
  CHECK(back.a == cert.a);
  REQUIRE(back.partitions.size() == cert.partitions.size());
  for (std::size_t i = 0; i < cert.partitions.size(); ++i)
    CHECK(back.partitions[i] == cert.partitions[i]);
  CHECK(back.omega == cert.omega);
  CHECK(back.n_indices == cert.n_indices);
  CHECK(back.p_indices == cert.p_indices);
  REQUIRE(back.tau.size() == cert.tau.size());
  for (std::size_t i = 0; i < cert.tau.size(); ++i) {
    CHECK(back.tau[i].n == cert.tau[i].n);
    CHECK(back.tau[i].p == cert.tau[i].p);
    CHECK(back.tau[i].value == cert.tau[i].value);
  }
  CHECK(back.method == cert.method);
  CHECK(back.generator_version == cert.generator_version);

  // round-tripped certificate still verifies against a fresh table
  const WeightTable table = WeightTable::build(5, 7);
  CHECK(verify_certificate(back, table));
}

TEST_CASE("file round trip") {
  const std::string path = "/tmp/momext_test_cert.json";
  const MatchingCertificate cert = sample_certificate(4, 6);
  write_certificate_file(path, cert);
  const MatchingCertificate back = read_certificate_file(path);
  CHECK(back.d == 4);
  CHECK(back.q == 6);
  CHECK(verify_certificate(back, WeightTable::build(4, 6)));
  std::remove(path.c_str());
}

TEST_CASE("malformed inputs raise format errors") {
  CHECK_THROWS_AS(certificate_from_json("not json at all"), CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json("{}"), CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json(R"({"schema_version": 2})"), CertificateFormatError);
  CHECK_THROWS_AS(read_certificate_file("/nonexistent/path.cert"), CertificateFormatError);

  const std::string good = certificate_to_json(sample_certificate(3, 7));

  SUBCASE("missing field") {
    std::string text = good;
    const auto pos = text.find("\"omega\"");
    text.replace(pos, 7, "\"other\"");
    CHECK_THROWS_AS(certificate_from_json(text), CertificateFormatError);
  }
  SUBCASE("unparsable rational") {
    std::string text = good;
    const auto pos = text.find("235/49");
    text.replace(pos, 6, "banana");
    CHECK_THROWS_AS(certificate_from_json(text), CertificateFormatError);
  }
  SUBCASE("q below d") {
    std::string text = good;
    const auto pos = text.find("\"q\": 7");
    text.replace(pos, 6, "\"q\": 2");
    CHECK_THROWS_AS(certificate_from_json(text), CertificateFormatError);
  }
  SUBCASE("partition entry of the wrong length") {
    std::string text = good;
    const auto pos = text.find("\"d\": 3");
    text.replace(pos, 6, "\"d\": 4");
    CHECK_THROWS_AS(certificate_from_json(text), CertificateFormatError);
  }
}

TEST_CASE("parsed tau with an out-of-range index is rejected at parse time") {
  std::string text = certificate_to_json(sample_certificate(3, 7));
  const auto pos = text.find("\"n\": 2");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "\"n\": 9");
  CHECK_THROWS_AS(certificate_from_json(text), CertificateFormatError);
}
