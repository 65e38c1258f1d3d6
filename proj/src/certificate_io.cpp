#include "momext/certificate_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace momext {

namespace {

using Json = nlohmann::ordered_json;

Json partition_to_json(const Partition& l) {
  Json arr = Json::array();
  for (int part : l.parts()) arr.push_back(part);
  return arr;
}

}  // namespace

std::string certificate_to_json(const MatchingCertificate& cert) {
  Json j;
  j["schema_version"] = cert.schema_version;
  j["d"] = cert.d;
  j["q"] = cert.q;
  j["A"] = rational_str(cert.a);
  Json partitions = Json::array();
  for (const Partition& l : cert.partitions) partitions.push_back(partition_to_json(l));
  j["partitions"] = std::move(partitions);
  Json omega = Json::array();
  for (const Rational& w : cert.omega) omega.push_back(rational_str(w));
  j["omega"] = std::move(omega);
  j["N_indices"] = cert.n_indices;
  j["P_indices"] = cert.p_indices;
  Json tau = Json::array();
  for (const TauEntry& entry : cert.tau) {
    Json e;
    e["n"] = entry.n;
    e["p"] = entry.p;
    e["value"] = rational_str(entry.value);
    tau.push_back(std::move(e));
  }
  j["tau"] = std::move(tau);
  j["generator"] = Json{{"method", cert.method}, {"version", cert.generator_version}};
  return j.dump(2) + "\n";
}

MatchingCertificate certificate_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw CertificateFormatError(std::string("not valid JSON: ") + e.what());
  }

  MatchingCertificate cert;
  try {
    cert.schema_version = j.at("schema_version").get<int>();
    if (cert.schema_version != 1)
      throw CertificateFormatError("unsupported schema_version " +
                                   std::to_string(cert.schema_version));
    cert.d = j.at("d").get<int>();
    cert.q = j.at("q").get<long>();
    if (cert.d < 2 || cert.d > 64) throw CertificateFormatError("d out of range");
    if (cert.q <= cert.d) throw CertificateFormatError("q must exceed d");
    cert.a = parse_rational(j.at("A").get<std::string>());

    for (const Json& row : j.at("partitions")) {
      std::vector<int> parts;
      for (const Json& part : row) parts.push_back(part.get<int>());
      if (static_cast<int>(parts.size()) != cert.d)
        throw CertificateFormatError("partition entry length does not match d");
      cert.partitions.emplace_back(std::move(parts));
    }
    for (const Json& w : j.at("omega")) cert.omega.push_back(parse_rational(w.get<std::string>()));
    cert.n_indices = j.at("N_indices").get<std::vector<std::size_t>>();
    cert.p_indices = j.at("P_indices").get<std::vector<std::size_t>>();
    for (const Json& entry : j.at("tau")) {
      TauEntry t;
      t.n = entry.at("n").get<std::size_t>();
      t.p = entry.at("p").get<std::size_t>();
      t.value = parse_rational(entry.at("value").get<std::string>());
      cert.tau.push_back(std::move(t));
    }
    cert.method = j.at("generator").at("method").get<std::string>();
    cert.generator_version = j.at("generator").at("version").get<std::string>();
  } catch (const CertificateFormatError&) {
    throw;
  } catch (const Json::exception& e) {
    throw CertificateFormatError(std::string("missing or mistyped field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CertificateFormatError(std::string("bad value: ") + e.what());
  }

  if (cert.omega.size() != cert.partitions.size())
    throw CertificateFormatError("omega length does not match the partition list");
  for (std::size_t idx : cert.n_indices)
    if (idx >= cert.partitions.size()) throw CertificateFormatError("N index out of range");
  for (std::size_t idx : cert.p_indices)
    if (idx >= cert.partitions.size()) throw CertificateFormatError("P index out of range");
  for (const TauEntry& entry : cert.tau)
    if (entry.n >= cert.partitions.size() || entry.p >= cert.partitions.size())
      throw CertificateFormatError("tau index out of range");
  return cert;
}

void write_certificate_file(const std::string& path, const MatchingCertificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << certificate_to_json(cert);
  if (!out) throw std::runtime_error("failed writing " + path);
}

MatchingCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CertificateFormatError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return certificate_from_json(buffer.str());
}

}  // namespace momext
