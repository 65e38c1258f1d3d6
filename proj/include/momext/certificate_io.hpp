#pragma once

#include <stdexcept>
#include <string>

#include "momext/hall_matching.hpp"

namespace momext {

// Raised when a certificate file is structurally unusable: not JSON, missing
// or mistyped fields, unparsable rationals, or array lengths inconsistent
// with the (d,q) header. Distinct from a well-formed certificate whose
// numbers are wrong.
struct CertificateFormatError : std::runtime_error {
  explicit CertificateFormatError(const std::string& what) : std::runtime_error(what) {}
};

std::string certificate_to_json(const MatchingCertificate& cert);
MatchingCertificate certificate_from_json(const std::string& text);

void write_certificate_file(const std::string& path, const MatchingCertificate& cert);
MatchingCertificate read_certificate_file(const std::string& path);

}  // namespace momext
