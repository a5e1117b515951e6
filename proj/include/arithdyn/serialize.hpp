#ifndef ARITHDYN_SERIALIZE_HPP
#define ARITHDYN_SERIALIZE_HPP

#include <string>
#include <vector>

#include "arithdyn/canonical.hpp"
#include "arithdyn/certify.hpp"
#include "arithdyn/elliptic.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/quad_affine.hpp"

namespace arithdyn {

inline constexpr const char* kCertificateSchema = "arithdyn.cert/1";
inline constexpr const char* kToolVersion = "1.0.0";

// A family of points with maximal arithmetic degree and the exact data that
// proves it. All exact numbers are decimal strings; see docs/certificate.md.
//
// subject.kind:
//   "map"         definition, cofactors           (height-ratio, prime-degree)
//   "normal-form" form, params, p                 (padic-invariant)
//   "case3"       definition, p                   (padic-invariant)
//   "elliptic"    curve, m, translation, x0, b    (padic-invariant)
struct CertificateDocument {
  Json subject;
  FamilyResult family;
  Json reproduction;
};

Json family_to_json(const FamilyResult& f);
FamilyResult family_from_json(const Json& j);

Json document_to_json(const CertificateDocument& doc);
CertificateDocument document_from_json(const Json& j);
// Sorted keys, two-space indent, trailing newline: byte-identical for equal
// documents.
std::string dump_document(const CertificateDocument& doc);
CertificateDocument load_document(const std::string& text);

Json cofactors_to_json(const Cofactors& c);
Cofactors cofactors_from_json(const Json& j, const std::vector<std::string>& vars);

Json map_subject(const MapDefinition& def, const MorphismCertificate& cert);
Json normal_form_subject(const NormalFormQuadratic& nf, const Integer& p);
Json case3_subject(const MapDefinition& def, const Integer& p);
Json elliptic_subject(const CurveDefinition& curve, const ECDynamics& dyn, const ECPoint& x0, const ECPoint& b);

Json ec_point_json(const ECPoint& P);
ECPoint ec_point_from_json(const Json& j);

// Re-checks every certificate against the subject: cofactor identities,
// enclosures recomputed at the recorded depths (exact match), recorded
// iterates, pushforward degrees, valuations and avoided polynomials.
// Nothing is searched for.
VerifyOutcome verify_document(const CertificateDocument& doc);

}  // namespace arithdyn

#endif
