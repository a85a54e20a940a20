#pragma once

#include <string>

#include <json.hpp>

#include "rdil/dilation.hpp"
#include "rdil/fock.hpp"
#include "rdil/polynomial.hpp"
#include "rdil/representation.hpp"

// File formats.  Complex scalars are [re, im] pairs throughout.
//
//   product system: { "k": int, "dims": [int...],
//                     "twists": { "i,j": [[[re,im],...],...], ... } }
//     with i > j keys only; a missing twist is the perfect shuffle.
//   representation: { "h": int, "blocks": [ [h x h matrix, ...], ... ] }
//   polynomial:     { "terms": [ { "coef": [re,im], "word": [[i,l],...] } ] }

namespace rdil {

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const ProductSystem& sys);
ProductSystem system_from_json(const nlohmann::json& j);
ProductSystem load_system(const std::string& path);
void save_system(const ProductSystem& sys, const std::string& path);

nlohmann::json representation_to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j, ProductSystem sys);
Representation load_representation(const std::string& path, ProductSystem sys);
void save_representation(const Representation& rep, const std::string& path);

nlohmann::json polynomial_to_json(const NcPolynomial& p);
NcPolynomial polynomial_from_json(const nlohmann::json& j);
NcPolynomial load_polynomial(const std::string& path);

// Report serialization (documented schemas; all round-trip through JSON).
nlohmann::json validation_to_json(const ValidationReport& r);
nlohmann::json dc_report_to_json(const DoublyCommutingReport& r);
nlohmann::json brehmer_to_json(const BrehmerCertificate& c);
nlohmann::json comp_residuals_to_json(const CompIdentityResiduals& r);
nlohmann::json vn_report_to_json(const VnReport& r, const NcPolynomial& p);
nlohmann::json dilation_report_to_json(const TruncatedDilation& dil,
                                       const DilationVerification& ver,
                                       const BrehmerCertificate& cert,
                                       const CompIdentityResiduals& comp,
                                       const std::vector<Index>& rank_profile);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace rdil
