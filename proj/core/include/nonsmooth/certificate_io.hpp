#pragma once

// JSON form of a certificate:
//
//   p, manifold{b2_plus,b2_minus,spin}, config{m,m_prime,r,s},
//   cp2_weights, cp2bar_weights, s4_weights (integer arrays),
//   matching (index pairs into enumerate_fixed_points order),
//   index{dim,sum_alpha,sum_alpha_prime}, verdict, orientation_flipped,
//   digest
//
// The digest is the lowercase hex SHA-256 of the compact, key-sorted JSON
// of every other field.

#include "nonsmooth/obstruction.hpp"

#include <string>
#include <string_view>

namespace nonsmooth {

std::string certificate_to_json(const Certificate& cert, int indent = 2);

/// Parses without validating weights or claims; that is verify_certificate's
/// job. Throws Error(Malformed) on syntax or schema errors and
/// Error(NotPrime) when p is not a prime >= 5.
Certificate certificate_from_json(std::string_view text);

std::string compute_digest(const Certificate& cert);

/// Sets cert.digest from the current contents.
void seal(Certificate& cert);

/// Parse then verify. A document that does not parse is rejected with a
/// diagnostic instead of throwing.
VerificationResult verify_certificate_json(std::string_view text);

/// Configuration files share the certificate's field names: p, manifold,
/// config, cp2_weights, cp2bar_weights, s4_weights.
struct ConfigurationFile {
    ManifoldInvariants manifold;
    ActionConfiguration config;
};

ConfigurationFile configuration_from_json(std::string_view text);
std::string configuration_to_json(const ManifoldInvariants& x, const ActionConfiguration& cfg,
                                  int indent = 2);

}  // namespace nonsmooth
