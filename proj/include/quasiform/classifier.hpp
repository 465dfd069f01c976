#pragma once

#include <string>
#include <vector>

#include "quasiform/certificates.hpp"

namespace quasiform {

enum class Verdict { NotQuasiconvex, Polyconvex, Extremal, RankOnePlusExtremal, ConjecturedNotExtremal, Unresolved };

enum class DetCase { ExtremalNotSquare, IdenticallyZero, ExtremalPerfectSquare, NotExtremal, Unknown };

const char* to_string(Verdict v);
const char* to_string(DetCase c);

/// Names of the results a verdict rests on.
namespace basis {
inline constexpr const char* kQuasiconvexityGate = "quasiconvexity_gate";
inline constexpr const char* kIrreducibleExtremalDet = "irreducible_extremal_det";
inline constexpr const char* kExtremalDetNotSquare = "extremal_det_not_square";
inline constexpr const char* kZeroDetDichotomy = "zero_det_dichotomy";
inline constexpr const char* kSquareDetTrichotomy = "square_det_trichotomy";
inline constexpr const char* kConjecturalNonExtremalDet = "conjectural_non_extremal_det (conjecture, not a proof)";
inline constexpr const char* kGramCertificate = "gram_certificate";
}  // namespace basis

struct ClassificationReport {
  Verdict verdict = Verdict::Unresolved;
  DetCase det_case = DetCase::Unknown;
  std::string theorem_basis;
  std::vector<std::string> gate_flags;
  std::vector<Certificate> evidence;
  HomPoly determinant;
  std::optional<HomPoly> determinant_root;
  std::string note;
  CertifyOptions options;
};

json to_json(const ClassificationReport& r);

/// Routes a 3x3 form through the determinant-based decision tree.
ClassificationReport classify(const QuadFormTensor& f, const CertifyOptions& options = {});

/// Any d: quasiconvexity gate and determinant only. When the caller asserts
/// that det T is an irreducible extremal polynomial, a quasiconvex f is
/// reported Extremal on that basis (the assertion itself is not checked).
ClassificationReport classify_generic(const QuadFormTensor& f, bool assert_irreducible_extremal_det,
                                      const CertifyOptions& options = {});

struct EquivalenceReport {
  int trials = 0;
  int reflexive_failures = 0;
  int symmetric_failures = 0;
  int transitive_failures = 0;
  bool passed() const { return reflexive_failures == 0 && symmetric_failures == 0 && transitive_failures == 0; }
};

json to_json(const EquivalenceReport& r);

/// Property run for equivalence_transform on random nonsingular rational matrices.
EquivalenceReport equivalence_suite(const HomPoly& p, int trials, std::uint64_t seed = 0);

}  // namespace quasiform
