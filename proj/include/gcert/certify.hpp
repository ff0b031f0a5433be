#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gcert/extension.hpp"
#include "gcert/laws.hpp"
#include "gcert/stallings.hpp"

namespace gcert {

/// Two kernel elements that freely generate a rank-2 free subgroup, with
/// their expressions over T. A rank-2 free subgroup on words of T-length at
/// most N gives B_{nN} >= 3^n, hence entropy at least ln(3)/N.
struct FreeBasis {
  ExtElement u;
  ExtElement v;
  Word u_expr;  // word over T (rank |T|)
  Word v_expr;
  std::size_t t_length_u = 0;
  std::size_t t_length_v = 0;
  double entropy_lower = 0.0;

  std::size_t max_t_length() const { return std::max(t_length_u, t_length_v); }
  friend bool operator==(const FreeBasis&, const FreeBasis&) = default;
};

enum class LawStructure { Abelian, CyclicByAbelian, MetabelianNormalClosure };
std::string to_string(LawStructure s);
LawStructure parse_law_structure(std::string_view text);

struct LawCertificate {
  GroupLaw law;
  LawStructure structure = LawStructure::Abelian;
  /// Generator of the maximal cyclic kernel subgroup normalised by <T>.
  std::optional<Word> normal_generator;

  bool degenerate() const { return law.is_degenerate(); }
  friend bool operator==(const LawCertificate&, const LawCertificate&) = default;
};

using Verdict = std::variant<FreeBasis, LawCertificate>;

struct TraceEvent {
  std::string step;
  std::string detail;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SearchTrace {
  std::vector<TraceEvent> events;
  void add(std::string step, std::string detail) {
    events.push_back({std::move(step), std::move(detail)});
  }
  friend bool operator==(const SearchTrace&, const SearchTrace&) = default;
};

struct Certification {
  Verdict verdict;
  SearchTrace trace;
};

struct CertifyOptions {
  std::size_t verify_radius = 3;
  std::size_t element_cap = kDefaultElementCap;
};

/// For <T> inside F_n x| Z^d: either two words of T-length at most 6 that
/// freely generate a free group, or a law satisfied by <T>.
Certification two_free_certify(const ExtensionGroup& group, const GeneratingSet& t,
                               const CertifyOptions& options = {});

/// Same dichotomy driven by the values of `law` on T-tuples instead of
/// commutators. Requires the images of T in Z^d to satisfy `law`; throws
/// QuotientLawFails otherwise.
///
/// Free bases have T-length at most |law| + 2. When the law values stay
/// abelian under conjugation the certificate law is [law(x), law(y)].
/// If that analysis is inconclusive (law values on generator tuples need
/// not generate the verbal subgroup) the commutator dichotomy decides, and
/// the trace records the fallback.
Certification law_certify_general(const ExtensionGroup& group, const GeneratingSet& t,
                                  const GroupLaw& law, const CertifyOptions& options = {});

enum class ChainOutcome { NonAbelian, StabilizedCyclic, StabilizedTrivial };
std::string to_string(ChainOutcome o);

struct ChainReport {
  std::size_t k_stop = 0;
  std::vector<SubgroupClass> class_at_each_level;
  ChainOutcome outcome = ChainOutcome::StabilizedTrivial;
};

/// U_k = subgroup generated by the conjugates of W by T-words of length at
/// most k. Stops at the first non-abelian U_k or the first k with
/// U_k = U_{k+1}; throws CapExceeded when neither happens by max_k.
ChainReport iterated_chain(const ExtensionGroup& group, const GeneratingSet& t,
                           std::span<const ExtElement> w, std::size_t max_k);

/// Re-expresses a free basis found for an image generating set over a
/// source generating set with the same generator names, and re-verifies it
/// in the source group.
FreeBasis lift_basis(const ExtensionGroup& source, const GeneratingSet& source_t,
                     const GeneratingSet& image_t, const FreeBasis& image_basis);

/// Independent checks run on every verdict. Throw VerificationFailed.
void verify_free_basis(const ExtensionGroup& group, const GeneratingSet& t,
                       const FreeBasis& basis);
void verify_law_certificate(const ExtensionGroup& group, const GeneratingSet& t,
                            const LawCertificate& cert, const CertifyOptions& options);

double entropy_lower_bound(std::size_t max_t_length);

}  // namespace gcert
