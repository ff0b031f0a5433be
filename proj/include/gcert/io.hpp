#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gcert/certify.hpp"
#include "gcert/extension.hpp"
#include "gcert/growth.hpp"
#include "gcert/laws.hpp"
#include "gcert/stallings.hpp"

namespace gcert {

inline constexpr int kReportSchemaVersion = 1;

/// Group-spec file contents, words still in text form.
struct GroupSpec {
  struct Automorphism {
    std::vector<std::string> images;
    std::vector<std::string> inverse_images;
    friend bool operator==(const Automorphism&, const Automorphism&) = default;
  };
  struct Generator {
    std::string name;
    std::string word;
    std::vector<std::int64_t> shift;
    friend bool operator==(const Generator&, const Generator&) = default;
  };

  std::size_t kernel_rank = 0;
  std::vector<Automorphism> automorphisms;
  std::vector<Generator> generators;
  std::vector<std::string> laws;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Validated group, generating set and optional laws.
struct GroupModel {
  ExtensionGroup group;
  GeneratingSet generators;
  std::vector<GroupLaw> laws;
};

/// Throws InvalidSpec with a field path such as `generators[1].word`.
GroupSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const GroupSpec& spec);
GroupModel build_model(const GroupSpec& spec,
                       std::int64_t exponent_cap = kDefaultExponentCap);
/// Text form of a validated model, with words in canonical reduced form.
GroupSpec model_to_spec(const GroupModel& model);
/// Parses JSON text; syntax errors report line and column.
GroupSpec parse_spec_text(std::string_view text, std::string_view source_name = "<spec>");

nlohmann::json element_to_json(const ExtElement& x);
ExtElement element_from_json(const nlohmann::json& j, std::size_t kernel_rank);

nlohmann::json verdict_to_json(const Verdict& verdict, const GeneratingSet& t);
Verdict verdict_from_json(const nlohmann::json& j, const GeneratingSet& t,
                          std::size_t kernel_rank);
nlohmann::json trace_to_json(const SearchTrace& trace);
nlohmann::json census_to_json(const BallCensus& census);
nlohmann::json class_to_json(const SubgroupClass& cls);
nlohmann::json chain_to_json(const ChainReport& report);

/// 64-bit FNV-1a digest, hex encoded with an `fnv1a64:` prefix.
std::string input_digest(std::string_view bytes);

}  // namespace gcert
