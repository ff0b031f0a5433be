#include "gcert/io.hpp"

#include <cmath>
#include <cstdio>

#include "gcert/error.hpp"

namespace gcert {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::InvalidSpec, path + ": " + why);
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) invalid(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) invalid(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) invalid(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

// Re-raises library errors with the field path prefixed.
template <typename F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidSpec) throw;
    invalid(path, e.what());
  }
}

}  // namespace

GroupSpec spec_from_json(const json& j) {
  GroupSpec spec;
  const json& rank = require(j, "", "kernel_rank");
  if (!rank.is_number_unsigned() && !(rank.is_number_integer() && rank.get<long long>() >= 0)) {
    invalid("kernel_rank", "expected a non-negative integer");
  }
  spec.kernel_rank = rank.get<std::size_t>();

  if (auto it = j.find("automorphisms"); it != j.end()) {
    if (!it->is_array()) invalid("automorphisms", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "automorphisms[" + std::to_string(i) + "]";
      const json& a = (*it)[i];
      GroupSpec::Automorphism aut;
      aut.images = string_list(require(a, path, "images"), join(path, "images"));
      aut.inverse_images =
          string_list(require(a, path, "inverse_images"), join(path, "inverse_images"));
      spec.automorphisms.push_back(std::move(aut));
    }
  }

  const json& gens = require(j, "", "generators");
  if (!gens.is_array()) invalid("generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    GroupSpec::Generator gen;
    const json& name = require(g, path, "name");
    if (!name.is_string()) invalid(join(path, "name"), "expected a string");
    gen.name = name.get<std::string>();
    const json& word = require(g, path, "word");
    if (!word.is_string()) invalid(join(path, "word"), "expected a string");
    gen.word = word.get<std::string>();
    if (auto s = g.find("shift"); s != g.end()) {
      if (!s->is_array()) invalid(join(path, "shift"), "expected an array of integers");
      for (std::size_t k = 0; k < s->size(); ++k) {
        if (!(*s)[k].is_number_integer()) {
          invalid(join(path, "shift") + "[" + std::to_string(k) + "]", "expected an integer");
        }
        gen.shift.push_back((*s)[k].get<std::int64_t>());
      }
    } else {
      gen.shift.assign(spec.automorphisms.size(), 0);
    }
    spec.generators.push_back(std::move(gen));
  }

  if (auto it = j.find("laws"); it != j.end()) spec.laws = string_list(*it, "laws");
  return spec;
}

json spec_to_json(const GroupSpec& spec) {
  json j;
  j["kernel_rank"] = spec.kernel_rank;
  j["automorphisms"] = json::array();
  for (const auto& a : spec.automorphisms) {
    j["automorphisms"].push_back({{"images", a.images}, {"inverse_images", a.inverse_images}});
  }
  j["generators"] = json::array();
  for (const auto& g : spec.generators) {
    j["generators"].push_back({{"name", g.name}, {"word", g.word}, {"shift", g.shift}});
  }
  if (!spec.laws.empty()) j["laws"] = spec.laws;
  return j;
}

GroupModel build_model(const GroupSpec& spec, std::int64_t exponent_cap) {
  const std::size_t n = spec.kernel_rank;
  std::vector<FreeAutomorphism> auts;
  for (std::size_t i = 0; i < spec.automorphisms.size(); ++i) {
    const std::string path = "automorphisms[" + std::to_string(i) + "]";
    const auto& a = spec.automorphisms[i];
    if (a.images.size() != n) invalid(join(path, "images"), "expected " + std::to_string(n) + " words");
    if (a.inverse_images.size() != n) {
      invalid(join(path, "inverse_images"), "expected " + std::to_string(n) + " words");
    }
    std::vector<Word> images;
    std::vector<Word> inverse_images;
    for (std::size_t g = 0; g < n; ++g) {
      images.push_back(at_field(join(path, "images") + "[" + std::to_string(g) + "]",
                                [&] { return parse_word(a.images[g], n); }));
      inverse_images.push_back(at_field(join(path, "inverse_images") + "[" + std::to_string(g) + "]",
                                        [&] { return parse_word(a.inverse_images[g], n); }));
    }
    auts.push_back(at_field(path, [&] {
      return FreeAutomorphism::make(std::move(images), std::move(inverse_images));
    }));
  }
  ExtensionGroup group = at_field("automorphisms", [&] {
    return ExtensionGroup(n, std::move(auts), exponent_cap);
  });

  std::vector<NamedElement> elements;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    const auto& g = spec.generators[i];
    Word w = at_field(join(path, "word"), [&] { return parse_word(g.word, n); });
    if (g.shift.size() != group.dimension()) {
      invalid(join(path, "shift"), "expected " + std::to_string(group.dimension()) + " entries");
    }
    ExtElement x{std::move(w), g.shift};
    at_field(join(path, "shift"), [&] {
      group.check_shift(x.shift);
      return 0;
    });
    elements.push_back({g.name, std::move(x)});
  }
  GeneratingSet t = at_field("generators", [&] { return GeneratingSet(std::move(elements)); });

  std::vector<GroupLaw> laws;
  for (std::size_t i = 0; i < spec.laws.size(); ++i) {
    laws.push_back(at_field("laws[" + std::to_string(i) + "]", [&] { return parse_law(spec.laws[i]); }));
  }
  return GroupModel{std::move(group), std::move(t), std::move(laws)};
}

GroupSpec model_to_spec(const GroupModel& model) {
  GroupSpec spec;
  spec.kernel_rank = model.group.kernel_rank();
  for (const auto& phi : model.group.automorphisms()) {
    GroupSpec::Automorphism a;
    for (const Word& w : phi.images()) a.images.push_back(format_word(w));
    for (const Word& w : phi.inverse_images()) a.inverse_images.push_back(format_word(w));
    spec.automorphisms.push_back(std::move(a));
  }
  for (const auto& g : model.generators.generators()) {
    spec.generators.push_back({g.name, format_word(g.element.kernel_word), g.element.shift});
  }
  for (const auto& law : model.laws) spec.laws.push_back(format_law(law));
  return spec;
}

GroupSpec parse_spec_text(std::string_view text, std::string_view source_name) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, std::string(source_name) + ": " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source_name) + ": " + e.what());
  }
}

json element_to_json(const ExtElement& x) {
  return {{"word", format_word(x.kernel_word)}, {"shift", x.shift}};
}

ExtElement element_from_json(const json& j, std::size_t kernel_rank) {
  return ExtElement{parse_word(j.at("word").get<std::string>(), kernel_rank),
                    j.at("shift").get<std::vector<std::int64_t>>()};
}

json verdict_to_json(const Verdict& verdict, const GeneratingSet& t) {
  if (const auto* fb = std::get_if<FreeBasis>(&verdict)) {
    return {{"kind", "FreeBasis"},
            {"u", element_to_json(fb->u)},
            {"v", element_to_json(fb->v)},
            {"u_expr", format_expression(fb->u_expr, t)},
            {"v_expr", format_expression(fb->v_expr, t)},
            {"t_length_u", fb->t_length_u},
            {"t_length_v", fb->t_length_v},
            {"max_t_length", fb->max_t_length()},
            {"entropy_lower", fb->entropy_lower}};
  }
  const auto& cert = std::get<LawCertificate>(verdict);
  json j{{"kind", "LawCertificate"},
         {"law", format_law(cert.law)},
         {"arity", cert.law.arity()},
         {"law_length", cert.law.length()},
         {"structure", to_string(cert.structure)},
         {"degenerate", cert.degenerate()}};
  j["normal_generator"] = cert.normal_generator ? json(format_word(*cert.normal_generator)) : json(nullptr);
  return j;
}

Verdict verdict_from_json(const json& j, const GeneratingSet& t, std::size_t kernel_rank) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "FreeBasis") {
    FreeBasis fb;
    fb.u = element_from_json(j.at("u"), kernel_rank);
    fb.v = element_from_json(j.at("v"), kernel_rank);
    fb.u_expr = parse_expression(j.at("u_expr").get<std::string>(), t);
    fb.v_expr = parse_expression(j.at("v_expr").get<std::string>(), t);
    fb.t_length_u = j.at("t_length_u").get<std::size_t>();
    fb.t_length_v = j.at("t_length_v").get<std::size_t>();
    fb.entropy_lower = j.at("entropy_lower").get<double>();
    return fb;
  }
  if (kind == "LawCertificate") {
    const auto& g = j.at("normal_generator");
    return LawCertificate{
        parse_law(j.at("law").get<std::string>(), j.at("arity").get<std::size_t>()),
        parse_law_structure(j.at("structure").get<std::string>()),
        g.is_null() ? std::nullopt : std::optional<Word>(parse_word(g.get<std::string>(), kernel_rank))};
  }
  throw Error(ErrorCode::InvalidSpec, "unknown verdict kind '" + kind + "'");
}

json trace_to_json(const SearchTrace& trace) {
  json out = json::array();
  for (const auto& e : trace.events) out.push_back({{"step", e.step}, {"detail", e.detail}});
  return out;
}

json census_to_json(const BallCensus& census) {
  json rows = json::array();
  for (std::size_t n = 0; n < census.counts.size(); ++n) {
    json row{{"n", n}, {"B_n", census.counts[n]}};
    row["ln_B_n_over_n"] = n == 0 ? json(nullptr)
                                  : json(std::log(static_cast<double>(census.counts[n])) /
                                         static_cast<double>(n));
    rows.push_back(std::move(row));
  }
  return {{"radius", census.radius},
          {"reached_radius", census.reached_radius()},
          {"truncated", census.truncated},
          {"counts", census.counts},
          {"rows", rows}};
}

json class_to_json(const SubgroupClass& cls) {
  json j{{"kind", class_name(cls)}};
  if (const auto* c = std::get_if<InfiniteCyclic>(&cls)) {
    j["rank"] = 1;
    j["generator"] = format_word(c->generator);
  } else if (const auto* f = std::get_if<NonAbelianFree>(&cls)) {
    j["rank"] = f->rank;
    j["basis"] = json::array();
    for (const auto& w : f->basis) j["basis"].push_back(format_word(w));
  } else {
    j["rank"] = 0;
  }
  return j;
}

json chain_to_json(const ChainReport& report) {
  json levels = json::array();
  for (const auto& c : report.class_at_each_level) levels.push_back(class_to_json(c));
  return {{"k_stop", report.k_stop}, {"outcome", to_string(report.outcome)}, {"levels", levels}};
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gcert
