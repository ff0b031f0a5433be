// growthcertify: batch front end over group-spec files.
//
// Exit codes: 0 success (FreeBasis for certify, law holds for law check),
// 10 LawCertificate, 11 growth census truncated by the element cap,
// 12 law check counterexample, 1 error, 2 usage.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcert/certify.hpp"
#include "gcert/error.hpp"
#include "gcert/growth.hpp"
#include "gcert/io.hpp"
#include "gcert/laws.hpp"
#include "gcert/stallings.hpp"

namespace {

using nlohmann::json;
using namespace gcert;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLaw = 10;
constexpr int kExitPartial = 11;
constexpr int kExitCounterexample = 12;

struct Output {
  json result;
  json trace = json::array();
  std::string digest_source;
  int exit_code = 0;
  std::optional<std::string> raw;  // printed instead of the JSON report
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidSpec, path + ": cannot open file");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

GroupModel load_model(const std::string& path, std::string& bytes) {
  bytes = read_input(path);
  return build_model(parse_spec_text(bytes, path));
}

std::size_t element_cap(const std::optional<std::size_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GROWTHCERTIFY_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (*end != '\0' || value == 0) {
      throw Error(ErrorCode::InvalidSpec, "GROWTHCERTIFY_CAP must be a positive integer");
    }
    return static_cast<std::size_t>(value);
  }
  return kDefaultElementCap;
}

Permutation parse_permutation(const std::string& text) {
  std::vector<std::uint8_t> images;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0 || v > 255) throw std::invalid_argument(item);
      images.push_back(static_cast<std::uint8_t>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::MalformedToken, "permutation '" + text + "': bad image '" + item + "'");
    }
  }
  return Permutation(std::move(images));
}

std::vector<Permutation> parse_permutations(const std::vector<std::string>& texts) {
  std::vector<Permutation> out;
  for (const auto& t : texts) out.push_back(parse_permutation(t));
  for (const auto& p : out) {
    if (p.degree() != out.front().degree()) {
      throw Error(ErrorCode::RankMismatch, "permutations have different degrees");
    }
  }
  return out;
}

json permutation_to_json(const Permutation& p) {
  json out = json::array();
  for (auto v : p.images()) out.push_back(v);
  return out;
}

std::string graph_dot(const SubgroupGraph& g) {
  std::ostringstream os;
  os << "digraph subgroup {\n  0 [shape=doublecircle];\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t gen = 0; gen < g.rank_ambient(); ++gen) {
      if (int w = g.out(v, gen); w != SubgroupGraph::kNone) {
        os << "  " << v << " -> " << w << " [label=\"" << format_word(Word::generator(g.rank_ambient(), gen))
           << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

json graph_to_json(const SubgroupGraph& g) {
  json edges = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t gen = 0; gen < g.rank_ambient(); ++gen) {
      if (int w = g.out(v, gen); w != SubgroupGraph::kNone) {
        edges.push_back({{"from", v}, {"label", format_word(Word::generator(g.rank_ambient(), gen))}, {"to", w}});
      }
    }
  }
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

template <typename Element>
json law_check_to_json(const LawCheck<Element>& check, auto&& element_json) {
  if (std::holds_alternative<Holds>(check)) return {{"holds", true}, {"counterexample", nullptr}};
  json tuple = json::array();
  for (const auto& x : std::get<Counterexample<Element>>(check).tuple) tuple.push_back(element_json(x));
  return {{"holds", false}, {"counterexample", tuple}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify short free bases or laws in free-by-abelian groups and count their balls"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string spec_path;
  std::optional<std::string> law_text;
  std::size_t verify_radius = 3;
  std::optional<std::size_t> cap;
  std::size_t radius = 0;
  bool csv = false;
  bool with_certificate = false;
  std::size_t rank = 0;
  std::vector<std::string> words;
  bool dot = false;
  std::string law_a;
  std::string law_b;
  std::vector<std::string> perms;
  std::optional<std::string> law_spec;
  std::optional<std::size_t> law_radius;
  bool pretty = true;

  app.add_flag("!--compact", pretty, "Print the JSON report on one line");

  auto* certify = app.add_subcommand("certify", "Run the two-free dichotomy on a group spec");
  certify->add_option("spec", spec_path, "Group spec JSON file ('-' for stdin)")->required();
  certify->add_option("--law", law_text, "Drive the dichotomy by this law, e.g. \"[x1^2, x2^2]\"");
  certify->add_option("--verify-radius", verify_radius, "Radius of the ball used to check law certificates");
  certify->add_option("--cap", cap, "Element cap for verification balls");

  auto* growth = app.add_subcommand("growth", "Exact ball census of <T>");
  growth->add_option("spec", spec_path, "Group spec JSON file ('-' for stdin)")->required();
  growth->add_option("--radius", radius, "Largest radius R")->required();
  growth->add_option("--cap", cap, "Element cap (overrides GROWTHCERTIFY_CAP)");
  growth->add_flag("--csv", csv, "Print n,B_n,ln(B_n)/n rows instead of JSON");
  growth->add_flag("--certify", with_certificate, "Add the entropy lower bound from a certificate");

  auto* fold = app.add_subcommand("fold", "Fold words into a Stallings graph and classify the subgroup");
  fold->add_option("--rank", rank, "Rank of the ambient free group")->required();
  fold->add_option("words", words, "Generating words");
  fold->add_flag("--dot", dot, "Print the folded graph in Graphviz format");

  auto* law = app.add_subcommand("law", "Law utilities");
  law->require_subcommand(1);
  law->fallthrough();
  auto* compose = law->add_subcommand("compose", "Compose an outer law with an inner law");
  compose->add_option("outer", law_a, "Outer law")->required();
  compose->add_option("inner", law_b, "Inner law")->required();
  auto* eval = law->add_subcommand("eval", "Evaluate a law on a tuple");
  eval->add_option("law", law_a, "Law")->required();
  eval->add_option("--rank", rank, "Free group rank for word arguments");
  eval->add_option("--perms", perms, "Permutations as comma-separated images, e.g. 1,2,0");
  eval->add_option("words", words, "Free group words, one per variable");
  auto* check = law->add_subcommand("check", "Check a law on a ball");
  check->add_option("law", law_a, "Law")->required();
  check->add_option("--perms", perms, "Generating permutations");
  check->add_option("--spec", law_spec, "Group spec whose generating set is used");
  check->add_option("--radius", law_radius, "Ball radius (permutations default to the whole group, specs to 3)");
  check->add_option("--cap", cap, "Element cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  Output out;
  out.digest_source = command;

  try {
    if (*certify) {
      GroupModel model = load_model(spec_path, out.digest_source);
      CertifyOptions options{verify_radius, element_cap(cap)};
      Certification c = law_text ? law_certify_general(model.group, model.generators,
                                                       parse_law(*law_text), options)
                                 : two_free_certify(model.group, model.generators, options);
      out.result = {{"verdict", verdict_to_json(c.verdict, model.generators)},
                    {"law", law_text ? json(format_law(parse_law(*law_text))) : json(nullptr)},
                    {"verify_radius", verify_radius}};
      out.trace = trace_to_json(c.trace);
      out.exit_code = std::holds_alternative<FreeBasis>(c.verdict) ? 0 : kExitLaw;
    } else if (*growth) {
      GroupModel model = load_model(spec_path, out.digest_source);
      BallCensus census = enumerate_ball(model.group, model.generators, radius, element_cap(cap));
      out.result = census_to_json(census);
      if (!census.truncated) {
        std::optional<Verdict> verdict;
        if (with_certificate) {
          Certification c = two_free_certify(model.group, model.generators);
          out.trace = trace_to_json(c.trace);
          verdict = c.verdict;
        }
        GrowthEstimate e = entropy_bounds(census, verdict);
        out.result["upper_sequence"] = e.upper_sequence;
        out.result["lower_bound"] = e.lower_bound ? json(*e.lower_bound) : json(nullptr);
      }
      if (csv) out.raw = census_csv(census);
      out.exit_code = census.truncated ? kExitPartial : 0;
    } else if (*fold) {
      std::vector<Word> gens;
      for (const auto& w : words) gens.push_back(parse_word(w, rank));
      SubgroupGraph g = build_graph(rank, gens);
      out.result = {{"class", class_to_json(classify(gens))},
                    {"rank", subgroup_rank(g)},
                    {"graph", graph_to_json(g)}};
      if (dot) out.raw = graph_dot(g);
    } else if (*compose) {
      GroupLaw composite = compose_laws(parse_law(law_a), parse_law(law_b));
      out.result = {{"law", format_law(composite)},
                    {"arity", composite.arity()},
                    {"length", composite.length()}};
    } else if (*eval) {
      GroupLaw w = parse_law(law_a);
      if (!perms.empty()) {
        std::vector<Permutation> tuple = parse_permutations(perms);
        PermutationRealization r(tuple.front().degree());
        out.result = {{"value", permutation_to_json(eval_law(w, std::span<const Permutation>(tuple), r))}};
      } else {
        if (rank == 0) throw Error(ErrorCode::RankMismatch, "--rank is required for word arguments");
        std::vector<Word> tuple;
        for (const auto& text : words) tuple.push_back(parse_word(text, rank));
        FreeGroupRealization r{rank};
        out.result = {{"value", format_word(eval_law(w, std::span<const Word>(tuple), r))}};
      }
    } else if (*check) {
      GroupLaw w = parse_law(law_a);
      const std::size_t limit = element_cap(cap);
      if (law_spec) {
        GroupModel model = load_model(*law_spec, out.digest_source);
        ExtensionRealization r(model.group);
        auto gens = model.generators.elements();
        const std::size_t rr = law_radius.value_or(3);
        auto result = check_law_on_ball(r, std::span<const ExtElement>(gens), w, rr, limit);
        out.result = law_check_to_json(result, [](const ExtElement& x) { return element_to_json(x); });
        out.result["radius"] = rr;
      } else {
        if (perms.empty()) throw Error(ErrorCode::InvalidSpec, "law check needs --perms or --spec");
        std::vector<Permutation> gens = parse_permutations(perms);
        PermutationRealization r(gens.front().degree());
        const std::size_t rr = law_radius.value_or(std::numeric_limits<std::size_t>::max());
        auto result = check_law_on_ball(r, std::span<const Permutation>(gens), w, rr, limit);
        out.result = law_check_to_json(result, [](const Permutation& p) { return permutation_to_json(p); });
        out.result["radius"] = law_radius ? json(*law_radius) : json("full");
      }
      out.result["law"] = format_law(w);
      out.exit_code = out.result["holds"].get<bool>() ? 0 : kExitCounterexample;
    }
  } catch (const Error& e) {
    std::cerr << "growthcertify: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "growthcertify: " << e.what() << "\n";
    return kExitError;
  }

  if (out.raw) {
    std::cout << *out.raw;
    return out.exit_code;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  json report{{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"input_digest", input_digest(out.digest_source)},
              {"result", out.result},
              {"trace", out.trace},
              {"wall_clock_ms", elapsed.count()}};
  std::cout << report.dump(pretty ? 2 : -1) << "\n";
  return out.exit_code;
}
