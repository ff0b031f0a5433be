#include "gcert/certify.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "gcert/error.hpp"

namespace gcert {

std::string to_string(LawStructure s) {
  switch (s) {
    case LawStructure::Abelian: return "Abelian";
    case LawStructure::CyclicByAbelian: return "CyclicByAbelian";
    case LawStructure::MetabelianNormalClosure: return "MetabelianNormalClosure";
  }
  return "Unknown";
}

LawStructure parse_law_structure(std::string_view text) {
  if (text == "Abelian") return LawStructure::Abelian;
  if (text == "CyclicByAbelian") return LawStructure::CyclicByAbelian;
  if (text == "MetabelianNormalClosure") return LawStructure::MetabelianNormalClosure;
  throw Error(ErrorCode::InvalidSpec, "unknown law structure '" + std::string(text) + "'");
}

std::string to_string(ChainOutcome o) {
  switch (o) {
    case ChainOutcome::NonAbelian: return "NonAbelian";
    case ChainOutcome::StabilizedCyclic: return "StabilizedCyclic";
    case ChainOutcome::StabilizedTrivial: return "StabilizedTrivial";
  }
  return "Unknown";
}

double entropy_lower_bound(std::size_t max_t_length) {
  return std::log(3.0) / static_cast<double>(max_t_length);
}

namespace {

// A kernel element together with its expression over T.
struct Tracked {
  ExtElement element;
  Word expr;
};

Word letter_word(std::size_t rank, std::size_t index, int sign) {
  return Word::generator(rank, index, sign);
}

FreeBasis make_basis(const Tracked& u, const Tracked& v) {
  FreeBasis fb{u.element, v.element, u.expr, v.expr, u.expr.size(), v.expr.size(), 0.0};
  fb.entropy_lower = entropy_lower_bound(fb.max_t_length());
  return fb;
}

std::string describe(const Tracked& x, const GeneratingSet& t) {
  return format_expression(x.expr, t) + " = " + format_word(x.element.kernel_word);
}

std::vector<Word> kernel_words(const std::vector<Tracked>& xs) {
  std::vector<Word> out;
  for (const auto& x : xs) out.push_back(x.element.kernel_word);
  return out;
}

// Drops trivial elements and repeated kernel words, keeping first occurrences.
std::vector<Tracked> nontrivial_distinct(std::vector<Tracked> xs) {
  std::vector<Tracked> out;
  std::unordered_set<Word> seen;
  for (auto& x : xs) {
    if (x.element.kernel_word.empty()) continue;
    if (!seen.insert(x.element.kernel_word).second) continue;
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_noncommuting_pair(
    const std::vector<Tracked>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (!commutes(xs[i].element.kernel_word, xs[j].element.kernel_word)) {
        return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

[[noreturn]] void internal_failure(const std::string& what) {
  throw Error(ErrorCode::VerificationFailed, "internal inconsistency: " + what);
}

// Outcome of one W-driven dichotomy round.
struct Dichotomy {
  std::optional<FreeBasis> basis;
  SubgroupClass w_class;
  std::optional<Word> cyclic_generator;
};

// Shared core of both certifiers: classify <W>, then test conjugates of the
// first nontrivial element of W by each t in T.
Dichotomy run_dichotomy(const GeneratingSet& t,
                        const std::vector<Tracked>& w_all, PowerCache& cache,
                        SearchTrace& trace) {
  std::vector<Tracked> w = nontrivial_distinct(w_all);
  std::vector<Word> words = kernel_words(w);
  SubgroupClass cls = classify(std::span<const Word>(words));
  trace.add("classify", class_name(cls) + " on " + std::to_string(w.size()) +
                            " distinct nontrivial elements");
  Dichotomy result{std::nullopt, cls, std::nullopt};
  if (std::holds_alternative<Trivial>(cls)) return result;

  if (std::holds_alternative<NonAbelianFree>(cls)) {
    auto pair = first_noncommuting_pair(w);
    if (!pair) internal_failure("non-cyclic subgroup of F_n with pairwise commuting generators");
    trace.add("pair", describe(w[pair->first], t) + " ; " + describe(w[pair->second], t));
    result.basis = make_basis(w[pair->first], w[pair->second]);
    return result;
  }

  const Tracked& a = w.front();
  trace.add("cyclic", "a := " + describe(a, t));
  const std::size_t rank = t.size();
  for (std::size_t i : t.name_order()) {
    const ExtElement& g = t[i].element;
    ExtElement conj = cache.multiply(cache.multiply(g, a.element), cache.invert(g));
    Word expr = letter_word(rank, i, 1);
    expr.append(a.expr);
    expr.append(letter_word(rank, i, -1));
    if (!in_kernel(conj)) internal_failure("conjugate of a kernel element left the kernel");
    Tracked c{std::move(conj), std::move(expr)};
    bool commuting = commutes(a.element.kernel_word, c.element.kernel_word);
    trace.add("conjugate", t[i].name + ": " + describe(c, t) +
                               (commuting ? " commutes" : " does not commute"));
    if (!commuting) {
      result.basis = make_basis(a, c);
      return result;
    }
  }
  result.cyclic_generator = maximal_cyclic_generator(a.element.kernel_word);
  trace.add("normal", "<T> normalises <" + format_word(*result.cyclic_generator) + ">");
  return result;
}

void finish_verification(const ExtensionGroup& group, const GeneratingSet& t,
                         const Verdict& verdict, const CertifyOptions& options,
                         SearchTrace& trace) {
  if (const auto* fb = std::get_if<FreeBasis>(&verdict)) {
    verify_free_basis(group, t, *fb);
    trace.add("verify", "free basis re-folded: rank 2");
  } else {
    const auto& cert = std::get<LawCertificate>(verdict);
    verify_law_certificate(group, t, cert, options);
    trace.add("verify", "law holds on the T-ball of radius " +
                            std::to_string(options.verify_radius));
  }
}

}  // namespace

Certification two_free_certify(const ExtensionGroup& group, const GeneratingSet& t,
                               const CertifyOptions& options) {
  for (const auto& g : t.generators()) group.check_element(g.element);
  SearchTrace trace;
  PowerCache cache(group);
  const std::size_t rank = t.size();
  const auto order = t.name_order();

  std::vector<Tracked> w;
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const std::size_t i = order[p];
      const std::size_t j = order[q];
      const ExtElement& x = t[i].element;
      const ExtElement& y = t[j].element;
      ExtElement c = cache.multiply(cache.multiply(x, y),
                                    cache.multiply(cache.invert(x), cache.invert(y)));
      if (!in_kernel(c)) internal_failure("commutator outside the kernel");
      Word expr(rank, {Letter{static_cast<std::uint16_t>(i), 1}, Letter{static_cast<std::uint16_t>(j), 1},
                       Letter{static_cast<std::uint16_t>(i), -1}, Letter{static_cast<std::uint16_t>(j), -1}});
      w.push_back({std::move(c), std::move(expr)});
    }
  }
  trace.add("W", std::to_string(w.size()) + " pairwise commutators");

  Dichotomy d = run_dichotomy(t, w, cache, trace);
  Verdict verdict;
  if (d.basis) {
    verdict = *d.basis;
  } else if (std::holds_alternative<Trivial>(d.w_class)) {
    verdict = LawCertificate{commutator_law(), LawStructure::Abelian, std::nullopt};
  } else {
    verdict = LawCertificate{nested_commutator_law(2), LawStructure::CyclicByAbelian,
                             d.cyclic_generator};
  }
  finish_verification(group, t, verdict, options, trace);
  return Certification{std::move(verdict), std::move(trace)};
}

Certification law_certify_general(const ExtensionGroup& group, const GeneratingSet& t,
                                  const GroupLaw& law, const CertifyOptions& options) {
  if (law == commutator_law()) {
    Certification c = two_free_certify(group, t, options);
    c.trace.events.insert(c.trace.events.begin(),
                          TraceEvent{"law", "commutator law: commutator dichotomy"});
    return c;
  }
  for (const auto& g : t.generators()) group.check_element(g.element);
  const std::size_t m = law.arity();
  const std::size_t rank = t.size();
  SearchTrace trace;
  trace.add("law", format_law(law));

  // In Z^d the law evaluates to sum_i e_i z_i, e_i the exponent sum of x_i.
  std::vector<long long> exponent_sum(m, 0);
  for (Letter l : law.body().letters()) exponent_sum[l.generator] += l.sign;
  for (std::size_t var = 0; var < m; ++var) {
    if (exponent_sum[var] == 0) continue;
    for (std::size_t i : t.name_order()) {
      if (in_kernel(t[i].element)) continue;
      std::string witness;
      for (std::size_t k = 0; k < m; ++k) {
        witness += (k ? ", " : "") + (k == var ? t[i].name : std::string("1"));
      }
      throw Error(ErrorCode::QuotientLawFails,
                  "law " + format_law(law) + " fails in the quotient Z^d on (" + witness + ")");
    }
  }

  if (law.is_degenerate()) {
    trace.add("degenerate", "law reduces to the identity");
    Verdict verdict = LawCertificate{commutator_of_laws(law), LawStructure::Abelian, std::nullopt};
    finish_verification(group, t, verdict, options, trace);
    return Certification{std::move(verdict), std::move(trace)};
  }

  // W = { law(t_1..t_m) }, tuples in lexicographic name order.
  const auto order = t.name_order();
  std::size_t tuples = 1;
  for (std::size_t k = 0; k < m; ++k) {
    tuples *= rank;
    if (tuples > options.element_cap) {
      throw Error(ErrorCode::ElementCapExceeded, "too many law tuples over T");
    }
  }
  PowerCache cache(group);
  std::vector<Tracked> w;
  std::vector<std::size_t> odometer(m, 0);
  for (std::size_t n = 0; n < tuples; ++n) {
    std::vector<Letter> letters;
    for (Letter l : law.body().letters()) {
      letters.push_back(Letter{static_cast<std::uint16_t>(order[odometer[l.generator]]), l.sign});
    }
    Word expr(rank, letters);
    ExtElement value = group.identity();
    for (Letter l : expr.letters()) {
      const ExtElement& g = t[l.generator].element;
      value = cache.multiply(value, l.sign > 0 ? g : cache.invert(g));
    }
    if (!in_kernel(value)) internal_failure("law value outside the kernel");
    w.push_back({std::move(value), std::move(expr)});
    for (std::size_t k = m; k-- > 0;) {
      if (++odometer[k] < rank) break;
      odometer[k] = 0;
    }
  }
  trace.add("W", std::to_string(w.size()) + " law values");

  Dichotomy d = run_dichotomy(t, w, cache, trace);
  Verdict verdict;
  if (d.basis) {
    verdict = *d.basis;
  } else {
    // The verbal subgroup of <T> lies in [<T>, <T>] or <T> lies in F_n; in
    // both cases [law(x), law(y)] holds once <T> is metabelian, which the
    // commutator dichotomy decides.
    Certification base = two_free_certify(group, t, options);
    if (const auto* fb = std::get_if<FreeBasis>(&base.verdict)) {
      trace.add("fallback", "law values inconclusive; commutator dichotomy found a free basis");
      verdict = *fb;
    } else {
      trace.add("metabelian", "commutator dichotomy certifies <T> metabelian");
      verdict = LawCertificate{commutator_of_laws(law), LawStructure::MetabelianNormalClosure,
                               d.cyclic_generator};
    }
  }
  finish_verification(group, t, verdict, options, trace);
  return Certification{std::move(verdict), std::move(trace)};
}

ChainReport iterated_chain(const ExtensionGroup& group, const GeneratingSet& t,
                           std::span<const ExtElement> w, std::size_t max_k) {
  if (max_k < 2) throw Error(ErrorCode::CapExceeded, "max_k must be at least 2");
  const std::size_t n = group.kernel_rank();
  std::vector<Word> generators;
  for (const auto& x : w) {
    group.check_element(x);
    if (!in_kernel(x)) {
      throw Error(ErrorCode::InvalidGeneratingSet, "chain seed element lies outside the kernel");
    }
    if (!x.kernel_word.empty()) generators.push_back(x.kernel_word);
  }
  PowerCache cache(group);
  std::vector<ExtElement> steps;
  for (std::size_t i : t.name_order()) {
    steps.push_back(t[i].element);
    steps.push_back(cache.invert(t[i].element));
  }

  ChainReport report;
  SubgroupGraph level = build_graph(n, std::span<const Word>(generators));
  for (std::size_t k = 0;; ++k) {
    std::vector<Word> basis = free_basis(level);
    SubgroupClass cls = basis.empty() ? SubgroupClass{Trivial{}}
                        : basis.size() == 1 ? SubgroupClass{InfiniteCyclic{basis.front()}}
                                            : SubgroupClass{NonAbelianFree{basis.size(), basis}};
    report.class_at_each_level.push_back(cls);
    if (basis.size() >= 2) {
      report.k_stop = k;
      report.outcome = ChainOutcome::NonAbelian;
      return report;
    }
    if (k == max_k) {
      throw Error(ErrorCode::CapExceeded,
                  "chain neither became non-abelian nor stabilised by k = " + std::to_string(max_k));
    }
    std::vector<Word> next = basis;
    for (const ExtElement& s : steps) {
      for (const Word& b : basis) {
        // s (b, 0) s^-1 = (w Phi^k(b) w^-1, 0) for s = (w, k).
        next.push_back(conjugate(cache.apply(s.shift, b), s.kernel_word));
      }
    }
    SubgroupGraph following = build_graph(n, std::span<const Word>(next));
    if (following == level) {
      report.k_stop = k;
      report.outcome = basis.empty() ? ChainOutcome::StabilizedTrivial : ChainOutcome::StabilizedCyclic;
      return report;
    }
    level = std::move(following);
  }
}

FreeBasis lift_basis(const ExtensionGroup& source, const GeneratingSet& source_t,
                     const GeneratingSet& image_t, const FreeBasis& image_basis) {
  auto relabel = [&](const Word& expr) {
    std::vector<Letter> letters;
    for (Letter l : expr.letters()) {
      const std::string& name = image_t[l.generator].name;
      std::size_t index = source_t.find(name);
      if (index == source_t.size()) {
        throw Error(ErrorCode::UnknownGenerator,
                    "generator '" + name + "' has no counterpart in the source set");
      }
      letters.push_back(Letter{static_cast<std::uint16_t>(index), l.sign});
    }
    return Word(source_t.size(), letters);
  };
  Word u_expr = relabel(image_basis.u_expr);
  Word v_expr = relabel(image_basis.v_expr);
  Tracked u{evaluate_expression(source, source_t, u_expr), u_expr};
  Tracked v{evaluate_expression(source, source_t, v_expr), v_expr};
  FreeBasis lifted = make_basis(u, v);
  verify_free_basis(source, source_t, lifted);
  return lifted;
}

void verify_free_basis(const ExtensionGroup& group, const GeneratingSet& t,
                       const FreeBasis& basis) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::VerificationFailed, "free basis rejected: " + why);
  };
  if (!in_kernel(basis.u) || !in_kernel(basis.v)) fail("element outside the kernel");
  if (evaluate_expression(group, t, basis.u_expr) != basis.u ||
      evaluate_expression(group, t, basis.v_expr) != basis.v) {
    fail("expression does not evaluate to the recorded element");
  }
  if (basis.t_length_u != basis.u_expr.size() || basis.t_length_v != basis.v_expr.size()) {
    fail("recorded T-length differs from the expression length");
  }
  SubgroupClass cls = classify({basis.u.kernel_word, basis.v.kernel_word});
  const auto* free = std::get_if<NonAbelianFree>(&cls);
  if (free == nullptr || free->rank != 2) fail("pair does not fold to a rank-2 graph");
}

void verify_law_certificate(const ExtensionGroup& group, const GeneratingSet& t,
                            const LawCertificate& cert, const CertifyOptions& options) {
  ExtensionRealization realization(group);
  std::vector<ExtElement> gens = t.elements();
  auto result = check_law_on_ball(realization, std::span<const ExtElement>(gens), cert.law,
                                  options.verify_radius, options.element_cap);
  if (const auto* bad = std::get_if<Counterexample<ExtElement>>(&result)) {
    std::string tuple;
    for (const auto& x : bad->tuple) {
      tuple += (tuple.empty() ? "" : ", ") + format_word(x.kernel_word);
    }
    throw Error(ErrorCode::VerificationFailed,
                "law " + format_law(cert.law) + " fails on (" + tuple + ")");
  }
}

}  // namespace gcert
