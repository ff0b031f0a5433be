#include "gcert/extension.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

#include "gcert/error.hpp"

namespace gcert {

Word substitute(std::span<const Word> images, const Word& w) {
  std::size_t bound = 0;
  for (Letter l : w.letters()) bound += images[l.generator].size();
  if (bound > kKernelWordLengthCap) {
    throw Error(ErrorCode::Overflow, "automorphism image would exceed " +
                                         std::to_string(kKernelWordLengthCap) + " letters");
  }
  Word out(images.empty() ? w.rank() : images.front().rank());
  std::vector<Word> inverses(images.size());
  std::vector<bool> have(images.size(), false);
  for (Letter l : w.letters()) {
    if (l.sign > 0) {
      out.append(images[l.generator]);
    } else {
      if (!have[l.generator]) {
        inverses[l.generator] = invert(images[l.generator]);
        have[l.generator] = true;
      }
      out.append(inverses[l.generator]);
    }
  }
  return out;
}

FreeAutomorphism FreeAutomorphism::make(std::vector<Word> images,
                                        std::vector<Word> inverse_images) {
  const std::size_t n = images.size();
  if (inverse_images.size() != n) {
    throw Error(ErrorCode::RankMismatch, "images and inverse images differ in count");
  }
  for (const auto* list : {&images, &inverse_images}) {
    for (const Word& w : *list) {
      if (w.rank() != n) throw Error(ErrorCode::RankMismatch, "image word has the wrong rank");
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    Word gen = Word::generator(n, g);
    Word there_and_back = substitute(inverse_images, images[g]);
    Word back_and_there = substitute(images, inverse_images[g]);
    if (there_and_back != gen || back_and_there != gen) {
      const Word& residue = there_and_back != gen ? there_and_back : back_and_there;
      throw Error(ErrorCode::NotInverse,
                  "claimed inverse fails on generator " + format_word(gen) +
                      ": composition gives " + format_word(residue));
    }
  }
  return FreeAutomorphism(std::move(images), std::move(inverse_images));
}

FreeAutomorphism FreeAutomorphism::identity(std::size_t rank) {
  std::vector<Word> gens;
  for (std::size_t g = 0; g < rank; ++g) gens.push_back(Word::generator(rank, g));
  return FreeAutomorphism(gens, gens);
}

Word FreeAutomorphism::apply(const Word& w) const {
  if (w.rank() != rank()) throw Error(ErrorCode::RankMismatch, "word rank differs from automorphism rank");
  return substitute(images_, w);
}

Word FreeAutomorphism::apply_inverse(const Word& w) const {
  if (w.rank() != rank()) throw Error(ErrorCode::RankMismatch, "word rank differs from automorphism rank");
  return substitute(inverse_images_, w);
}

FreeAutomorphism FreeAutomorphism::inverse() const {
  return FreeAutomorphism(inverse_images_, images_);
}

FreeAutomorphism FreeAutomorphism::compose(const FreeAutomorphism& other) const {
  std::vector<Word> images;
  std::vector<Word> inverse_images;
  for (const Word& w : other.images_) images.push_back(apply(w));
  for (const Word& w : inverse_images_) inverse_images.push_back(other.apply_inverse(w));
  return FreeAutomorphism(std::move(images), std::move(inverse_images));
}

ExtensionGroup::ExtensionGroup(std::size_t kernel_rank, std::vector<FreeAutomorphism> auts,
                               std::int64_t exponent_cap)
    : kernel_rank_(kernel_rank), auts_(std::move(auts)), exponent_cap_(exponent_cap) {
  for (const auto& phi : auts_) {
    if (phi.rank() != kernel_rank_) {
      throw Error(ErrorCode::RankMismatch, "automorphism rank differs from kernel rank");
    }
  }
  for (std::size_t i = 0; i < auts_.size(); ++i) {
    for (std::size_t j = i + 1; j < auts_.size(); ++j) {
      for (std::size_t g = 0; g < kernel_rank_; ++g) {
        Word gen = Word::generator(kernel_rank_, g);
        if (auts_[i].apply(auts_[j].apply(gen)) != auts_[j].apply(auts_[i].apply(gen))) {
          throw Error(ErrorCode::NotCommuting,
                      "automorphisms " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not commute on generator " + format_word(gen));
        }
      }
    }
  }
}

void ExtensionGroup::check_shift(const Shift& k) const {
  if (k.size() != auts_.size()) {
    throw Error(ErrorCode::ShiftDimensionMismatch,
                "shift has " + std::to_string(k.size()) + " entries, group has d = " +
                    std::to_string(auts_.size()));
  }
  for (auto e : k) {
    if (e > exponent_cap_ || e < -exponent_cap_) {
      throw Error(ErrorCode::ExponentCapExceeded,
                  "automorphism exponent " + std::to_string(e) + " exceeds cap " +
                      std::to_string(exponent_cap_));
    }
  }
}

void ExtensionGroup::check_element(const ExtElement& x) const {
  if (x.kernel_word.rank() != kernel_rank_) {
    throw Error(ErrorCode::RankMismatch, "element kernel word has the wrong rank");
  }
  if (x.shift.size() != auts_.size()) {
    throw Error(ErrorCode::ShiftDimensionMismatch, "element shift has the wrong dimension");
  }
}

Word ExtensionGroup::apply_power(const Shift& k, const Word& w) const {
  check_shift(k);
  Word out = w;
  for (std::size_t i = 0; i < auts_.size(); ++i) {
    for (std::int64_t e = 0; e < k[i]; ++e) out = auts_[i].apply(out);
    for (std::int64_t e = 0; e > k[i]; --e) out = auts_[i].apply_inverse(out);
  }
  return out;
}

ExtElement ExtensionGroup::identity() const {
  return ExtElement{Word(kernel_rank_), Shift(auts_.size(), 0)};
}

ExtElement ExtensionGroup::kernel_element(Word w) const {
  ExtElement x{std::move(w), Shift(auts_.size(), 0)};
  check_element(x);
  return x;
}

namespace {

Shift add(const Shift& a, const Shift& b) {
  Shift out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Shift negate(const Shift& a) {
  Shift out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

}  // namespace

ExtElement ExtensionGroup::multiply(const ExtElement& x, const ExtElement& y) const {
  check_element(x);
  check_element(y);
  return ExtElement{gcert::multiply(x.kernel_word, apply_power(x.shift, y.kernel_word)),
                    add(x.shift, y.shift)};
}

ExtElement ExtensionGroup::invert(const ExtElement& x) const {
  check_element(x);
  Shift back = negate(x.shift);
  return ExtElement{apply_power(back, gcert::invert(x.kernel_word)), back};
}

ExtElement ExtensionGroup::commutator(const ExtElement& x, const ExtElement& y) const {
  return multiply(multiply(x, y), multiply(invert(x), invert(y)));
}

ExtElement ExtensionGroup::conjugate(const ExtElement& x, const ExtElement& g) const {
  return multiply(multiply(g, x), invert(g));
}

Shift project(const ExtElement& x) { return x.shift; }

bool in_kernel(const ExtElement& x) {
  return std::all_of(x.shift.begin(), x.shift.end(), [](auto e) { return e == 0; });
}

const std::vector<Word>& PowerCache::images(const Shift& k) {
  if (auto it = cache_.find(k); it != cache_.end()) return it->second;
  group_->check_shift(k);
  const std::size_t n = group_->kernel_rank();
  std::vector<Word> result;
  auto first = std::find_if(k.begin(), k.end(), [](auto e) { return e != 0; });
  if (first == k.end()) {
    for (std::size_t g = 0; g < n; ++g) result.push_back(Word::generator(n, g));
  } else {
    // Phi^k = phi_i^{+-1} o Phi^{k -+ e_i}; the automorphisms commute.
    const std::size_t i = static_cast<std::size_t>(first - k.begin());
    Shift previous = k;
    const auto& phi = group_->automorphisms()[i];
    const bool forward = k[i] > 0;
    previous[i] += forward ? -1 : 1;
    std::vector<Word> base = images(previous);
    for (const Word& w : base) result.push_back(forward ? phi.apply(w) : phi.apply_inverse(w));
  }
  return cache_.emplace(k, std::move(result)).first->second;
}

Word PowerCache::apply(const Shift& k, const Word& w) {
  if (std::all_of(k.begin(), k.end(), [](auto e) { return e == 0; })) return w;
  return substitute(images(k), w);
}

ExtElement PowerCache::multiply(const ExtElement& x, const ExtElement& y) {
  group_->check_element(x);
  group_->check_element(y);
  return ExtElement{gcert::multiply(x.kernel_word, apply(x.shift, y.kernel_word)),
                    add(x.shift, y.shift)};
}

ExtElement PowerCache::invert(const ExtElement& x) {
  group_->check_element(x);
  Shift back = negate(x.shift);
  return ExtElement{apply(back, gcert::invert(x.kernel_word)), back};
}

GeneratingSet::GeneratingSet(std::vector<NamedElement> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw Error(ErrorCode::InvalidGeneratingSet, "generating set is empty");
  }
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw Error(ErrorCode::InvalidGeneratingSet, "generator name is empty");
    for (char c : g.name) {
      if (c == ' ' || c == '^') {
        throw Error(ErrorCode::InvalidGeneratingSet, "generator name '" + g.name + "' contains ' ' or '^'");
      }
    }
    if (!names.insert(g.name).second) {
      throw Error(ErrorCode::InvalidGeneratingSet, "duplicate generator name '" + g.name + "'");
    }
  }
}

std::vector<ExtElement> GeneratingSet::elements() const {
  std::vector<ExtElement> out;
  for (const auto& g : generators_) out.push_back(g.element);
  return out;
}

std::vector<std::size_t> GeneratingSet::name_order() const {
  std::vector<std::size_t> order(generators_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return generators_[a].name < generators_[b].name;
  });
  return order;
}

std::size_t GeneratingSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return generators_.size();
}

std::string format_expression(const Word& expr, const GeneratingSet& t) {
  if (expr.empty()) return "1";
  std::string out;
  for (Letter l : expr.letters()) {
    if (!out.empty()) out.push_back(' ');
    out += t[l.generator].name;
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

Word parse_expression(std::string_view text, const GeneratingSet& t) {
  Word out(t.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t end = text.find(' ', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(i, end - i);
    i = end;
    if (token == "1") continue;
    int sign = 1;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
      sign = -1;
      token.remove_suffix(3);
    }
    std::size_t index = t.find(token);
    if (index == t.size()) {
      throw Error(ErrorCode::UnknownGenerator, "unknown generator name '" + std::string(token) + "'");
    }
    out.push_back(Letter{static_cast<std::uint16_t>(index), static_cast<std::int8_t>(sign)});
  }
  return out;
}

ExtElement evaluate_expression(const ExtensionGroup& group, const GeneratingSet& t,
                               const Word& expr) {
  if (expr.rank() != t.size()) {
    throw Error(ErrorCode::RankMismatch, "expression rank differs from generating set size");
  }
  PowerCache cache(group);
  ExtElement acc = group.identity();
  for (Letter l : expr.letters()) {
    const ExtElement& g = t[l.generator].element;
    acc = cache.multiply(acc, l.sign > 0 ? g : cache.invert(g));
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const ExtElement& x) {
  os << '(' << x.kernel_word << ", [";
  for (std::size_t i = 0; i < x.shift.size(); ++i) os << (i ? ", " : "") << x.shift[i];
  return os << "])";
}

}  // namespace gcert
