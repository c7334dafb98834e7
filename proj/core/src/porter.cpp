#include "tmpca/porter.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace tmpca {
namespace {

// Letter classification: a/e/i/o/u are vowels; y is a vowel exactly when
// the preceding letter is a consonant (word-initial y is a consonant).
bool is_consonant(const std::string& w, std::size_t i) {
  const char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// The "measure" m of the prefix w[0, len): the number of vowel-run to
// consonant-run transitions, i.e. m in the form [C](VC)^m[V].
std::size_t measure(const std::string& w, std::size_t len) {
  std::size_t m = 0;
  bool prev_consonant = true;
  for (std::size_t i = 0; i < len; ++i) {
    const bool consonant = is_consonant(w, i);
    if (i > 0 && consonant && !prev_consonant) ++m;
    prev_consonant = consonant;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

// *d: the prefix ends in a doubled consonant (-tt, -ss, ...).
bool ends_double_consonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: the prefix ends consonant-vowel-consonant where the final consonant
// is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
      !is_consonant(w, len - 1)) {
    return false;
  }
  const char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// sses -> ss; ies -> i; ss -> ss; s -> (gone). Plural handling.
void step_1a(std::string& w) {
  if (ends_with(w, "sses") || ends_with(w, "ies")) {
    w.erase(w.size() - 2);
  } else if (!ends_with(w, "ss") && ends_with(w, "s")) {
    w.pop_back();
  }
}

// -ed / -ing removal with the restore rules for the exposed stem.
void step_1b(std::string& w) {
  if (ends_with(w, "eed")) {
    // Longest match: a failed condition here must not fall through to -ed.
    if (measure(w, w.size() - 3) > 0) w.pop_back();
    return;
  }
  if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
    w.erase(w.size() - 3);
  } else {
    return;
  }

  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w, w.size())) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

// Terminal y -> i when the stem has a vowel.
void step_1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

struct SuffixRule {
  std::string_view match;
  std::string_view replacement;
};

// Applies the first (longest) matching rule if the stem's measure exceeds
// `min_measure`. A matched rule whose condition fails still consumes the
// step: no shorter suffix is tried.
void apply_rules(std::string& w, std::span<const SuffixRule> rules,
                 std::size_t min_measure) {
  for (const SuffixRule& rule : rules) {
    if (!ends_with(w, rule.match)) continue;
    const std::size_t stem_len = w.size() - rule.match.size();
    if (measure(w, stem_len) > min_measure) {
      w.resize(stem_len);
      w.append(rule.replacement);
    }
    return;
  }
}

// Double-suffix reductions; ordered longest-first so e.g. -ization wins
// over its own tail -ation.
constexpr std::array<SuffixRule, 20> kStep2{{
    {"ational", "ate"},
    {"ization", "ize"},
    {"iveness", "ive"},
    {"fulness", "ful"},
    {"ousness", "ous"},
    {"tional", "tion"},
    {"biliti", "ble"},
    {"entli", "ent"},
    {"ousli", "ous"},
    {"ation", "ate"},
    {"alism", "al"},
    {"aliti", "al"},
    {"iviti", "ive"},
    {"enci", "ence"},
    {"anci", "ance"},
    {"izer", "ize"},
    {"abli", "able"},
    {"alli", "al"},
    {"ator", "ate"},
    {"eli", "e"},
}};

constexpr std::array<SuffixRule, 7> kStep3{{
    {"icate", "ic"},
    {"ative", ""},
    {"alize", "al"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ness", ""},
    {"ful", ""},
}};

// Single-suffix removal for long stems (measure > 1); -ion additionally
// requires the stem to end in s or t.
void step_4(std::string& w) {
  static constexpr std::array<SuffixRule, 19> rules{{
      {"ement", ""},
      {"ance", ""},
      {"ence", ""},
      {"able", ""},
      {"ible", ""},
      {"ment", ""},
      {"ant", ""},
      {"ent", ""},
      {"ion", ""},
      {"ism", ""},
      {"ate", ""},
      {"iti", ""},
      {"ous", ""},
      {"ive", ""},
      {"ize", ""},
      {"al", ""},
      {"er", ""},
      {"ic", ""},
      {"ou", ""},
  }};
  for (const SuffixRule& rule : rules) {
    if (!ends_with(w, rule.match)) continue;
    const std::size_t stem_len = w.size() - rule.match.size();
    bool remove = measure(w, stem_len) > 1;
    if (remove && rule.match == "ion") {
      remove = stem_len > 0 &&
               (w[stem_len - 1] == 's' || w[stem_len - 1] == 't');
    }
    if (remove) w.resize(stem_len);
    return;
  }
}

// Final -e removal: always for measure > 1, and for measure 1 stems that
// do not end consonant-vowel-consonant.
void step_5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  const std::size_t stem_len = w.size() - 1;
  const std::size_t m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.pop_back();
}

// -ll -> -l for long stems.
void step_5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) &&
      w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string token) {
  for (char c : token) {
    if (c < 'a' || c > 'z') return token;
  }
  if (token.empty()) return token;

  step_1a(token);
  step_1b(token);
  step_1c(token);
  apply_rules(token, kStep2, 0);
  apply_rules(token, kStep3, 0);
  step_4(token);
  step_5a(token);
  step_5b(token);
  return token;
}

}  // namespace tmpca
