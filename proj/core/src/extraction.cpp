// Copyright 2026 The guiground Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "guiground/error.hpp"
#include "guiground/pipeline.hpp"
#include "guiground/text.hpp"

namespace guiground {
namespace {

using C = ElementCategory;

struct CategoryPhrase {
  std::string_view phrase;  // folded, space separated
  ElementCategory category;
};

// Multi-word phrases are tried before their single-word prefixes.
constexpr CategoryPhrase kCategoryPhrases[] = {
    // English
    {"text field", C::kTextField},
    {"text box", C::kTextField},
    {"textbox", C::kTextField},
    {"input field", C::kTextField},
    {"input box", C::kTextField},
    {"field", C::kTextField},
    {"input", C::kTextField},
    {"text area", C::kTextArea},
    {"textarea", C::kTextArea},
    {"checkbox", C::kCheckbox},
    {"check box", C::kCheckbox},
    {"tick box", C::kCheckbox},
    {"radio button", C::kRadioButton},
    {"option button", C::kRadioButton},
    {"radio", C::kRadioButton},
    {"button", C::kButton},
    {"btn", C::kButton},
    {"hyperlink", C::kLink},
    {"link", C::kLink},
    {"drop down", C::kList},
    {"dropdown", C::kList},
    {"combo box", C::kList},
    {"combobox", C::kList},
    {"list", C::kList},
    {"tab", C::kTab},
    {"dialog box", C::kDialogBox},
    {"dialog", C::kDialogBox},
    {"popup", C::kDialogBox},
    {"image", C::kImage},
    {"icon", C::kImage},
    {"picture", C::kImage},
    {"progress bar", C::kProgressBar},
    {"toolbar", C::kToolbar},
    {"tool bar", C::kToolbar},
    {"menu bar", C::kMenuBar},
    {"menubar", C::kMenuBar},
    {"menu", C::kMenuBar},
    {"text", C::kText},
    {"label", C::kText},
    // French
    {"champ de texte", C::kTextField},
    {"champ de saisie", C::kTextField},
    {"zone de saisie", C::kTextField},
    {"champ", C::kTextField},
    {"zone de texte", C::kTextArea},
    {"case a cocher", C::kCheckbox},
    {"bouton radio", C::kRadioButton},
    {"bouton d option", C::kRadioButton},
    {"bouton", C::kButton},
    {"hyperlien", C::kLink},
    {"lien", C::kLink},
    {"liste deroulante", C::kList},
    {"menu deroulant", C::kList},
    {"liste", C::kList},
    {"onglet", C::kTab},
    {"boite de dialogue", C::kDialogBox},
    {"icone", C::kImage},
    {"barre de progression", C::kProgressBar},
    {"barre d outils", C::kToolbar},
    {"barre de menu", C::kMenuBar},
    {"texte", C::kText},
    {"libelle", C::kText},
    {"etiquette", C::kText},
};

const std::unordered_set<std::string_view>& action_verbs() {
  static const std::unordered_set<std::string_view> kVerbs = {
      // English
      "click", "clic", "double", "tap", "press", "push", "hit", "select",
      "choose", "pick", "check", "uncheck", "tick", "untick", "toggle", "go",
      "navigate", "switch", "type", "enter", "write", "fill", "put", "insert",
      // French
      "cliquer", "cliquez", "clique", "appuyer", "appuyez", "appuie",
      "selectionner", "selectionnez", "selectionne", "choisir", "choisissez",
      "cocher", "cochez", "coche", "decocher", "decochez", "saisir",
      "saisissez", "saisis", "taper", "tapez", "tape", "entrer", "entrez",
      "ecrire", "ecrivez", "remplir", "remplissez", "aller", "allez",
  };
  return kVerbs;
}

// Verbs whose direct object is a value to type rather than a role word.
const std::unordered_set<std::string_view>& value_verbs() {
  static const std::unordered_set<std::string_view> kVerbs = {
      "type",   "enter",     "write",   "fill",   "put",    "insert",
      "saisir", "saisissez", "saisis",  "taper",  "tapez",  "tape",
      "entrer", "entrez",    "ecrire",  "ecrivez", "remplir", "remplissez",
  };
  return kVerbs;
}

// Prepositions that end a typed-in value ("type john IN the name field").
const std::unordered_set<std::string_view>& value_delimiters() {
  static const std::unordered_set<std::string_view> kDelims = {
      "in", "into", "inside", "on", "onto", "within", "dans", "sur", "au",
  };
  return kDelims;
}

const std::unordered_set<std::string_view>& stopwords() {
  static const std::unordered_set<std::string_view> kStop = {
      // English
      "please", "kindly", "the", "a", "an", "in", "into", "inside", "on",
      "onto", "to", "for", "of", "at", "with", "within", "and", "or", "this",
      "that", "these", "those", "my", "your", "its", "it", "then", "now",
      "named", "called", "labeled", "labelled", "titled", "saying", "says",
      "which", "is", "element", "item", "there", "here", "from", "by", "up",
      "me", "you", "i", "want", "would", "like", "can", "could", "should",
      // French
      "le", "la", "les", "l", "un", "une", "des", "de", "du", "d", "au",
      "aux", "sur", "dans", "pour", "avec", "et", "ou", "ce", "cet", "cette",
      "ces", "mon", "ma", "mes", "votre", "vos", "son", "sa", "ses", "s",
      "il", "vous", "plait", "svp", "nomme", "nommee", "intitule",
      "intitulee", "appele", "appelee", "qui", "est", "puis", "vers", "en",
      "element",
  };
  return kStop;
}

std::vector<std::string> split_phrase(std::string_view phrase) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= phrase.size()) {
    const auto space = phrase.find(' ', start);
    const auto end = space == std::string_view::npos ? phrase.size() : space;
    out.emplace_back(phrase.substr(start, end - start));
    if (space == std::string_view::npos) break;
    start = space + 1;
  }
  return out;
}

struct CompiledPhrase {
  std::vector<std::string> tokens;
  ElementCategory category;
};

const std::vector<CompiledPhrase>& compiled_phrases() {
  static const std::vector<CompiledPhrase> kCompiled = [] {
    std::vector<CompiledPhrase> out;
    for (const auto& p : kCategoryPhrases) {
      out.push_back({split_phrase(p.phrase), p.category});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CompiledPhrase& a, const CompiledPhrase& b) {
                       return a.tokens.size() > b.tokens.size();
                     });
    return out;
  }();
  return kCompiled;
}

// Length of the category phrase starting at `pos`, 0 if none.
std::size_t match_category(const std::vector<std::string>& tokens,
                           std::size_t pos, ElementCategory& category) {
  for (const auto& p : compiled_phrases()) {
    if (pos + p.tokens.size() > tokens.size()) continue;
    if (std::equal(p.tokens.begin(), p.tokens.end(), tokens.begin() + pos)) {
      category = p.category;
      return p.tokens.size();
    }
  }
  return 0;
}

}  // namespace

TargetDescriptor extract_target(std::string_view instruction) {
  if (text::trim(instruction).empty()) {
    throw Error(ErrorCode::kEmptyInstruction, "instruction is empty");
  }
  const auto tokens = text::tokenize(instruction);

  // Mark typed-in values: tokens between a value verb (optionally followed
  // by "in") and the next delimiter, plus everything after "with".
  std::vector<bool> is_value(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!value_verbs().contains(tokens[i])) continue;
    std::size_t start = i + 1;
    if (start < tokens.size() && (tokens[start] == "in" || tokens[start] == "into")) {
      ++start;
    }
    std::size_t end = start;
    while (end < tokens.size() && !value_delimiters().contains(tokens[end])) {
      ++end;
    }
    if (end < tokens.size() && end > start) {
      for (std::size_t k = start; k < end; ++k) is_value[k] = true;
    }
    for (std::size_t k = i + 1; k < tokens.size(); ++k) {
      if (tokens[k] == "with" || tokens[k] == "avec") {
        for (std::size_t m = k + 1; m < tokens.size(); ++m) is_value[m] = true;
        break;
      }
    }
  }

  TargetDescriptor target;
  std::string role;
  for (std::size_t i = 0; i < tokens.size();) {
    if (is_value[i]) {
      ++i;
      continue;
    }
    ElementCategory category{};
    if (const auto n = match_category(tokens, i, category); n > 0) {
      if (!target.category) target.category = category;
      i += n;
      continue;
    }
    const auto& tok = tokens[i];
    if (!action_verbs().contains(tok) && !stopwords().contains(tok)) {
      if (!role.empty()) role.push_back(' ');
      role += tok;
    }
    ++i;
  }
  target.role = std::move(role);

  if (!target.category && target.role.empty()) {
    throw Error(ErrorCode::kUnresolvableInstruction,
                "no element type or role found in \"" +
                    std::string(instruction) + "\"");
  }
  return target;
}

}  // namespace guiground
