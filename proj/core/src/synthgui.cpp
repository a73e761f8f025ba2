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

#include "guiground/synthgui.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/random.hpp"
#include "guiground/text.hpp"

namespace guiground::synth {
namespace {

using C = ElementCategory;

constexpr double kCharWidth = 7.0;
constexpr double kLabelHeight = 14.0;
constexpr double kLabelGap = 8.0;
constexpr double kBlockGap = 40.0;
constexpr double kRowGap = 24.0;
constexpr double kMargin = 16.0;

// Role vocabularies. No word collides with a category keyword, an action
// verb or a stopword of the instruction extractor.
constexpr std::string_view kEnglishRoles[] = {
    "submit",   "cancel",   "save",      "apply",       "close",
    "next",     "back",     "delete",    "send",        "print",
    "refresh",  "upload",   "download",  "login",       "logout",
    "continue", "finish",   "retry",     "reset",       "help",
    "home",     "settings", "profile",   "account",     "name",
    "email",    "password", "address",   "city",        "country",
    "phone",    "username", "company",   "zipcode",     "comments",
    "description", "title", "notes",     "newsletter",  "terms",
    "remember", "notifications", "search", "advanced",  "general",
    "security", "privacy",  "billing",   "reports",     "history",
    "ok",       "preview",  "archive",   "share",       "export",
};

constexpr std::string_view kFrenchRoles[] = {
    "valider",    "annuler",     "enregistrer", "fermer",      "suivant",
    "précédent",  "supprimer",   "envoyer",     "imprimer",    "actualiser",
    "connexion",  "déconnexion", "continuer",   "terminer",    "réessayer",
    "réinitialiser", "aide",     "accueil",     "paramètres",  "profil",
    "compte",     "prénom",      "nom",         "courriel",    "adresse",
    "ville",      "pays",        "téléphone",   "identifiant", "société",
    "commentaires", "description", "titre",     "notes",       "newsletter",
    "conditions", "confidentialité", "sécurité", "facturation", "rapports",
    "historique", "recherche",   "général",     "avancé",      "notifications",
    "quantité",   "prix",        "total",       "âge",         "date",
};

bool is_labelable(ElementCategory c) {
  switch (c) {
    case C::kButton:
    case C::kTextField:
    case C::kTextArea:
    case C::kCheckbox:
    case C::kRadioButton:
    case C::kText:
    case C::kLink:
    case C::kList:
    case C::kTab:
      return true;
    default:
      return false;
  }
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = s[0] - 'a' + 'A';
  return s;
}

ElementCategory sample_category(Rng& rng, const std::array<double, kCategoryCount>& w,
                                bool labelable_only) {
  double total = 0.0;
  for (auto c : all_categories()) {
    if (labelable_only && !is_labelable(c)) continue;
    total += w[index_of(c)];
  }
  if (total <= 0.0) {
    throw Error(ErrorCode::kContractViolation,
                "no labelable category has positive weight");
  }
  double r = rng.uniform() * total;
  ElementCategory last = C::kButton;
  for (auto c : all_categories()) {
    if (labelable_only && !is_labelable(c)) continue;
    const double wc = w[index_of(c)];
    if (wc <= 0.0) continue;
    last = c;
    if (r < wc) return c;
    r -= wc;
  }
  return last;
}

struct Spec {
  ElementCategory category;
  std::string role;
};

enum class Side { kInside, kRight, kLeft, kNone };

Side label_side(ElementCategory c, bool has_label, LabelPlacement placement) {
  if (!has_label) return Side::kNone;
  switch (c) {
    case C::kCheckbox:
    case C::kRadioButton:
      return placement == LabelPlacement::kLeft ? Side::kLeft : Side::kRight;
    case C::kTextField:
    case C::kTextArea:
      if (placement == LabelPlacement::kLeft) return Side::kLeft;
      if (placement == LabelPlacement::kRight) return Side::kRight;
      return Side::kInside;
    default:
      return Side::kInside;
  }
}

// Widget size for a category given the label width (0 when unlabeled).
std::pair<double, double> widget_size(ElementCategory c, double tw, Side side) {
  const bool inside = side == Side::kInside;
  switch (c) {
    case C::kButton: return {std::max(64.0, tw + 24.0), 28.0};
    case C::kTab: return {std::max(72.0, tw + 24.0), 26.0};
    case C::kLink: return {tw + 4.0, 18.0};
    case C::kText: return {tw + 4.0, 18.0};
    case C::kList: return {std::max(120.0, tw + 40.0), 26.0};
    case C::kTextField: return {std::max(160.0, inside ? tw + 16.0 : 0.0), 26.0};
    case C::kTextArea: return {std::max(220.0, inside ? tw + 16.0 : 0.0), 80.0};
    case C::kCheckbox:
    case C::kRadioButton: return {16.0, 16.0};
    case C::kImage: return {std::max(48.0, tw + 8.0), 48.0};
    case C::kProgressBar: return {std::max(200.0, tw + 8.0), 18.0};
    case C::kDialogBox: return {std::max(260.0, tw + 8.0), 160.0};
    case C::kToolbar: return {std::max(360.0, tw + 8.0), 32.0};
    case C::kMenuBar: return {std::max(480.0, tw + 8.0), 24.0};
  }
  return {64.0, 28.0};
}

}  // namespace

std::array<double, kCategoryCount> SceneConfig::default_weights() {
  std::array<double, kCategoryCount> w{};
  // Pairs-dataset counts; the merged text field/area count is split with
  // the 439:8 ratio observed in the test split.
  w[index_of(C::kButton)] = 9156;
  w[index_of(C::kTab)] = 10361;
  w[index_of(C::kTextField)] = 9480.0 * 439.0 / 447.0;
  w[index_of(C::kTextArea)] = 9480.0 * 8.0 / 447.0;
  w[index_of(C::kLink)] = 8435;
  w[index_of(C::kCheckbox)] = 7994;
  w[index_of(C::kRadioButton)] = 4094;
  w[index_of(C::kList)] = 1913;
  return w;
}

void SceneConfig::check() const {
  bool any = false;
  for (double w : category_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kContractViolation,
                  "category weights must be finite and non-negative");
    }
    any = any || w > 0.0;
  }
  if (!any && (max_elements > 0 || ambiguity > 0)) {
    throw Error(ErrorCode::kContractViolation,
                "at least one category must be enabled");
  }
  if (min_elements > max_elements) {
    throw Error(ErrorCode::kContractViolation,
                "min_elements exceeds max_elements");
  }
  if (image_size.width <= 0 || image_size.height <= 0) {
    throw Error(ErrorCode::kContractViolation, "image size must be positive");
  }
}

SceneGraph generate_scene(std::uint64_t seed, const SceneConfig& config) {
  config.check();
  Rng rng(mix_seed(seed, 0x5CE0E));

  std::vector<std::string> pool;
  if (config.language == Language::kEnglish) {
    for (auto r : kEnglishRoles) pool.emplace_back(r);
  } else {
    for (auto r : kFrenchRoles) pool.emplace_back(r);
  }
  std::set<std::string> taken;
  for (const auto& f : config.fixed) taken.insert(text::normalize(f.role));
  std::erase_if(pool, [&](const std::string& r) {
    return taken.contains(text::normalize(r));
  });
  rng.shuffle(pool);
  std::size_t next_role = 0;
  auto take_role = [&]() -> std::string {
    if (next_role >= pool.size()) {
      throw Error(ErrorCode::kPlacementError,
                  "role vocabulary exhausted; request fewer elements");
    }
    return pool[next_role++];
  };

  std::size_t count = config.min_elements;
  if (config.max_elements > config.min_elements) {
    count += static_cast<std::size_t>(
        rng.index(config.max_elements - config.min_elements + 1));
  }
  count = std::max(count, 2 * config.ambiguity);

  std::vector<Spec> specs;
  for (const auto& f : config.fixed) specs.push_back({f.category, f.role});
  for (std::size_t g = 0; g < config.ambiguity; ++g) {
    const auto c = sample_category(rng, config.category_weights, true);
    const auto role = take_role();
    specs.push_back({c, role});
    specs.push_back({c, role});
  }
  for (std::size_t k = 2 * config.ambiguity; k < count; ++k) {
    const auto c = sample_category(rng, config.category_weights, false);
    specs.push_back({c, is_labelable(c) ? take_role() : std::string()});
  }
  rng.shuffle(specs);

  SceneGraph scene;
  scene.seed = seed;
  scene.image = "scene-" + std::to_string(seed) + ".png";
  scene.image_size = config.image_size;
  scene.language = config.language;

  const double width = static_cast<double>(config.image_size.width);
  const double height = static_cast<double>(config.image_size.height);
  double x = kMargin;
  double y = kMargin;
  double row_height = 0.0;

  for (const auto& spec : specs) {
    const bool has_label = !spec.role.empty();
    const std::string label = capitalize(spec.role);
    const double tw =
        has_label ? kCharWidth * static_cast<double>(text::utf8_length(label))
                  : 0.0;
    const Side side = label_side(spec.category, has_label, config.placement);
    const auto [ww, wh] = widget_size(spec.category, tw, side);
    const bool beside = side == Side::kLeft || side == Side::kRight;
    const double block_w = beside ? ww + kLabelGap + tw : ww;
    const double block_h = std::max(wh, beside ? kLabelHeight : 0.0);

    if (x + block_w > width - kMargin && x > kMargin) {
      x = kMargin;
      y += row_height + kRowGap;
      row_height = 0.0;
    }
    if (x + block_w > width - kMargin || y + block_h > height - kMargin) {
      throw Error(ErrorCode::kPlacementError,
                  "cannot place " + std::to_string(specs.size()) +
                      " elements on a " + std::to_string(config.image_size.width) +
                      "x" + std::to_string(config.image_size.height) +
                      " canvas");
    }

    SceneElement e;
    e.category = spec.category;
    e.role = spec.role;
    const double wx = side == Side::kLeft ? x + tw + kLabelGap : x;
    e.bbox = {wx, y, wx + ww, y + wh};
    if (has_label) {
      e.label_text = label;
      // Tall widgets keep the label near their top edge.
      const double ly =
          wh > 40.0 ? y + 6.0 : y + (wh - kLabelHeight) / 2.0;
      switch (side) {
        case Side::kInside: {
          const double lx = wx + (ww - tw) / 2.0;
          e.label_bbox = BBox{lx, ly, lx + tw, ly + kLabelHeight};
          break;
        }
        case Side::kRight:
          e.label_bbox = BBox{wx + ww + kLabelGap, ly,
                              wx + ww + kLabelGap + tw, ly + kLabelHeight};
          break;
        case Side::kLeft:
          e.label_bbox = BBox{x, ly, x + tw, ly + kLabelHeight};
          break;
        case Side::kNone:
          break;
      }
    }
    scene.elements.push_back(std::move(e));
    x += block_w + kBlockGap;
    row_height = std::max(row_height, block_h);
  }

  std::stable_sort(scene.elements.begin(), scene.elements.end(),
                   [](const SceneElement& a, const SceneElement& b) {
                     if (a.bbox.y_min != b.bbox.y_min) {
                       return a.bbox.y_min < b.bbox.y_min;
                     }
                     return a.bbox.x_min < b.bbox.x_min;
                   });
  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    scene.elements[i].id = static_cast<int>(i + 1);
  }
  return scene;
}

std::vector<std::string> expressions_for(ElementCategory category,
                                         const std::string& role,
                                         Language language) {
  auto english = [](ElementCategory c) -> std::pair<std::string_view, std::string_view> {
    switch (c) {
      case C::kButton: return {"button", "button to"};
      case C::kTextField: return {"field", "text field for"};
      case C::kTextArea: return {"text area", "text area for"};
      case C::kCheckbox: return {"checkbox", "checkbox for"};
      case C::kRadioButton: return {"radio button", "radio button for"};
      case C::kText: return {"text", "text saying"};
      case C::kLink: return {"link", "link to"};
      case C::kList: return {"list", "list of"};
      case C::kTab: return {"tab", "tab for"};
      case C::kDialogBox: return {"dialog box", "dialog box for"};
      case C::kImage: return {"image", "image of"};
      case C::kProgressBar: return {"progress bar", "progress bar for"};
      case C::kToolbar: return {"toolbar", "toolbar for"};
      case C::kMenuBar: return {"menu bar", "menu bar for"};
    }
    return {"element", "element"};
  };
  auto french = [](ElementCategory c) -> std::pair<std::string_view, std::string_view> {
    switch (c) {
      case C::kButton: return {"bouton", "bouton pour"};
      case C::kTextField: return {"champ", "champ de texte pour"};
      case C::kTextArea: return {"zone de texte", "zone de texte pour"};
      case C::kCheckbox: return {"case à cocher", "case à cocher pour"};
      case C::kRadioButton: return {"bouton radio", "bouton radio pour"};
      case C::kText: return {"texte", "le texte"};
      case C::kLink: return {"lien", "lien vers"};
      case C::kList: return {"liste", "liste des"};
      case C::kTab: return {"onglet", "onglet pour"};
      case C::kDialogBox: return {"boîte de dialogue", "boîte de dialogue pour"};
      case C::kImage: return {"image", "image de"};
      case C::kProgressBar: return {"barre de progression", "barre de progression pour"};
      case C::kToolbar: return {"barre d'outils", "barre d'outils pour"};
      case C::kMenuBar: return {"barre de menu", "barre de menu pour"};
    }
    return {"élément", "élément"};
  };

  const auto [noun, prefix] =
      language == Language::kEnglish ? english(category) : french(category);
  if (text::trim(role).empty()) return {std::string(noun)};

  const std::string r(role);
  if (language == Language::kEnglish) {
    return {r + " " + std::string(noun), r, std::string(prefix) + " " + r};
  }
  return {std::string(noun) + " " + r, r, std::string(prefix) + " " + r};
}

GroundTruth emit_ground_truth(const SceneGraph& scene) {
  GroundTruth gt;
  for (const auto& e : scene.elements) {
    gt.elements.push_back(
        {e.id, e.category, e.label_text.value_or(std::string()), e.bbox});
    if (!is_evaluation_category(e.category)) continue;
    gt.pairs.push_back({scene.image, scene.image_size, e.bbox, e.category,
                        expressions_for(e.category, e.role, scene.language)});
  }
  return gt;
}

void NoiseConfig::check() const {
  if (!(bbox_jitter_sigma >= 0.0)) {
    throw Error(ErrorCode::kContractViolation, "jitter sigma must be >= 0");
  }
  for (double p : {drop_probability, ocr_error_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kContractViolation,
                  "probabilities must lie in [0, 1]");
    }
  }
}

Fixtures emit_fixtures(const SceneGraph& scene, const NoiseConfig& noise) {
  noise.check();
  Rng rng(mix_seed(scene.seed, 0xF1C7));
  const double w = static_cast<double>(scene.image_size.width);
  const double h = static_cast<double>(scene.image_size.height);

  auto jitter = [&](BBox b) {
    if (noise.bbox_jitter_sigma <= 0.0) return b;
    auto shift = [&](double v, double hi) {
      return std::clamp(v + noise.bbox_jitter_sigma * rng.normal(), 0.0, hi);
    };
    b.x_min = shift(b.x_min, w);
    b.y_min = shift(b.y_min, h);
    b.x_max = shift(b.x_max, w);
    b.y_max = shift(b.y_max, h);
    if (b.x_min > b.x_max) std::swap(b.x_min, b.x_max);
    if (b.y_min > b.y_max) std::swap(b.y_min, b.y_max);
    return b;
  };

  auto corrupt = [&](std::string s) {
    if (!rng.bernoulli(noise.ocr_error_rate)) return s;
    std::vector<std::size_t> letters;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) letters.push_back(i);
    }
    if (letters.empty()) return s;
    const std::size_t pos = letters[rng.index(letters.size())];
    const char lower = static_cast<char>(s[pos] | 0x20);
    char repl = static_cast<char>('a' + rng.index(25));
    if (repl >= lower) ++repl;
    s[pos] = repl;
    return s;
  };

  Fixtures out;
  out.detections.image = scene.image;
  out.spans.image = scene.image;
  for (const auto& e : scene.elements) {
    const bool dropped = rng.bernoulli(noise.drop_probability);
    const BBox det_box = jitter(e.bbox);
    if (!dropped) {
      out.detections.detections.push_back({e.category, det_box, 1.0});
    }
    if (e.label_text && e.label_bbox) {
      const BBox span_box = jitter(*e.label_bbox);
      out.spans.spans.push_back({corrupt(*e.label_text), span_box, 1.0});
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const SceneGraph& scene) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : scene.elements) {
    nlohmann::json je{{"id", e.id},
                      {"category", e.category},
                      {"role", e.role},
                      {"bbox", e.bbox}};
    je["label_text"] = e.label_text ? nlohmann::json(*e.label_text)
                                    : nlohmann::json(nullptr);
    je["label_bbox"] = e.label_bbox ? nlohmann::json(*e.label_bbox)
                                    : nlohmann::json(nullptr);
    elements.push_back(std::move(je));
  }
  j = nlohmann::json{
      {"seed", scene.seed},
      {"image", scene.image},
      {"size", {scene.image_size.width, scene.image_size.height}},
      {"language", scene.language == Language::kEnglish ? "en" : "fr"},
      {"elements", std::move(elements)}};
}

}  // namespace guiground::synth
