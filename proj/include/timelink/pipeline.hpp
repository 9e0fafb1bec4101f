// End-to-end orchestration: rule sieve, one reasoner pass, linear classifiers
// with cross-fed labels, causal extraction, and causal post-editing; plus the
// consistency-filter/deduction workflow that prepares training corpora.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "timelink/allen.hpp"
#include "timelink/annotation.hpp"
#include "timelink/causal.hpp"
#include "timelink/features.hpp"
#include "timelink/lexicons.hpp"
#include "timelink/linear.hpp"
#include "timelink/reasoner.hpp"
#include "timelink/timeml.hpp"

namespace timelink {

// When the temporal reasoner runs between the rule and ML sieves. OnDemand
// deduces only when the regression estimate falls below the threshold.
enum class ReasoningMode : std::uint8_t { Always, Never, OnDemand };

const char* to_string(ReasoningMode m);
std::optional<ReasoningMode> reasoning_mode_from(std::string_view s);

struct PipelineConfig {
  std::vector<MappingProfile> profiles;  // tried in order; empty = strict chain
  ReasoningMode reasoning = ReasoningMode::OnDemand;
  double deduction_threshold = 100.0;
  RegressionCoeffs coeffs;
  double clink_threshold = 1.75;   // classifier confidence floor for propagation
  bool simplify_labels = true;     // collapse rare labels before training
  bool emit_tt = false;            // keep new timex-timex links in output
  bool emit_deduced = true;        // keep reasoner links in output

  // Profiles to try, falling back to the strict chain when none configured.
  const std::vector<MappingProfile>& effective_profiles() const;

  // Threshold nonnegative, coefficients and clink threshold finite.
  // Throws Error(Config).
  void validate() const;
};

// Line-oriented "key value" config with '#' comments. Unknown keys, bad
// values, and invariant violations throw Error(Config); load throws Error(Io)
// on unreadable files. render(parse(x)) is stable.
PipelineConfig parse_config(const std::string& text);
std::string render_config(const PipelineConfig& cfg);
PipelineConfig load_config(const std::string& path);

// The four trained classifiers with their feature layouts.
struct ModelBundle {
  FeatureEncoders ed_enc, et_enc, ee_enc, clink_enc;
  LinearModel ed, et, ee, clink;
};

// Bundle directory: manifest.txt naming the per-model encoder and weight
// files. save creates the directory; load throws Error(Io) on missing files
// and Error(Format) on a bad manifest.
void save_bundle(const std::string& dir, const ModelBundle& bundle);
ModelBundle load_bundle(const std::string& dir, const Lexicons& lex);

struct AnnotateReport {
  bool rule_consistent = true;            // rule output closed under a profile
  std::optional<std::string> profile_used;
  bool deduced = false;                   // reasoner pass actually ran
  std::size_t rule_links = 0;
  std::size_t deduced_links = 0;
  std::size_t classified_links = 0;
  std::size_t clinks = 0;
};

// Stage order: candidate pairs, rule sieve, consistency check plus deduction
// per the reasoning mode, then the E-D / E-T / E-E classifiers over pairs no
// earlier stage labeled (timex-DCT labels feed the E-T featurizer, event-DCT
// labels the E-E featurizer), causal verb rules, the CLINK classifier with
// the pair's temporal label as a feature, and causal post-editing. Rule and
// deduced labels are never re-labeled by a classifier; post-editing wins over
// the E-E classifier. Inconsistent rule output flags the report and the ML
// sieve runs without deduced links. New links get fresh numeric lids in emit
// order: input, rule, deduced, classifier, post-edit. Deterministic.
Document annotate(const AnnotatedDocument& ad, const ModelBundle& models,
                  const Lexicons& lex, const PipelineConfig& cfg = {},
                  AnnotateReport* report = nullptr);

struct PrepareReport {
  std::size_t input_docs = 0;
  std::size_t discarded = 0;
  std::vector<std::string> discarded_ids;
  std::size_t docs_deduced = 0;
  std::size_t deduced_links = 0;
};

// Training-corpus workflow: drop documents inconsistent under every profile;
// for each survivor estimate the deducible-link count and, when the estimate
// falls below the threshold, append the deduced TLinks with fresh lids.
std::vector<Document> prepare_training(const std::vector<Document>& corpus,
                                       const PipelineConfig& cfg = {},
                                       PrepareReport* report = nullptr);

// Fits encoders over every candidate pair of each kind, builds training
// examples from the gold links (labels collapsed via simplify_label when
// configured; feature label slots always carry raw labels), and trains the
// four models with the given seed. The causal model trains on filtered
// candidates labeled CLINK / CLINK-R / NO-REL against the gold CLinks.
// A kind with no labeled pairs throws Error(Training) naming the model.
ModelBundle train_pipeline(const std::vector<AnnotatedDocument>& corpus,
                           const Lexicons& lex, const PipelineConfig& cfg = {},
                           std::uint64_t seed = 0);

// Dense-inventory compatibility label for an emitted link: collapses the
// inventory onto BEFORE / AFTER / SIMULTANEOUS / INCLUDES / IS_INCLUDED and
// recovers VAGUE for adjective event-DCT pairs and for event-timex pairs
// whose timex value is a *_REF reference.
std::string dense_label(const TLink& link, const Document& doc);

}  // namespace timelink
