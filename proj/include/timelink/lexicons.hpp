// Bundled lexicon tables: temporal signals, preposition senses, aspectual
// verbs, tense rules, causal verbs, causal signals, dependency whitelists.
#pragma once

#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "timelink/labels.hpp"
#include "timelink/timeml.hpp"

namespace timelink {

// A signal occurrence over a sentence token window; indices are relative to
// the token sequence handed to find().
struct SignalMatch {
  int first = 0;
  int last = 0;
  std::string cluster;

  friend bool operator==(const SignalMatch&, const SignalMatch&) = default;
};

// Clustered temporal signal list. Matching is greedy longest-first over
// lowercased token sequences, left to right, non-overlapping.
struct SignalLexicon {
  struct Entry {
    std::vector<std::string> tokens;
    std::string cluster;
  };
  std::vector<Entry> entries;  // sorted longest-first

  std::optional<std::string> cluster_of(const std::vector<std::string>& tokens) const;
  std::vector<SignalMatch> find(const std::vector<std::string>& forms) const;
};

enum class PrepSense { TimePoint, TimePreceding, TimeFollowing, Duration, StartTime, EndTime };
std::string to_string(PrepSense s);

enum class AspectualKind { Initiation, Termination, Continuation };

enum class TenseRuleContext { Reporting, Reichenbach };

// One row of the event-event tense rule table. Wildcard fields are absent.
struct TenseRule {
  TenseRuleContext context = TenseRuleContext::Reporting;
  Tense governing = Tense::None;
  Tense governed = Tense::None;
  std::optional<Aspect> governed_aspect;  // empty = any
  RelType label = RelType::Before;
};

enum class CausalCategory {
  Affect,
  Cause,
  CauseAmbiguous,
  Enable,
  EnableAmbiguous,
  Prevent,
  PreventAmbiguous,
  Link,
};
std::string to_string(CausalCategory c);
bool is_ambiguous(CausalCategory c);

// Causal verb entry; multi-word entries carry the particle separately.
// direction is Clink except for LINK verbs marked LINK-R.
struct CausalVerbEntry {
  std::string lemma;
  std::string particle;  // empty for single-word verbs
  CausalCategory category = CausalCategory::Cause;
  CausalLabel direction = CausalLabel::Clink;
};

struct CausalVerbLexicon {
  std::vector<CausalVerbEntry> entries;

  // All entries for a lemma, file order (first entry wins on category clashes).
  std::vector<const CausalVerbEntry*> find(const std::string& lemma) const;
};

// Causal signal list: literal token sequences plus case-insensitive regular
// expressions applied to the space-joined lowercased sentence.
struct CausalSignalLexicon {
  struct Entry {
    bool is_regex = false;
    std::string pattern;
    std::string cluster;
    std::regex compiled;  // regex entries only
  };
  std::vector<Entry> entries;

  std::vector<SignalMatch> find(const std::vector<std::string>& forms) const;
};

struct Lexicons {
  SignalLexicon event_signals;
  SignalLexicon timex_signals;
  std::map<std::string, PrepSense> preposition_senses;
  std::map<std::string, AspectualKind> aspectual_verbs;
  std::vector<TenseRule> tense_rules;
  CausalVerbLexicon causal_verbs;
  CausalSignalLexicon causal_signals;
  std::vector<std::string> dep_path_whitelist;
  std::vector<std::string> signal_dep_labels;
};

// Loads every table from a data directory (the bundled ./data layout).
Lexicons load_lexicons(const std::string& dir);

// Individual parsers, exposed for tests and custom tables.
SignalLexicon parse_signal_lexicon(const std::string& text);
std::map<std::string, PrepSense> parse_preposition_senses(const std::string& text);
std::map<std::string, AspectualKind> parse_aspectual_verbs(const std::string& text);
std::vector<TenseRule> parse_tense_rules(const std::string& text);
CausalVerbLexicon parse_causal_verbs(const std::string& text);
CausalSignalLexicon parse_causal_signals(const std::string& text);
std::vector<std::string> parse_label_list(const std::string& text);

}  // namespace timelink
