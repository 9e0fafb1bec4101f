#include "timelink/lexicons.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "timelink/common.hpp"

namespace timelink {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = line.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, at - start));
    start = at + 1;
  }
}

std::vector<std::string> space_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Calls row() for each non-comment, non-blank line with its columns.
template <typename F>
void for_rows(const std::string& text, int want_cols, F&& row) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (want_cols > 0 && cols.size() != static_cast<std::size_t>(want_cols)) {
      throw Error(Error::Kind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                          std::to_string(want_cols) + " columns, got " +
                                          std::to_string(cols.size()));
    }
    row(cols, line_no);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename T, typename Parse>
T load_table(const std::string& path, Parse&& parse) {
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

}  // namespace

std::optional<std::string> SignalLexicon::cluster_of(
    const std::vector<std::string>& tokens) const {
  for (const auto& entry : entries) {
    if (entry.tokens == tokens) return entry.cluster;
  }
  return std::nullopt;
}

std::vector<SignalMatch> SignalLexicon::find(const std::vector<std::string>& forms) const {
  std::vector<std::string> low;
  low.reserve(forms.size());
  for (const auto& f : forms) low.push_back(lower(f));

  std::vector<SignalMatch> matches;
  std::size_t at = 0;
  while (at < low.size()) {
    const Entry* hit = nullptr;
    for (const auto& entry : entries) {
      if (entry.tokens.size() > low.size() - at) continue;
      if (std::equal(entry.tokens.begin(), entry.tokens.end(), low.begin() + at)) {
        hit = &entry;
        break;  // entries are longest-first
      }
    }
    if (hit != nullptr) {
      matches.push_back({static_cast<int>(at),
                         static_cast<int>(at + hit->tokens.size() - 1), hit->cluster});
      at += hit->tokens.size();
    } else {
      ++at;
    }
  }
  return matches;
}

SignalLexicon parse_signal_lexicon(const std::string& text) {
  SignalLexicon lex;
  for_rows(text, 2, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    auto tokens = space_tokens(lower(cols[0]));
    if (tokens.empty()) {
      throw Error(Error::Kind::Parse, "line " + std::to_string(line_no) + ": empty signal text");
    }
    lex.entries.push_back({std::move(tokens), cols[1]});
  });
  std::stable_sort(lex.entries.begin(), lex.entries.end(),
                   [](const SignalLexicon::Entry& a, const SignalLexicon::Entry& b) {
                     return a.tokens.size() > b.tokens.size();
                   });
  return lex;
}

std::string to_string(PrepSense s) {
  switch (s) {
    case PrepSense::TimePoint: return "TimePoint";
    case PrepSense::TimePreceding: return "TimePreceding";
    case PrepSense::TimeFollowing: return "TimeFollowing";
    case PrepSense::Duration: return "Duration";
    case PrepSense::StartTime: return "StartTime";
    case PrepSense::EndTime: return "EndTime";
  }
  return "";
}

std::map<std::string, PrepSense> parse_preposition_senses(const std::string& text) {
  std::map<std::string, PrepSense> out;
  for_rows(text, 2, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    static const std::map<std::string, PrepSense> kSenses = {
        {"TimePoint", PrepSense::TimePoint},
        {"TimePreceding", PrepSense::TimePreceding},
        {"TimeFollowing", PrepSense::TimeFollowing},
        {"Duration", PrepSense::Duration},
        {"StartTime", PrepSense::StartTime},
        {"EndTime", PrepSense::EndTime},
    };
    auto it = kSenses.find(cols[1]);
    if (it == kSenses.end()) {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown sense '" + cols[1] + "'");
    }
    out[lower(cols[0])] = it->second;
  });
  return out;
}

std::map<std::string, AspectualKind> parse_aspectual_verbs(const std::string& text) {
  std::map<std::string, AspectualKind> out;
  for_rows(text, 2, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    AspectualKind kind;
    if (cols[1] == "INITIATION") {
      kind = AspectualKind::Initiation;
    } else if (cols[1] == "TERMINATION") {
      kind = AspectualKind::Termination;
    } else if (cols[1] == "CONTINUATION") {
      kind = AspectualKind::Continuation;
    } else {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown category '" + cols[1] + "'");
    }
    out[lower(cols[0])] = kind;
  });
  return out;
}

std::vector<TenseRule> parse_tense_rules(const std::string& text) {
  std::vector<TenseRule> rules;
  for_rows(text, 5, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    TenseRule rule;
    if (cols[0] == "REPORTING") {
      rule.context = TenseRuleContext::Reporting;
    } else if (cols[0] == "REICHENBACH") {
      rule.context = TenseRuleContext::Reichenbach;
    } else {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown context '" + cols[0] + "'");
    }
    auto tense_of = [&](const std::string& s) {
      auto t = tense_from(s);
      if (!t.has_value()) {
        throw Error(Error::Kind::Parse,
                    "line " + std::to_string(line_no) + ": unknown tense '" + s + "'");
      }
      return *t;
    };
    rule.governing = tense_of(cols[1]);
    rule.governed = tense_of(cols[2]);
    if (cols[3] != "*") {
      auto a = aspect_from(cols[3]);
      if (!a.has_value()) {
        throw Error(Error::Kind::Parse,
                    "line " + std::to_string(line_no) + ": unknown aspect '" + cols[3] + "'");
      }
      rule.governed_aspect = *a;
    }
    auto label = rel_type_from(cols[4]);
    if (!label.has_value()) {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown label '" + cols[4] + "'");
    }
    rule.label = *label;
    rules.push_back(rule);
  });
  return rules;
}

std::string to_string(CausalCategory c) {
  switch (c) {
    case CausalCategory::Affect: return "AFFECT";
    case CausalCategory::Cause: return "CAUSE";
    case CausalCategory::CauseAmbiguous: return "CAUSE-AMBIGUOUS";
    case CausalCategory::Enable: return "ENABLE";
    case CausalCategory::EnableAmbiguous: return "ENABLE-AMBIGUOUS";
    case CausalCategory::Prevent: return "PREVENT";
    case CausalCategory::PreventAmbiguous: return "PREVENT-AMBIGUOUS";
    case CausalCategory::Link: return "LINK";
  }
  return "";
}

bool is_ambiguous(CausalCategory c) {
  return c == CausalCategory::CauseAmbiguous || c == CausalCategory::EnableAmbiguous ||
         c == CausalCategory::PreventAmbiguous;
}

std::vector<const CausalVerbEntry*> CausalVerbLexicon::find(const std::string& lemma) const {
  std::vector<const CausalVerbEntry*> out;
  for (const auto& entry : entries) {
    if (entry.lemma == lemma) out.push_back(&entry);
  }
  return out;
}

CausalVerbLexicon parse_causal_verbs(const std::string& text) {
  CausalVerbLexicon lex;
  for_rows(text, 2, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    CausalVerbEntry entry;
    std::string word = lower(cols[0]);
    std::size_t dash = word.find('-');
    if (dash != std::string::npos) {
      entry.lemma = word.substr(0, dash);
      entry.particle = word.substr(dash + 1);
    } else {
      entry.lemma = word;
    }
    const std::string& cat = cols[1];
    if (cat == "AFFECT") {
      entry.category = CausalCategory::Affect;
    } else if (cat == "CAUSE") {
      entry.category = CausalCategory::Cause;
    } else if (cat == "CAUSE-AMBIGUOUS") {
      entry.category = CausalCategory::CauseAmbiguous;
    } else if (cat == "ENABLE") {
      entry.category = CausalCategory::Enable;
    } else if (cat == "ENABLE-AMBIGUOUS") {
      entry.category = CausalCategory::EnableAmbiguous;
    } else if (cat == "PREVENT") {
      entry.category = CausalCategory::Prevent;
    } else if (cat == "PREVENT-AMBIGUOUS") {
      entry.category = CausalCategory::PreventAmbiguous;
    } else if (cat == "LINK") {
      entry.category = CausalCategory::Link;
      entry.direction = CausalLabel::Clink;
    } else if (cat == "LINK-R") {
      entry.category = CausalCategory::Link;
      entry.direction = CausalLabel::ClinkR;
    } else {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown category '" + cat + "'");
    }
    lex.entries.push_back(std::move(entry));
  });
  return lex;
}

std::vector<SignalMatch> CausalSignalLexicon::find(
    const std::vector<std::string>& forms) const {
  std::vector<std::string> low;
  low.reserve(forms.size());
  for (const auto& f : forms) low.push_back(lower(f));

  // Joined sentence plus char-position -> token index map for regex hits.
  std::string joined;
  std::vector<int> tok_at;
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (i > 0) {
      joined += ' ';
      tok_at.push_back(static_cast<int>(i));  // separator belongs to the next token
    }
    joined += low[i];
    tok_at.insert(tok_at.end(), low[i].size(), static_cast<int>(i));
  }

  auto token_start = [&](std::size_t pos) { return pos == 0 || joined[pos - 1] == ' '; };
  auto token_end = [&](std::size_t pos) { return pos == joined.size() || joined[pos] == ' '; };

  std::vector<SignalMatch> matches;
  for (const auto& entry : entries) {
    if (entry.is_regex) {
      auto begin = std::sregex_iterator(joined.begin(), joined.end(), entry.compiled);
      for (auto it = begin; it != std::sregex_iterator(); ++it) {
        std::size_t pos = static_cast<std::size_t>(it->position());
        std::size_t end = pos + static_cast<std::size_t>(it->length());
        if (end == pos || !token_start(pos) || !token_end(end)) continue;
        matches.push_back({tok_at[pos], tok_at[end - 1], entry.cluster});
      }
    } else {
      auto pat = space_tokens(entry.pattern);
      if (pat.empty() || pat.size() > low.size()) continue;
      for (std::size_t at = 0; at + pat.size() <= low.size(); ++at) {
        if (std::equal(pat.begin(), pat.end(), low.begin() + at)) {
          matches.push_back({static_cast<int>(at), static_cast<int>(at + pat.size() - 1),
                             entry.cluster});
        }
      }
    }
  }
  std::sort(matches.begin(), matches.end(), [](const SignalMatch& a, const SignalMatch& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.last != b.last) return a.last > b.last;  // longer match first
    return a.cluster < b.cluster;
  });
  matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
  return matches;
}

CausalSignalLexicon parse_causal_signals(const std::string& text) {
  CausalSignalLexicon lex;
  for_rows(text, 3, [&](const std::vector<std::string>& cols, std::size_t line_no) {
    CausalSignalLexicon::Entry entry;
    if (cols[0] == "regex") {
      entry.is_regex = true;
    } else if (cols[0] == "literal") {
      entry.is_regex = false;
    } else {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": unknown kind '" + cols[0] + "'");
    }
    entry.pattern = lower(cols[1]);
    entry.cluster = cols[2];
    if (entry.is_regex) {
      try {
        entry.compiled = std::regex(entry.pattern, std::regex::icase | std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        throw Error(Error::Kind::Parse, "line " + std::to_string(line_no) + ": bad pattern '" +
                                            entry.pattern + "': " + e.what());
      }
    }
    lex.entries.push_back(std::move(entry));
  });
  return lex;
}

std::vector<std::string> parse_label_list(const std::string& text) {
  std::vector<std::string> out;
  for_rows(text, 1, [&](const std::vector<std::string>& cols, std::size_t) {
    out.push_back(cols[0]);
  });
  return out;
}

Lexicons load_lexicons(const std::string& dir) {
  Lexicons lex;
  lex.event_signals =
      load_table<SignalLexicon>(dir + "/temporal_signals_event.tsv", parse_signal_lexicon);
  lex.timex_signals =
      load_table<SignalLexicon>(dir + "/temporal_signals_timex.tsv", parse_signal_lexicon);
  lex.preposition_senses = load_table<std::map<std::string, PrepSense>>(
      dir + "/preposition_senses.tsv", parse_preposition_senses);
  lex.aspectual_verbs = load_table<std::map<std::string, AspectualKind>>(
      dir + "/aspectual_verbs.tsv", parse_aspectual_verbs);
  lex.tense_rules =
      load_table<std::vector<TenseRule>>(dir + "/tense_rules.tsv", parse_tense_rules);
  lex.causal_verbs =
      load_table<CausalVerbLexicon>(dir + "/causal_verbs.tsv", parse_causal_verbs);
  lex.causal_signals =
      load_table<CausalSignalLexicon>(dir + "/causal_signals.tsv", parse_causal_signals);
  lex.dep_path_whitelist =
      load_table<std::vector<std::string>>(dir + "/dep_path_whitelist.tsv", parse_label_list);
  lex.signal_dep_labels =
      load_table<std::vector<std::string>>(dir + "/signal_dep_labels.tsv", parse_label_list);
  return lex;
}

}  // namespace timelink
