#include "timelink/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "timelink/common.hpp"
#include "timelink/labels.hpp"
#include "timelink/sieves.hpp"

namespace timelink {

namespace {

// Link endpoints may be eiids, tids, or eids; graph nodes are eiids and tids.
std::optional<std::string> node_of(const Document& doc, const std::string& id) {
  if (doc.find_timex(id)) return id;
  if (doc.find_instance(id)) return id;
  auto instances = doc.instances_of(id);
  if (instances.size() == 1) return instances[0]->eiid;
  return std::nullopt;
}

std::string pair_key(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return a + '\x1f' + b;
}

using OrientedLabels = std::map<std::pair<std::string, std::string>, RelType>;

void note_link(const Document& doc, const TLink& link,
               std::unordered_set<std::string>& labeled, OrientedLabels& oriented) {
  auto s = node_of(doc, link.source);
  auto t = node_of(doc, link.target);
  if (!s || !t) return;
  labeled.insert(pair_key(*s, *t));
  oriented[{*s, *t}] = link.rel;
  oriented[{*t, *s}] = converse(link.rel);
}

std::optional<RelType> label_of(const OrientedLabels& oriented, const std::string& a,
                                const std::string& b) {
  auto it = oriented.find({a, b});
  if (it == oriented.end()) return std::nullopt;
  return it->second;
}

const MappingProfile* profile_named(const std::vector<MappingProfile>& profiles,
                                    const std::optional<std::string>& name) {
  if (!name) return nullptr;
  for (const MappingProfile& p : profiles)
    if (p.name == *name) return &p;
  return nullptr;
}

RelType classifier_label(const LinearModel& model, const FeatureEncoders& enc,
                         const EntityPair& pair, const AnnotatedDocument& ad,
                         const RuleExtras& extras) {
  Prediction p = predict(model, featurize(pair, ad, enc, extras));
  auto rel = rel_type_from(p.label);
  if (!rel)
    throw Error(Error::Kind::Value,
                "model label '" + p.label + "' is not a relation label");
  return *rel;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Error::Kind::Config, "config key '" + key + "': bad number '" + text + "'");
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw Error(Error::Kind::Config,
              "config key '" + key + "': expected true or false, got '" + text + "'");
}

constexpr const char* kBundleMagic = "timelink-bundle 1";
constexpr const char* kBundleKinds[4] = {"ed", "et", "ee", "clink"};

}  // namespace

const char* to_string(ReasoningMode m) {
  switch (m) {
    case ReasoningMode::Always: return "always";
    case ReasoningMode::Never: return "never";
    case ReasoningMode::OnDemand: return "on-demand";
  }
  return "?";
}

std::optional<ReasoningMode> reasoning_mode_from(std::string_view s) {
  if (s == "always") return ReasoningMode::Always;
  if (s == "never") return ReasoningMode::Never;
  if (s == "on-demand") return ReasoningMode::OnDemand;
  return std::nullopt;
}

const std::vector<MappingProfile>& PipelineConfig::effective_profiles() const {
  if (!profiles.empty()) return profiles;
  static const std::vector<MappingProfile> fallback = profile_chain(strict_profile());
  return fallback;
}

void PipelineConfig::validate() const {
  if (!(deduction_threshold >= 0.0))
    throw Error(Error::Kind::Config, "deduction threshold must be nonnegative");
  for (double c : {coeffs.tlinks, coeffs.events, coeffs.smcc, coeffs.intercept})
    if (!std::isfinite(c))
      throw Error(Error::Kind::Config, "regression coefficients must be finite");
  if (!std::isfinite(clink_threshold))
    throw Error(Error::Kind::Config, "clink threshold must be finite");
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;
    std::string value;
    std::getline(row, value);
    if (auto pos = value.find_first_not_of(" \t"); pos != std::string::npos)
      value.erase(0, pos);
    else
      value.clear();
    if (auto pos = value.find_last_not_of(" \t"); pos != std::string::npos)
      value.erase(pos + 1);

    if (key == "profile") {
      cfg.profiles = profile_chain(resolve_profile(value));
    } else if (key == "reasoning") {
      auto mode = reasoning_mode_from(value);
      if (!mode)
        throw Error(Error::Kind::Config, "unknown reasoning mode '" + value + "'");
      cfg.reasoning = *mode;
    } else if (key == "deduction-threshold") {
      cfg.deduction_threshold = parse_number(key, value);
    } else if (key == "coeffs") {
      std::istringstream nums(value);
      std::string a, b, c, d, rest;
      if (!(nums >> a >> b >> c >> d) || (nums >> rest))
        throw Error(Error::Kind::Config, "config key 'coeffs': expected 4 numbers");
      cfg.coeffs = {parse_number(key, a), parse_number(key, b), parse_number(key, c),
                    parse_number(key, d)};
    } else if (key == "clink-threshold") {
      cfg.clink_threshold = parse_number(key, value);
    } else if (key == "simplify-labels") {
      cfg.simplify_labels = parse_bool(key, value);
    } else if (key == "emit-tt") {
      cfg.emit_tt = parse_bool(key, value);
    } else if (key == "emit-deduced") {
      cfg.emit_deduced = parse_bool(key, value);
    } else {
      throw Error(Error::Kind::Config, "unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string render_config(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "profile " << cfg.effective_profiles().front().name << "\n";
  out << "reasoning " << to_string(cfg.reasoning) << "\n";
  out << "deduction-threshold " << format_number(cfg.deduction_threshold) << "\n";
  out << "coeffs " << format_number(cfg.coeffs.tlinks) << " "
      << format_number(cfg.coeffs.events) << " " << format_number(cfg.coeffs.smcc)
      << " " << format_number(cfg.coeffs.intercept) << "\n";
  out << "clink-threshold " << format_number(cfg.clink_threshold) << "\n";
  out << "simplify-labels " << (cfg.simplify_labels ? "true" : "false") << "\n";
  out << "emit-tt " << (cfg.emit_tt ? "true" : "false") << "\n";
  out << "emit-deduced " << (cfg.emit_deduced ? "true" : "false") << "\n";
  return out.str();
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Error::Kind::Io, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_bundle(const std::string& dir, const ModelBundle& bundle) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error(Error::Kind::Io, "cannot create bundle directory '" + dir + "'");
  const FeatureEncoders* encs[4] = {&bundle.ed_enc, &bundle.et_enc, &bundle.ee_enc,
                                    &bundle.clink_enc};
  const LinearModel* models[4] = {&bundle.ed, &bundle.et, &bundle.ee, &bundle.clink};
  std::ostringstream manifest;
  manifest << kBundleMagic << "\n";
  for (int i = 0; i < 4; ++i) {
    std::string kind = kBundleKinds[i];
    save_encoders(dir + "/" + kind + ".enc", *encs[i]);
    save_model(dir + "/" + kind + ".model", *models[i]);
    manifest << kind << "\t" << kind << ".enc\t" << kind << ".model\n";
  }
  manifest << "end\n";
  std::ofstream out(dir + "/manifest.txt", std::ios::binary);
  if (!out || !(out << manifest.str()))
    throw Error(Error::Kind::Io, "cannot write '" + dir + "/manifest.txt'");
}

ModelBundle load_bundle(const std::string& dir, const Lexicons& lex) {
  std::ifstream in(dir + "/manifest.txt");
  if (!in)
    throw Error(Error::Kind::Io, "cannot read '" + dir + "/manifest.txt'");
  std::string line;
  if (!std::getline(in, line) || line != kBundleMagic)
    throw Error(Error::Kind::Format, "'" + dir + "' is not a model bundle");
  ModelBundle bundle;
  FeatureEncoders* encs[4] = {&bundle.ed_enc, &bundle.et_enc, &bundle.ee_enc,
                              &bundle.clink_enc};
  LinearModel* models[4] = {&bundle.ed, &bundle.et, &bundle.ee, &bundle.clink};
  bool seen[4] = {false, false, false, false};
  bool closed = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "end") {
      closed = true;
      break;
    }
    std::istringstream row(line);
    std::string kind, enc_file, model_file;
    if (!(row >> kind >> enc_file >> model_file))
      throw Error(Error::Kind::Format, "bad bundle manifest line '" + line + "'");
    int idx = -1;
    for (int i = 0; i < 4; ++i)
      if (kind == kBundleKinds[i]) idx = i;
    if (idx < 0)
      throw Error(Error::Kind::Format, "unknown bundle model kind '" + kind + "'");
    *encs[idx] = load_encoders(dir + "/" + enc_file, lex);
    *models[idx] = load_model(dir + "/" + model_file);
    seen[idx] = true;
  }
  if (!closed)
    throw Error(Error::Kind::Format, "truncated bundle manifest in '" + dir + "'");
  for (int i = 0; i < 4; ++i)
    if (!seen[i])
      throw Error(Error::Kind::Format,
                  std::string("bundle manifest misses model '") + kBundleKinds[i] + "'");
  return bundle;
}

Document annotate(const AnnotatedDocument& ad, const ModelBundle& models,
                  const Lexicons& lex, const PipelineConfig& cfg,
                  AnnotateReport* report) {
  cfg.validate();
  const std::vector<MappingProfile>& profiles = cfg.effective_profiles();
  Document out = ad.doc;
  AnnotateReport rep;

  std::vector<EntityPair> pairs = candidate_pairs(ad, Task::Temporal);
  std::vector<TLink> rule_links = apply_rule_sieve(ad, pairs, lex);
  rep.rule_links = rule_links.size();

  // The reasoner sees the input plus every rule link, timex pairs included.
  Document working = out;
  working.tlinks.insert(working.tlinks.end(), rule_links.begin(), rule_links.end());

  std::vector<TLink> deduced;
  CheckResult check = check_document(working, profiles);
  rep.rule_consistent = check.consistent;
  rep.profile_used = check.profile_used;
  const MappingProfile* prof = profile_named(profiles, check.profile_used);
  if (check.consistent && prof && cfg.reasoning != ReasoningMode::Never) {
    bool run = cfg.reasoning == ReasoningMode::Always;
    if (!run) {
      double estimate = predict_deducible(static_cast<int>(working.tlinks.size()),
                                          static_cast<int>(out.events.size()),
                                          smcc(graph_of(working, *prof)), cfg.coeffs);
      run = estimate < cfg.deduction_threshold;
    }
    if (run) {
      deduced = deduce(working, *prof);
      rep.deduced = true;
      rep.deduced_links = deduced.size();
    }
  }

  // Pairs covered so far are final; classifiers take the rest.
  std::unordered_set<std::string> labeled;
  OrientedLabels oriented;
  for (const TLink& l : out.tlinks) note_link(out, l, labeled, oriented);
  for (const TLink& l : rule_links) note_link(out, l, labeled, oriented);
  for (const TLink& l : deduced) note_link(out, l, labeled, oriented);

  const std::string dct_id = out.dct.tid;
  std::vector<TLink> classified;
  auto emit_classified = [&](const EntityPair& p, RelType rel) {
    TLink link;
    link.source = p.e1;
    link.target = p.e2;
    link.rel = rel;
    link.provenance = Provenance::Classifier;
    classified.push_back(std::move(link));
    labeled.insert(pair_key(p.e1, p.e2));
    oriented[{p.e1, p.e2}] = rel;
    oriented[{p.e2, p.e1}] = converse(rel);
  };

  for (const EntityPair& p : pairs) {
    if (p.kind != PairKind::ED || labeled.count(pair_key(p.e1, p.e2))) continue;
    emit_classified(p, classifier_label(models.ed, models.ed_enc, p, ad, {}));
  }
  for (const EntityPair& p : pairs) {
    if (p.kind != PairKind::ET || labeled.count(pair_key(p.e1, p.e2))) continue;
    RuleExtras extras;
    extras.e2_dct = label_of(oriented, p.e2, dct_id);
    emit_classified(p, classifier_label(models.et, models.et_enc, p, ad, extras));
  }
  for (const EntityPair& p : pairs) {
    if (p.kind != PairKind::EE || labeled.count(pair_key(p.e1, p.e2))) continue;
    RuleExtras extras;
    extras.e1_dct = label_of(oriented, p.e1, dct_id);
    extras.e2_dct = label_of(oriented, p.e2, dct_id);
    emit_classified(p, classifier_label(models.ee, models.ee_enc, p, ad, extras));
  }
  rep.classified_links = classified.size();

  // Causal extraction: verb rules first, then the filtered classifier.
  std::vector<EntityPair> cpairs = candidate_pairs(ad, Task::Causal);
  std::unordered_set<std::string> causal_labeled;
  for (const CLink& c : out.clinks) {
    auto s = node_of(out, c.source);
    auto t = node_of(out, c.target);
    if (s && t) causal_labeled.insert(pair_key(*s, *t));
  }
  std::vector<CLink> new_clinks;
  auto emit_clink = [&](const EntityPair& p, CausalLabel label, Provenance prov,
                        double confidence) {
    CLink link;
    link.provenance = prov;
    link.confidence = confidence;
    link.source = label == CausalLabel::Clink ? p.e1 : p.e2;
    link.target = label == CausalLabel::Clink ? p.e2 : p.e1;
    new_clinks.push_back(std::move(link));
    causal_labeled.insert(pair_key(p.e1, p.e2));
  };
  for (const EntityPair& p : cpairs) {
    if (causal_labeled.count(pair_key(p.e1, p.e2))) continue;
    if (auto label = causal_verb_rule(p, ad, lex.causal_verbs))
      emit_clink(p, *label, Provenance::Rule, 0.0);
  }
  for (const EntityPair& p : cpairs) {
    if (causal_labeled.count(pair_key(p.e1, p.e2))) continue;
    if (!clink_candidate_filter(p, ad, lex.causal_signals)) continue;
    double confidence = 0.0;
    CausalLabel label = classify_clink(models.clink, models.clink_enc, p, ad,
                                       label_of(oriented, p.e1, p.e2), &confidence);
    if (label == CausalLabel::NoRel) continue;
    emit_clink(p, label, Provenance::Classifier, confidence);
  }
  rep.clinks = new_clinks.size();

  // Assemble in emit order; new timex-timex links obey the emission flag.
  auto timex_pair = [&](const TLink& l) {
    return out.find_timex(l.source) && out.find_timex(l.target);
  };
  for (TLink& l : rule_links)
    if (cfg.emit_tt || !timex_pair(l)) out.tlinks.push_back(std::move(l));
  if (cfg.emit_deduced)
    for (TLink& l : deduced)
      if (cfg.emit_tt || !timex_pair(l)) out.tlinks.push_back(std::move(l));
  for (TLink& l : classified) out.tlinks.push_back(std::move(l));
  for (CLink& c : new_clinks) out.clinks.push_back(std::move(c));

  int counter = 0;
  for (TLink& l : out.tlinks)
    if (l.lid.empty()) l.lid = out.fresh_link_id(counter);
  for (CLink& c : out.clinks)
    if (c.lid.empty()) c.lid = out.fresh_link_id(counter);

  out.tlinks = post_edit_tlinks(std::move(out.tlinks), out.clinks);
  if (report) *report = rep;
  return out;
}

std::vector<Document> prepare_training(const std::vector<Document>& corpus,
                                       const PipelineConfig& cfg,
                                       PrepareReport* report) {
  cfg.validate();
  const std::vector<MappingProfile>& profiles = cfg.effective_profiles();
  PrepareReport rep;
  rep.input_docs = corpus.size();
  std::vector<Document> out;
  for (const Document& doc : corpus) {
    CheckResult check = check_document(doc, profiles);
    const MappingProfile* prof = profile_named(profiles, check.profile_used);
    if (!check.consistent || !prof) {
      ++rep.discarded;
      rep.discarded_ids.push_back(doc.doc_id);
      continue;
    }
    Document kept = doc;
    double estimate = predict_deducible(static_cast<int>(doc.tlinks.size()),
                                        static_cast<int>(doc.events.size()),
                                        smcc(graph_of(doc, *prof)), cfg.coeffs);
    if (estimate < cfg.deduction_threshold) {
      std::vector<TLink> extra = deduce(doc, *prof);
      if (!extra.empty()) {
        ++rep.docs_deduced;
        rep.deduced_links += extra.size();
        int counter = 0;
        for (TLink& l : extra) {
          l.lid = kept.fresh_link_id(counter);
          kept.tlinks.push_back(std::move(l));
        }
      }
    }
    out.push_back(std::move(kept));
  }
  if (report) *report = rep;
  return out;
}

ModelBundle train_pipeline(const std::vector<AnnotatedDocument>& corpus,
                           const Lexicons& lex, const PipelineConfig& cfg,
                           std::uint64_t seed) {
  cfg.validate();
  using PairCorpus = std::vector<std::pair<EntityPair, const AnnotatedDocument*>>;
  PairCorpus ed_pairs, et_pairs, ee_pairs, clink_pairs;
  std::vector<OrientedLabels> gold(corpus.size());
  // Gold causal labels keyed by the ordered event pair.
  std::vector<std::map<std::pair<std::string, std::string>, std::string>> causal_gold(
      corpus.size());

  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const AnnotatedDocument& ad = corpus[d];
    std::unordered_set<std::string> unused;
    for (const TLink& l : ad.doc.tlinks) note_link(ad.doc, l, unused, gold[d]);
    for (const CLink& c : ad.doc.clinks) {
      auto s = node_of(ad.doc, c.source);
      auto t = node_of(ad.doc, c.target);
      if (!s || !t) continue;
      causal_gold[d][{*s, *t}] = "CLINK";
      causal_gold[d][{*t, *s}] = "CLINK-R";
    }
    for (const EntityPair& p : candidate_pairs(ad, Task::Temporal)) {
      if (p.kind == PairKind::ED) ed_pairs.emplace_back(p, &ad);
      if (p.kind == PairKind::ET) et_pairs.emplace_back(p, &ad);
      if (p.kind == PairKind::EE) ee_pairs.emplace_back(p, &ad);
    }
    for (const EntityPair& p : candidate_pairs(ad, Task::Causal))
      if (clink_candidate_filter(p, ad, lex.causal_signals))
        clink_pairs.emplace_back(p, &ad);
  }

  auto doc_index = [&](const AnnotatedDocument* ad) {
    return static_cast<std::size_t>(ad - corpus.data());
  };
  auto target_label = [&](RelType r) {
    return std::string(to_string(cfg.simplify_labels ? simplify_label(r) : r));
  };

  ModelBundle bundle;
  struct TemporalKind {
    const char* name;
    FeatureSchema schema;
    PairCorpus* pairs;
    FeatureEncoders* enc;
    LinearModel* model;
  };
  TemporalKind kinds[3] = {
      {"event-DCT", FeatureSchema::EventDct, &ed_pairs, &bundle.ed_enc, &bundle.ed},
      {"event-timex", FeatureSchema::EventTimex, &et_pairs, &bundle.et_enc, &bundle.et},
      {"event-event", FeatureSchema::EventEvent, &ee_pairs, &bundle.ee_enc, &bundle.ee},
  };
  for (TemporalKind& kind : kinds) {
    if (kind.pairs->empty())
      throw Error(Error::Kind::Training,
                  std::string("no ") + kind.name + " candidate pairs in the corpus");
    *kind.enc = fit_encoders(kind.schema, *kind.pairs, lex);
    std::vector<TrainExample> data;
    for (const auto& [p, ad] : *kind.pairs) {
      const OrientedLabels& labels = gold[doc_index(ad)];
      auto rel = label_of(labels, p.e1, p.e2);
      if (!rel) continue;  // unannotated pairs are not temporal instances
      RuleExtras extras;
      if (kind.schema == FeatureSchema::EventTimex) {
        extras.e2_dct = label_of(labels, p.e2, ad->doc.dct.tid);
      } else if (kind.schema == FeatureSchema::EventEvent) {
        extras.e1_dct = label_of(labels, p.e1, ad->doc.dct.tid);
        extras.e2_dct = label_of(labels, p.e2, ad->doc.dct.tid);
      }
      data.push_back({featurize(p, *ad, *kind.enc, extras), target_label(*rel)});
    }
    if (data.empty())
      throw Error(Error::Kind::Training,
                  std::string("no labeled ") + kind.name + " pairs in the corpus");
    *kind.model = train(data, {}, seed);
  }

  if (clink_pairs.empty())
    throw Error(Error::Kind::Training, "no causal candidate pairs in the corpus");
  bundle.clink_enc = fit_encoders(FeatureSchema::Causal, clink_pairs, lex);
  std::vector<TrainExample> causal_data;
  for (const auto& [p, ad] : clink_pairs) {
    std::size_t d = doc_index(ad);
    RuleExtras extras;
    extras.pair_label = label_of(gold[d], p.e1, p.e2);
    std::string label = "NO-REL";
    if (auto it = causal_gold[d].find({p.e1, p.e2}); it != causal_gold[d].end())
      label = it->second;
    causal_data.push_back({featurize(p, *ad, bundle.clink_enc, extras), label});
  }
  bundle.clink = train(causal_data, {}, seed);
  return bundle;
}

std::string dense_label(const TLink& link, const Document& doc) {
  const EventInstance* event = nullptr;
  const Timex* timex = nullptr;
  for (const std::string* id : {&link.source, &link.target}) {
    auto node = node_of(doc, *id);
    if (!node) continue;
    if (const Timex* t = doc.find_timex(*node))
      timex = t;
    else if (const EventInstance* e = doc.find_instance(*node))
      event = e;
  }
  if (event && timex) {
    bool against_dct = timex->tid == doc.dct.tid;
    if (against_dct && event->pos == WordPos::Adjective) return "VAGUE";
    if (!against_dct && timex->value.size() > 4 &&
        timex->value.substr(timex->value.size() - 4) == "_REF")
      return "VAGUE";
  }
  switch (link.rel) {
    case RelType::IBefore:
    case RelType::Begins:
    case RelType::EndedBy:
      return "BEFORE";
    case RelType::IAfter:
    case RelType::BegunBy:
    case RelType::Ends:
      return "AFTER";
    case RelType::Identity:
    case RelType::During:
    case RelType::DuringInv:
      return "SIMULTANEOUS";
    default:
      return to_string(link.rel);
  }
}

}  // namespace timelink
