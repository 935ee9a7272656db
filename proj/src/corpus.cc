// Copyright 2026 The Singledet Authors.
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

#include "singledet/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "singledet/rng.h"

namespace singledet {

using json = nlohmann::json;

namespace {

const std::unordered_set<std::string_view> &FirstPersonPronouns() {
  static const std::unordered_set<std::string_view> words = {
      "मैं", "मुझे", "मुझ", "मेरा", "मेरी", "मेरे",
      "हम",  "हमें", "हमारा", "हमारी", "हमारे", "हमको", "मुझको",
  };
  return words;
}

const std::unordered_set<std::string_view> &OtherPronouns() {
  static const std::unordered_set<std::string_view> words = {
      "तू",    "तुम",   "तुम्हें", "तुम्हारा", "तुम्हारी", "तुम्हारे", "आप",
      "आपको",  "आपका",  "आपकी",   "आपके",     "वह",      "वे",       "वो",
      "यह",    "ये",    "उस",     "उसे",      "उसका",    "उसकी",     "उसके",
      "उन",    "उन्हें", "उनका",   "उनकी",     "उनके",    "इस",       "इसे",
      "इसका",  "इसकी",  "इसके",   "इन",       "इन्हें",   "इनका",     "इनकी",
      "इनके",  "जो",    "जिस",    "जिसे",     "जिसका",   "जिसकी",    "जिसके",
      "अपना",  "अपनी",  "अपने",   "खुद",      "स्वयं",    "कोई",      "किसी",
  };
  return words;
}

std::string MentionName(const LabeledMention &m) {
  std::ostringstream out;
  out << "mention(doc=" << m.doc_id << ", sent=" << m.sentence_index
      << ", start=" << m.start << ", end=" << m.end << ")";
  return out.str();
}

void ValidateDocument(const Document &doc) {
  if (doc.id.empty()) throw CorpusError("document with empty id");
  if (doc.sentences.empty()) {
    throw CorpusError("document '" + doc.id + "' has no sentences");
  }
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    if (doc.sentences[s].empty()) {
      throw CorpusError("document '" + doc.id + "' sentence " +
                        std::to_string(s) + " is empty");
    }
    for (const std::string &tok : doc.sentences[s]) {
      if (tok.empty()) {
        throw CorpusError("document '" + doc.id + "' sentence " +
                          std::to_string(s) + " has an empty token");
      }
    }
  }
}

void ValidateMention(const LabeledMention &m, const Document *doc) {
  if (doc == nullptr) {
    throw CorpusError("unknown doc id '" + m.doc_id + "' in " + MentionName(m));
  }
  if (m.sentence_index < 0 ||
      static_cast<size_t>(m.sentence_index) >= doc->sentences.size()) {
    throw CorpusError("span out of bounds: sentence index in " + MentionName(m));
  }
  const auto len = static_cast<int>(doc->sentences[m.sentence_index].size());
  if (m.start < 0 || m.start >= m.end || m.end > len) {
    throw CorpusError("span out of bounds: " + MentionName(m) +
                      " in sentence of length " + std::to_string(len));
  }
  for (int f : m.extra_flags) {
    if (f != 0 && f != 1) {
      throw CorpusError("extra flags must be 0 or 1 in " + MentionName(m));
    }
  }
}

int ReadBinary(const json &obj, const char *key) {
  const json &v = obj.at(key);
  if (!v.is_number_integer()) {
    throw CorpusError(std::string("field '") + key + "' must be 0 or 1");
  }
  const auto value = v.get<int64_t>();
  if (value != 0 && value != 1) {
    throw CorpusError(std::string("field '") + key + "' must be 0 or 1");
  }
  return static_cast<int>(value);
}

int ReadIndex(const json &obj, const char *key) {
  const json &v = obj.at(key);
  if (!v.is_number_integer()) {
    throw CorpusError(std::string("field '") + key + "' must be an integer");
  }
  const auto value = v.get<int64_t>();
  if (value < INT32_MIN || value > INT32_MAX) {
    throw CorpusError(std::string("field '") + key + "' out of range");
  }
  return static_cast<int>(value);
}

Document ParseDocument(const json &obj) {
  Document doc;
  if (!obj.at("doc").is_string()) throw CorpusError("'doc' must be a string");
  doc.id = obj.at("doc").get<std::string>();
  const json &sentences = obj.at("sentences");
  if (!sentences.is_array()) throw CorpusError("'sentences' must be an array");
  for (const json &sentence : sentences) {
    if (!sentence.is_array()) throw CorpusError("sentence must be an array");
    Sentence tokens;
    for (const json &tok : sentence) {
      if (!tok.is_string()) throw CorpusError("token must be a string");
      tokens.push_back(tok.get<std::string>());
    }
    doc.sentences.push_back(std::move(tokens));
  }
  ValidateDocument(doc);
  return doc;
}

// Flags the file leaves out are filled from the pronoun lexicon once the
// mention's tokens are known.
struct PendingMention {
  LabeledMention mention;
  bool has_pron = false;
  bool has_first_person = false;
  size_t line = 0;
};

PendingMention ParseMention(const json &obj) {
  if (!obj.is_object()) throw CorpusError("'mention' must be an object");
  PendingMention pending;
  LabeledMention &m = pending.mention;
  if (!obj.at("doc").is_string()) throw CorpusError("'doc' must be a string");
  m.doc_id = obj.at("doc").get<std::string>();
  m.sentence_index = ReadIndex(obj, "sent");
  m.start = ReadIndex(obj, "start");
  m.end = ReadIndex(obj, "end");
  if (obj.contains("label") && !obj.at("label").is_null()) {
    m.label = static_cast<Label>(ReadBinary(obj, "label"));
  }
  if (obj.contains("pron")) {
    m.is_pronoun = ReadBinary(obj, "pron") == 1;
    pending.has_pron = true;
  }
  if (obj.contains("proper")) m.is_proper_name = ReadBinary(obj, "proper") == 1;
  if (obj.contains("first_person")) {
    m.is_first_person_pronoun = ReadBinary(obj, "first_person") == 1;
    pending.has_first_person = true;
  }
  if (obj.contains("extra")) {
    const json &extra = obj.at("extra");
    if (!extra.is_array()) throw CorpusError("'extra' must be an array");
    for (const json &flag : extra) {
      if (!flag.is_number_integer()) {
        throw CorpusError("'extra' entries must be 0 or 1");
      }
      m.extra_flags.push_back(flag.get<int>());
    }
  }
  return pending;
}

void FillFlags(PendingMention &pending, const Document &doc) {
  LabeledMention &m = pending.mention;
  const Sentence &sentence = doc.sentences[m.sentence_index];
  const bool single = m.length() == 1;
  const std::string_view word = sentence[m.start];
  if (!pending.has_first_person) {
    m.is_first_person_pronoun = single && IsHindiFirstPersonPronoun(word);
  }
  if (!pending.has_pron) m.is_pronoun = single && IsHindiPronoun(word);
}

}  // namespace

size_t Document::token_count() const {
  size_t n = 0;
  for (const Sentence &s : sentences) n += s.size();
  return n;
}

bool IsHindiFirstPersonPronoun(std::string_view word) {
  return FirstPersonPronouns().contains(word);
}

bool IsHindiPronoun(std::string_view word) {
  return IsHindiFirstPersonPronoun(word) || OtherPronouns().contains(word);
}

Corpus Corpus::Create(std::vector<Document> documents,
                      std::vector<LabeledMention> mentions) {
  Corpus corpus;
  for (size_t i = 0; i < documents.size(); ++i) {
    ValidateDocument(documents[i]);
    if (!corpus.index_.emplace(documents[i].id, i).second) {
      throw CorpusError("duplicate document id '" + documents[i].id + "'");
    }
  }
  corpus.documents_ = std::move(documents);
  for (const LabeledMention &m : mentions) {
    ValidateMention(m, corpus.FindDocument(m.doc_id));
  }
  corpus.mentions_ = std::move(mentions);
  return corpus;
}

const Document *Corpus::FindDocument(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &documents_[it->second];
}

const Document &Corpus::GetDocument(std::string_view id) const {
  const Document *doc = FindDocument(id);
  if (doc == nullptr) {
    throw CorpusError("unknown doc id '" + std::string(id) + "'");
  }
  return *doc;
}

std::vector<std::string> Corpus::MentionTokens(
    const LabeledMention &mention) const {
  const Sentence &s = GetDocument(mention.doc_id).sentences[mention.sentence_index];
  return {s.begin() + mention.start, s.begin() + mention.end};
}

bool Corpus::fully_labeled() const {
  return std::all_of(mentions_.begin(), mentions_.end(),
                     [](const LabeledMention &m) { return m.label.has_value(); });
}

Corpus ParseCorpus(std::istream &in, const std::string &source_name) {
  std::vector<Document> documents;
  std::unordered_map<std::string, size_t> doc_index;
  std::vector<PendingMention> pending;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = source_name + ":" + std::to_string(line_no) + ": ";
    try {
      json obj = json::parse(line);
      if (!obj.is_object()) throw CorpusError("line is not a JSON object");
      if (obj.contains("doc") && obj.contains("sentences")) {
        Document doc = ParseDocument(obj);
        if (!doc_index.emplace(doc.id, documents.size()).second) {
          throw CorpusError("duplicate document id '" + doc.id + "'");
        }
        documents.push_back(std::move(doc));
      } else if (obj.contains("mention")) {
        PendingMention m = ParseMention(obj.at("mention"));
        m.line = line_no;
        pending.push_back(std::move(m));
      } else {
        throw CorpusError("unrecognized line kind");
      }
    } catch (const json::exception &e) {
      throw CorpusError(where + "malformed line: " + e.what());
    } catch (const CorpusError &e) {
      throw CorpusError(where + e.what());
    }
  }

  std::vector<LabeledMention> mentions;
  mentions.reserve(pending.size());
  for (PendingMention &p : pending) {
    auto it = doc_index.find(p.mention.doc_id);
    const Document *doc = it == doc_index.end() ? nullptr : &documents[it->second];
    try {
      ValidateMention(p.mention, doc);
    } catch (const CorpusError &e) {
      throw CorpusError(source_name + ":" + std::to_string(p.line) + ": " +
                        e.what());
    }
    FillFlags(p, *doc);
    mentions.push_back(std::move(p.mention));
  }
  return Corpus::Create(std::move(documents), std::move(mentions));
}

Corpus LoadCorpus(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  return ParseCorpus(in, path.string());
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const Document &doc : corpus.documents()) {
    json obj = {{"doc", doc.id}, {"sentences", doc.sentences}};
    out << obj.dump() << '\n';
  }
  for (const LabeledMention &m : corpus.mentions()) {
    json body = {{"doc", m.doc_id},
                 {"sent", m.sentence_index},
                 {"start", m.start},
                 {"end", m.end}};
    if (m.label) body["label"] = static_cast<int>(*m.label);
    body["pron"] = m.is_pronoun ? 1 : 0;
    body["proper"] = m.is_proper_name ? 1 : 0;
    body["first_person"] = m.is_first_person_pronoun ? 1 : 0;
    if (!m.extra_flags.empty()) body["extra"] = m.extra_flags;
    out << json{{"mention", body}}.dump() << '\n';
  }
}

void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write corpus file " + path.string());
  WriteCorpus(corpus, out);
  if (!out) throw CorpusError("write failed for " + path.string());
}

double SingletonRatio(const Corpus &corpus) {
  const auto &mentions = corpus.mentions();
  if (mentions.empty()) {
    throw CorpusError("singleton ratio is undefined for a corpus without mentions");
  }
  const auto singletons = std::count_if(
      mentions.begin(), mentions.end(),
      [](const LabeledMention &m) { return m.is_singleton(); });
  const auto total = static_cast<double>(mentions.size());
  return (total - static_cast<double>(singletons)) / total;
}

CorpusStats ComputeCorpusStats(const Corpus &corpus) {
  CorpusStats stats;
  stats.documents = corpus.documents().size();
  for (const Document &doc : corpus.documents()) {
    stats.sentences += doc.sentences.size();
    stats.tokens += doc.token_count();
  }
  stats.mentions = corpus.mentions().size();
  for (const LabeledMention &m : corpus.mentions()) {
    if (m.is_singleton()) ++stats.singletons;
  }
  return stats;
}

CorpusSplit SplitCorpus(const Corpus &corpus, const SplitSpec &spec) {
  const auto in_unit = [](double f) { return f > 0.0 && f < 1.0; };
  if (!in_unit(spec.test_fraction) || !in_unit(spec.validation_fraction_of_train)) {
    throw CorpusError("split fractions must lie strictly between 0 and 1");
  }
  const size_t n = corpus.documents().size();
  if (n == 0) throw CorpusError("cannot split an empty corpus");

  const auto n_test = static_cast<size_t>(std::round(n * spec.test_fraction));
  const size_t rest = n - std::min(n_test, n);
  const auto n_val = static_cast<size_t>(
      std::round(static_cast<double>(rest) * spec.validation_fraction_of_train));
  if (n_test == 0 || n_test >= n || n_val == 0 || n_val >= rest) {
    throw CorpusError("split of " + std::to_string(n) +
                      " documents leaves an empty partition");
  }

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.Shuffle(order);

  // 0 = train, 1 = validation, 2 = test
  std::unordered_map<std::string_view, int> part;
  CorpusSplit split;
  for (size_t rank = 0; rank < n; ++rank) {
    const std::string &id = corpus.documents()[order[rank]].id;
    if (rank < n_test) {
      part[id] = 2;
      split.test_docs.push_back(id);
    } else if (rank < n_test + n_val) {
      part[id] = 1;
      split.validation_docs.push_back(id);
    } else {
      part[id] = 0;
      split.train_docs.push_back(id);
    }
  }
  for (const LabeledMention &m : corpus.mentions()) {
    switch (part.at(m.doc_id)) {
      case 0: split.train.push_back(m); break;
      case 1: split.validation.push_back(m); break;
      default: split.test.push_back(m); break;
    }
  }
  return split;
}

}  // namespace singledet
