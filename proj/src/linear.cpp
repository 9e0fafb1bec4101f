#include "timelink/linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "timelink/common.hpp"

namespace timelink {

namespace {

double sparse_dot(const std::vector<double>& w, const FeatureVector& x) {
  double s = 0.0;
  for (const auto& [i, v] : x.entries) s += w[i] * v;
  return s;
}

// rng() % n is deterministic everywhere, unlike std::shuffle.
void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = rng() % i;
    std::swap(idx[i - 1], idx[j]);
  }
}

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

std::vector<std::string> tab_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

[[noreturn]] void format_error(std::size_t line_no, const std::string& what) {
  throw Error(Error::Kind::Format, "line " + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') format_error(line_no, "bad number '" + s + "'");
  return v;
}

}  // namespace

LinearModel train(const std::vector<TrainExample>& data, const Hyperparams& hp,
                  std::uint64_t seed, TrainTrace* trace) {
  if (data.empty()) throw Error(Error::Kind::Training, "empty training data");

  LinearModel m;
  m.hp = hp;
  m.seed = seed;
  m.dim = data.front().x.dim;
  for (const auto& ex : data) {
    if (ex.x.dim != m.dim)
      throw Error(Error::Kind::Shape,
                  "feature vector dimension " + std::to_string(ex.x.dim) +
                      " does not match " + std::to_string(m.dim));
    if (std::find(m.labels.begin(), m.labels.end(), ex.label) == m.labels.end())
      m.labels.push_back(ex.label);
  }
  if (m.labels.size() < 2)
    throw Error(Error::Kind::Training, "training data carries a single label '" +
                                           m.labels.front() + "'");

  const std::size_t n = data.size();
  const double diag = 1.0 / (2.0 * hp.c);  // L2-loss dual regularizer
  std::vector<double> qbar(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (const auto& [idx, v] : data[i].x.entries) {
      (void)idx;
      sq += v * v;
    }
    qbar[i] = sq + 1.0 + diag;  // + 1.0 for the appended bias feature
  }

  if (trace != nullptr) trace->objectives.assign(m.labels.size(), {});
  m.weights.assign(m.labels.size(), std::vector<double>(m.dim + 1, 0.0));

  for (std::size_t k = 0; k < m.labels.size(); ++k) {
    std::vector<double>& w = m.weights[k];
    std::vector<double> alpha(n, 0.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = data[i].label == m.labels[k] ? 1.0 : -1.0;

    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937 rng(seq);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    for (int epoch = 0; epoch < hp.max_epochs; ++epoch) {
      shuffle_indices(order, rng);
      double max_pg = 0.0;
      for (std::size_t i : order) {
        double g = y[i] * (sparse_dot(w, data[i].x) + w[m.dim]) - 1.0 + diag * alpha[i];
        double pg = alpha[i] == 0.0 ? std::min(g, 0.0) : g;
        max_pg = std::max(max_pg, std::fabs(pg));
        if (std::fabs(pg) > 1e-12) {
          double next = std::max(alpha[i] - g / qbar[i], 0.0);
          double step = (next - alpha[i]) * y[i];
          for (const auto& [idx, v] : data[i].x.entries) w[idx] += step * v;
          w[m.dim] += step;
          alpha[i] = next;
        }
      }
      if (trace != nullptr) {
        double wsq = 0.0;
        for (double v : w) wsq += v * v;
        double obj = 0.5 * wsq;
        for (double a : alpha) obj += 0.5 * diag * a * a - a;
        trace->objectives[k].push_back(obj);
      }
      if (max_pg <= hp.tol) break;
    }
  }
  return m;
}

Prediction predict(const LinearModel& m, const FeatureVector& x) {
  if (x.dim != m.dim)
    throw Error(Error::Kind::Shape, "feature vector dimension " + std::to_string(x.dim) +
                                        " does not match model dimension " +
                                        std::to_string(m.dim));
  Prediction p;
  p.scores.reserve(m.labels.size());
  for (const auto& w : m.weights) p.scores.push_back(sparse_dot(w, x) + w[m.dim]);

  std::size_t best = 0;
  for (std::size_t k = 1; k < p.scores.size(); ++k)
    if (p.scores[k] > p.scores[best]) best = k;
  p.label = m.labels[best];

  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.scores.size(); ++k)
    if (k != best) runner_up = std::max(runner_up, p.scores[k]);
  p.confidence = p.scores.size() > 1 ? p.scores[best] - runner_up : 0.0;
  return p;
}

std::string render_model(const LinearModel& m) {
  std::ostringstream out;
  out << "timelink-linear 1\n";
  out << "dim\t" << m.dim << "\n";
  out << "labels\t" << m.labels.size() << "\n";
  out << "hyper\t" << hex_double(m.hp.c) << "\t" << hex_double(m.hp.tol) << "\t"
      << m.hp.max_epochs << "\t" << m.seed << "\n";
  for (std::size_t k = 0; k < m.labels.size(); ++k) {
    out << "label\t" << m.labels[k] << "\n";
    out << "w";
    for (double v : m.weights[k]) out << "\t" << hex_double(v);
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

LinearModel parse_model(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t at = 0;
  auto next = [&]() -> const std::string& {
    if (at >= lines.size()) format_error(lines.size() + 1, "unexpected end of file");
    return lines[at++];
  };

  if (next() != "timelink-linear 1")
    throw Error(Error::Kind::Format,
                "unsupported model format: '" + (lines.empty() ? "" : lines[0]) + "'");

  LinearModel m;
  auto dim_line = tab_fields(next());
  if (dim_line.size() != 2 || dim_line[0] != "dim") format_error(at, "expected 'dim'");
  try {
    m.dim = static_cast<std::uint32_t>(std::stoul(dim_line[1]));
  } catch (const std::exception&) {
    format_error(at, "bad dimension '" + dim_line[1] + "'");
  }

  auto count_line = tab_fields(next());
  if (count_line.size() != 2 || count_line[0] != "labels")
    format_error(at, "expected 'labels'");
  std::size_t label_count = 0;
  try {
    label_count = std::stoul(count_line[1]);
  } catch (const std::exception&) {
    format_error(at, "bad label count '" + count_line[1] + "'");
  }

  auto hyper_line = tab_fields(next());
  if (hyper_line.size() != 5 || hyper_line[0] != "hyper")
    format_error(at, "expected 'hyper'");
  m.hp.c = parse_double(hyper_line[1], at);
  m.hp.tol = parse_double(hyper_line[2], at);
  try {
    m.hp.max_epochs = std::stoi(hyper_line[3]);
    m.seed = std::stoull(hyper_line[4]);
  } catch (const std::exception&) {
    format_error(at, "bad hyperparameter line");
  }

  for (std::size_t k = 0; k < label_count; ++k) {
    auto label_line = tab_fields(next());
    if (label_line.size() != 2 || label_line[0] != "label")
      format_error(at, "expected 'label'");
    m.labels.push_back(label_line[1]);
    auto w_line = tab_fields(next());
    if (w_line.empty() || w_line[0] != "w") format_error(at, "expected 'w'");
    if (w_line.size() != static_cast<std::size_t>(m.dim) + 2)
      format_error(at, "expected " + std::to_string(m.dim + 1) + " weights, got " +
                           std::to_string(w_line.size() - 1));
    std::vector<double> w;
    w.reserve(m.dim + 1);
    for (std::size_t j = 1; j < w_line.size(); ++j) w.push_back(parse_double(w_line[j], at));
    m.weights.push_back(std::move(w));
  }
  if (next() != "end") format_error(at, "expected 'end'");
  return m;
}

void save_model(const std::string& path, const LinearModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Kind::Io, "cannot open '" + path + "' for writing");
  out << render_model(m);
  if (!out) throw Error(Error::Kind::Io, "cannot write '" + path + "'");
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

}  // namespace timelink
