// Copyright 2026 The Cantoria Authors
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

#include "cantoria/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "cantoria/asymptotics.hpp"
#include "cantoria/cantorian.hpp"
#include "cantoria/diagonal.hpp"
#include "cantoria/enumerate.hpp"
#include "cantoria/permanent.hpp"
#include "cantoria/random.hpp"

namespace cantoria::cli {

namespace {

using nlohmann::ordered_json;
using enumerate::BigInt;

struct Globals {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "text";
  double budget = 1e10;
};

// A usage problem detected after parsing.
struct UsageError : Error {
  using Error::Error;
};

std::string fmt_double(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

ordered_json header(std::string_view command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream file(path);
  if (!file) throw Error("cannot open '" + path + "'");
  return read_all(file);
}

// Letters in the input are echoed back as letters.
struct LoadedTableau {
  Tableau tableau;
  bool letters;
};

LoadedTableau load_tableau(const std::string& path, std::optional<int> s, std::istream& in) {
  const std::string text = read_input(path, in);
  const bool letters = std::any_of(text.begin(), text.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
  return {s ? parse_tableau(text, Alphabet(*s)) : parse_tableau(text), letters};
}

std::string render(const Word& w, bool letters) {
  if (!letters) return w.to_string();
  std::string out;
  for (auto x : w) out.push_back(static_cast<char>('a' + x));
  return out;
}

std::vector<std::size_t> one_based(std::span<const std::size_t> rows) {
  std::vector<std::size_t> out(rows.begin(), rows.end());
  for (auto& r : out) ++r;
  return out;
}

std::string join(std::span<const std::size_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

void require_format(const Globals& g, std::initializer_list<std::string_view> allowed,
                    std::string_view command) {
  if (std::find(allowed.begin(), allowed.end(), g.format) == allowed.end()) {
    throw UsageError("--format " + g.format + " is not available for " + std::string(command));
  }
}

// check ---------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::optional<int> s;
};

int do_check(const CheckArgs& a, const Globals& g, std::istream& in, std::ostream& out) {
  require_format(g, {"text", "json", "csv"}, "check");
  const auto loaded = load_tableau(a.file, a.s, in);
  const auto& t = loaded.tableau;
  const auto report = cantorian::analyze(t);
  const auto& v = report.verdict;
  if (g.format == "json") {
    auto j = header("check");
    j["n"] = t.size();
    j["s"] = t.alphabet().size();
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows()) rows.push_back(r.to_string());
    j["tableau"] = {{"n", t.size()}, {"s", t.alphabet().size()}, {"rows", rows}};
    j["cantorian"] = v.cantorian;
    if (v.witness) {
      j["witness"] = {{"row", v.witness->row + 1}, {"rows", one_based(v.witness->rows)}};
    } else {
      j["witness"] = nullptr;
    }
    j["sparse_letter"] = report.sparse_letter
                             ? ordered_json(render(Word({*report.sparse_letter}), loaded.letters))
                             : ordered_json(nullptr);
    j["complement_pairing"] = report.complement_pairing.has_value();
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    out << "n,s,cantorian,witness_row\n"
        << t.size() << ',' << t.alphabet().size() << ',' << (v.cantorian ? "true" : "false")
        << ',' << (v.witness ? std::to_string(v.witness->row + 1) : "") << '\n';
  } else {
    out << (v.cantorian ? "cantorian" : "not cantorian") << '\n';
    if (v.witness) {
      out << "row " << v.witness->row + 1 << " = diagonal through rows "
          << join(one_based(v.witness->rows)) << '\n';
    }
    if (report.sparse_letter) {
      out << "letter " << render(Word({*report.sparse_letter}), loaded.letters)
          << " fills at least n^2 - n + 1 cells\n";
    }
    if (report.complement_pairing) out << "every row has a fully disagreeing partner\n";
  }
  return v.cantorian ? 0 : 1;
}

// perm ----------------------------------------------------------------------

struct PermArgs {
  std::string file;
  std::optional<int> s;
  std::string method = "brute";
  std::size_t deletion_row = 1;
  std::string contains;
  std::size_t max_n = 10;
};

int do_perm(const PermArgs& a, const Globals& g, std::istream& in, std::ostream& out) {
  require_format(g, {"text", "json"}, "perm");
  const auto loaded = load_tableau(a.file, a.s, in);
  const auto& t = loaded.tableau;

  if (!a.contains.empty()) {
    const Word w = Word::parse(a.contains);
    for (auto x : w) {
      if (!t.alphabet().contains(x)) throw Error("word uses a letter outside the alphabet");
    }
    const auto m = permanent::perm_contains(t, w);
    if (g.format == "json") {
      auto j = header("perm");
      j["word"] = render(w, loaded.letters);
      j["member"] = m.member;
      j["rows"] = m.member ? ordered_json(one_based(m.rows)) : ordered_json(nullptr);
      out << j.dump(2) << '\n';
    } else {
      out << render(w, loaded.letters) << (m.member ? " is" : " is not") << " in Perm\n";
      if (m.member) out << "rows " << join(one_based(m.rows)) << '\n';
    }
    return 0;
  }

  permanent::PermOptions options;
  if (a.method == "brute") {
    options.method = permanent::PermMethod::brute;
  } else if (a.method == "insertion") {
    options.method = permanent::PermMethod::insertion;
  } else {
    throw UsageError("unknown perm method '" + a.method + "'");
  }
  if (a.deletion_row == 0) throw UsageError("--deletion-row is 1-based");
  options.deletion_row = a.deletion_row - 1;
  options.max_n = a.max_n;
  const auto set = permanent::perm_set(t, options);
  const auto rows = permanent::row_set(t);
  if (g.format == "json") {
    auto j = header("perm");
    j["n"] = t.size();
    j["s"] = t.alphabet().size();
    j["method"] = a.method;
    j["size"] = set.size();
    auto words = ordered_json::array();
    for (const auto& w : set) words.push_back(render(w, loaded.letters));
    j["words"] = words;
    auto shared = ordered_json::array();
    for (const auto& w : set.intersection_with(rows)) shared.push_back(render(w, loaded.letters));
    j["rows_in_perm"] = shared;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& w : set) {
      out << render(w, loaded.letters) << (rows.contains(w) ? "  (row)" : "") << '\n';
    }
    out << set.size() << " words\n";
  }
  return 0;
}

// count ---------------------------------------------------------------------

struct CountArgs {
  std::size_t n = 0;
  std::size_t s = 2;
  std::optional<std::size_t> p;
  bool by_p = false;
  std::string method = "auto";
  std::string shard;
  bool no_skeleton = false;
};

std::string factored(const BigInt& count, std::size_t n, std::size_t s) {
  const BigInt unit = enumerate::power(s, n);
  if (count == 0 || count % unit != 0) return count.str();
  return BigInt(count / unit).str() + "*" + std::to_string(s) + "^" + std::to_string(n);
}

ordered_json report_json(const enumerate::CountReport& r) {
  auto j = header("count");
  j["n"] = r.n;
  j["s"] = r.s;
  j["p"] = r.p ? ordered_json(*r.p) : ordered_json(nullptr);
  j["count"] = r.count.str();
  j["method"] = enumerate::to_string(r.method);
  j["elapsed"] = r.elapsed;
  j["shard"] = {{"index", r.shard.index}, {"count", r.shard.count}};
  j["tasks"] = r.tasks;
  j["complete"] = r.shard.count == 1;
  return j;
}

int do_count(const CountArgs& a, const Globals& g, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  enumerate::CountOptions options;
  options.jobs = g.jobs;
  options.budget = g.budget;
  options.skeleton = !a.no_skeleton;
  if (!a.shard.empty()) options.shard = enumerate::parse_shard(a.shard);
  if (a.method == "auto") {
    options.method = a.s == 2 && a.n >= 2 ? enumerate::CountMethod::last_column
                                          : enumerate::CountMethod::brute;
  } else if (auto m = enumerate::parse_method(a.method)) {
    options.method = *m;
  } else {
    throw UsageError("unknown count method '" + a.method + "'");
  }
  const bool partial = options.shard.count > 1;

  if (a.by_p || a.p) {
    if (a.s != 2) throw UsageError("occurrence counts are for s = 2");
    std::vector<enumerate::CountReport> reports;
    if (a.p) {
      reports.push_back(enumerate::count_by_occurrences(a.n, *a.p, options));
    } else {
      for (std::size_t p = 0; p <= a.n * a.n; ++p) {
        reports.push_back(enumerate::count_by_occurrences(a.n, p, options));
      }
    }
    if (g.format == "json") {
      if (reports.size() == 1) {
        out << report_json(reports.front()).dump(2) << '\n';
      } else {
        auto j = header("count");
        j["n"] = a.n;
        j["s"] = 2;
        auto counts = ordered_json::array();
        BigInt total = 0;
        for (const auto& r : reports) {
          counts.push_back(r.count.str());
          total += r.count;
        }
        j["by_p"] = counts;
        j["count"] = total.str();
        j["shard"] = {{"index", options.shard.index}, {"count", options.shard.count}};
        j["complete"] = !partial;
        out << j.dump(2) << '\n';
      }
    } else if (g.format == "csv") {
      out << "n,p,count,elapsed,shard\n";
      for (const auto& r : reports) {
        out << r.n << ',' << *r.p << ',' << r.count << ',' << fmt_double(r.elapsed) << ','
            << r.shard.index << '/' << r.shard.count << '\n';
      }
    } else {
      out << "   p  c(" << a.n << ",p)" << (partial ? "  [partial shard " + a.shard + "]" : "")
          << '\n';
      BigInt total = 0;
      for (const auto& r : reports) {
        char line[32];
        std::snprintf(line, sizeof line, "%4zu  ", *r.p);
        out << line << r.count << '\n';
        total += r.count;
      }
      if (reports.size() > 1) out << " sum  " << total << '\n';
    }
    return 0;
  }

  const auto r = enumerate::count_cantorian(a.n, a.s, options);
  const BigInt total = enumerate::power(a.s, a.n * a.n);
  const double proportion = r.count.convert_to<double>() / total.convert_to<double>();
  if (g.format == "json") {
    auto j = report_json(r);
    j["factored"] = factored(r.count, a.n, a.s);
    j["proportion"] = proportion;
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    out << "n,s,count,factored,proportion,method,elapsed,shard,tasks\n"
        << r.n << ',' << r.s << ',' << r.count << ',' << factored(r.count, a.n, a.s) << ','
        << fmt_double(proportion) << ',' << enumerate::to_string(r.method) << ','
        << fmt_double(r.elapsed) << ',' << r.shard.index << '/' << r.shard.count << ','
        << r.tasks << '\n';
  } else {
    out << "n  s  count  factored  proportion  method\n"
        << r.n << "  " << r.s << "  " << r.count << "  " << factored(r.count, a.n, a.s) << "  "
        << fmt_double(proportion, 4) << "  " << enumerate::to_string(r.method) << '\n';
    if (partial) out << "partial count for shard " << a.shard << '\n';
  }
  return 0;
}

// sample / sweep ------------------------------------------------------------

struct ThresholdArgs {
  std::optional<double> r_n;
  double epsilon = 0.1;
  std::string log_base = "e";

  asymptotics::ThresholdParams params() const {
    asymptotics::ThresholdParams p;
    p.r_n = r_n;
    p.epsilon = epsilon;
    if (log_base == "e") {
      p.log_base = asymptotics::LogBase::natural;
    } else if (log_base == "2") {
      p.log_base = asymptotics::LogBase::binary;
    } else {
      throw UsageError("--log-base must be e or 2");
    }
    return p;
  }
};

struct SampleArgs {
  std::size_t n = 0;
  std::size_t s = 2;
  std::uint64_t trials = 10000;
  bool hamiltonian = false;
  ThresholdArgs th;
};

ordered_json estimate_json(const asymptotics::Estimate& e) {
  ordered_json j;
  j["n"] = e.n;
  j["s"] = e.s;
  j["trials"] = e.trials;
  j["hits"] = e.hits;
  j["fraction"] = e.fraction;
  j["ci_lo"] = e.ci_lo;
  j["ci_hi"] = e.ci_hi;
  j["seed"] = e.seed;
  return j;
}

int do_sample(const SampleArgs& a, const Globals& g, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  if (a.trials == 0) throw UsageError("--trials must be positive");
  const auto params = a.th.params();
  asymptotics::SweepReport report;
  asymptotics::SweepRow row;
  row.n = a.n;
  row.s = a.s;
  row.estimate = asymptotics::estimate_cantorian_fraction(a.n, a.s, a.trials, g.seed, g.jobs);
  row.epsilon = params.epsilon;
  row.log_base = params.log_base;
  std::string regime = "n/a";
  if (a.n >= 2) {
    const auto th = asymptotics::thresholds(a.n, params);
    row.r_n = th.r_n;
    row.regime = asymptotics::classify(a.s, th);
    regime = std::string(asymptotics::to_string(row.regime));
  }
  report.rows.push_back(row);

  std::optional<asymptotics::HamiltonAudit> audit;
  if (a.hamiltonian) {
    audit = asymptotics::hamiltonian_witness_fraction(a.n, a.s, a.trials, g.seed, g.jobs);
  }

  const auto& e = row.estimate;
  if (g.format == "json") {
    auto j = header("sample");
    j["estimate"] = estimate_json(e);
    j["regime"] = regime;
    j["r_n"] = row.r_n;
    j["epsilon"] = row.epsilon;
    j["log_base"] = asymptotics::to_string(row.log_base);
    j["generator"] = CounterRng::kName;
    if (audit) {
      j["hamiltonian"] = {{"estimate", estimate_json(audit->estimate)},
                          {"undecided", audit->undecided},
                          {"violations", audit->violations}};
    }
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::string csv = asymptotics::sweep_csv(report);
    if (a.n < 2) {
      // No thresholds for n = 1.
      const auto comma = csv.find(",between,");
      if (comma != std::string::npos) csv.replace(comma, 9, ",n/a,");
    }
    out << csv;
  } else {
    out << "n=" << e.n << " s=" << e.s << " trials=" << e.trials << " hits=" << e.hits
        << " fraction=" << fmt_double(e.fraction) << " 95% CI [" << fmt_double(e.ci_lo) << ", "
        << fmt_double(e.ci_hi) << "] seed=" << e.seed << " regime=" << regime << '\n';
    if (audit) {
      const auto& h = audit->estimate;
      out << "hamiltonian last-row digraph: " << h.hits << "/" << h.trials << " = "
          << fmt_double(h.fraction) << " undecided=" << audit->undecided
          << " violations=" << audit->violations << '\n';
    }
  }
  return 0;
}

struct SweepArgs {
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> s_values;
  std::uint64_t trials = 1000;
  ThresholdArgs th;
};

int do_sweep(const SweepArgs& a, const Globals& g, std::ostream& out) {
  if (a.n_values.empty()) throw UsageError("--n needs at least one size");
  asymptotics::SweepConfig config;
  config.n_values = a.n_values;
  config.s_values = a.s_values;
  config.trials = a.trials;
  config.seed = g.seed;
  config.params = a.th.params();
  config.jobs = g.jobs;
  const auto report = asymptotics::phase_sweep(config);
  if (g.format == "json") {
    auto j = header("sweep");
    auto rows = ordered_json::array();
    for (const auto& r : report.rows) {
      auto row = estimate_json(r.estimate);
      row["regime"] = asymptotics::to_string(r.regime);
      row["r_n"] = r.r_n;
      row["epsilon"] = r.epsilon;
      row["log_base"] = asymptotics::to_string(r.log_base);
      rows.push_back(row);
    }
    j["rows"] = rows;
    j["ordered"] = report.ordered;
    j["generator"] = CounterRng::kName;
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    out << asymptotics::sweep_csv(report);
  } else {
    out << "    n    s  regime   fraction  95% CI\n";
    for (const auto& r : report.rows) {
      char line[128];
      std::snprintf(line, sizeof line, "%5zu %4zu  %-7s  %8.4f  [%.4f, %.4f]\n", r.n, r.s,
                    std::string(asymptotics::to_string(r.regime)).c_str(), r.estimate.fraction,
                    r.estimate.ci_lo, r.estimate.ci_hi);
      out << line;
    }
    out << (report.ordered ? "below-threshold fractions lie under above-threshold ones\n"
                           : "fractions are NOT ordered across the thresholds\n");
  }
  return 0;
}

// diagonalize ---------------------------------------------------------------

struct DiagonalArgs {
  std::size_t depth = 12;
  std::string corpus = "rationals";
  std::string corpus_file;
  std::size_t s = 2;
  std::size_t max_den = 256;
  std::size_t max_period = 4;
  std::size_t max_preperiod = 2;
  bool single_expansions = false;
  std::string target;
  std::string avoid_file;
};

int do_diagonalize(const DiagonalArgs& a, const Globals& g, std::istream& in,
                   std::ostream& out) {
  require_format(g, {"text", "json"}, "diagonalize");
  if (a.s < 2 || a.s > 10) throw UsageError("--s must be in 2..10 for digit corpora");
  const Alphabet alphabet(static_cast<int>(a.s));
  std::optional<diagonal::PrefixList> rows;
  if (a.corpus == "rationals") {
    rows = diagonal::rational_corpus(a.s, a.max_den, a.depth, !a.single_expansions);
  } else if (a.corpus == "periodic") {
    rows = diagonal::periodic_corpus(a.s, a.max_preperiod, a.max_period, a.depth);
  } else if (a.corpus == "file") {
    std::istringstream text(read_input(a.corpus_file, in));
    rows = diagonal::read_prefix_list(text, alphabet);
  } else {
    throw UsageError("--corpus must be rationals, periodic or file");
  }
  const std::size_t depth = rows->depth();

  auto j = header("diagonalize");
  j["corpus"] = a.corpus;
  j["rows"] = rows->size();
  j["depth"] = depth;
  std::ostringstream text;
  text << "corpus " << a.corpus << ": " << rows->size() << " rows, depth " << depth << '\n';

  diagonal::PartialPermutation perm;
  if (!a.avoid_file.empty()) {
    std::ifstream file(a.avoid_file);
    if (!file) throw Error("cannot open '" + a.avoid_file + "'");
    const auto avoid = diagonal::read_prefix_list(file, alphabet);
    const auto result = diagonal::avoid_list_permutation(*rows, avoid);
    perm = result.permutation;
    j["mode"] = "avoid";
    auto blocks = ordered_json::array();
    for (std::size_t k = 0; k < result.block_end.size(); ++k) {
      blocks.push_back({{"start", result.block_start[k] + 1}, {"end", result.block_end[k] + 1}});
    }
    j["blocks"] = blocks;
    j["exhausted"] = result.exhausted;
    text << "avoid words handled: " << result.block_end.size() << " of " << avoid.size()
         << (result.exhausted ? " (ran out of rows or depth)" : "") << '\n';
  } else {
    Word target;
    if (a.target.empty() || a.target == "random") {
      CounterRng rng(g.seed, 0);
      std::vector<Symbol> digits(depth);
      for (auto& d : digits) d = static_cast<Symbol>(rng.below(a.s));
      target = Word(std::move(digits));
    } else {
      target = Word::parse(a.target);
    }
    perm = diagonal::greedy_diagonal_permutation(*rows, target);
    j["mode"] = "greedy";
    j["target"] = target.to_string();
    text << "target   " << target.to_string() << '\n';
  }
  const Word diag = diagonal::realized_diagonal(*rows, perm);
  const auto census = diagonal::digit_census(diag, a.s);
  j["pi"] = one_based(perm.rows);
  j["diagonal"] = diag.to_string();
  j["progress"] = perm.progress();
  j["complete"] = perm.complete();
  j["census"] = {{"counts", census.counts}, {"constant_tail", census.constant_tail}};

  if (g.format == "json") {
    out << j.dump(2) << '\n';
    return 0;
  }
  out << text.str();
  out << "pi       " << join(one_based(perm.rows)) << '\n';
  out << "diagonal " << diag.to_string() << '\n';
  out << "progress " << perm.progress() << "/" << depth << (perm.complete() ? " complete" : "")
      << '\n';
  out << "census  ";
  for (std::size_t d = 0; d < census.counts.size(); ++d) out << ' ' << d << ':' << census.counts[d];
  out << "  constant tail " << census.constant_tail << '\n';
  return 0;
}

// selftest ------------------------------------------------------------------

bool defined_cantorian(const Tableau& t) {
  const auto perm = permanent::perm_set(t);
  for (const auto& row : t.rows()) {
    if (perm.contains(row)) return false;
  }
  return true;
}

bool exhaustive_agreement(std::size_t n, int s) {
  const std::size_t cells = n * n;
  std::vector<Symbol> e(cells, 0);
  while (true) {
    const Tableau t(Alphabet(s), n, e);
    const auto v = cantorian::is_cantorian(t);
    if (v.cantorian != defined_cantorian(t)) return false;
    if (v.witness && !cantorian::witness_valid(t, *v.witness)) return false;
    std::size_t c = 0;
    while (c < cells && ++e[c] == s) {
      e[c] = 0;
      ++c;
    }
    if (c == cells) return true;
  }
}

int do_selftest(const Globals& g, std::ostream& out) {
  require_format(g, {"text", "json"}, "selftest");
  std::vector<std::pair<std::string, bool>> results;
  auto record = [&](std::string name, bool ok) { results.emplace_back(std::move(name), ok); };

  record("matching test equals definition, binary 2x2", exhaustive_agreement(2, 2));
  record("matching test equals definition, binary 3x3", exhaustive_agreement(3, 2));
  record("matching test equals definition, ternary 2x2", exhaustive_agreement(2, 3));

  const std::vector<std::vector<unsigned>> table1 = {
      {0, 0, 4, 0, 0},
      {0, 0, 0, 3, 9, 9, 3, 0, 0, 0},
      {0, 0, 0, 0, 4, 0, 112, 384, 744, 384, 112, 0, 4, 0, 0, 0, 0},
  };
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto hist = enumerate::occurrence_histogram(n);
    bool ok = hist.size() == table1[n - 2].size();
    for (std::size_t p = 0; ok && p < hist.size(); ++p) ok = hist[p] == table1[n - 2][p];
    record("c(" + std::to_string(n) + ",p) row", ok);
  }

  struct Known {
    std::size_t n, s;
    unsigned long long count;
  };
  for (const auto& k : {Known{2, 2, 4}, Known{3, 2, 24}, Known{4, 2, 1744}, Known{2, 3, 36},
                        Known{3, 3, 5076}, Known{2, 4, 144}}) {
    enumerate::CountOptions options;
    bool ok = enumerate::count_cantorian(k.n, k.s, options).count == k.count;
    if (k.s == 2) {
      for (auto m : {enumerate::CountMethod::normalized, enumerate::CountMethod::last_column}) {
        options.method = m;
        ok = ok && enumerate::count_cantorian(k.n, k.s, options).count == k.count;
      }
    }
    record("C(" + std::to_string(k.n) + "," + std::to_string(k.s) + ") = " +
               std::to_string(k.count),
           ok);
  }

  const bool all = std::all_of(results.begin(), results.end(), [](auto& r) { return r.second; });
  if (g.format == "json") {
    auto j = header("selftest");
    auto checks = ordered_json::array();
    for (const auto& [name, ok] : results) checks.push_back({{"name", name}, {"ok", ok}});
    j["checks"] = checks;
    j["ok"] = all;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& [name, ok] : results) out << (ok ? "ok    " : "FAIL  ") << name << '\n';
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cantorian tableaux: exact tests, counts, sampling and diagonal constructions",
               "cantoria"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "cantoria 1.0.0");

  Globals g;
  app.add_option("--seed", g.seed, "Seed for sampling and random targets")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for count, sample and sweep (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--budget", g.budget, "Cap on enumerated leaves for exact counts")
      ->capture_default_str();

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Decide whether a tableau is Cantorian");
  check->add_option("file", check_args.file, "Tableau file, '-' or absent for stdin");
  check->add_option("--s", check_args.s, "Alphabet size (default: inferred)");

  PermArgs perm_args;
  auto* perm = app.add_subcommand("perm", "List the set permanent of a tableau");
  perm->add_option("file", perm_args.file, "Tableau file, '-' or absent for stdin");
  perm->add_option("--s", perm_args.s, "Alphabet size (default: inferred)");
  perm->add_option("--method", perm_args.method, "brute or insertion")->capture_default_str();
  perm->add_option("--deletion-row", perm_args.deletion_row,
                   "Row deleted first by the insertion method (1-based)")
      ->capture_default_str();
  perm->add_option("--contains", perm_args.contains, "Only test membership of this word");
  perm->add_option("--max-n", perm_args.max_n, "Largest n enumerated")->capture_default_str();

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Count Cantorian tableaux exactly");
  count->add_option("--n", count_args.n, "Tableau size")->required();
  count->add_option("--s", count_args.s, "Alphabet size")->capture_default_str();
  count->add_option("--p", count_args.p, "Count binary tableaux with exactly p ones");
  count->add_flag("--by-p", count_args.by_p, "Every p from 0 to n^2");
  count->add_option("--method", count_args.method, "auto, brute, normalized or last_column")
      ->capture_default_str();
  count->add_option("--shard", count_args.shard, "Only shard i of m, written i/m");
  count->add_flag("--no-skeleton", count_args.no_skeleton,
                  "Plain prefix order without early row tests");

  auto add_thresholds = [](CLI::App* sub, ThresholdArgs& th) {
    sub->add_option("--r-n", th.r_n, "r_n in the lower threshold (default sqrt(log n))");
    sub->add_option("--epsilon", th.epsilon, "epsilon in the upper threshold")
        ->capture_default_str();
    sub->add_option("--log-base", th.log_base, "Logarithm base, e or 2")->capture_default_str();
  };

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Estimate the Cantorian fraction by sampling");
  sample->add_option("--n", sample_args.n, "Tableau size")->required();
  sample->add_option("--s", sample_args.s, "Alphabet size")->capture_default_str();
  sample->add_option("--trials", sample_args.trials, "Samples")->capture_default_str();
  sample->add_flag("--hamiltonian", sample_args.hamiltonian,
                   "Also sample the last-row digraph Hamiltonicity witness");
  add_thresholds(sample, sample_args.th);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Cantorian fraction on both sides of the thresholds");
  sweep->add_option("--n", sweep_args.n_values, "Sizes, comma separated")
      ->required()
      ->delimiter(',');
  sweep->add_option("--s", sweep_args.s_values,
                    "Alphabet sizes (default: nearest integers outside the thresholds)")
      ->delimiter(',');
  sweep->add_option("--trials", sweep_args.trials, "Samples per point")->capture_default_str();
  add_thresholds(sweep, sweep_args.th);

  DiagonalArgs diag_args;
  auto* diag = app.add_subcommand("diagonalize", "Greedy or avoid-list diagonal permutations");
  diag->add_option("--depth", diag_args.depth, "Prefix depth")->capture_default_str();
  diag->add_option("--corpus", diag_args.corpus, "rationals, periodic or file")
      ->capture_default_str();
  diag->add_option("--corpus-file", diag_args.corpus_file, "Rows for --corpus file");
  diag->add_option("--s", diag_args.s, "Base")->capture_default_str();
  diag->add_option("--max-den", diag_args.max_den, "Largest denominator in the rationals corpus")
      ->capture_default_str();
  diag->add_option("--max-period", diag_args.max_period, "Longest period in the periodic corpus")
      ->capture_default_str();
  diag->add_option("--max-preperiod", diag_args.max_preperiod,
                   "Longest preperiod in the periodic corpus")
      ->capture_default_str();
  diag->add_flag("--single-expansions", diag_args.single_expansions,
                 "Omit the (s-1)-tail expansions of terminating fractions");
  diag->add_option("--target", diag_args.target, "Target word, or 'random' (default)");
  diag->add_option("--avoid-file", diag_args.avoid_file,
                   "Words to avoid; switches to the block construction");

  auto* selftest = app.add_subcommand("selftest", "Exhaustive small-case checks");

  std::vector<const char*> argv{"cantoria"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "cantoria: " << e.what() << '\n';
    err << "Run with --help for more information.\n";
    return 2;
  }

  try {
    if (check->parsed()) return do_check(check_args, g, in, out);
    if (perm->parsed()) return do_perm(perm_args, g, in, out);
    if (count->parsed()) return do_count(count_args, g, out);
    if (sample->parsed()) return do_sample(sample_args, g, out);
    if (sweep->parsed()) return do_sweep(sweep_args, g, out);
    if (diag->parsed()) return do_diagonalize(diag_args, g, in, out);
    if (selftest->parsed()) return do_selftest(g, out);
  } catch (const std::exception& e) {
    err << "cantoria: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace cantoria::cli
