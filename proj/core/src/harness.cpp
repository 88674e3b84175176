#include "stablab/harness.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "stablab/challenges.hpp"
#include "stablab/fullgroup.hpp"
#include "stablab/marked.hpp"
#include "stablab/vershik.hpp"

namespace stablab {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"alt-convergence", {"r_from", "r_to", "r_max"}},
      {"neumann", {"offsets", "count", "words", "conj_length", "radii"}},
      {"vershik", {"ns", "r", "samples", "window", "alpha"}},
      {"subshift-kr", {"substitution", "seeds"}},
      {"fullgroup-embed", {"substitution", "gadgets", "ns", "levels", "max_depth"}},
      {"fullgroup-irs", {"substitution", "gadgets", "ks", "r", "levels", "max_depth"}},
      {"dgen", {"instances", "size", "rank", "restarts", "min_agreement"}},
  };
  return keys;
}

class Params {
 public:
  explicit Params(const ExperimentConfig& c) : c_(c) {
    const auto it = allowed_keys().find(c.experiment);
    if (it == allowed_keys().end()) throw UsageError("experiment", "unknown subcommand \"" + c.experiment + "\"");
    for (const auto& [k, _] : c.params) {
      if (!it->second.count(k)) throw UsageError(k, "not a parameter of " + c.experiment);
    }
  }

  std::string str(const std::string& key, const std::string& def) const {
    auto it = c_.params.find(key);
    return it == c_.params.end() ? def : it->second;
  }

  long integer(const std::string& key, long def) const {
    auto it = c_.params.find(key);
    return it == c_.params.end() ? def : parse_long(key, it->second);
  }

  double real(const std::string& key, double def) const {
    auto it = c_.params.find(key);
    if (it == c_.params.end()) return def;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second, &used);
      if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(key, "expected a number, got \"" + it->second + "\"");
  }

  /// "2..8" or "20,40,80"
  std::vector<long> integers(const std::string& key, const std::string& def) const {
    const std::string text = str(key, def);
    std::vector<long> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const long a = parse_long(key, text.substr(0, dots));
      const long b = parse_long(key, text.substr(dots + 2));
      if (b < a) throw UsageError(key, "empty range \"" + text + "\"");
      for (long v = a; v <= b; ++v) out.push_back(v);
      return out;
    }
    for (const auto& item : strings(key, def)) out.push_back(parse_long(key, item));
    return out;
  }

  std::vector<std::string> strings(const std::string& key, const std::string& def) const {
    std::vector<std::string> out;
    std::stringstream ss(str(key, def));
    for (std::string item; std::getline(ss, item, ',');) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw UsageError(key, "empty list");
    return out;
  }

  std::uint64_t seed() const {
    if (!c_.seed) throw UsageError("seed", c_.experiment + " samples randomly and needs --seed");
    return *c_.seed;
  }

 private:
  static long parse_long(const std::string& key, const std::string& text) {
    try {
      std::size_t used = 0;
      const long v = std::stol(trim(text), &used);
      if (used == trim(text).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(key, "expected an integer, got \"" + text + "\"");
  }

  const ExperimentConfig& c_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

class Csv {
 public:
  Csv(const std::string& comment, const std::vector<std::string>& columns) {
    os_ << "# " << comment << "\n";
    row(columns);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string yes(bool b) { return b ? "1" : "0"; }

Substitution substitution_from(const std::string& spec) {
  if (spec == "fibonacci") return Substitution::fibonacci();
  if (spec == "thue-morse") return Substitution::thue_morse();
  if (spec == "chacon") return Substitution::chacon();
  return Substitution::parse(spec);
}

SubshiftPtr subshift_param(const Params& p) {
  try {
    return Subshift::create(substitution_from(p.str("substitution", "fibonacci")));
  } catch (const InvalidArgument& e) {
    throw UsageError("substitution", e.what());
  }
}

std::vector<TableElement> gadgets_param(const Params& p, const SubshiftPtr& space) {
  std::vector<TableElement> out;
  for (const auto& w : p.strings("gadgets", "aabaa,babaab")) {
    try {
      out.push_back(three_cycle(ClopenSet::cylinder(space, w, 0)));
    } catch (const InvalidArgument& e) {
      throw UsageError("gadgets", "gadget [" + w + "]: " + e.what());
    }
  }
  return out;
}

// --- experiments -----------------------------------------------------------

int alt_convergence(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const long from = p.integer("r_from", 2), to = p.integer("r_to", 8);
  const int r_max = static_cast<int>(p.integer("r_max", 8));
  if (from < 2 || to < from) throw UsageError("r_from", "need 2 <= r_from <= r_to");
  std::vector<OraclePtr> seq;
  for (long r = from; r <= to; ++r) seq.push_back(alt_oracle(static_cast<int>(r)));
  const auto table = convergence_table(seq, *az_oracle(), r_max);
  Csv csv("marked distance between (Alt([[r]]), alpha_r, beta_r) and A(Z)", {"r", "nu", "at_least", "distance"});
  bool monotone = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    csv.row({std::to_string(from + static_cast<long>(i)), std::to_string(table[i].nu),
             yes(table[i].at_least), fmt(table[i].distance())});
    if (i && table[i].nu < table[i - 1].nu) monotone = false;
  }
  write_atomic(c.out_dir / "alt_convergence.csv", csv.str());
  const bool grows = table.size() < 2 || table.back().nu > table.front().nu;
  log << "alt-convergence: " << table.size() << " rows, nondecreasing " << monotone << ", grows " << grows << "\n";
  return monotone && grows ? 0 : 1;
}

// Words killed by A(Z): conjugated commutators of far-apart 3-cycles, and conjugated b^3.
std::vector<ReducedWord> trivial_az_words(std::size_t count, int conj_length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto az = az_oracle();
  auto random_word = [&](int len) {
    std::vector<int> letters;
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < len; ++i) letters.push_back(letter_from_key(pick(rng)));
    return ReducedWord::reduce(2, letters);
  };
  const ReducedWord a = ReducedWord::generator(2, 1), b = ReducedWord::generator(2, 2);
  std::vector<ReducedWord> out;
  std::uniform_int_distribution<int> kind(0, 3), off(0, 3), gap(3, 5), sign(0, 1);
  while (out.size() < count) {
    const ReducedWord z = random_word(conj_length);
    ReducedWord core;
    if (kind(rng) == 0) {
      core = b.power(3);
    } else {
      const int i = off(rng), j = i + gap(rng);
      const ReducedWord x = a.power(i) * b.power(sign(rng) ? 1 : -1) * a.power(-i);
      const ReducedWord y = a.power(j) * b.power(sign(rng) ? 1 : -1) * a.power(-j);
      core = x * y * x.inverse() * y.inverse();
    }
    const ReducedWord w = z * core * z.inverse();
    if (!w.is_identity() && az->evaluate(w).is_identity()) out.push_back(w);
  }
  return out;
}

int neumann(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const auto offsets = p.integers("offsets", "0,16,64");
  const int count = static_cast<int>(p.integer("count", 6));
  const auto words = static_cast<std::size_t>(p.integer("words", 20));
  const int conj = static_cast<int>(p.integer("conj_length", 3));
  const std::string radii = p.str("radii", "linear");
  RadiusSequence r0;
  if (radii == "linear") {
    r0 = default_radius_sequence;
  } else if (radii == "geometric") {
    r0 = [](int m) { return 2 << m; };
  } else {
    throw UsageError("radii", "expected linear or geometric");
  }
  if (count < 1) throw UsageError("count", "must be positive");
  const auto az = az_oracle();
  const auto ws = trivial_az_words(words, conj, p.seed());
  Csv csv("factor indices m + offset at which a word trivial in A(Z) survives in Alt([[r0]])",
          {"word", "length", "offset", "trivial_in_target", "defect", "max_defect_radius"});
  bool ok = true;
  std::size_t last_nonempty = 0;
  for (long off : offsets) {
    if (off < 0) throw UsageError("offsets", "must be non-negative");
    const auto product = neumann_truncation(static_cast<int>(off), count, r0);
    for (const auto& w : ws) {
      const auto d = tail_defect(w, product, *az);
      std::string ds;
      int max_r = 0;
      for (auto m : d.defect) {
        ds += (ds.empty() ? "" : ";") + std::to_string(static_cast<long>(m) + off);
        max_r = std::max(max_r, r0(static_cast<int>(m) + static_cast<int>(off)));
      }
      // A word of length l trivial in A(Z) is trivial in Alt([[r]]) once r >= l + 2.
      ok = ok && d.trivial_in_target && max_r < static_cast<int>(w.length()) + 2;
      if (off == offsets.back()) last_nonempty += !d.defect.empty();
      csv.row({w.str(), std::to_string(w.length()), std::to_string(off), yes(d.trivial_in_target), ds,
               std::to_string(max_r)});
    }
  }
  write_atomic(c.out_dir / "neumann.csv", csv.str());
  log << "neumann: " << ws.size() << " words, defects within r <= |w|+1 " << ok << ", "
      << last_nonempty << " nonempty at offset " << offsets.back() << "\n";
  return ok && last_nonempty == 0 ? 0 : 1;
}

int vershik(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  std::vector<Rational> alpha;
  for (const auto& a : p.strings("alpha", "1/2,1/2")) {
    try {
      alpha.push_back(parse_rational(a));
    } catch (const InvalidArgument& e) {
      throw UsageError("alpha", e.what());
    }
  }
  VershikOptions opt;
  opt.radius = static_cast<int>(p.integer("r", 2));
  opt.window = static_cast<int>(p.integer("window", 64));
  const auto samples = static_cast<std::uint64_t>(p.integer("samples", 100000));
  if (samples < 1) throw UsageError("samples", "must be positive");
  const std::uint64_t seed = p.seed();
  const ApproxIRS limit = vershik_irs_sampled(alpha, {true, 0}, opt, samples, seed);
  write_atomic(c.out_dir / "vershik_az.jsonl", to_jsonl(limit));
  Csv csv("colouring IRS of Alt([[n]]) against the window-sampled colouring IRS of A(Z)",
          {"n", "tv", "combined_stderr", "n_samples"});
  std::uint64_t stream = 1;
  double prev_tv = 0, prev_se = 0;
  bool decreasing = true, first = true;
  double last_tv = 0, last_se = 0;
  for (long n : p.integers("ns", "20,40,80")) {
    const ApproxIRS irs = vershik_irs_sampled(alpha, {false, static_cast<int>(n)}, opt, samples, seed + stream++);
    write_atomic(c.out_dir / ("vershik_alt" + std::to_string(n) + ".jsonl"), to_jsonl(irs));
    const double tv = irs_distance<double>(irs, limit);
    const double se = combined_stderr(irs, limit);
    csv.row({std::to_string(n), fmt(tv), fmt(se), std::to_string(samples)});
    if (!first && tv > prev_tv + 3 * std::max(se, prev_se)) decreasing = false;
    prev_tv = tv;
    prev_se = se;
    last_tv = tv;
    last_se = se;
    first = false;
  }
  write_atomic(c.out_dir / "vershik.csv", csv.str());
  log << "vershik: final tv " << last_tv << " (combined stderr " << last_se << ")\n";
  return decreasing ? 0 : 1;
}

int subshift_kr(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const SubshiftPtr space = subshift_param(p);
  const double tol = c.tolerance.value_or(1e-9);
  const ErgodicMeasure mu(space, tol);
  std::vector<std::string> seeds;
  if (c.params.count("seeds")) {
    seeds = p.strings("seeds", "");
  } else {
    seeds = space->language_upto(3);
  }
  std::vector<ClopenSet> letters;
  for (char ch : space->alphabet()) letters.push_back(ClopenSet::cylinder(space, std::string(1, ch)));
  Csv csv("Kakutani-Rokhlin partitions from return words of " + space->substitution().str(),
          {"seed", "towers", "atoms", "min_height", "partitions", "roof_to_base", "mass_sum",
           "mass_error", "refine_preserves"});
  bool ok = true;
  for (const auto& u : seeds) {
    KRPartition xi = [&] {
      try {
        return kr_partition(space, u);
      } catch (const InvalidArgument& e) {
        throw UsageError("seeds", e.what());
      }
    }();
    const KRCheck check = check_towers(space, xi.towers());
    double mass = 0;
    for (const auto& t : xi.towers()) mass += static_cast<double>(t.height) * t.base.measure(mu);
    const KRPartition fine = refine_kr(xi, letters);
    const bool keeps = fine.base() == xi.base() && fine.roof() == xi.roof() &&
                       fine.min_height() == xi.min_height();
    const double err = std::abs(mass - 1.0);
    const bool row_ok = check.ok() && keeps && err <= static_cast<double>(xi.atom_count()) * tol;
    ok = ok && row_ok;
    csv.row({u, std::to_string(xi.towers().size()), std::to_string(xi.atom_count()),
             std::to_string(xi.min_height()), yes(check.partitions), yes(check.roof_to_base),
             fmt(mass), fmt(err), yes(keeps)});
    write_atomic(c.out_dir / ("kr_" + u + ".json"), xi.to_json() + "\n");
  }
  write_atomic(c.out_dir / "subshift_kr.csv", csv.str());
  log << "subshift-kr: " << seeds.size() << " seeds, all invariants " << ok << "\n";
  return ok ? 0 : 1;
}

std::vector<LevelSpec> levels_param(const Params& p, const std::string& def) {
  std::vector<LevelSpec> out;
  for (const auto& l : p.strings("levels", def)) {
    try {
      out.push_back(LevelSpec::parse(l));
    } catch (const InvalidArgument& e) {
      throw UsageError("levels", e.what());
    }
  }
  return out;
}

int fullgroup_embed(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const SubshiftPtr space = subshift_param(p);
  const auto s = gadgets_param(p, space);
  AdaptOptions opt;
  opt.max_depth = static_cast<std::size_t>(p.integer("max_depth", 64));
  Csv csv("local embeddings of full-group balls into atom permutations of adapted partitions",
          {"n", "level", "depth", "atoms", "ball_size", "pairs_checked", "injective",
           "multiplicative", "block_stab", "pass"});
  bool ok = true;
  for (long n : p.integers("ns", "1,2")) {
    for (const auto& level : levels_param(p, "a,aab")) {
      AdaptOptions o = opt;
      o.min_depth = level.min_depth;
      const KRPartition xi = adapted_partition(s, static_cast<int>(n), level.seed, o);
      const EmbeddingReport rep = local_embedding(s, static_cast<int>(n), xi);
      ok = ok && rep.pass;
      const std::string name = level.seed + "@" + std::to_string(level.min_depth);
      csv.row({std::to_string(n), name, std::to_string(level.min_depth), std::to_string(rep.atom_count),
               std::to_string(rep.ball_size), std::to_string(rep.pairs_checked), yes(rep.injective),
               yes(rep.multiplicative), yes(rep.block_stab), yes(rep.pass)});
      write_atomic(c.out_dir / ("embed_n" + std::to_string(n) + "_" + level.seed + "_" +
                                std::to_string(level.min_depth) + ".json"),
                   rep.to_json() + "\n");
    }
  }
  write_atomic(c.out_dir / "fullgroup_embed.csv", csv.str());
  log << "fullgroup-embed: all embeddings pass " << ok << "\n";
  return ok ? 0 : 1;
}

int fullgroup_irs_exp(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const SubshiftPtr space = subshift_param(p);
  const auto s = gadgets_param(p, space);
  const ErgodicMeasure mu(space, c.tolerance.value_or(1e-9));
  const int r = static_cast<int>(p.integer("r", 1));
  AdaptOptions opt;
  opt.max_depth = static_cast<std::size_t>(p.integer("max_depth", 64));
  const auto levels = levels_param(p, "a,aa@16");
  Csv csv("stabilizer IRS of k-point atom measures across partition levels",
          {"k", "level_i", "level_j", "atoms_i", "atoms_j", "tv", "bound", "pass"});
  bool ok = true;
  std::map<std::size_t, ApproxIRS> k1;
  for (long k : p.integers("ks", "1,2")) {
    const LimitReport rep = fullgroup_irs_limit_check(s, static_cast<int>(k), r, levels, mu, opt);
    ok = ok && rep.pass;
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      const auto& li = rep.levels[i];
      write_atomic(c.out_dir / ("fullgroup_irs_k" + std::to_string(k) + "_" + li.seed + "_" +
                                std::to_string(li.depth) + ".jsonl"),
                   to_jsonl(li.irs.irs));
      if (k == 1) k1[i] = li.irs.irs;
      if (k > 1 && k1.count(i)) {
        const ApproxIRS m = joint_marginal(li.irs, 0);
        bool same = m.masses.size() == k1[i].masses.size();
        for (const auto& [f, _] : m.masses) same = same && k1[i].masses.count(f);
        const double tv = irs_distance<double>(m, k1[i]);
        ok = ok && same && tv <= rep.bound;
        log << "fullgroup-irs: k=" << k << " marginal at level " << li.seed << " same support " << same
            << ", tv to k=1 " << tv << "\n";
      }
      for (std::size_t j = i + 1; j < rep.levels.size(); ++j) {
        const auto& lj = rep.levels[j];
        csv.row({std::to_string(k), li.seed + "@" + std::to_string(li.depth),
                 lj.seed + "@" + std::to_string(lj.depth), std::to_string(li.atom_count),
                 std::to_string(lj.atom_count), fmt(rep.tv[i][j]), fmt(rep.bound),
                 yes(rep.tv[i][j] <= rep.bound)});
      }
    }
  }
  write_atomic(c.out_dir / "fullgroup_irs.csv", csv.str());
  log << "fullgroup-irs: limit checks pass " << ok << "\n";
  return ok ? 0 : 1;
}

GenTuple random_tuple(std::mt19937_64& rng, int rank, std::size_t size) {
  std::vector<Perm> perms;
  for (int i = 0; i < rank; ++i) {
    std::vector<std::uint32_t> img(size);
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    perms.emplace_back(std::move(img));
  }
  return GenTuple(std::move(perms));
}

int dgen(const ExperimentConfig& c, const Params& p, std::ostream& log) {
  const auto instances = p.integer("instances", 100);
  const auto size = static_cast<std::size_t>(p.integer("size", 6));
  const int rank = static_cast<int>(p.integer("rank", 2));
  const auto restarts = static_cast<std::size_t>(p.integer("restarts", 8));
  const double min_agree = p.real("min_agreement", 0.9);
  if (size < 1 || size > kDefaultDGenCap) {
    throw UsageError("size", "must lie in 1.." + std::to_string(kDefaultDGenCap) + " for the exhaustive oracle");
  }
  if (rank < 1) throw UsageError("rank", "must be positive");
  std::mt19937_64 rng(p.seed());
  Csv csv("exhaustive d_gen against the greedy and 2-swap bound",
          {"instance", "exact", "bound", "equal", "bound_ge_exact", "self_zero"});
  std::string dump;
  long equal = 0;
  bool sound = true;
  for (long i = 0; i < instances; ++i) {
    const GenTuple x = random_tuple(rng, rank, size);
    GenTuple y;
    if (i % 2 == 0) {
      // A relabelled copy of X with one generator perturbed by a transposition.
      std::vector<std::uint32_t> rel(size);
      std::iota(rel.begin(), rel.end(), 0u);
      std::shuffle(rel.begin(), rel.end(), rng);
      auto perms = x.relabeled(Perm(rel)).perms();
      std::uniform_int_distribution<std::size_t> pt(0, size - 1);
      std::uniform_int_distribution<int> gen(0, rank - 1);
      auto img = perms[static_cast<std::size_t>(gen(rng))].images();
      std::swap(img[pt(rng)], img[pt(rng)]);
      perms[static_cast<std::size_t>(gen(rng))] = Perm(img);
      y = GenTuple(std::move(perms));
    } else {
      y = random_tuple(rng, rank, size);
    }
    const auto exact = d_gen_exact(x, y);
    const auto bound = d_gen_bound(x, y, restarts, rng());
    const bool self_zero = d_gen_exact(x, x).value == 0;
    const bool eq = bound.value == exact.value;
    equal += eq;
    sound = sound && bound.value >= exact.value && self_zero;
    csv.row({std::to_string(i), to_string(exact.value), to_string(bound.value), yes(eq),
             yes(bound.value >= exact.value), yes(self_zero)});
    dump += fset_pair_to_json(FSetPair(x, y)) + "\n";
  }
  write_atomic(c.out_dir / "dgen.csv", csv.str());
  write_atomic(c.out_dir / "dgen_instances.jsonl", dump);
  const bool agree = static_cast<double>(equal) >= min_agree * static_cast<double>(instances);
  log << "dgen: " << equal << "/" << instances << " bounds exact, sound " << sound << "\n";
  return sound && agree ? 0 : 1;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot read " + path.string());
  ExperimentConfig c;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config", path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw UsageError("config", "empty key");
  if (key == "experiment") {
    experiment = value;
  } else if (key == "seed") {
    try {
      std::size_t used = 0;
      if (value.empty() || !std::isdigit(static_cast<unsigned char>(value[0]))) throw std::invalid_argument(value);
      seed = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("seed", "expected a non-negative integer, got \"" + value + "\"");
    }
  } else if (key == "out") {
    out_dir = value;
  } else if (key == "tolerance") {
    try {
      std::size_t used = 0;
      tolerance = std::stod(value, &used);
      if (used != value.size() || !(*tolerance > 0)) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("tolerance", "expected a positive number, got \"" + value + "\"");
    }
  } else {
    params[key] = value;
  }
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : allowed_keys()) out.push_back(k);
    return out;
  }();
  return names;
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

int run(const ExperimentConfig& config, std::ostream& log) {
  const Params p(config);
  try {
    const auto& e = config.experiment;
    if (e == "alt-convergence") return alt_convergence(config, p, log);
    if (e == "neumann") return neumann(config, p, log);
    if (e == "vershik") return vershik(config, p, log);
    if (e == "subshift-kr") return subshift_kr(config, p, log);
    if (e == "fullgroup-embed") return fullgroup_embed(config, p, log);
    if (e == "fullgroup-irs") return fullgroup_irs_exp(config, p, log);
    return dgen(config, p, log);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& ex) {
    throw std::runtime_error(config.experiment + ": " + ex.what());
  }
}

}  // namespace stablab
