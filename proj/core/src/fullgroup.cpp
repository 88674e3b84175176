#include "stablab/fullgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace stablab {

using nlohmann::json;

namespace {

// Canonical form: merge equal exponents, drop empty sets, minimal resolution.
std::vector<Part> canonical(const SubshiftPtr& space, const std::vector<Part>& parts) {
  std::map<long, ClopenSet> by_exp;
  for (const auto& p : parts) {
    auto it = by_exp.find(p.exponent);
    if (it == by_exp.end()) {
      by_exp.emplace(p.exponent, p.set);
    } else {
      it->second = it->second | p.set;
    }
  }
  std::vector<Part> out;
  for (auto& [a, c] : by_exp) {
    if (!c.is_empty()) out.push_back({c.normalized(), a});
  }
  if (out.empty()) out.push_back({ClopenSet::full(space), 0});
  return out;
}

std::string atom_name(const KRPartition& xi, std::size_t flat) {
  const auto [v, i] = xi.atom_at(flat);
  return "(" + std::to_string(v) + "," + std::to_string(i) + ")";
}

}  // namespace

TableElement::TableElement(SubshiftPtr space, std::vector<Part> parts)
    : space_(std::move(space)), parts_(std::move(parts)) {}

TableElement TableElement::identity(SubshiftPtr space) {
  auto full = ClopenSet::full(space);
  return TableElement(std::move(space), {{std::move(full), 0}});
}

TableElement TableElement::shift(SubshiftPtr space, long a) {
  auto full = ClopenSet::full(space);
  return TableElement(std::move(space), {{std::move(full), a}});
}

long TableElement::max_abs_exponent() const {
  long m = 0;
  for (const auto& p : parts_) m = std::max(m, std::labs(p.exponent));
  return m;
}

int TableElement::resolution() const {
  int l = 0;
  for (const auto& p : parts_) l = std::max(l, p.set.resolution());
  return l;
}

long TableElement::cocycle(std::string_view window, std::size_t center) const {
  for (const auto& p : parts_) {
    const auto l = static_cast<std::size_t>(p.set.resolution());
    if (center < l || center + l >= window.size()) {
      throw InvalidArgument("point window too short around its centre for resolution " +
                            std::to_string(l));
    }
    if (p.set.contains_window(window.substr(center - l, 2 * l + 1))) return p.exponent;
  }
  throw InvalidArgument("window \"" + std::string(window) + "\" is not an admissible point");
}

std::string TableElement::key() const {
  std::string out;
  for (const auto& p : parts_) out += std::to_string(p.exponent) + ':' + p.set.str() + ';';
  return out;
}

std::string TableElement::to_json() const {
  json parts = json::array();
  for (const auto& p : parts_) {
    parts.push_back({{"exponent", p.exponent},
                     {"resolution", p.set.resolution()},
                     {"members", p.set.members()}});
  }
  return json{{"parts", parts}}.dump();
}

TableElement make_element(SubshiftPtr space, std::vector<Part> parts) {
  if (!space) throw InvalidArgument("element needs a subshift");
  std::vector<ClopenSet> sets, images;
  for (const auto& p : parts) {
    if (p.set.space() != space) throw InvalidArgument("part lives in another subshift");
    sets.push_back(p.set);
    images.push_back(p.set.shifted(p.exponent));
  }
  check_partition(sets);
  try {
    check_partition(images);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("table is not bijective: images T^a(C) fail to partition: ") +
                          e.what());
  }
  auto canon = canonical(space, parts);
  return TableElement(std::move(space), std::move(canon));
}

TableElement compose(const TableElement& g, const TableElement& h) {
  if (g.space_ != h.space_) throw InvalidArgument("elements act on different subshifts");
  std::vector<Part> parts;
  for (const auto& ph : h.parts_) {
    for (const auto& pg : g.parts_) {
      // x in C_h with h(x) = T^b x in C_g.
      ClopenSet d = ph.set & pg.set.shifted(-ph.exponent);
      if (!d.is_empty()) parts.push_back({std::move(d), pg.exponent + ph.exponent});
    }
  }
  return TableElement(g.space_, canonical(g.space_, parts));
}

TableElement inverse(const TableElement& g) {
  std::vector<Part> parts;
  for (const auto& p : g.parts_) parts.push_back({p.set.shifted(p.exponent), -p.exponent});
  return TableElement(g.space_, canonical(g.space_, parts));
}

TableElement three_cycle(const ClopenSet& u) {
  const auto& space = u.space();
  if (u.is_empty()) return TableElement::identity(space);
  const ClopenSet tu = u.shifted(1), ttu = u.shifted(2);
  if (!u.disjoint_from(tu) || !u.disjoint_from(ttu) || !tu.disjoint_from(ttu)) {
    throw InvalidArgument("U, TU and T^2U are not pairwise disjoint for U = " + u.str());
  }
  const ClopenSet support = u | tu | ttu;
  return make_element(space, {{u, 1}, {tu, 1}, {ttu, -2}, {support.complement(), 0}});
}

std::vector<BallEntry> ball_elements(const std::vector<TableElement>& s, int n, std::size_t cap) {
  if (s.empty()) throw InvalidArgument("generating set is empty");
  if (n < 0) throw InvalidArgument("ball radius must be non-negative");
  const int d = static_cast<int>(s.size());
  std::vector<int> letters;
  std::vector<TableElement> images;
  for (int key = 0; key < 2 * d; ++key) {
    const int x = letter_from_key(key);
    letters.push_back(x);
    images.push_back(x > 0 ? s[static_cast<std::size_t>(x - 1)]
                           : inverse(s[static_cast<std::size_t>(-x - 1)]));
  }
  std::vector<BallEntry> out{{ReducedWord(d), TableElement::identity(s.front().space())}};
  std::unordered_map<std::string, std::size_t> seen{{out[0].element.key(), 0}};
  std::size_t level_begin = 0;
  for (int level = 1; level <= n; ++level) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        TableElement g = compose(out[i].element, images[k]);
        std::string key = g.key();
        if (seen.count(key)) continue;
        if (out.size() >= cap) {
          throw ResourceError("ball exceeds the cap of " + std::to_string(cap) + " elements");
        }
        seen.emplace(std::move(key), out.size());
        out.push_back({out[i].word * ReducedWord::generator(d, letters[k]), std::move(g)});
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<long> atom_exponents(const TableElement& g, const KRPartition& xi) {
  if (g.space() != xi.space()) throw InvalidArgument("element and partition differ in subshift");
  const int p = g.resolution();
  std::unordered_map<std::string, long> exp_of;
  for (const auto& part : g.parts()) {
    for (const auto& w : part.set.refined(p).members()) exp_of.emplace(w, part.exponent);
  }
  std::vector<long> out(xi.atom_count());
  for (std::size_t a = 0; a < xi.atom_count(); ++a) {
    const ClopenSet atom = xi.atom(a);
    const int l = std::max(atom.resolution(), p);
    bool first = true;
    for (const auto& w : atom.refined(l).members()) {
      const long e = exp_of.at(w.substr(static_cast<std::size_t>(l - p), static_cast<std::size_t>(2 * p + 1)));
      if (first) {
        out[a] = e;
        first = false;
      } else if (e != out[a]) {
        throw PreconditionError("cocycle is not constant on atom " + atom_name(xi, a) +
                                ": takes values " + std::to_string(out[a]) + " and " +
                                std::to_string(e));
      }
    }
  }
  return out;
}

namespace {

AtomPerm action_from_exponents(const std::vector<long>& exps, const KRPartition& xi) {
  std::vector<std::uint32_t> images(xi.atom_count());
  for (std::size_t v = 0; v < xi.towers().size(); ++v) {
    const std::size_t h = xi.towers()[v].height;
    const std::size_t off = xi.offset(v);
    std::vector<long> target(h, -1);
    std::vector<bool> hit(h, false);
    for (std::size_t i = 0; i < h; ++i) {
      const long j = static_cast<long>(i) + exps[off + i];
      if (j < 0 || j >= static_cast<long>(h)) continue;
      if (hit[static_cast<std::size_t>(j)]) {
        throw PreconditionError("two atoms of tower " + std::to_string(v) + " map to level " +
                                std::to_string(j));
      }
      hit[static_cast<std::size_t>(j)] = true;
      target[i] = j;
    }
    // Boundary completion: leftover sources to leftover targets, bottom up.
    std::size_t next = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if (target[i] >= 0) continue;
      while (hit[next]) ++next;
      hit[next] = true;
      target[i] = static_cast<long>(next);
    }
    for (std::size_t i = 0; i < h; ++i) {
      images[off + i] = static_cast<std::uint32_t>(off + static_cast<std::size_t>(target[i]));
    }
  }
  return {Perm(std::move(images)), true};
}

}  // namespace

AtomPerm atom_action(const TableElement& g, const KRPartition& xi) {
  return action_from_exponents(atom_exponents(g, xi), xi);
}

namespace {

struct Adapted {
  KRPartition xi;
  std::size_t depth;
};

Adapted adapt(const std::vector<TableElement>& s, int n, std::string_view u, std::size_t min_depth,
              std::size_t max_depth) {
  const auto ball = ball_elements(s, n);
  const SubshiftPtr& space = s.front().space();
  if (!space->admissible(u) || u.empty()) {
    throw InvalidArgument("seed \"" + std::string(u) + "\" is not an admissible word");
  }
  long m = 0;
  for (const auto& e : ball) m = std::max(m, e.element.max_abs_exponent());
  const auto need = static_cast<std::size_t>(2 * m + 2);

  std::string seed(u);
  std::size_t anchor = 0, depth = 0;
  auto height = [&] { return return_words(*space, seed).front().size(); };
  while (depth < min_depth || height() < need) {
    if (depth >= max_depth) {
      throw ResourceError("minimum tower height " + std::to_string(height()) + " is below the " +
                          "required " + std::to_string(need) + " after " + std::to_string(depth) +
                          " deepenings of \"" + std::string(u) + "\"");
    }
    bool extended = false;
    for (char c : space->alphabet()) {
      const std::string cand = depth % 2 == 0 ? seed + c : c + seed;
      if (space->admissible(cand)) {
        seed = cand;
        extended = true;
        break;
      }
    }
    if (!extended) throw InvalidArgument("seed \"" + seed + "\" has no admissible extension");
    if (depth % 2 == 1) ++anchor;
    ++depth;
  }
  const KRPartition xi = kr_partition(space, seed, anchor);

  // Common refinement of the cocycle partitions of the ball.
  int p = 0;
  for (const auto& e : ball) p = std::max(p, e.element.resolution());
  std::vector<std::unordered_map<std::string, long>> exp_of(ball.size());
  for (std::size_t b = 0; b < ball.size(); ++b) {
    for (const auto& part : ball[b].element.parts()) {
      for (const auto& w : part.set.refined(p).members()) exp_of[b].emplace(w, part.exponent);
    }
  }
  std::map<std::vector<long>, std::vector<std::string>> groups;
  for (const auto& w : space->language(static_cast<std::size_t>(2 * p + 1))) {
    std::vector<long> sig;
    for (const auto& table : exp_of) sig.push_back(table.at(w));
    groups[sig].push_back(w);
  }
  std::vector<ClopenSet> pi;
  for (auto& [_, words] : groups) pi.emplace_back(space, p, std::move(words));
  KRPartition refined = refine_kr(xi, pi);

  if (refined.min_height() < need) {
    throw std::logic_error("refinement lowered the minimum tower height");
  }
  for (const auto& e : ball) atom_exponents(e.element, refined);
  return {std::move(refined), depth};
}

}  // namespace

KRPartition adapted_partition(const std::vector<TableElement>& s, int n, std::string_view u,
                              const AdaptOptions& options) {
  return adapt(s, n, u, options.min_depth, options.max_depth).xi;
}

EmbeddingReport local_embedding(const std::vector<TableElement>& s, int n, const KRPartition& xi) {
  EmbeddingReport rep;
  rep.ball = ball_elements(s, n);
  rep.ball_size = rep.ball.size();
  rep.atom_count = xi.atom_count();
  std::vector<std::vector<long>> exps;
  try {
    for (const auto& e : rep.ball) {
      exps.push_back(atom_exponents(e.element, xi));
      rep.images.push_back(action_from_exponents(exps.back(), xi));
    }
  } catch (const PreconditionError& e) {
    rep.failures.push_back("element " + rep.ball[exps.size()].word.str() + ": " + e.what());
    rep.failures.push_back("partition is not adapted to the ball; use a deeper partition");
    rep.images.clear();
    return rep;
  }
  rep.precondition_ok = true;

  rep.injective = true;
  std::map<std::vector<std::uint32_t>, std::size_t> by_image;
  for (std::size_t i = 0; i < rep.images.size(); ++i) {
    auto [it, fresh] = by_image.emplace(rep.images[i].perm.images(), i);
    if (!fresh) {
      rep.injective = false;
      rep.failures.push_back("elements " + rep.ball[it->second].word.str() + " and " +
                             rep.ball[i].word.str() + " have the same atom action");
    }
  }

  rep.multiplicative = true;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rep.ball.size(); ++i) index.emplace(rep.ball[i].element.key(), i);
  for (std::size_t i = 0; i < rep.ball.size(); ++i) {
    for (std::size_t j = 0; j < rep.ball.size(); ++j) {
      auto it = index.find(compose(rep.ball[i].element, rep.ball[j].element).key());
      if (it == index.end()) continue;
      ++rep.pairs_checked;
      if (rep.images[it->second].perm != rep.images[i].perm * rep.images[j].perm) {
        rep.multiplicative = false;
        rep.failures.push_back("phi(" + rep.ball[i].word.str() + " " + rep.ball[j].word.str() +
                               ") differs from the product of the images");
      }
    }
  }

  // One sample point per atom, at a resolution fine enough for every element.
  int l = 0;
  for (const auto& e : rep.ball) l = std::max(l, e.element.resolution());
  std::vector<std::string> sample(xi.atom_count());
  for (std::size_t a = 0; a < xi.atom_count(); ++a) {
    const ClopenSet atom = xi.atom(a);
    sample[a] = atom.refined(std::max(l, atom.resolution())).members().front();
  }
  rep.block_stab = true;
  for (std::size_t g = 0; g < rep.ball.size(); ++g) {
    for (std::size_t a = 0; a < xi.atom_count(); ++a) {
      const bool fixes_point = rep.ball[g].element.cocycle(sample[a]) == 0;
      const bool fixes_atom = exps[g][a] == 0;
      const bool phi_fixes = rep.images[g].perm(static_cast<std::uint32_t>(a)) == a;
      if (fixes_point != fixes_atom || fixes_atom != phi_fixes) {
        rep.block_stab = false;
        rep.failures.push_back("fixation of atom " + atom_name(xi, a) + " by " +
                               rep.ball[g].word.str() + " disagrees (point " +
                               std::to_string(fixes_point) + ", atom " + std::to_string(fixes_atom) +
                               ", image " + std::to_string(phi_fixes) + ")");
      }
    }
  }
  rep.pass = rep.injective && rep.multiplicative && rep.block_stab;
  if (!rep.pass) rep.failures.push_back("use a deeper partition");
  return rep;
}

std::string EmbeddingReport::to_json() const {
  json elems = json::array();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    json e{{"word", ball[i].word.str()}};
    if (i < images.size()) e["atom_perm"] = images[i].perm.images();
    elems.push_back(e);
  }
  return json{{"pass", pass},
              {"precondition_ok", precondition_ok},
              {"injective", injective},
              {"multiplicative", multiplicative},
              {"block_stab", block_stab},
              {"ball_size", ball_size},
              {"atom_count", atom_count},
              {"pairs_checked", pairs_checked},
              {"failures", failures},
              {"elements", elems}}
      .dump();
}

FullGroupIRS fullgroup_irs(const KRPartition& xi, const std::vector<TableElement>& s, int k, int r,
                           const ErgodicMeasure& mu) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const EmbeddingReport rep = local_embedding(s, r, xi);
  if (!rep.pass) {
    throw PreconditionError("local embedding fails at radius " + std::to_string(r) + ": " +
                            (rep.failures.empty() ? std::string("unknown") : rep.failures.front()));
  }
  std::vector<Perm> gens;
  for (const auto& g : s) gens.push_back(atom_action(g, xi).perm);
  const GenTuple phi(std::move(gens));
  const Ball ball = enumerate_ball(phi.rank(), r);
  const auto masks = fixation_masks(phi, ball);

  // Fixation classes of single atoms with their masses nu(T^i B_v) = nu(B_v).
  std::map<std::vector<bool>, double> classes;
  for (std::size_t v = 0; v < xi.towers().size(); ++v) {
    const double m = xi.towers()[v].base.measure(mu);
    for (std::size_t i = 0; i < xi.towers()[v].height; ++i) classes[masks[xi.offset(v) + i]] += m;
  }
  std::vector<std::pair<std::vector<bool>, double>> cls(classes.begin(), classes.end());
  double combos = 1;
  for (int c = 0; c < k; ++c) combos *= static_cast<double>(cls.size());
  if (combos > 1e7) throw ResourceError("too many atom-class tuples for k = " + std::to_string(k));

  FullGroupIRS out;
  out.atom_count = xi.atom_count();
  out.irs.rank = ball.rank();
  out.irs.radius = r;
  out.irs.tolerance = k * static_cast<double>(xi.atom_count()) * mu.tolerance();
  std::vector<CylinderFingerprint> single;
  for (const auto& [mask, _] : cls) single.push_back(WordSet::from_mask(ball, mask));
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<bool> mask(ball.size(), true);
    double mass = 1;
    std::vector<CylinderFingerprint> coords;
    for (auto i : idx) {
      for (std::size_t w = 0; w < ball.size(); ++w) mask[w] = mask[w] && cls[i].first[w];
      mass *= cls[i].second;
      coords.push_back(single[i]);
    }
    out.irs.masses[WordSet::from_mask(ball, mask)] += mass;
    out.joint[coords] += mass;
    std::size_t c = 0;
    while (c < idx.size() && ++idx[c] == cls.size()) idx[c++] = 0;
    if (c == idx.size()) break;
  }
  return out;
}

ApproxIRS joint_marginal(const FullGroupIRS& irs, std::size_t coordinate) {
  ApproxIRS out;
  out.rank = irs.irs.rank;
  out.radius = irs.irs.radius;
  out.tolerance = irs.irs.tolerance;
  for (const auto& [coords, m] : irs.joint) {
    if (coordinate >= coords.size()) throw InvalidArgument("coordinate out of range");
    out.masses[coords[coordinate]] += m;
  }
  return out;
}

std::pair<KRPartition, std::size_t> passing_partition(const std::vector<TableElement>& s, int n,
                                                      std::string_view u,
                                                      const AdaptOptions& options) {
  std::size_t min_depth = options.min_depth;
  while (true) {
    Adapted a = adapt(s, n, u, min_depth, options.max_depth);
    if (local_embedding(s, n, a.xi).pass) return {std::move(a.xi), a.depth};
    if (a.depth >= options.max_depth) {
      throw ResourceError("no passing local embedding for seed \"" + std::string(u) +
                          "\" up to depth " + std::to_string(options.max_depth));
    }
    min_depth = a.depth + 1;
  }
}

LevelSpec LevelSpec::parse(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos) return {text, 0};
  try {
    std::size_t used = 0;
    const auto depth = std::stoul(text.substr(at + 1), &used);
    if (used == text.size() - at - 1) return {text.substr(0, at), depth};
  } catch (const std::exception&) {
  }
  throw InvalidArgument("level \"" + text + "\" is not of the form seed@depth");
}

LimitReport fullgroup_irs_limit_check(const std::vector<TableElement>& s, int k, int r,
                                      const std::vector<LevelSpec>& levels,
                                      const ErgodicMeasure& mu, const AdaptOptions& options) {
  if (levels.empty()) throw InvalidArgument("limit check needs at least one level");
  LimitReport rep;
  std::size_t max_atoms = 0;
  for (const auto& level : levels) {
    AdaptOptions opt = options;
    opt.min_depth = std::max(opt.min_depth, level.min_depth);
    auto [xi, depth] = passing_partition(s, r, level.seed, opt);
    LimitLevel lvl{level.seed, depth, xi.atom_count(), fullgroup_irs(xi, s, k, r, mu)};
    max_atoms = std::max(max_atoms, lvl.atom_count);
    rep.levels.push_back(std::move(lvl));
  }
  rep.bound = 2.0 * k * static_cast<double>(max_atoms) * mu.tolerance();
  rep.pass = true;
  rep.tv.assign(levels.size(), std::vector<double>(levels.size(), 0.0));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < levels.size(); ++j) {
      rep.tv[i][j] = irs_distance<double>(rep.levels[i].irs.irs, rep.levels[j].irs.irs);
      rep.pass = rep.pass && rep.tv[i][j] <= rep.bound;
    }
  }
  return rep;
}

}  // namespace stablab
