#include "chiy/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "chiy/localization.hpp"

namespace chiy {

using nlohmann::json;

const char* to_string(Filter f) {
  switch (f) {
    case Filter::Rigidity: return "rigidity";
    case Filter::WeightPairing: return "weight_pairing";
    case Filter::SmallestWeightPairing: return "smallest_weight_pairing";
  }
  return "unknown";
}

void validate(const EnumerationQuery& q) {
  if (q.point_count < 1) throw Error(ErrorKind::InvalidArgument, "point count must be at least 1");
  if (q.max_weight < 1 || q.max_weight > kMaxWeightBound) {
    throw Error(ErrorKind::InvalidArgument,
                "max weight must lie in [1, " + std::to_string(kMaxWeightBound) + "]");
  }
  if (q.worker_count < 0) throw Error(ErrorKind::InvalidArgument, "worker count must be non-negative");
}

EnumerationCounters& EnumerationCounters::operator+=(const EnumerationCounters& o) {
  nodes += o.nodes;
  candidates += o.candidates;
  pruned_pairing += o.pruned_pairing;
  pruned_symmetry += o.pruned_symmetry;
  rejected_effective += o.rejected_effective;
  rejected_pairing += o.rejected_pairing;
  rejected_symmetry += o.rejected_symmetry;
  rejected_smallest_pairing += o.rejected_smallest_pairing;
  rejected_rigidity_mod_p += o.rejected_rigidity_mod_p;
  rejected_rigidity += o.rejected_rigidity;
  rejected_sign_flip += o.rejected_sign_flip;
  return *this;
}

DatumDiagnostics diagnose(const FixedPointDatum& d) {
  DatumDiagnostics out;
  try {
    out.chi = chi_vector(d);
  } catch (const Error&) {
    // left empty when the localization sums are not constant
  }
  out.counts = n_vector(d);
  out.types = weight_types(d);
  out.gcd = weight_gcd(d);
  out.scope = theorem_scope(d);
  out.rigidity = check_rigidity(d).status == CheckStatus::Pass;
  out.weight_pairing = check_weight_pairing(d).passed();
  out.smallest_weight_pairing = check_smallest_weight_pairing(d).passed();
  out.kosniowski = check_kosniowski(d).passed();
  out.crowded = check_crowded(out.counts).passed();
  out.middle_range = check_middle_range(out.counts).passed();
  return out;
}

Integer candidate_space(std::size_t half_dim, std::size_t point_count, Weight max_weight) {
  Integer per_point;
  mpz_bin_uiui(per_point.get_mpz_t(), static_cast<unsigned long>(2 * max_weight) + half_dim - 1,
               static_cast<unsigned long>(half_dim));
  if (half_dim == 0) per_point = 1;
  Integer top = per_point + static_cast<unsigned long>(point_count) - 1;
  Integer space;
  mpz_bin_ui(space.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(point_count));
  return space;
}

namespace {

struct PointType {
  FixedPoint point;
  std::uint64_t mask = 0;    // bit (w + W) for each weight w present
  std::uint64_t mirror = 0;  // bit (-w + W) for each weight w present
  std::size_t negatives = 0;
  Weight gcd = 0;
};

// All sorted weight multisets of size n over [-W, W] \ {0}, in lexicographic order.
std::vector<PointType> point_types(std::size_t n, Weight max_weight) {
  std::vector<Weight> values;
  for (Weight w = -max_weight; w <= max_weight; ++w) {
    if (w != 0) values.push_back(w);
  }
  std::vector<PointType> out;
  std::vector<Weight> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (current.size() == n) {
      PointType t;
      t.point = FixedPoint(current);
      for (Weight w : current) {
        t.mask |= std::uint64_t{1} << (w + max_weight);
        t.mirror |= std::uint64_t{1} << (-w + max_weight);
        t.gcd = std::gcd(t.gcd, w);
      }
      t.negatives = t.point.negative_count();
      out.push_back(std::move(t));
      return;
    }
    for (std::size_t v = from; v < values.size(); ++v) {
      current.push_back(values[v]);
      rec(v);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::uint64_t symmetry_deficiency(const std::vector<long long>& counts) {
  const std::size_t n = counts.size() - 1;
  std::uint64_t deficit = 0;
  for (std::size_t i = 0; 2 * i < n; ++i) {
    const long long diff = counts[i] - counts[n - i];
    deficit += static_cast<std::uint64_t>(diff < 0 ? -diff : diff);
  }
  return deficit;
}

bool sign_flip_redundant(const FixedPointDatum& d) { return canonicalize(sign_flip(d)) < d; }

class SubtreeSearch {
 public:
  SubtreeSearch(const EnumerationQuery& q, const std::vector<PointType>& types,
                std::atomic<std::uint64_t>& global_nodes, std::atomic<bool>& abort)
      : q_(q),
        types_(types),
        global_nodes_(global_nodes),
        abort_(abort),
        use_pairing_(q.filters.count(Filter::WeightPairing) > 0),
        use_rigidity_(q.filters.count(Filter::Rigidity) > 0),
        use_smallest_(q.filters.count(Filter::SmallestWeightPairing) > 0),
        counts_(q.half_dim + 1, 0) {}

  void run(std::size_t first) {
    chosen_.push_back(first);
    ++counts_[types_[first].negatives];
    extend(types_[first].mask, types_[first].mirror, types_[first].gcd);
    flush();
  }

  EnumerationCounters counters;
  std::vector<AdmissibleDatum> found;

 private:
  static constexpr std::uint64_t kFlushInterval = 4096;

  void visit() {
    ++counters.nodes;
    if (++pending_ >= kFlushInterval) flush();
  }

  void flush() {
    const std::uint64_t total = global_nodes_.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (total > q_.candidate_ceiling) abort_.store(true, std::memory_order_relaxed);
  }

  void extend(std::uint64_t present, std::uint64_t mirror, Weight gcd) {
    visit();
    if (abort_.load(std::memory_order_relaxed)) return;
    const std::size_t remaining = q_.point_count - chosen_.size();
    if (remaining == 0) {
      complete(present, mirror, gcd);
      return;
    }
    // Each remaining point supplies at most n distinct opposite weights.
    if (use_pairing_ &&
        static_cast<std::size_t>(std::popcount(present & ~mirror)) > remaining * q_.half_dim) {
      ++counters.pruned_pairing;
      return;
    }
    // Each remaining point moves one N^i, so closes at most one unit of asymmetry.
    if (use_rigidity_ && symmetry_deficiency(counts_) > remaining) {
      ++counters.pruned_symmetry;
      return;
    }
    for (std::size_t next = chosen_.back(); next < types_.size(); ++next) {
      const PointType& t = types_[next];
      chosen_.push_back(next);
      ++counts_[t.negatives];
      extend(present | t.mask, mirror | t.mirror, std::gcd(gcd, t.gcd));
      --counts_[t.negatives];
      chosen_.pop_back();
    }
  }

  void complete(std::uint64_t present, std::uint64_t mirror, Weight gcd) {
    ++counters.candidates;
    if (use_pairing_ && (present & ~mirror) != 0) {
      ++counters.rejected_pairing;
      return;
    }
    if (q_.effective_only && gcd > 1) {
      ++counters.rejected_effective;
      return;
    }
    if (use_rigidity_ && symmetry_deficiency(counts_) != 0) {
      ++counters.rejected_symmetry;
      return;
    }
    std::vector<FixedPoint> points;
    points.reserve(chosen_.size());
    for (std::size_t idx : chosen_) points.push_back(types_[idx].point);
    FixedPointDatum d(q_.half_dim, std::move(points));
    if (use_smallest_ && !check_smallest_weight_pairing(d).passed()) {
      ++counters.rejected_smallest_pairing;
      return;
    }
    if (use_rigidity_) {
      if (!rigidity_plausible_mod_p(d)) {
        ++counters.rejected_rigidity_mod_p;
        return;
      }
      if (check_rigidity(d).status != CheckStatus::Pass) {
        ++counters.rejected_rigidity;
        return;
      }
    }
    if (q_.dedup_sign_flip && sign_flip_redundant(d)) {
      ++counters.rejected_sign_flip;
      return;
    }
    DatumDiagnostics diag = diagnose(d);
    found.push_back({std::move(d), std::move(diag)});
  }

  const EnumerationQuery& q_;
  const std::vector<PointType>& types_;
  std::atomic<std::uint64_t>& global_nodes_;
  std::atomic<bool>& abort_;
  bool use_pairing_;
  bool use_rigidity_;
  bool use_smallest_;
  std::vector<std::size_t> chosen_;
  std::vector<long long> counts_;
  std::uint64_t pending_ = 0;
};

void collect_findings(EnumerationReport& report) {
  for (const auto& a : report.admissible) {
    if (!a.diagnostics.kosniowski) {
      report.findings.push_back(
          {"kosniowski_violation", a.datum,
           json{{"points", a.datum.point_count()},
                {"bound", kosniowski_bound(static_cast<long long>(a.datum.dim()))}}});
    }
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

EnumerationReport enumerate_admissible(const EnumerationQuery& q) {
  validate(q);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<PointType> types = point_types(q.half_dim, q.max_weight);
  const int workers = q.worker_count > 0 ? q.worker_count : omp_get_max_threads();

  std::vector<std::vector<AdmissibleDatum>> per_subtree(types.size());
  std::vector<EnumerationCounters> per_counters(types.size());
  std::atomic<std::uint64_t> global_nodes{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;

  const auto subtree_count = static_cast<std::ptrdiff_t>(types.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t first = 0; first < subtree_count; ++first) {
    if (abort.load(std::memory_order_relaxed)) continue;
    try {
      SubtreeSearch search(q, types, global_nodes, abort);
      search.run(static_cast<std::size_t>(first));
      per_subtree[static_cast<std::size_t>(first)] = std::move(search.found);
      per_counters[static_cast<std::size_t>(first)] = search.counters;
    } catch (...) {
#pragma omp critical(chiy_enumerate_failure)
      {
        if (!failure) failure = std::current_exception();
      }
      abort.store(true);
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (abort.load()) {
    throw Error(ErrorKind::ResourceLimit, "search exceeded " + std::to_string(q.candidate_ceiling) +
                                              " candidates; narrow the query");
  }

  EnumerationReport report;
  report.query = q;
  // Subtrees are keyed by the lexicographically smallest point, so
  // concatenating them in order yields canonical order.
  for (std::size_t s = 0; s < types.size(); ++s) {
    report.counters += per_counters[s];
    for (auto& a : per_subtree[s]) report.admissible.push_back(std::move(a));
  }
  collect_findings(report);
  report.wall_seconds = seconds_since(start);
  return report;
}

EnumerationReport brute_force_admissible(const EnumerationQuery& q) {
  validate(q);
  if (candidate_space(q.half_dim, q.point_count, q.max_weight) > kBruteForceCeiling) {
    throw Error(ErrorKind::ResourceLimit, "brute force limited to " + std::to_string(kBruteForceCeiling) +
                                              " candidates");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::vector<PointType> types = point_types(q.half_dim, q.max_weight);

  EnumerationReport report;
  report.query = q;
  std::vector<std::size_t> idx(q.point_count, 0);
  while (true) {
    ++report.counters.nodes;
    ++report.counters.candidates;
    std::vector<FixedPoint> points;
    for (std::size_t i : idx) points.push_back(types[i].point);
    FixedPointDatum d(q.half_dim, std::move(points));

    bool ok = true;
    if (q.effective_only && !is_effective(d)) {
      ++report.counters.rejected_effective;
      ok = false;
    }
    if (ok && q.filters.count(Filter::WeightPairing) && !check_weight_pairing(d).passed()) {
      ++report.counters.rejected_pairing;
      ok = false;
    }
    if (ok && q.filters.count(Filter::SmallestWeightPairing) && !check_smallest_weight_pairing(d).passed()) {
      ++report.counters.rejected_smallest_pairing;
      ok = false;
    }
    if (ok && q.filters.count(Filter::Rigidity) && check_rigidity(d).status != CheckStatus::Pass) {
      ++report.counters.rejected_rigidity;
      ok = false;
    }
    if (ok && q.dedup_sign_flip && sign_flip_redundant(d)) {
      ++report.counters.rejected_sign_flip;
      ok = false;
    }
    if (ok) {
      DatumDiagnostics diag = diagnose(d);
      report.admissible.push_back({std::move(d), std::move(diag)});
    }

    // Next nondecreasing index tuple.
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] + 1 == types.size()) --pos;
    if (pos == 0) break;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < idx.size(); ++j) idx[j] = v;
  }
  std::sort(report.admissible.begin(), report.admissible.end(),
            [](const AdmissibleDatum& a, const AdmissibleDatum& b) { return a.datum < b.datum; });
  collect_findings(report);
  report.wall_seconds = seconds_since(start);
  return report;
}

bool ClassificationReport::consistent() const {
  return std::all_of(rows.begin(), rows.end(), [](const ClassificationRow& r) { return r.consistent(); });
}

namespace {

FixedPointDatum reduce_by_gcd(const FixedPointDatum& d) {
  const Weight g = weight_gcd(d);
  if (g <= 1) return d;
  std::vector<FixedPoint> points;
  for (const auto& p : d.points()) {
    std::vector<Weight> w = p.weights();
    for (auto& x : w) x /= g;
    points.emplace_back(std::move(w));
  }
  return canonicalize(FixedPointDatum(d.half_dim(), std::move(points)));
}

bool is_s2_form(const FixedPointDatum& d) {
  return d.half_dim() == 1 && d.point_count() == 2 && d.points()[0].weights()[0] == -d.points()[1].weights()[0] &&
         d.points()[1].weights()[0] > 0;
}

bool is_s6_form(const FixedPointDatum& d) {
  if (d.half_dim() != 3 || d.point_count() != 2) return false;
  Weight bound = 0;
  for (const auto& p : d.points()) {
    for (Weight w : p.weights()) bound = std::max(bound, w < 0 ? -w : w);
  }
  for (Weight a = 1; a < bound; ++a) {
    for (Weight b = a; a + b <= bound; ++b) {
      if (canonicalize(gen_s6(a, b)) == d) return true;
    }
  }
  return false;
}

bool is_cp2_form(const FixedPointDatum& raw) {
  const FixedPointDatum d = reduce_by_gcd(raw);
  if (d.half_dim() != 2 || d.point_count() != 3) return false;
  Weight bound = 0;
  for (const auto& p : d.points()) {
    for (Weight w : p.weights()) bound = std::max(bound, w < 0 ? -w : w);
  }
  for (Weight c = 1; c < bound; ++c) {
    for (Weight e = 1; c + e <= bound; ++e) {
      const std::vector<Weight> exps{0, c, c + e};
      if (canonicalize(gen_cpn(exps)) == d) return true;
    }
  }
  return false;
}

ClassificationReport classify(std::size_t points, Weight max_weight, std::span<const std::size_t> half_dims,
                              int workers, const std::function<bool(std::size_t)>& allowed,
                              const std::function<bool(const FixedPointDatum&)>& matches) {
  ClassificationReport report;
  report.point_count = points;
  report.max_weight = max_weight;
  for (std::size_t n : half_dims) {
    EnumerationQuery q;
    q.half_dim = n;
    q.point_count = points;
    q.max_weight = max_weight;
    q.worker_count = workers;
    const EnumerationReport r = enumerate_admissible(q);
    ClassificationRow row;
    row.half_dim = n;
    row.dimension_allowed = allowed(n);
    for (const auto& a : r.admissible) {
      row.admissible.push_back(a.datum);
      if (!row.dimension_allowed || !matches(a.datum)) row.unmatched.push_back(a.datum);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ClassificationReport classify_two_points(Weight max_weight, std::span<const std::size_t> half_dims,
                                         int worker_count) {
  return classify(
      2, max_weight, half_dims, worker_count, [](std::size_t n) { return n == 1 || n == 3; },
      [](const FixedPointDatum& d) { return d.half_dim() == 1 ? is_s2_form(d) : is_s6_form(d); });
}

ClassificationReport classify_three_points(Weight max_weight, std::span<const std::size_t> half_dims,
                                           int worker_count) {
  return classify(
      3, max_weight, half_dims, worker_count, [](std::size_t n) { return n == 2; }, is_cp2_form);
}

OpenQuestionReport experiment_open_questions(const EnumerationReport& report) {
  OpenQuestionReport out;
  out.query = report.query;
  for (const auto& a : report.admissible) {
    ++out.examined;
    for (const CheckReport& r : {check_crowded(a.datum), check_middle_range(a.datum)}) {
      if (!r.passed()) {
        out.violators.push_back({r.check_name, a.datum,
                                 json{{"report", r},
                                      {"n_vector", a.diagnostics.counts},
                                      {"chi", a.diagnostics.chi},
                                      {"weight_types", a.diagnostics.types}}});
      }
    }
  }
  return out;
}

OpenQuestionReport experiment_open_questions(const EnumerationQuery& q) {
  return experiment_open_questions(enumerate_admissible(q));
}

namespace {

struct Factor {
  std::string name;
  std::size_t half_dim;
  long long points;
  int order;  // display order within a product
};

std::vector<Factor> factors_up_to(std::size_t max_half_dim) {
  std::vector<Factor> out{{"S^2", 1, 2, 0}};
  for (std::size_t m = 2; m <= max_half_dim; ++m) {
    out.push_back({"CP^" + std::to_string(m), m, static_cast<long long>(m) + 1, static_cast<int>(m)});
  }
  out.push_back({"S^6", 3, 2, std::numeric_limits<int>::max()});
  return out;
}

}  // namespace

std::vector<BoundRow> bound_table(std::size_t max_half_dim) {
  const std::vector<Factor> factors = factors_up_to(max_half_dim);
  // best[h]: fewest points of a product of factors with total half dimension h.
  std::vector<long long> best(max_half_dim + 1, std::numeric_limits<long long>::max());
  best[0] = 1;
  for (std::size_t h = 1; h <= max_half_dim; ++h) {
    for (const auto& f : factors) {
      if (f.half_dim <= h && best[h - f.half_dim] != std::numeric_limits<long long>::max()) {
        best[h] = std::min(best[h], best[h - f.half_dim] * f.points);
      }
    }
  }

  std::vector<BoundRow> rows;
  for (std::size_t h = 1; h <= max_half_dim; ++h) {
    BoundRow row;
    row.dim = static_cast<long long>(2 * h);
    row.bound = kosniowski_bound(row.dim);
    row.known_minimum = best[h];
    // Factor multisets in nondecreasing factor index attaining best[h].
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t, long long)> rec = [&](std::size_t from, std::size_t left,
                                                                       long long cost) {
      if (left == 0) {
        if (cost != best[h]) return;
        std::vector<const Factor*> fs;
        for (std::size_t i : chosen) fs.push_back(&factors[i]);
        std::stable_sort(fs.begin(), fs.end(), [](const Factor* a, const Factor* b) { return a->order < b->order; });
        std::string name;
        for (const Factor* f : fs) name += (name.empty() ? "" : " x ") + f->name;
        row.realizations.push_back(name);
        return;
      }
      if (cost * best[left] > best[h]) return;
      for (std::size_t i = from; i < factors.size(); ++i) {
        if (factors[i].half_dim > left) continue;
        chosen.push_back(i);
        rec(i, left - factors[i].half_dim, cost * factors[i].points);
        chosen.pop_back();
      }
    };
    rec(0, h, 1);
    std::sort(row.realizations.begin(), row.realizations.end(), [](const std::string& a, const std::string& b) {
      const auto fa = std::count(a.begin(), a.end(), 'x');
      const auto fb = std::count(b.begin(), b.end(), 'x');
      return fa != fb ? fa < fb : a < b;
    });
    rows.push_back(std::move(row));
  }
  return rows;
}

FixedPointDatum realize(const std::string& realization) {
  FixedPointDatum out = gen_point();
  std::istringstream in(realization);
  std::string token;
  while (in >> token) {
    if (token == "x") continue;
    if (token == "S^2") {
      out = product(out, gen_s2(1));
    } else if (token == "S^6") {
      out = product(out, gen_s6(1, 2));
    } else if (token.rfind("CP^", 0) == 0) {
      const int m = std::stoi(token.substr(3));
      std::vector<Weight> exps(static_cast<std::size_t>(m) + 1);
      std::iota(exps.begin(), exps.end(), 0);
      out = product(out, gen_cpn(exps));
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown factor '" + token + "'");
    }
  }
  return out;
}

}  // namespace chiy
