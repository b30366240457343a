#include "birsym/quotients.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace birsym {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::Minus: return "minus";
    case Variant::Plus: return "plus";
  }
  return "?";
}

std::string_view to_string(Method m) { return m == Method::Brute ? "brute" : "formula"; }

Variant parse_variant(std::string_view s) {
  if (s == "plain") return Variant::Plain;
  if (s == "minus") return Variant::Minus;
  if (s == "plus") return Variant::Plus;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (plain|minus|plus)");
}

std::int64_t RelationSystem::column(const SymbolKey& key) const {
  const auto it = index.find(key);
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<std::pair<std::uint32_t, Rational>> RelationSystem::coordinates(const FormalSum& x) const {
  std::vector<std::pair<std::uint32_t, Rational>> v;
  v.reserve(x.size());
  for (const auto& [k, c] : x.terms()) {
    const auto col = column(k);
    if (col < 0) throw std::out_of_range("formal sum has a key outside the basis");
    v.emplace_back(static_cast<std::uint32_t>(col), c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

FormalSum RelationSystem::row_sum(std::size_t r) const {
  FormalSum s;
  for (const auto& e : rel.row(r)) s.add(basis[e.col], mpq_class(e.value));
  return s;
}

namespace {

using SmallRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

struct SmallRowHash {
  std::size_t operator()(const SmallRow& r) const noexcept {
    std::uint64_t h = r.size();
    for (const auto& [c, v] : r) {
      h ^= (static_cast<std::uint64_t>(c) << 8 ^ static_cast<std::uint64_t>(v)) + 0x9e3779b97f4a7c15ull +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class RowCollector {
 public:
  explicit RowCollector(const RelationSystem& sys) : sys_(sys) {}

  void term(const std::vector<CharCode>& raw, std::int64_t coeff) {
    const auto col = sys_.column(canonical_unchecked(raw));
    if (col < 0) throw std::logic_error("relation leaves the chosen basis");
    cur_.emplace_back(static_cast<std::uint32_t>(col), coeff);
  }

  void finish() {
    std::sort(cur_.begin(), cur_.end());
    SmallRow merged;
    for (const auto& [c, v] : cur_) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.emplace_back(c, v);
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    cur_.clear();
    if (merged.empty()) return;
    if (seen_.insert(merged).second) rows_.push_back(std::move(merged));
  }

  std::vector<SmallRow> take() { return std::move(rows_); }

 private:
  const RelationSystem& sys_;
  SmallRow cur_;
  std::unordered_set<SmallRow, SmallRowHash> seen_;
  std::vector<SmallRow> rows_;
};

}  // namespace

RelationSystem build_relations_on(const GroupDescriptor& group, int n, Variant variant,
                                  std::vector<SymbolKey> basis) {
  if (variant == Variant::Plus && n != 1) throw std::invalid_argument("variant plus requires n = 1");
  RelationSystem sys;
  sys.group = group;
  sys.n = n;
  sys.variant = variant;
  sys.basis = std::move(basis);
  sys.index.reserve(sys.basis.size());
  for (std::size_t i = 0; i < sys.basis.size(); ++i) {
    if (sys.basis[i].size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("basis key has the wrong length");
    sys.index.emplace(sys.basis[i], static_cast<std::uint32_t>(i));
  }

  RowCollector rows(sys);
  const auto nn = static_cast<std::size_t>(n);
  std::vector<CharCode> t;
  for (const auto& key : sys.basis) {
    if (variant == Variant::Plus) {
      rows.term(key.entries, 1);
      rows.term({group.neg(key[0])}, -1);
      rows.finish();
      continue;
    }
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) {
        if (i == j) continue;
        rows.term(key.entries, 1);
        t = key.entries;
        t[i] = group.sub(key[i], key[j]);
        rows.term(t, -1);
        t = key.entries;
        t[j] = group.sub(key[j], key[i]);
        rows.term(t, -1);
        rows.finish();
      }
      if (variant == Variant::Minus) {
        rows.term(key.entries, 1);
        t = key.entries;
        t[i] = group.neg(key[i]);
        rows.term(t, 1);
        rows.finish();
      }
    }
  }
  sys.rel = SparseIntMatrix::from_rows(sys.basis.size(), rows.take());
  return sys;
}

RelationSystem build_relations(const GroupDescriptor& group, int n, Variant variant, const Limits& limits) {
  return build_relations_on(group, n, variant, enumerate_generators(group, n, limits));
}

nlohmann::json DimensionReport::to_json() const {
  nlohmann::json j;
  j["group"] = group;
  j["n"] = n;
  j["variant"] = std::string(to_string(variant));
  j["method"] = std::string(to_string(method));
  j["dim"] = dim;
  j["torsion"] = torsion_computed ? nlohmann::json(torsion) : nlohmann::json(nullptr);
  j["generators"] = generators;
  j["ms"] = ms;
  return j;
}

DimensionReport DimensionReport::from_json(const nlohmann::json& j) {
  DimensionReport r;
  r.group = j.at("group").get<std::string>();
  r.n = j.at("n").get<int>();
  r.variant = parse_variant(j.at("variant").get<std::string>());
  const auto m = j.at("method").get<std::string>();
  if (m != "brute" && m != "formula") throw std::invalid_argument("unknown method '" + m + "'");
  r.method = m == "brute" ? Method::Brute : Method::Formula;
  r.dim = j.at("dim").get<std::int64_t>();
  r.torsion_computed = !j.at("torsion").is_null();
  if (r.torsion_computed) r.torsion = j.at("torsion").get<std::vector<std::int64_t>>();
  r.generators = j.at("generators").get<std::int64_t>();
  r.ms = j.at("ms").get<double>();
  return r;
}

namespace {

std::vector<std::int64_t> small_torsion(const SnfResult& snf) {
  std::vector<std::int64_t> t;
  for (const auto& d : snf.torsion()) {
    if (!d.fits_slong_p()) throw std::overflow_error("torsion divisor exceeds 64 bits");
    t.push_back(d.get_si());
  }
  return t;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

DimensionReport dimension_of(const RelationSystem& sys, const DimensionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  DimensionReport r;
  r.group = sys.group.literal();
  r.n = sys.n;
  r.variant = sys.variant;
  r.method = Method::Brute;
  r.generators = static_cast<std::int64_t>(sys.basis.size());
  r.torsion_computed = options.torsion;
  if (options.torsion) {
    const auto snf = smith_normal_form(sys.rel, options.limits);
    r.dim = r.generators - static_cast<std::int64_t>(snf.rank);
    r.torsion = small_torsion(snf);
  } else {
    r.dim = r.generators - static_cast<std::int64_t>(rank_over_q(sys.rel, options.rank_method));
  }
  r.ms = elapsed_ms(start);
  return r;
}

DimensionReport dimension(const GroupDescriptor& group, int n, Variant variant, const DimensionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const bool graded = options.grading && n == 2 && variant != Variant::Plus && group.arity() == 2 &&
                      group.factors()[0] >= 3 && group.factors()[1] % group.factors()[0] == 0;
  if (!graded) {
    auto r = dimension_of(build_relations(group, n, variant, options.limits), options);
    r.ms = elapsed_ms(start);
    return r;
  }
  const std::int64_t N = group.factors()[0];
  const std::int64_t copies = euler_phi(N) / 2;
  auto r = dimension_of(
      build_relations_on(group, n, variant, enumerate_det_class(group, DetClass{1, N}, options.limits)),
      options);
  r.dim *= copies;
  r.generators *= copies;
  if (r.torsion_computed) {
    std::vector<std::int64_t> t;
    for (std::int64_t c = 0; c < copies; ++c) t.insert(t.end(), r.torsion.begin(), r.torsion.end());
    std::sort(t.begin(), t.end());
    r.torsion = std::move(t);
  }
  r.ms = elapsed_ms(start);
  return r;
}

std::vector<FormalSum> kernel_generators(const GroupDescriptor& group, int n, const Limits& limits) {
  if (n < 2) throw std::invalid_argument("kernel generators need n >= 2");
  std::set<FormalSum::Terms> seen;
  std::vector<FormalSum> out;
  for (const auto& key : enumerate_generators(group, n, limits)) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      auto t = key.entries;
      t[i] = group.neg(t[i]);
      FormalSum g = FormalSum::basis(key);
      g.add(canonical_unchecked(std::move(t)), 1);
      if (seen.insert(g.terms()).second) out.push_back(std::move(g));
    }
  }
  return out;
}

std::int64_t kernel_dimension(const GroupDescriptor& group, int n, const DimensionOptions& options) {
  return dimension(group, n, Variant::Plain, options).dim - dimension(group, n, Variant::Minus, options).dim;
}

std::int64_t kernel_span_dimension(const GroupDescriptor& group, int n, const Limits& limits) {
  const auto plain = build_relations(group, n, Variant::Plain, limits);
  SparseIntMatrix stacked = plain.rel;
  for (const auto& g : kernel_generators(group, n, limits)) {
    std::vector<std::pair<std::uint32_t, BigInt>> row;
    for (const auto& [c, q] : plain.coordinates(g)) row.emplace_back(c, q.get_num());
    stacked.append_row(std::move(row));
  }
  return static_cast<std::int64_t>(rank_over_q(stacked)) - static_cast<std::int64_t>(rank_over_q(plain.rel));
}

}  // namespace birsym
