#include "birsym/structmaps.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace birsym {

void TensorSum::add(const SymbolKey& left, const SymbolKey& right, const mpq_class& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Index{left, right}, coeff);
  if (inserted) return;
  it->second += coeff;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void TensorSum::add(const TensorSum& other, const mpq_class& scale) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c * scale);
}

TensorSum TensorSum::scaled(const mpq_class& s) const {
  TensorSum r;
  r.add(*this, s);
  return r;
}

TensorSum TensorSum::operator-(const TensorSum& o) const {
  TensorSum r = *this;
  r.add(o, -1);
  return r;
}

Extension make_extension(const GroupDescriptor& group, const SubgroupHandle& sub) {
  if (sub.order == group.order()) throw std::invalid_argument("subgroup must be proper");
  return Extension{quotient_data(group, sub), make_group({sub.order})};
}

namespace {

std::vector<std::vector<CharCode>> lift_table(const Extension& ext) {
  std::vector<std::vector<CharCode>> lifts(static_cast<std::size_t>(ext.d()));
  for (CharCode b = 0; b < ext.ambient().order(); ++b)
    lifts[static_cast<std::size_t>(ext.data.dual_restrict(b))].push_back(b);
  return lifts;
}

}  // namespace

FormalSum multiply(const Extension& ext, const SymbolKey& left, const SymbolKey& right) {
  if (left.size() == 0 || right.size() == 0) throw std::invalid_argument("multiply needs n', n'' >= 1");
  for (CharCode a : left.entries)
    if (a >= ext.d()) throw std::out_of_range("left entry outside Z/d");
  for (CharCode b : right.entries)
    if (b >= ext.right().order()) throw std::out_of_range("right entry outside the quotient dual");
  const auto lifts = lift_table(ext);
  const std::size_t nl = left.size();
  std::vector<CharCode> tuple(nl + right.size());
  for (std::size_t j = 0; j < right.size(); ++j) tuple[nl + j] = ext.data.dual_embed(right[j]);

  FormalSum out;
  std::vector<std::size_t> pos(nl, 0);
  while (true) {
    for (std::size_t i = 0; i < nl; ++i) tuple[i] = lifts[left[i]][pos[i]];
    out.add(canonicalize(ext.ambient(), tuple), 1);
    std::size_t i = 0;
    while (i < nl && ++pos[i] == lifts[left[i]].size()) pos[i++] = 0;
    if (i == nl) break;
  }
  return out;
}

FormalSum multiply(const Extension& ext, const FormalSum& left, const FormalSum& right) {
  FormalSum out;
  for (const auto& [l, cl] : left.terms())
    for (const auto& [r, cr] : right.terms()) out.add(multiply(ext, l, r), cl * cr);
  return out;
}

TensorSum comultiply(const Extension& ext, const SymbolKey& key, int n_left) {
  const int n = static_cast<int>(key.size());
  if (n_left < 1 || n_left > n - 1) throw std::invalid_argument("comultiply needs 1 <= n' <= n-1");
  if (ext.right().order() == 1) throw std::invalid_argument("comultiply needs a nontrivial quotient");
  if (n > 30) throw std::invalid_argument("symbol too long for partition enumeration");
  TensorSum out;
  std::vector<CharCode> lhs, rhs;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    // mask marks I''.
    if (std::popcount(mask) != n - n_left) continue;
    lhs.clear();
    rhs.clear();
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (mask >> i & 1u) {
        const auto u = ext.data.dual_unembed(key[static_cast<std::size_t>(i)]);
        if (u < 0)
          ok = false;
        else
          rhs.push_back(static_cast<CharCode>(u));
      } else {
        lhs.push_back(static_cast<CharCode>(ext.data.dual_restrict(key[static_cast<std::size_t>(i)])));
      }
    }
    if (!ok || !ext.right().generates(rhs)) continue;
    out.add(canonicalize(ext.left, lhs), canonical_unchecked(rhs), 1);
  }
  return out;
}

TensorSum comultiply(const Extension& ext, const FormalSum& x, int n_left) {
  TensorSum out;
  for (const auto& [k, c] : x.terms()) out.add(comultiply(ext, k, n_left), c);
  return out;
}

TensorSum nu_component(const Extension& ext, const FormalSum& x) {
  TensorSum out;
  const std::int64_t d = ext.d();
  const TensorSum full = comultiply(ext, x, 1);
  for (const auto& [idx, c] : full.terms()) {
    const std::int64_t a = idx.first[0];
    const auto rep = static_cast<CharCode>(std::min(a, (d - a) % d));
    out.add(SymbolKey{{rep}}, idx.second, c);
  }
  return out;
}

std::vector<NuComponent> nu(const GroupDescriptor& group, const FormalSum& x) {
  std::vector<NuComponent> out;
  for (const auto& sub : proper_cyclic_subgroups(group))
    out.push_back({sub, nu_component(make_extension(group, sub), x)});
  return out;
}

CharCode least_lift(const Extension& ext, std::int64_t a) {
  const std::int64_t d = ext.d();
  if (a < 0 || a >= d) throw std::out_of_range("residue outside Z/d");
  for (CharCode b = 0; b < ext.ambient().order(); ++b)
    if (ext.data.dual_restrict(b) == a) return b;
  throw std::logic_error("restriction to the subgroup is not surjective");
}

FormalSum psi(const Extension& ext, std::int64_t a, const SymbolKey& right) {
  if (std::gcd(a, ext.d()) != 1) throw std::invalid_argument("psi needs a unit of Z/d");
  const CharCode lift = least_lift(ext, a);
  std::vector<CharCode> t;
  t.push_back(lift);
  for (CharCode b : right.entries) t.push_back(ext.data.dual_embed(b));
  FormalSum out;
  const mpq_class half(1, 2);
  out.add(canonicalize(ext.ambient(), t), half);
  t[0] = ext.ambient().neg(lift);
  out.add(canonicalize(ext.ambient(), t), half);
  return out;
}

FormalSum psi(const Extension& ext, const TensorSum& omega) {
  FormalSum out;
  for (const auto& [idx, c] : omega.terms()) {
    if (idx.first.size() != 1) throw std::invalid_argument("psi needs n' = 1");
    out.add(psi(ext, idx.first[0], idx.second), c);
  }
  return out;
}

FormalSum delta_sum(const GroupDescriptor& group, const SymbolKey& key) {
  if (key.size() < 2) throw std::invalid_argument("delta_sum needs n >= 2");
  FormalSum out;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1}) {
      auto t = key.entries;
      if (e1 < 0) t[0] = group.neg(t[0]);
      if (e2 < 0) t[1] = group.neg(t[1]);
      out.add(canonical_unchecked(std::move(t)), 1);
    }
  return out;
}

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["group"] = group;
  j["n"] = n;
  j["status"] = pass ? "pass" : "fail";
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  if (counterexample) j["counterexample"] = *counterexample;
  return j;
}

TensorQuotient::TensorQuotient(RelationSystem left, RelationSystem right)
    : left_(std::move(left)), right_(std::move(right)) {
  const std::size_t L = left_.basis.size(), R = right_.basis.size();
  SparseIntMatrix kron(0, L * R);
  for (const auto& row : left_.rel.rows())
    for (std::size_t r = 0; r < R; ++r) {
      SparseRow out;
      for (const auto& e : row) out.push_back({static_cast<std::uint32_t>(e.col * R + r), e.value});
      kron.append_row(std::move(out));
    }
  for (std::size_t l = 0; l < L; ++l)
    for (const auto& row : right_.rel.rows()) {
      SparseRow out;
      for (const auto& e : row) out.push_back({static_cast<std::uint32_t>(l * R + e.col), e.value});
      kron.append_row(std::move(out));
    }
  span_ = RowSpan(kron);
}

bool TensorQuotient::is_zero(const TensorSum& t) const {
  const std::size_t R = right_.basis.size();
  std::vector<std::pair<std::uint32_t, Rational>> v;
  for (const auto& [idx, c] : t.terms()) {
    const auto l = left_.column(idx.first), r = right_.column(idx.second);
    if (l < 0 || r < 0) throw std::logic_error("tensor term outside the basis");
    v.emplace_back(static_cast<std::uint32_t>(static_cast<std::size_t>(l) * R + static_cast<std::size_t>(r)), c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return span_.contains(v);
}

std::string describe(const GroupDescriptor& group, const SymbolKey& key) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) os << ',';
    const auto r = group.decode(key[i]);
    if (r.size() == 1) {
      os << r[0];
      continue;
    }
    os << '(';
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j];
    os << ')';
  }
  os << '>';
  return os.str();
}

std::string describe(const GroupDescriptor& group, const FormalSum& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    s += c.get_str() + "*" + describe(group, k);
  }
  return s;
}

namespace {

std::string subgroup_name(const SubgroupHandle& sub) {
  return describe(sub.ambient, SymbolKey{{sub.generator}});
}

std::vector<std::int64_t> plus_representatives(std::int64_t d) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < d; ++a)
    if (std::gcd(a, d) == 1 && a <= (d - a) % d) out.push_back(a);
  return out;
}

struct Component {
  Extension ext;
  TensorQuotient quotient;
};

std::vector<Component> components(const GroupDescriptor& group, int n, const Limits& limits) {
  std::vector<Component> out;
  for (const auto& sub : proper_cyclic_subgroups(group)) {
    auto ext = make_extension(group, sub);
    TensorQuotient q(build_relations(ext.left, 1, Variant::Plus, limits),
                     build_relations(ext.right(), n - 1, Variant::Minus, limits));
    out.push_back({std::move(ext), std::move(q)});
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_kernel_iso(const GroupDescriptor& group, int n, const Limits& limits) {
  if (n < 2) throw std::invalid_argument("kernel isomorphism needs n >= 2");
  std::vector<CheckResult> out;
  DimensionOptions opts;
  opts.limits = limits;

  {
    CheckResult r{"kernel.dimension", group.literal(), n};
    const std::int64_t lhs = kernel_dimension(group, n, opts);
    std::int64_t rhs = 0;
    for (const auto& sub : proper_cyclic_subgroups(group)) {
      const auto ext = make_extension(group, sub);
      rhs += dimension(ext.left, 1, Variant::Plus, opts).dim * dimension(ext.right(), n - 1, Variant::Minus, opts).dim;
    }
    r.lhs = lhs;
    r.rhs = rhs;
    r.pass = lhs == rhs;
    out.push_back(std::move(r));
  }

  const auto comps = components(group, n, limits);

  {
    CheckResult r{"kernel.nu_psi", group.literal(), n};
    std::int64_t checked = 0, good = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const auto& ext = comps[i].ext;
      for (const auto a : plus_representatives(ext.d()))
        for (const auto& b : enumerate_generators(ext.right(), n - 1, limits)) {
          ++checked;
          const FormalSum x = psi(ext, a, b).scaled(2);
          bool ok = true;
          for (std::size_t j = 0; j < comps.size() && ok; ++j) {
            TensorSum diff = nu_component(comps[j].ext, x);
            if (j == i) diff.add(SymbolKey{{static_cast<CharCode>(a)}}, b, -2);
            ok = comps[j].quotient.is_zero(diff);
          }
          if (ok) {
            ++good;
          } else if (!r.counterexample) {
            r.counterexample = "G'=" + subgroup_name(ext.data.sub()) + " a=" + std::to_string(a) +
                               " b=" + describe(ext.right(), b);
          }
        }
    }
    r.lhs = good;
    r.rhs = checked;
    r.pass = good == checked;
    out.push_back(std::move(r));
  }

  {
    CheckResult r{"kernel.psi_nu", group.literal(), n};
    const auto plain = build_relations(group, n, Variant::Plain, limits);
    const RowSpan span(plain.rel);
    std::int64_t checked = 0, good = 0;
    for (const auto& g : kernel_generators(group, n, limits)) {
      ++checked;
      FormalSum back;
      for (const auto& c : comps) back.add(psi(c.ext, nu_component(c.ext, g)));
      if (span.contains(plain.coordinates(back - g)))
        ++good;
      else if (!r.counterexample)
        r.counterexample = "gamma=" + describe(group, g);
    }
    r.lhs = good;
    r.rhs = checked;
    r.pass = good == checked;
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult verify_delta(const GroupDescriptor& group, int n, const Limits& limits) {
  CheckResult r{"delta", group.literal(), n};
  const auto plain = build_relations(group, n, Variant::Plain, limits);
  const RowSpan span(plain.rel);
  std::int64_t good = 0;
  for (const auto& key : plain.basis) {
    if (span.contains(plain.coordinates(delta_sum(group, key))))
      ++good;
    else if (!r.counterexample)
      r.counterexample = describe(group, key);
  }
  r.lhs = good;
  r.rhs = static_cast<std::int64_t>(plain.basis.size());
  r.pass = !r.counterexample;
  return r;
}

std::vector<CheckResult> verify_comult(const GroupDescriptor& group, int n, const Limits& limits) {
  if (n < 2) throw std::invalid_argument("comultiplication needs n >= 2");
  std::vector<CheckResult> out;
  const auto plain = build_relations(group, n, Variant::Plain, limits);
  const RowSpan span(plain.rel);
  for (const auto& sub : proper_cyclic_subgroups(group)) {
    const auto ext = make_extension(group, sub);
    for (int nl = 1; nl < n; ++nl) {
      const int nr = n - nl;
      const auto left = build_relations(ext.left, nl, Variant::Plain, limits);
      const auto right_plain = build_relations(ext.right(), nr, Variant::Plain, limits);
      const std::string where = " G'=" + subgroup_name(sub) + " n'=" + std::to_string(nl);

      CheckResult d{"comult.delta", group.literal(), n};
      {
        const TensorQuotient target(left, build_relations(ext.right(), nr, Variant::Minus, limits));
        std::int64_t good = 0;
        for (std::size_t row = 0; row < plain.rel.nrows(); ++row) {
          const auto rel = plain.row_sum(row);
          if (target.is_zero(comultiply(ext, rel, nl)))
            ++good;
          else if (!d.counterexample)
            d.counterexample = describe(group, rel) + where;
        }
        d.lhs = good;
        d.rhs = static_cast<std::int64_t>(plain.rel.nrows());
        d.pass = !d.counterexample;
      }
      out.push_back(std::move(d));

      // Trivial G' is left out: its symbols are the all-zero tuples.
      if (sub.order == 1) continue;
      CheckResult m{"comult.nabla", group.literal(), n};
      {
        std::int64_t good = 0, total = 0;
        auto check = [&](const FormalSum& l, const FormalSum& r) {
          ++total;
          if (span.contains(plain.coordinates(multiply(ext, l, r))))
            ++good;
          else if (!m.counterexample)
            m.counterexample = describe(ext.left, l) + " (x) " + describe(ext.right(), r) + where;
        };
        for (std::size_t row = 0; row < left.rel.nrows(); ++row)
          for (const auto& rk : right_plain.basis) check(left.row_sum(row), FormalSum::basis(rk));
        for (const auto& lk : left.basis)
          for (std::size_t row = 0; row < right_plain.rel.nrows(); ++row)
            check(FormalSum::basis(lk), right_plain.row_sum(row));
        m.lhs = good;
        m.rhs = total;
        m.pass = !m.counterexample;
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace birsym
