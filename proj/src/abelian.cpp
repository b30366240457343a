#include "birsym/abelian.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <stdexcept>

#include "birsym/exactla.hpp"

namespace birsym {

struct GroupDescriptor::Data {
  std::vector<std::int64_t> factors;
  std::vector<std::int64_t> invariants;
  std::int64_t order = 1;
  std::vector<std::int64_t> strides;
  std::vector<std::int64_t> primes;
  std::vector<std::vector<std::size_t>> prime_slots;  // per prime: factor indices divisible by it
};

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Rank over F_p of a small integer matrix.
std::size_t rank_small_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    std::int64_t inv = 1;
    for (std::int64_t x = 1; x < p; ++x)
      if (x * a[rank][c] % p == 1) {
        inv = x;
        break;
      }
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const std::int64_t f = a[r][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[r][j] = mod(a[r][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

GroupDescriptor::GroupDescriptor() {
  static const std::shared_ptr<const Data> trivial = make_group({1}).d_;
  d_ = trivial;
}

GroupDescriptor::GroupDescriptor(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

const std::vector<std::int64_t>& GroupDescriptor::factors() const { return d_->factors; }
const std::vector<std::int64_t>& GroupDescriptor::invariant_factors() const { return d_->invariants; }
std::int64_t GroupDescriptor::order() const { return d_->order; }
int GroupDescriptor::rank() const { return static_cast<int>(d_->invariants.size()); }
const std::vector<std::int64_t>& GroupDescriptor::primes() const { return d_->primes; }

std::string GroupDescriptor::literal() const {
  std::string s;
  for (std::size_t i = 0; i < d_->factors.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(d_->factors[i]);
  }
  return s;
}

CharCode GroupDescriptor::encode(std::span<const std::int64_t> residues) const {
  if (residues.size() != d_->factors.size())
    throw std::invalid_argument("residue tuple has " + std::to_string(residues.size()) +
                                " entries, group " + literal() + " has " +
                                std::to_string(d_->factors.size()) + " factors");
  std::int64_t code = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) code += mod(residues[i], d_->factors[i]) * d_->strides[i];
  return static_cast<CharCode>(code);
}

Residues GroupDescriptor::decode(CharCode c) const {
  Residues r(d_->factors.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = residue(c, i);
  return r;
}

std::int64_t GroupDescriptor::residue(CharCode c, std::size_t i) const {
  return (static_cast<std::int64_t>(c) / d_->strides[i]) % d_->factors[i];
}

CharCode GroupDescriptor::add(CharCode a, CharCode b) const {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < d_->factors.size(); ++i)
    code += (residue(a, i) + residue(b, i)) % d_->factors[i] * d_->strides[i];
  return static_cast<CharCode>(code);
}

CharCode GroupDescriptor::sub(CharCode a, CharCode b) const {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < d_->factors.size(); ++i)
    code += mod(residue(a, i) - residue(b, i), d_->factors[i]) * d_->strides[i];
  return static_cast<CharCode>(code);
}

CharCode GroupDescriptor::neg(CharCode a) const {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < d_->factors.size(); ++i)
    code += mod(-residue(a, i), d_->factors[i]) * d_->strides[i];
  return static_cast<CharCode>(code);
}

CharCode GroupDescriptor::scale(CharCode a, std::int64_t k) const {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < d_->factors.size(); ++i)
    code += mod(mod(k, d_->factors[i]) * residue(a, i), d_->factors[i]) * d_->strides[i];
  return static_cast<CharCode>(code);
}

std::int64_t GroupDescriptor::element_order(CharCode a) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < d_->factors.size(); ++i) {
    const std::int64_t f = d_->factors[i];
    o = std::lcm(o, f / std::gcd(residue(a, i), f));
  }
  return o;
}

bool GroupDescriptor::generates(std::span<const CharCode> elems) const {
  for (std::size_t k = 0; k < d_->primes.size(); ++k) {
    const std::int64_t p = d_->primes[k];
    const auto& slots = d_->prime_slots[k];
    if (elems.size() < slots.size()) return false;
    std::vector<std::vector<std::int64_t>> m;
    m.reserve(elems.size());
    for (CharCode e : elems) {
      std::vector<std::int64_t> row(slots.size());
      for (std::size_t j = 0; j < slots.size(); ++j) row[j] = residue(e, slots[j]) % p;
      m.push_back(std::move(row));
    }
    if (rank_small_mod_p(std::move(m), p) != slots.size()) return false;
  }
  return true;
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
  return a.d_ == b.d_ || a.d_->factors == b.d_->factors;
}

GroupDescriptor make_group(const std::vector<std::int64_t>& orders, const Limits& limits) {
  if (orders.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  auto d = std::make_shared<GroupDescriptor::Data>();
  std::int64_t order = 1;
  for (auto o : orders) {
    if (o < 1) throw std::invalid_argument("cyclic factor order must be >= 1, got " + std::to_string(o));
    order *= o;
    if (order > static_cast<std::int64_t>(limits.max_group_order))
      throw BoundError("group order exceeds the configured bound " + std::to_string(limits.max_group_order));
  }
  d->factors = orders;
  d->order = order;
  d->strides.assign(orders.size(), 1);
  for (std::size_t i = orders.size(); i-- > 1;) d->strides[i - 1] = d->strides[i] * orders[i];

  std::vector<std::vector<BigInt>> diag(orders.size(), std::vector<BigInt>(orders.size(), BigInt(0)));
  for (std::size_t i = 0; i < orders.size(); ++i) diag[i][i] = static_cast<long>(orders[i]);
  for (const auto& x : smith_with_transforms(diag).diagonal())
    if (x != 1) d->invariants.push_back(x.get_si());
  std::sort(d->invariants.begin(), d->invariants.end());

  d->primes = prime_divisors(order);
  for (auto p : d->primes) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] % p == 0) slots.push_back(i);
    d->prime_slots.push_back(std::move(slots));
  }
  return GroupDescriptor(std::move(d));
}

GroupDescriptor parse_group(std::string_view literal, const Limits& limits) {
  std::vector<std::int64_t> orders;
  std::size_t pos = 0;
  if (literal.empty()) throw std::invalid_argument("empty group literal");
  while (pos <= literal.size()) {
    const std::size_t end = std::min(literal.find('x', pos), literal.size());
    const std::string_view tok = literal.substr(pos, end - pos);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed group literal '" + std::string(literal) +
                                  "' (expected e.g. 3x9)");
    orders.push_back(v);
    pos = end + 1;
  }
  return make_group(orders, limits);
}

Character::Character(GroupDescriptor group, std::span<const std::int64_t> residues)
    : group_(std::move(group)), code_(group_.encode(residues)) {}

Character::Character(GroupDescriptor group, CharCode code) : group_(std::move(group)), code_(code) {
  if (code_ >= group_.order()) throw std::out_of_range("character code out of range");
}

namespace {
void require_same(const Character& a, const Character& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("characters belong to different groups");
}
}  // namespace

Character Character::operator+(const Character& o) const {
  require_same(*this, o);
  return {group_, group_.add(code_, o.code_)};
}
Character Character::operator-(const Character& o) const {
  require_same(*this, o);
  return {group_, group_.sub(code_, o.code_)};
}
Character Character::operator-() const { return {group_, group_.neg(code_)}; }
Character Character::scaled(std::int64_t k) const { return {group_, group_.scale(code_, k)}; }

bool operator==(const Character& a, const Character& b) {
  return a.group_ == b.group_ && a.code_ == b.code_;
}
std::strong_ordering operator<=>(const Character& a, const Character& b) {
  require_same(a, b);
  return a.code_ <=> b.code_;
}

mpq_class pairing(const Character& b, std::span<const std::int64_t> g) {
  const auto& f = b.group().factors();
  if (g.size() != f.size()) throw std::invalid_argument("element and character come from different groups");
  mpq_class s = 0;
  const auto r = b.residues();
  for (std::size_t i = 0; i < f.size(); ++i) s += frac(r[i] * mod(g[i], f[i]), f[i]);
  s.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  s -= fl;
  return s;
}

mpq_class pairing(const GroupDescriptor& group, CharCode b, CharCode g) {
  const auto gr = group.decode(g);
  return pairing(Character(group, b), gr);
}

bool spans_dual(std::span<const Character> chars, const GroupDescriptor& group) {
  const std::size_t r = group.arity();
  std::vector<std::vector<BigInt>> m;
  for (const auto& c : chars) {
    if (!(c.group() == group)) throw std::invalid_argument("character from a different group");
    std::vector<BigInt> row;
    for (auto x : c.residues()) row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<BigInt> row(r, BigInt(0));
    row[i] = static_cast<long>(group.factors()[i]);
    m.push_back(std::move(row));
  }
  const auto diag = smith_with_transforms(m).diagonal();
  return std::all_of(diag.begin(), diag.end(), [](const BigInt& x) { return x == 1; });
}

std::vector<CharCode> SubgroupHandle::elements() const {
  std::vector<CharCode> e;
  CharCode x = 0;
  for (std::int64_t k = 0; k < order; ++k) {
    e.push_back(x);
    x = ambient.add(x, generator);
  }
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<SubgroupHandle> proper_cyclic_subgroups(const GroupDescriptor& group) {
  std::set<std::vector<CharCode>> seen;
  std::vector<SubgroupHandle> out;
  std::vector<char> covered(static_cast<std::size_t>(group.order()), 0);
  for (CharCode c = 0; c < group.order(); ++c) {
    if (covered[c]) continue;
    const std::int64_t o = group.element_order(c);
    if (o == group.order()) continue;
    SubgroupHandle h{c, o, group};
    auto elems = h.elements();
    // Least generator: the smallest k*c with gcd(k, o) = 1.
    CharCode least = c;
    for (std::int64_t k = 1; k < std::max<std::int64_t>(o, 2); ++k) {
      if (std::gcd(k, o) != 1) continue;
      const CharCode g = group.scale(c, k);
      covered[g] = 1;
      least = std::min(least, g);
    }
    if (seen.insert(std::move(elems)).second) out.push_back({least, o, group});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.order, a.generator) < std::pair(b.order, b.generator);
  });
  return out;
}

CharCode QuotientData::project(CharCode element) const {
  const auto x = ambient_.decode(element);
  Residues y;
  for (std::size_t j : kept_) {
    const std::int64_t q = quotient_.factors()[y.size()];
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = mod(s + x[i] * project_matrix_[i][j], q);
    y.push_back(s);
  }
  if (y.empty()) y.push_back(0);
  return quotient_.encode(y);
}

QuotientData quotient_data(const GroupDescriptor& group, const SubgroupHandle& sub) {
  if (!(sub.ambient == group)) throw std::invalid_argument("subgroup belongs to a different group");
  const std::size_t r = group.arity();
  const auto& f = group.factors();
  const auto g = group.decode(sub.generator);

  // Relation lattice of G/<g>: rows diag(f) and g.
  std::vector<std::vector<BigInt>> rel;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<BigInt> row(r, BigInt(0));
    row[i] = static_cast<long>(f[i]);
    rel.push_back(std::move(row));
  }
  {
    std::vector<BigInt> row;
    for (auto x : g) row.emplace_back(static_cast<long>(x));
    rel.push_back(std::move(row));
  }
  const auto snf = smith_with_transforms(rel);

  QuotientData q;
  q.ambient_ = group;
  q.sub_ = sub;
  std::vector<std::int64_t> qf;
  for (std::size_t j = 0; j < r; ++j) {
    const BigInt& dj = snf.D[j][j];
    if (sgn(dj) == 0) throw std::logic_error("quotient of a finite group came out infinite");
    if (dj != 1) {
      q.kept_.push_back(j);
      qf.push_back(dj.get_si());
    }
  }
  q.quotient_ = make_group(qf.empty() ? std::vector<std::int64_t>{1} : qf);
  q.project_matrix_.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const std::int64_t dj = snf.D[j][j].get_si();
      BigInt v = snf.V[i][j];
      BigInt red;
      mpz_fdiv_r(red.get_mpz_t(), v.get_mpz_t(), BigInt(static_cast<long>(dj)).get_mpz_t());
      q.project_matrix_[i][j] = red.get_si();
    }

  // A quotient character chi pairs with project(x) as
  // sum_i x_i sum_j V_ij chi_j / q_j, so its pullback has
  // b_i = f_i * sum_j V_ij chi_j / q_j (mod f_i).
  const auto& quot = q.quotient_;
  q.embed_.resize(static_cast<std::size_t>(quot.order()));
  q.unembed_.assign(static_cast<std::size_t>(group.order()), -1);
  for (CharCode chi = 0; chi < quot.order(); ++chi) {
    const auto c = quot.decode(chi);
    Residues b(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpq_class s = 0;
      for (std::size_t t = 0; t < q.kept_.size(); ++t)
        s += frac(snf.V[i][q.kept_[t]] * c[t], quot.factors()[t]);
      s *= f[i];
      s.canonicalize();
      if (s.get_den() != 1) throw std::logic_error("dual embedding is not integral");
      BigInt red;
      mpz_fdiv_r(red.get_mpz_t(), s.get_num_mpz_t(), BigInt(static_cast<long>(f[i])).get_mpz_t());
      b[i] = red.get_si();
    }
    const CharCode code = group.encode(b);
    q.embed_[chi] = code;
    q.unembed_[code] = chi;
  }
  q.annihilator_ = q.embed_;
  std::sort(q.annihilator_.begin(), q.annihilator_.end());
  if (static_cast<std::int64_t>(std::unique(q.annihilator_.begin(), q.annihilator_.end()) -
                                q.annihilator_.begin()) != group.order() / sub.order)
    throw std::logic_error("dual embedding is not injective");

  q.restrict_.resize(static_cast<std::size_t>(group.order()));
  for (CharCode b = 0; b < group.order(); ++b) {
    const mpq_class v = pairing(group, b, sub.generator) * sub.order;
    if (v.get_den() != 1) throw std::logic_error("restriction to the subgroup is not integral");
    q.restrict_[b] = mod(v.get_num().get_si(), sub.order);
  }
  return q;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

}  // namespace birsym
