#include "birsym/symbols.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace birsym {

std::size_t SymbolKeyHash::operator()(const SymbolKey& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.entries.size();
  for (CharCode c : k.entries) {
    h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

SymbolKey canonical_unchecked(std::vector<CharCode> raw) {
  std::sort(raw.begin(), raw.end());
  return SymbolKey{std::move(raw)};
}

SymbolKey canonicalize(const GroupDescriptor& group, std::vector<CharCode> raw) {
  for (CharCode c : raw)
    if (c >= group.order()) throw std::out_of_range("character code out of range");
  if (!group.generates(raw))
    throw std::invalid_argument("characters do not span the dual of " + group.literal());
  return canonical_unchecked(std::move(raw));
}

namespace {

void check_enumeration_bound(const GroupDescriptor& group, int n, const Limits& limits) {
  if (n < 1) throw std::invalid_argument("symbol length n must be >= 1");
  double total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(group.order());
  if (total > static_cast<double>(limits.max_enumeration))
    throw BoundError("|G|^n = " + std::to_string(static_cast<long double>(total)) +
                     " exceeds the enumeration bound " + std::to_string(limits.max_enumeration));
}

}  // namespace

std::vector<SymbolKey> enumerate_generators(const GroupDescriptor& group, int n, const Limits& limits) {
  check_enumeration_bound(group, n, limits);
  std::vector<SymbolKey> out;
  // Rank of G bounds below how many entries can span.
  if (group.rank() > n) return out;
  const auto order = static_cast<CharCode>(group.order());
  std::vector<CharCode> cur(static_cast<std::size_t>(n), 0);
  while (true) {
    if (group.generates(cur)) out.push_back(SymbolKey{cur});
    // Next nondecreasing tuple.
    int i = n - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] + 1 == order) --i;
    if (i < 0) break;
    const CharCode v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < n; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

FormalSum FormalSum::basis(SymbolKey key, const mpq_class& coeff) {
  FormalSum s;
  s.add(key, coeff);
  return s;
}

void FormalSum::add(const SymbolKey& key, const mpq_class& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (inserted) return;
  it->second += coeff;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void FormalSum::add(const FormalSum& other, const mpq_class& scale) {
  for (const auto& [k, c] : other.terms_) add(k, c * scale);
}

mpq_class FormalSum::coefficient(const SymbolKey& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
  FormalSum r = *this;
  r.add(o);
  return r;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
  FormalSum r = *this;
  r.add(o, -1);
  return r;
}

FormalSum FormalSum::scaled(const mpq_class& s) const {
  FormalSum r;
  if (sgn(s) == 0) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

std::pair<std::int64_t, std::int64_t> bicyclic_level(const GroupDescriptor& group) {
  const auto& f = group.factors();
  if (f.size() != 2 || f[0] < 2 || f[1] % f[0] != 0)
    throw std::invalid_argument("group " + group.literal() + " is not of the form C_N x C_MN with N >= 2");
  return {f[0], f[1] / f[0]};
}

DetClass det_class(const GroupDescriptor& group, const SymbolKey& key) {
  const auto [N, M] = bicyclic_level(group);
  (void)M;
  if (key.size() != 2) throw std::invalid_argument("determinant class needs n = 2");
  const std::int64_t a1 = group.residue(key[0], 0), a2 = group.residue(key[0], 1);
  const std::int64_t b1 = group.residue(key[1], 0), b2 = group.residue(key[1], 1);
  std::int64_t k = (a1 * (b2 % N) - (a2 % N) * b1) % N;
  if (k < 0) k += N;
  k = std::min(k, N - k);
  if (std::gcd(k, N) != 1) throw std::logic_error("spanning symbol with non-unit determinant");
  return {k, N};
}

std::vector<DetClass> det_classes(const GroupDescriptor& group) {
  const auto [N, M] = bicyclic_level(group);
  (void)M;
  std::vector<DetClass> out;
  for (std::int64_t k = 1; 2 * k <= N; ++k)
    if (std::gcd(k, N) == 1) out.push_back({k, N});
  return out;
}

std::vector<SymbolKey> enumerate_det_class(const GroupDescriptor& group, DetClass k, const Limits& limits) {
  const auto [N, M] = bicyclic_level(group);
  (void)M;
  if (k.modulus != N || std::gcd(k.k, N) != 1 || k.k < 1 || 2 * k.k > N)
    throw std::invalid_argument("determinant class is not a normalized unit mod " + std::to_string(N));
  std::vector<SymbolKey> out;
  for (auto& key : enumerate_generators(group, 2, limits))
    if (det_class(group, key) == k) out.push_back(std::move(key));
  return out;
}

}  // namespace birsym
