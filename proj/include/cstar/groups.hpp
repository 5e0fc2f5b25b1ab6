// Finite groups as Cayley tables, subgroup lattices, the coset-index angle
// formula and group algebras in the left regular representation.

#ifndef CSTAR_GROUPS_HPP_
#define CSTAR_GROUPS_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "cstar/angles.hpp"

namespace cstar::groups {

inline constexpr int kMaxOrder = 1024;

class FiniteGroup {
 public:
  enum class Kind { CyclicProduct, Symmetric };

  /// Z_{n_1} x ... x Z_{n_k}; elements are tuples in lexicographic order.
  static FiniteGroup direct_product(const std::vector<int>& orders) {
    if (orders.empty())
      fail(ErrorCode::ShapeMismatch, "direct product of no factors");
    long long total = 1;
    for (int n : orders) {
      if (n < 1)
        fail(ErrorCode::ShapeMismatch, "cyclic factor of order " + std::to_string(n));
      total *= n;
      if (total > kMaxOrder)
        fail(ErrorCode::TooLarge, "group order exceeds " + std::to_string(kMaxOrder));
    }
    FiniteGroup G;
    G.kind_ = Kind::CyclicProduct;
    G.factors_ = orders;
    G.order_ = static_cast<int>(total);
    G.table_.resize(static_cast<std::size_t>(G.order_) * G.order_);
    for (int a = 0; a < G.order_; ++a) {
      const auto ta = G.tuple(a);
      for (int b = 0; b < G.order_; ++b) {
        const auto tb = G.tuple(b);
        std::vector<int> tc(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i)
          tc[i] = (ta[i] + tb[i]) % orders[i];
        G.table_[static_cast<std::size_t>(a) * G.order_ + b] = G.from_tuple(tc);
      }
    }
    G.finish();
    return G;
  }

  static FiniteGroup cyclic(int n) { return direct_product({n}); }

  /// Permutations of {1..n} in lexicographic order; (s t)(i) = s(t(i)).
  static FiniteGroup symmetric(int n) {
    if (n < 1)
      fail(ErrorCode::ShapeMismatch, "symmetric group on " + std::to_string(n) + " points");
    if (n > 5)
      fail(ErrorCode::TooLarge, "symmetric groups are limited to n <= 5");
    FiniteGroup G;
    G.kind_ = Kind::Symmetric;
    G.degree_ = n;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      G.perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    G.order_ = static_cast<int>(G.perms_.size());
    G.table_.resize(static_cast<std::size_t>(G.order_) * G.order_);
    for (int a = 0; a < G.order_; ++a) {
      for (int b = 0; b < G.order_; ++b) {
        std::vector<int> c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          c[static_cast<std::size_t>(i)] = G.perms_[a][static_cast<std::size_t>(G.perms_[b][static_cast<std::size_t>(i)])];
        G.table_[static_cast<std::size_t>(a) * G.order_ + b] = G.perm_index(c);
      }
    }
    G.finish();
    return G;
  }

  /// "Z12", "Z3xZ3xZ5xZ5", "S4".
  static FiniteGroup parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s += c;
    if (s.empty())
      fail(ErrorCode::ParseError, "empty group spec");
    if (s[0] == 'S' || s[0] == 's') {
      return symmetric(parse_positive(s.substr(1), spec));
    }
    std::vector<int> orders;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t next = s.find_first_of("xX", pos);
      const std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (part.size() < 2 || (part[0] != 'Z' && part[0] != 'z'))
        fail(ErrorCode::ParseError, "expected Z<n> factor in '" + spec + "'");
      orders.push_back(parse_positive(part.substr(1), spec));
      if (next == std::string::npos)
        break;
      pos = next + 1;
    }
    return direct_product(orders);
  }

  int order() const { return order_; }
  int identity() const { return identity_; }
  Kind kind() const { return kind_; }
  const std::vector<int>& factors() const { return factors_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a))
          return false;
    return true;
  }

  std::string label(int g) const {
    if (kind_ == Kind::Symmetric)
      return cycle_label(g);
    const auto t = tuple(g);
    if (t.size() == 1)
      return std::to_string(t[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
      out += (i ? "," : "") + std::to_string(t[i]);
    return out + ")";
  }

  /// A tuple "(1,0,2)" / residue "3" for cyclic products, cycle notation
  /// "(12)(34)" for symmetric groups; "e" or "()" is the identity.
  int parse_element(const std::string& text) const {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s += c;
    if (s == "e" || s == "()")
      return identity_;
    if (kind_ == Kind::Symmetric)
      return parse_cycles(s, text);
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
      if (body.back() != ')')
        fail(ErrorCode::ParseError, "unbalanced parentheses in '" + text + "'");
      body = body.substr(1, body.size() - 2);
    }
    std::vector<int> t;
    std::size_t pos = 0;
    while (true) {
      const std::size_t next = body.find(',', pos);
      const std::string part = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      t.push_back(parse_integer(part, text));
      if (next == std::string::npos)
        break;
      pos = next + 1;
    }
    if (t.size() != factors_.size())
      fail(ErrorCode::ParseError, "element '" + text + "' has " + std::to_string(t.size()) +
                                      " components, group has " + std::to_string(factors_.size()));
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = ((t[i] % factors_[i]) + factors_[i]) % factors_[i];
    return from_tuple(t);
  }

  /// Latin square, neutral identity, associativity (exhaustive up to order
  /// 32, sampled above).
  bool verify(std::uint64_t seed = kDefaultSeed) const {
    for (int a = 0; a < order_; ++a) {
      std::vector<bool> row(static_cast<std::size_t>(order_)), col(static_cast<std::size_t>(order_));
      for (int b = 0; b < order_; ++b) {
        row[static_cast<std::size_t>(mul(a, b))] = true;
        col[static_cast<std::size_t>(mul(b, a))] = true;
      }
      if (std::find(row.begin(), row.end(), false) != row.end() ||
          std::find(col.begin(), col.end(), false) != col.end())
        return false;
      if (mul(identity_, a) != a || mul(a, identity_) != a)
        return false;
    }
    const auto assoc = [&](int a, int b, int c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    if (order_ <= 32) {
      for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
          for (int c = 0; c < order_; ++c)
            if (!assoc(a, b, c))
              return false;
      return true;
    }
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, order_ - 1);
    for (int s = 0; s < 20000; ++s)
      if (!assoc(pick(rng), pick(rng), pick(rng)))
        return false;
    return true;
  }

 private:
  static int parse_integer(const std::string& s, const std::string& context) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size())
        throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad integer '" + s + "' in '" + context + "'");
    }
  }

  static int parse_positive(const std::string& s, const std::string& context) {
    const int v = parse_integer(s, context);
    if (v < 1)
      fail(ErrorCode::ParseError, "order must be positive in '" + context + "'");
    return v;
  }

  std::vector<int> tuple(int idx) const {
    std::vector<int> t(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      t[i] = idx % factors_[i];
      idx /= factors_[i];
    }
    return t;
  }

  int from_tuple(const std::vector<int>& t) const {
    int idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      idx = idx * factors_[i] + t[i];
    return idx;
  }

  int perm_index(const std::vector<int>& p) const {
    const auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
    return static_cast<int>(it - perms_.begin());
  }

  std::string cycle_label(int g) const {
    const auto& p = perms_[static_cast<std::size_t>(g)];
    std::vector<bool> seen(p.size());
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == static_cast<int>(i))
        continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
        seen[j] = true;
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "e" : out;
  }

  int parse_cycles(const std::string& s, const std::string& context) const {
    std::vector<int> result(static_cast<std::size_t>(degree_));
    std::iota(result.begin(), result.end(), 0);
    std::size_t pos = 0;
    std::vector<std::vector<int>> cycles;
    while (pos < s.size()) {
      if (s[pos] != '(')
        fail(ErrorCode::ParseError, "expected '(' in cycle notation '" + context + "'");
      const std::size_t close = s.find(')', pos);
      if (close == std::string::npos)
        fail(ErrorCode::ParseError, "unbalanced parentheses in '" + context + "'");
      std::vector<int> cycle;
      for (std::size_t i = pos + 1; i < close; ++i) {
        if (s[i] == ',')
          continue;
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
          fail(ErrorCode::ParseError, "bad point '" + std::string(1, s[i]) + "' in '" + context + "'");
        const int point = s[i] - '0';
        if (point < 1 || point > degree_)
          fail(ErrorCode::ParseError, "point " + std::to_string(point) + " outside 1.." + std::to_string(degree_));
        if (std::find(cycle.begin(), cycle.end(), point - 1) != cycle.end())
          fail(ErrorCode::ParseError, "repeated point in cycle '" + context + "'");
        cycle.push_back(point - 1);
      }
      cycles.push_back(std::move(cycle));
      pos = close + 1;
    }
    // rightmost cycle acts first
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      std::vector<int> c(static_cast<std::size_t>(degree_));
      std::iota(c.begin(), c.end(), 0);
      for (std::size_t i = 0; i < it->size(); ++i)
        c[static_cast<std::size_t>((*it)[i])] = (*it)[(i + 1) % it->size()];
      std::vector<int> next(result.size());
      for (std::size_t i = 0; i < result.size(); ++i)
        next[i] = c[static_cast<std::size_t>(result[i])];
      result = std::move(next);
    }
    return perm_index(result);
  }

  void finish() {
    identity_ = -1;
    for (int a = 0; a < order_ && identity_ < 0; ++a) {
      bool neutral = true;
      for (int b = 0; b < order_ && neutral; ++b)
        neutral = mul(a, b) == b && mul(b, a) == b;
      if (neutral)
        identity_ = a;
    }
    if (identity_ < 0)
      fail(ErrorCode::ConstructionFailure, "Cayley table has no identity");
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == identity_)
          inverse_[static_cast<std::size_t>(a)] = b;
  }

  Kind kind_ = Kind::CyclicProduct;
  int order_ = 0;
  int identity_ = 0;
  int degree_ = 0;
  std::vector<int> factors_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

/// Sorted element indices of a subgroup.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }
  bool contains(const Subgroup& other) const {
    return std::includes(elements.begin(), elements.end(), other.elements.begin(), other.elements.end());
  }
  bool operator==(const Subgroup& other) const { return elements == other.elements; }
  bool operator<(const Subgroup& other) const {
    return elements.size() != other.elements.size() ? elements.size() < other.elements.size()
                                                    : elements < other.elements;
  }
};

inline bool is_closed(const FiniteGroup& G, const std::vector<int>& sorted) {
  if (!std::binary_search(sorted.begin(), sorted.end(), G.identity()))
    return false;
  for (int a : sorted) {
    if (!std::binary_search(sorted.begin(), sorted.end(), G.inv(a)))
      return false;
    for (int b : sorted)
      if (!std::binary_search(sorted.begin(), sorted.end(), G.mul(a, b)))
        return false;
  }
  return true;
}

/// Validates that `elements` is a subgroup.
inline Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elements) {
  for (int g : elements)
    if (g < 0 || g >= G.order())
      fail(ErrorCode::NotSubgroup, "element index " + std::to_string(g) + " out of range");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_closed(G, elements))
    fail(ErrorCode::NotSubgroup, "set is not closed under products and inverses");
  return {std::move(elements)};
}

inline Subgroup whole(const FiniteGroup& G) {
  std::vector<int> all(static_cast<std::size_t>(G.order()));
  std::iota(all.begin(), all.end(), 0);
  return {std::move(all)};
}

inline Subgroup trivial(const FiniteGroup& G) { return {{G.identity()}}; }

inline Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<bool> in(static_cast<std::size_t>(G.order()));
  std::vector<int> queue{G.identity()};
  in[static_cast<std::size_t>(G.identity())] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int g : gens) {
      if (g < 0 || g >= G.order())
        fail(ErrorCode::NotSubgroup, "generator index out of range");
      const int h = G.mul(queue[i], g);
      if (!in[static_cast<std::size_t>(h)]) {
        in[static_cast<std::size_t>(h)] = true;
        queue.push_back(h);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return {std::move(queue)};
}

/// Splits "(1,0),(0,1)" on top-level commas and parses each element.
inline Subgroup parse_subgroup(const FiniteGroup& G, const std::string& gens) {
  std::vector<int> parsed;
  std::string current;
  int depth = 0;
  const auto flush = [&] {
    std::string t;
    for (char c : current)
      if (!std::isspace(static_cast<unsigned char>(c)))
        t += c;
    if (!t.empty())
      parsed.push_back(G.parse_element(t));
    current.clear();
  };
  for (char c : gens) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (depth < 0)
      fail(ErrorCode::ParseError, "unbalanced parentheses in '" + gens + "'");
    if (c == ',' && depth == 0)
      flush();
    else
      current += c;
  }
  if (depth != 0)
    fail(ErrorCode::ParseError, "unbalanced parentheses in '" + gens + "'");
  flush();
  return generated_subgroup(G, parsed);
}

inline Subgroup intersection(const Subgroup& K, const Subgroup& L) {
  Subgroup out;
  std::set_intersection(K.elements.begin(), K.elements.end(), L.elements.begin(), L.elements.end(),
                        std::back_inserter(out.elements));
  return out;
}

/// [K : H]; H must lie in K.
inline int index(const Subgroup& K, const Subgroup& H) {
  if (!K.contains(H))
    fail(ErrorCode::NotSubgroup, "index of a subgroup that is not contained");
  return K.order() / H.order();
}

inline int index(const FiniteGroup& G, const Subgroup& H) { return G.order() / H.order(); }

/// Left coset representatives of H in K, the smallest index in each coset.
inline std::vector<int> left_coset_reps(const FiniteGroup& G, const Subgroup& K, const Subgroup& H) {
  if (!K.contains(H))
    fail(ErrorCode::NotSubgroup, "H is not contained in K");
  std::vector<bool> covered(static_cast<std::size_t>(G.order()));
  std::vector<int> reps;
  for (int k : K.elements) {
    if (covered[static_cast<std::size_t>(k)])
      continue;
    reps.push_back(k);
    for (int h : H.elements)
      covered[static_cast<std::size_t>(G.mul(k, h))] = true;
  }
  return reps;
}

inline std::vector<int> left_coset_reps(const FiniteGroup& G, const Subgroup& H) {
  return left_coset_reps(G, whole(G), H);
}

/// g^{-1} K g
inline Subgroup conjugate(const FiniteGroup& G, const Subgroup& K, int g) {
  Subgroup out;
  for (int k : K.elements)
    out.elements.push_back(G.mul(G.mul(G.inv(g), k), g));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& K) {
  Subgroup out;
  for (int g = 0; g < G.order(); ++g)
    if (conjugate(G, K, g) == K)
      out.elements.push_back(g);
  return out;
}

inline bool is_normal(const FiniteGroup& G, const Subgroup& K) { return normalizer(G, K).order() == G.order(); }

/// Every subgroup, ordered by size then elements. Intended for small groups.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  if (G.order() > 128)
    fail(ErrorCode::TooLarge, "subgroup lattice enumeration is limited to order 128");
  std::set<Subgroup> found{trivial(G)};
  std::vector<Subgroup> frontier{trivial(G)};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& S : frontier) {
      for (int g = 0; g < G.order(); ++g) {
        if (S.contains(g))
          continue;
        std::vector<int> gens = S.elements;
        gens.push_back(g);
        Subgroup T = generated_subgroup(G, gens);
        if (found.insert(T).second)
          next.push_back(std::move(T));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

using Rational = boost::rational<long long>;

inline std::optional<long long> exact_sqrt(long long v) {
  if (v < 0)
    return std::nullopt;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v)
    --r;
  while ((r + 1) * (r + 1) <= v)
    ++r;
  if (r * r != v)
    return std::nullopt;
  return r;
}

struct GroupAngle {
  int index_meet = 0;  // [K cap L : H]
  int index_k = 0;     // [K : H]
  int index_l = 0;     // [L : H]
  Rational cos_squared;
  std::optional<Rational> cos_exact;  // when cos_squared is a square of a rational
  AngleResult result;
};

/// cos = ([K cap L : H] - 1) / sqrt(([K : H] - 1)([L : H] - 1)), with the
/// square of the cosine kept exact.
inline GroupAngle group_angle(const FiniteGroup& G, const Subgroup& H, const Subgroup& K, const Subgroup& L) {
  for (const Subgroup* S : {&H, &K, &L})
    if (!is_closed(G, S->elements))
      fail(ErrorCode::NotSubgroup, "argument is not a subgroup");
  const Subgroup KL = intersection(K, L);
  if (!K.contains(H))
    fail(ErrorCode::NotIntermediate, "H is not contained in K");
  if (!L.contains(H))
    fail(ErrorCode::NotIntermediate, "H is not contained in L");
  GroupAngle out;
  out.index_meet = index(KL, H);
  out.index_k = index(K, H);
  out.index_l = index(L, H);
  if (out.index_k == 1 || out.index_l == 1)
    fail(ErrorCode::DegenerateIntermediate, "K or L equals H");
  const long long num = out.index_meet - 1;
  const long long den = static_cast<long long>(out.index_k - 1) * (out.index_l - 1);
  out.cos_squared = Rational(num * num, den);
  const auto rn = exact_sqrt(out.cos_squared.numerator());
  const auto rd = exact_sqrt(out.cos_squared.denominator());
  if (rn && rd)
    out.cos_exact = Rational(*rn, *rd);
  const double c = out.cos_exact ? boost::rational_cast<double>(*out.cos_exact)
                                 : std::sqrt(boost::rational_cast<double>(out.cos_squared));
  out.result.cos_value = std::clamp(c, 0.0, 1.0);
  out.result.angle_rad = std::acos(out.result.cos_value);
  out.result.route = AngleRoute::Formula;
  out.result.diagnostics = {static_cast<double>(num), std::sqrt(static_cast<double>(out.index_k - 1)),
                            std::sqrt(static_cast<double>(out.index_l - 1)), std::nullopt};
  return out;
}

struct ProfileEntry {
  int g = 0;
  Subgroup conjugate_k;
  double angle_rad = 0.0;
};

/// angle(C[K], C[g^{-1} K g]) for every g normalising H.
inline std::vector<ProfileEntry> normalizer_angle_profile(const FiniteGroup& G, const Subgroup& H,
                                                          const Subgroup& K) {
  if (!K.contains(H))
    fail(ErrorCode::NotIntermediate, "H is not contained in K");
  if (K == H)
    fail(ErrorCode::DegenerateIntermediate, "K equals H");
  const Subgroup NH = normalizer(G, H);
  std::vector<ProfileEntry> out;
  for (int g : NH.elements) {
    Subgroup L = conjugate(G, K, g);
    const double angle = group_angle(G, H, K, L).result.angle_rad;
    out.push_back({g, std::move(L), angle});
  }
  return out;
}

/// lambda_g as a permutation matrix: lambda_g delta_h = delta_{gh}.
inline CMatrix regular_matrix(const FiniteGroup& G, int g) {
  CMatrix m = CMatrix::Zero(G.order(), G.order());
  for (int h = 0; h < G.order(); ++h)
    m(G.mul(g, h), h) = 1.0;
  return m;
}

inline constexpr int kMaxAlgebraOrder = 256;

struct GroupAlgebra {
  std::shared_ptr<const FiniteGroup> G;
  AlgebraPtr A;                 // span{lambda_g}
  std::vector<CMatrix> lambda;  // lambda_g by element index
};

inline GroupAlgebra group_algebra(std::shared_ptr<const FiniteGroup> G) {
  if (G->order() > kMaxAlgebraOrder)
    fail(ErrorCode::TooLarge, "group algebras are limited to order " + std::to_string(kMaxAlgebraOrder));
  GroupAlgebra ga;
  ga.G = std::move(G);
  const double scale = 1.0 / std::sqrt(static_cast<double>(ga.G->order()));
  std::vector<CMatrix> basis;
  for (int g = 0; g < ga.G->order(); ++g) {
    ga.lambda.push_back(regular_matrix(*ga.G, g));
    basis.push_back(scale * ga.lambda.back());
  }
  ga.A = make_algebra(MatrixStarAlgebra::from_orthonormal_basis(std::move(basis)));
  return ga;
}

/// C[K] inside C[G].
inline AlgebraPtr subgroup_algebra(const GroupAlgebra& ga, const Subgroup& K) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(ga.G->order()));
  std::vector<CMatrix> basis;
  for (int k : K.elements)
    basis.push_back(scale * ga.lambda[static_cast<std::size_t>(k)]);
  return make_algebra(MatrixStarAlgebra::from_orthonormal_basis(std::move(basis)));
}

/// E(lambda_g) = lambda_g for g in K, 0 otherwise, with the coset quasi-basis
/// {lambda_{g_i}}. `reps` overrides the default representatives.
inline ExpectationPtr subgroup_expectation(const GroupAlgebra& ga, const Subgroup& K,
                                           std::optional<std::vector<int>> reps = std::nullopt) {
  const FiniteGroup& G = *ga.G;
  if (!is_closed(G, K.elements))
    fail(ErrorCode::NotSubgroup, "argument is not a subgroup");
  auto target = subgroup_algebra(ga, K);
  // the orthonormal basis of C[G] is lambda_g / sqrt(n) in element order
  CMatrix map = CMatrix::Zero(G.order(), G.order());
  for (int k : K.elements)
    map(k, k) = 1.0;
  ConditionalExpectation E(ga.A, target, std::move(map));
  const std::vector<int> chosen = reps ? *reps : left_coset_reps(G, K);
  std::vector<CMatrix> qb;
  for (int g : chosen)
    qb.push_back(ga.lambda[static_cast<std::size_t>(g)]);
  return make_expectation(E.with_quasi_basis(std::move(qb)));
}

struct GroupInclusion {
  GroupAlgebra algebra;
  Subgroup H;
  AlgebraPtr B;
  ExpectationPtr E;
};

inline GroupInclusion group_algebra_inclusion(std::shared_ptr<const FiniteGroup> G, const Subgroup& H) {
  GroupInclusion inc{group_algebra(std::move(G)), H, nullptr, nullptr};
  inc.E = subgroup_expectation(inc.algebra, H);
  inc.B = inc.E->target_ptr();
  return inc;
}

/// Random left-coset representatives of H in K (one uniformly chosen element
/// per coset).
inline std::vector<int> random_coset_reps(const FiniteGroup& G, const Subgroup& K, const Subgroup& H, Rng& rng) {
  std::vector<int> reps;
  std::uniform_int_distribution<int> pick(0, H.order() - 1);
  for (int g : left_coset_reps(G, K, H))
    reps.push_back(G.mul(g, H.elements[static_cast<std::size_t>(pick(rng))]));
  return reps;
}

inline std::vector<int> random_coset_reps(const FiniteGroup& G, const Subgroup& H, Rng& rng) {
  return random_coset_reps(G, whole(G), H, rng);
}

/// Definition route on the left regular representation without materialising
/// the basic construction: the module is C^n with basis delta_g, e_B is the
/// coordinate projection onto H, e_K = sum over coset reps mu of K/H of
/// lambda_mu e_B lambda_mu^T, and E_1(T) = [G:H]^{-1} sum_i T(lambda_{g_i}) lambda_{g_i}^*.
/// Suitable for orders in the hundreds.
class RegularRoute {
 public:
  RegularRoute(const FiniteGroup& G, const Subgroup& H, std::optional<std::vector<int>> reps = std::nullopt)
      : G_(G), H_(H), reps_(reps ? *reps : left_coset_reps(G, H)) {
    const int n = G.order();
    eB_ = Eigen::MatrixXd::Zero(n, n);
    for (int h : H.elements)
      eB_(h, h) = 1.0;
  }

  const Eigen::MatrixXd& jones() const { return eB_; }

  Eigen::MatrixXd projection(const Subgroup& K, std::optional<std::vector<int>> reps = std::nullopt) const {
    if (!K.contains(H_))
      fail(ErrorCode::NotIntermediate, "H is not contained in K");
    const int n = G_.order();
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    for (int mu : reps ? *reps : left_coset_reps(G_, K, H_)) {
      // lambda_mu e_B lambda_mu^T has ones at (mu h, mu h)
      const Eigen::MatrixXd L = permutation(mu);
      e += L * eB_ * L.transpose();
    }
    return e;
  }

  /// E_1(T) as an element of C[G], returned in the regular representation.
  CMatrix dual_expectation(const Eigen::MatrixXd& T) const {
    const int n = G_.order();
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(n);  // coefficients of lambda_k
    for (int gi : reps_) {
      // T applied to the module vector of lambda_{g_i} (a multiple of delta_{g_i});
      // scale factors sqrt(n) cancel between the two conversions
      const Eigen::VectorXd v = T.col(gi);
      for (int k = 0; k < n; ++k)
        if (v(k) != 0.0)
          coeff(G_.mul(k, G_.inv(gi))) += v(k);
    }
    coeff /= static_cast<double>(reps_.size());
    CMatrix x = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
      if (coeff(k) != 0.0)
        for (int h = 0; h < n; ++h)
          x(G_.mul(k, h), h) += coeff(k);
    return x;
  }

  AngleResult angle(const Subgroup& K, const Subgroup& L) const { return angle(projection(K), projection(L)); }

  AngleResult angle(const Eigen::MatrixXd& eK, const Eigen::MatrixXd& eL) const {
    if ((eK - eB_).norm() < 1e-9 || (eL - eB_).norm() < 1e-9)
      fail(ErrorCode::DegenerateIntermediate, "K or L equals H");
    const double num = operator_norm(dual_expectation(eK * eL - eB_));
    const double nk = std::sqrt(operator_norm(dual_expectation(eK - eB_)));
    const double nl = std::sqrt(operator_norm(dual_expectation(eL - eB_)));
    return detail::finish_angle(num, nk, nl, AngleRoute::Definition);
  }

 private:
  Eigen::MatrixXd permutation(int g) const {
    const int n = G_.order();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int h = 0; h < n; ++h)
      m(G_.mul(g, h), h) = 1.0;
    return m;
  }

  FiniteGroup G_;
  Subgroup H_;
  std::vector<int> reps_;
  Eigen::MatrixXd eB_;
};

}  // namespace cstar::groups

#endif  // CSTAR_GROUPS_HPP_
