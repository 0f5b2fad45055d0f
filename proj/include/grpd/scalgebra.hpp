#pragma once

// Associative algebras presented by sparse structure constants over an exact
// scalar. The representation is the contract: basis order is canonical and
// every derived object (centers, products, fingerprints) depends only on it.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/linalg.hpp"

namespace grpd {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Self-check policy for structure constants: exhaustive associativity up to
/// exhaustive_dim, seeded pseudorandom triples beyond that. The unit laws are
/// always checked exhaustively.
struct CheckPolicy {
  Index exhaustive_dim = 64;
  int sampled_triples = 10000;
  std::uint64_t seed = 99991;
};

template <class S>
using SparseVec = std::vector<std::pair<int, S>>;  // sorted by index

template <class S>
class SCAlgebra {
 public:
  using ProductFn = std::function<SparseVec<S>(int, int)>;

  SCAlgebra() = default;

  /// Materialize the full structure-constant table from a product callback
  /// and run the self-checks. The callback must return terms sorted by basis
  /// index with no zero coefficients.
  static SCAlgebra from_products(std::vector<std::string> labels, DenseVector<S> unit,
                                 const ProductFn& product, const CheckPolicy& policy = {}) {
    SCAlgebra a;
    a.labels_ = std::move(labels);
    a.unit_ = std::move(unit);
    const Index d = static_cast<Index>(a.labels_.size());
    if (a.unit_.rows() != d)
      throw DimensionMismatchError("unit vector length does not match basis size");
    a.offsets_.assign(static_cast<std::size_t>(d) * d + 1, 0);
    std::size_t slot = 0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        SparseVec<S> terms = product(static_cast<int>(i), static_cast<int>(j));
        for (auto& t : terms) a.terms_.push_back(std::move(t));
        ++slot;
        a.offsets_[slot] = a.terms_.size();
      }
    a.self_check(policy);
    return a;
  }

  Index dim() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const DenseVector<S>& unit() const { return unit_; }

  std::span<const std::pair<int, S>> product_terms(Index i, Index j) const {
    std::size_t s = static_cast<std::size_t>(i) * static_cast<std::size_t>(dim()) +
                    static_cast<std::size_t>(j);
    return {terms_.data() + offsets_[s], terms_.data() + offsets_[s + 1]};
  }

  DenseVector<S> basis_vec(Index i) const {
    DenseVector<S> v = DenseVector<S>::Zero(dim());
    v(i) = S(1);
    return v;
  }

  DenseVector<S> mul(const DenseVector<S>& u, const DenseVector<S>& v) const {
    if (u.rows() != dim() || v.rows() != dim())
      throw DimensionMismatchError("algebra multiply: element length mismatch");
    DenseVector<S> w = DenseVector<S>::Zero(dim());
    for (Index i = 0; i < dim(); ++i) {
      if (u(i) == S(0)) continue;
      for (Index j = 0; j < dim(); ++j) {
        if (v(j) == S(0)) continue;
        S c = u(i) * v(j);
        for (const auto& [k, coeff] : product_terms(i, j)) w(k) += c * coeff;
      }
    }
    return w;
  }

  SparseVec<S> mul_sparse(const SparseVec<S>& u, const SparseVec<S>& v) const {
    std::map<int, S> acc;
    for (const auto& [i, ci] : u)
      for (const auto& [j, cj] : v) {
        S c = ci * cj;
        for (const auto& [k, coeff] : product_terms(i, j)) acc[k] += c * coeff;
      }
    SparseVec<S> out;
    for (auto& [k, c] : acc)
      if (!(c == S(0))) out.emplace_back(k, std::move(c));
    return out;
  }

  bool commutative() const {
    for (Index i = 0; i < dim(); ++i)
      for (Index j = i + 1; j < dim(); ++j) {
        auto ij = product_terms(i, j);
        auto ji = product_terms(j, i);
        if (ij.size() != ji.size()) return false;
        for (std::size_t t = 0; t < ij.size(); ++t)
          if (ij[t].first != ji[t].first || !(ij[t].second == ji[t].second)) return false;
      }
    return true;
  }

 private:
  void self_check(const CheckPolicy& policy) const {
    const Index d = dim();
    // Unit laws, exhaustively.
    SparseVec<S> one;
    for (Index i = 0; i < d; ++i)
      if (!(unit_(i) == S(0))) one.emplace_back(static_cast<int>(i), unit_(i));
    for (Index i = 0; i < d; ++i) {
      SparseVec<S> e = {{static_cast<int>(i), S(1)}};
      if (!(mul_sparse(one, e) == e) || !(mul_sparse(e, one) == e))
        throw InvariantViolationError("algebra unit law fails at basis element " +
                                      labels_[static_cast<std::size_t>(i)]);
    }
    auto check_triple = [&](Index i, Index j, Index k) {
      SparseVec<S> ei = {{static_cast<int>(i), S(1)}};
      SparseVec<S> ej = {{static_cast<int>(j), S(1)}};
      SparseVec<S> ek = {{static_cast<int>(k), S(1)}};
      if (!(mul_sparse(mul_sparse(ei, ej), ek) == mul_sparse(ei, mul_sparse(ej, ek))))
        throw InvariantViolationError("structure constants are not associative at (" +
                                      labels_[static_cast<std::size_t>(i)] + ", " +
                                      labels_[static_cast<std::size_t>(j)] + ", " +
                                      labels_[static_cast<std::size_t>(k)] + ")");
    };
    if (d <= policy.exhaustive_dim) {
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          for (Index k = 0; k < d; ++k) check_triple(i, j, k);
    } else {
      std::uint64_t state = policy.seed;
      for (int s = 0; s < policy.sampled_triples; ++s) {
        state = detail::mix64(state);
        Index i = static_cast<Index>(state % static_cast<std::uint64_t>(d));
        state = detail::mix64(state);
        Index j = static_cast<Index>(state % static_cast<std::uint64_t>(d));
        state = detail::mix64(state);
        Index k = static_cast<Index>(state % static_cast<std::uint64_t>(d));
        check_triple(i, j, k);
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<int, S>> terms_;
  DenseVector<S> unit_;
};

/// Center of an algebra: the canonical basis of {z : zb = bz for all b} and
/// the center as an algebra in its own right.
template <class S>
struct CenterData {
  CanonicalBasis<S> basis;
  SCAlgebra<S> algebra;

  Index dim() const { return basis.dim(); }
};

/// Iterative kernel intersection over the commutator constraints of each
/// basis element, processed in canonical order. Once the dimension has been
/// stable for a few elements (and is small), the remaining elements are
/// handled by directly verifying that the candidate basis commutes with
/// them, falling back to constraint rows on the first violation.
template <class S>
CenterData<S> center(const SCAlgebra<S>& a) {
  const Index d = a.dim();
  IncrementalKernel<S> acc(d);

  constexpr int kStableWindow = 8;
  constexpr Index kVerifyCap = 64;

  auto commutes_with = [&](const DenseMatrix<S>& cand, Index i) {
    for (Index col = 0; col < cand.cols(); ++col) {
      DenseVector<S> diff = DenseVector<S>::Zero(d);
      for (Index j = 0; j < d; ++j) {
        const S& zj = cand(j, col);
        if (zj == S(0)) continue;
        for (const auto& [k, c] : a.product_terms(j, i)) diff(k) += zj * c;
        for (const auto& [k, c] : a.product_terms(i, j)) diff(k) -= zj * c;
      }
      for (Index k = 0; k < d; ++k)
        if (!(diff(k) == S(0))) return false;
    }
    return true;
  };

  auto add_constraints = [&](Index i) {
    // Row per output coordinate k: sum_j z_j (c_{j,i}^k - c_{i,j}^k) = 0.
    std::vector<typename IncrementalKernel<S>::Row> rows(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
      for (const auto& [k, c] : a.product_terms(j, i))
        rows[static_cast<std::size_t>(k)].emplace_back(j, c);
      for (const auto& [k, c] : a.product_terms(i, j))
        rows[static_cast<std::size_t>(k)].emplace_back(j, -c);
    }
    bool changed = false;
    for (auto& row : rows)
      if (!row.empty() && acc.add_row(std::move(row))) changed = true;
    return changed;
  };

  int stable = 0;
  DenseMatrix<S> cached;
  Index cached_rank = -1;
  for (Index i = 0; i < d; ++i) {
    if (stable >= kStableWindow && acc.dim() <= kVerifyCap) {
      if (cached_rank != acc.rank()) {
        cached = acc.kernel();
        cached_rank = acc.rank();
      }
      if (commutes_with(cached, i)) {
        ++stable;
        continue;
      }
    }
    if (add_constraints(i))
      stable = 0;
    else
      ++stable;
  }

  CenterData<S> z;
  z.basis = acc.kernel_canonical();

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(z.basis.dim()));
  for (Index i = 0; i < z.basis.dim(); ++i) labels.push_back("z" + std::to_string(i));
  DenseVector<S> unit_coords = z.basis.coords(a.unit());  // throws if unit not central
  z.algebra = SCAlgebra<S>::from_products(
      std::move(labels), std::move(unit_coords), [&](int i, int j) {
        DenseVector<S> prod = a.mul(z.basis.cols.col(i), z.basis.cols.col(j));
        DenseVector<S> coords = z.basis.coords(prod);
        SparseVec<S> out;
        for (Index k = 0; k < coords.rows(); ++k)
          if (!(coords(k) == S(0))) out.emplace_back(static_cast<int>(k), coords(k));
        return out;
      });
  return z;
}

/// Direct product of algebras with block-tagged basis labels.
template <class S>
struct ProductAlgebra {
  SCAlgebra<S> algebra;
  std::vector<Index> offset;  // per part; one extra entry = total dim
};

template <class S>
ProductAlgebra<S> direct_product(const std::vector<const SCAlgebra<S>*>& parts) {
  ProductAlgebra<S> out;
  std::vector<std::string> labels;
  Index total = 0;
  out.offset.push_back(0);
  for (std::size_t t = 0; t < parts.size(); ++t) {
    for (const auto& l : parts[t]->labels()) labels.push_back("c" + std::to_string(t) + ":" + l);
    total += parts[t]->dim();
    out.offset.push_back(total);
  }
  DenseVector<S> unit = DenseVector<S>::Zero(total);
  for (std::size_t t = 0; t < parts.size(); ++t)
    unit.segment(out.offset[t], parts[t]->dim()) = parts[t]->unit();

  auto locate = [&](int i) {
    std::size_t t = 0;
    while (out.offset[t + 1] <= i) ++t;
    return t;
  };
  out.algebra = SCAlgebra<S>::from_products(
      std::move(labels), std::move(unit),
      [&](int i, int j) -> SparseVec<S> {
        std::size_t ti = locate(i);
        if (ti != locate(j)) return {};
        SparseVec<S> terms;
        for (const auto& [k, c] : parts[ti]->product_terms(i - out.offset[ti], j - out.offset[ti]))
          terms.emplace_back(k + static_cast<int>(out.offset[ti]), c);
        return terms;
      });
  return out;
}

/// Linear map between structure-constant algebras, columns = images of the
/// source basis.
template <class S>
struct AlgebraMap {
  DenseMatrix<S> matrix;

  DenseVector<S> apply(const DenseVector<S>& v) const { return matrix * v; }
};

struct RingMapReport {
  bool unital = false;
  bool multiplicative = false;
  std::optional<std::pair<Index, Index>> first_failure;
  Index rank = 0;
  bool injective = false;
  bool surjective = false;

  bool is_isomorphism() const { return unital && multiplicative && injective && surjective; }
};

template <class S>
RingMapReport verify_ring_map(const AlgebraMap<S>& f, const SCAlgebra<S>& src,
                              const SCAlgebra<S>& tgt) {
  if (f.matrix.rows() != tgt.dim() || f.matrix.cols() != src.dim())
    throw DimensionMismatchError("ring map has shape " + std::to_string(f.matrix.rows()) + "x" +
                                 std::to_string(f.matrix.cols()) + ", expected " +
                                 std::to_string(tgt.dim()) + "x" + std::to_string(src.dim()));
  RingMapReport rep;
  DenseVector<S> unit_img = f.apply(src.unit());
  rep.unital = true;
  for (Index i = 0; i < tgt.dim(); ++i)
    if (!(unit_img(i) == tgt.unit()(i))) {
      rep.unital = false;
      break;
    }

  rep.multiplicative = true;
  for (Index i = 0; i < src.dim() && rep.multiplicative; ++i)
    for (Index j = 0; j < src.dim(); ++j) {
      DenseVector<S> lhs = DenseVector<S>::Zero(tgt.dim());
      for (const auto& [k, c] : src.product_terms(i, j)) lhs += c * f.matrix.col(k);
      DenseVector<S> rhs = tgt.mul(f.matrix.col(i), f.matrix.col(j));
      bool equal = true;
      for (Index t = 0; t < tgt.dim(); ++t)
        if (!(lhs(t) == rhs(t))) {
          equal = false;
          break;
        }
      if (!equal) {
        rep.multiplicative = false;
        rep.first_failure = {i, j};
        break;
      }
    }

  rep.rank = rank(f.matrix);
  rep.injective = rep.rank == src.dim();
  rep.surjective = rep.rank == tgt.dim();
  return rep;
}

/// Idempotent fingerprint of a commutative algebra: per admissible prime, the
/// number of primitive idempotents of the reduction mod p, computed as the
/// dimension of the fixed space of the Frobenius map x ↦ x^p (which is
/// F_p-linear on a commutative F_p-algebra).
struct Fingerprint {
  Index dimension = 0;
  std::vector<std::pair<std::uint32_t, int>> counts;
  std::vector<std::pair<std::uint32_t, std::string>> excluded;

  std::optional<int> count_for(std::uint32_t p) const {
    for (const auto& [q, c] : counts)
      if (q == p) return c;
    return std::nullopt;
  }
};

/// Reduce a rational algebra mod p. Fails (nullopt) when any structure
/// constant or unit coordinate has denominator divisible by p.
inline std::optional<SCAlgebra<Fp>> reduce_mod_p(const SCAlgebra<Rational>& a, std::uint32_t p) {
  auto reduce = [&](const Rational& r) -> std::optional<Fp> {
    Integer den = r.den();
    if (den % p == 0) return std::nullopt;
    Integer num = r.num() % p;
    long long n = num.convert_to<long long>();
    long long d = (den % p).convert_to<long long>();
    return Fp(n, p) / Fp(d, p);
  };
  // Reducibility scan first; from_products runs self-checks that would choke
  // on a partially reduced table.
  for (Index i = 0; i < a.dim(); ++i) {
    if (a.unit()(i).den() % p == 0) return std::nullopt;
    for (Index j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.product_terms(i, j))
        if (c.den() % p == 0) return std::nullopt;
  }
  DenseVector<Fp> unit(a.dim());
  for (Index i = 0; i < a.dim(); ++i) unit(i) = *reduce(a.unit()(i));
  return SCAlgebra<Fp>::from_products(
      a.labels(), std::move(unit),
      [&](int i, int j) -> SparseVec<Fp> {
        SparseVec<Fp> out;
        for (const auto& [k, c] : a.product_terms(i, j)) {
          Fp rc = *reduce(c);
          if (!rc.is_zero()) out.emplace_back(k, rc);
        }
        return out;
      });
}

inline Fingerprint fingerprint(const SCAlgebra<Rational>& a,
                               const std::vector<std::uint32_t>& primes,
                               const Integer& forbidden_divisor = 0) {
  if (!a.commutative())
    throw NotCommutativeError("fingerprint requires a commutative algebra");
  Fingerprint fp;
  fp.dimension = a.dim();
  for (std::uint32_t p : primes) {
    if (!is_prime_u32(p)) throw BadPrimeError(std::to_string(p) + " is not prime");
    if (forbidden_divisor != 0 && forbidden_divisor % p == 0) {
      fp.excluded.emplace_back(p, "divides the morphism count");
      continue;
    }
    auto red = reduce_mod_p(a, p);
    if (!red) {
      fp.excluded.emplace_back(p, "structure constants degenerate mod p");
      continue;
    }
    const Index d = red->dim();
    auto pow_elt = [&](DenseVector<Fp> base, std::uint32_t e) {
      DenseVector<Fp> acc = red->unit();
      while (e) {
        if (e & 1) acc = red->mul(acc, base);
        base = red->mul(base, base);
        e >>= 1;
      }
      return acc;
    };
    DenseMatrix<Fp> frob(d, d);
    for (Index i = 0; i < d; ++i) frob.col(i) = pow_elt(red->basis_vec(i), p);
    DenseMatrix<Fp> shifted = frob;
    for (Index i = 0; i < d; ++i) shifted(i, i) -= Fp(1, p);
    // Fix the modulus on every entry so elimination never sees bare literals.
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c)
        if (shifted(r, c).modulus() == 0) shifted(r, c) = Fp(shifted(r, c).raw(), p);
    fp.counts.emplace_back(p, static_cast<int>(kernel_basis(shifted).cols()));
  }
  return fp;
}

}  // namespace grpd
