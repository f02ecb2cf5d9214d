#pragma once

// The finite-dimensional dg Lie algebra attached to a graded algebra A and a
// graded vector space V over a window [p, q]:
//
//   L^n = degree-preserving multilinear maps  m x ... x m -> End V.
//
// A degree-n cochain is stored densely, one component per pair
// (source degree j, composition (d_1..d_n)), as an array of alpha_i x alpha_j
// matrices indexed by tuples of algebra basis elements (i = j + sum d_k).
// Components exist only for p <= j, i <= q, so L^0 is block diagonal and L^1
// is strictly lower triangular.  Component order is canonical: j ascending,
// compositions in ascending lexicographic order, tuples mixed-radix with the
// first factor most significant.

#include "mcmod/graded_algebra.hpp"
#include "mcmod/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcmod {

namespace detail {

inline void compositions_of(int total, int parts, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (total >= 1) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int d = 1; d <= total - (parts - 1); ++d) {
        cur.push_back(d);
        compositions_of(total - d, parts - 1, cur, out);
        cur.pop_back();
    }
}

// All compositions (d_1..d_n) of positive integers with sum in [n, max_sum],
// in ascending lexicographic order (which ascending-sum enumeration with
// lex order per sum does not give; sort explicitly).
inline std::vector<std::vector<int>> all_compositions(int parts, int max_sum) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur;
    for (int total = parts; total <= max_sum; ++total) compositions_of(total, parts, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

template <class F>
struct CochainComponent {
    int source = 0;            // j
    std::vector<int> comp;     // (d_1..d_n)
    std::vector<Matrix<F>> mats;  // one alpha_i x alpha_j matrix per basis tuple
};

template <class F>
class Cochain {
public:
    using Elt = typename F::Element;
    using AlgebraPtr = std::shared_ptr<const GradedAlgebra<F>>;

    // Zero cochain with the full canonical component list.
    Cochain(AlgebraPtr alg, DimensionVector dims, int degree)
        : alg_(std::move(alg)), dims_(std::move(dims)), degree_(degree) {
        if (!alg_) throw std::invalid_argument("null algebra");
        if (degree_ < 0) throw std::invalid_argument("negative cochain degree");
        if (alg_->degree_bound() < dims_.hi() - dims_.lo)
            throw std::invalid_argument("algebra degree bound below window length");
        const F& k = alg_->field();
        const int p = dims_.lo, q = dims_.hi();
        for (int j = p; j <= q; ++j) {
            for (const auto& comp : detail::all_compositions(degree_, q - j)) {
                int target = j;
                for (int d : comp) target += d;
                std::size_t tuples = 1;
                for (int d : comp) tuples *= static_cast<std::size_t>(alg_->dim(d));
                CochainComponent<F> c;
                c.source = j;
                c.comp = comp;
                c.mats.assign(tuples, Matrix<F>(k, static_cast<std::size_t>(dims_.at(target)),
                                                static_cast<std::size_t>(dims_.at(j))));
                comps_.push_back(std::move(c));
            }
        }
    }

    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const GradedAlgebra<F>& algebra() const { return *alg_; }
    const F& field() const { return alg_->field(); }
    const DimensionVector& dims() const { return dims_; }
    int degree() const { return degree_; }

    const std::vector<CochainComponent<F>>& components() const { return comps_; }
    std::vector<CochainComponent<F>>& components() { return comps_; }

    const CochainComponent<F>& component(int source, const std::vector<int>& comp) const {
        return comps_[component_index(source, comp)];
    }
    CochainComponent<F>& component(int source, const std::vector<int>& comp) {
        return comps_[component_index(source, comp)];
    }

    std::size_t component_index(int source, const std::vector<int>& comp) const {
        auto it = std::lower_bound(comps_.begin(), comps_.end(), std::make_pair(source, comp),
                                   [](const CochainComponent<F>& c, const std::pair<int, std::vector<int>>& key) {
                                       return std::make_pair(c.source, c.comp) < key;
                                   });
        if (it == comps_.end() || it->source != source || it->comp != comp)
            throw std::out_of_range("no such cochain component");
        return static_cast<std::size_t>(it - comps_.begin());
    }

    bool is_zero() const {
        for (const auto& c : comps_)
            for (const auto& m : c.mats)
                if (!m.is_zero()) return false;
        return true;
    }

    Cochain add(const Cochain& o) const {
        check_compatible(o, degree_);
        Cochain r = *this;
        for (std::size_t ci = 0; ci < comps_.size(); ++ci)
            for (std::size_t t = 0; t < comps_[ci].mats.size(); ++t)
                r.comps_[ci].mats[t] = comps_[ci].mats[t].add(o.comps_[ci].mats[t]);
        return r;
    }

    Cochain sub(const Cochain& o) const {
        check_compatible(o, degree_);
        Cochain r = *this;
        for (std::size_t ci = 0; ci < comps_.size(); ++ci)
            for (std::size_t t = 0; t < comps_[ci].mats.size(); ++t)
                r.comps_[ci].mats[t] = comps_[ci].mats[t].sub(o.comps_[ci].mats[t]);
        return r;
    }

    Cochain scale(const Elt& c) const {
        Cochain r = *this;
        for (auto& comp : r.comps_)
            for (auto& m : comp.mats) m = m.scale(c);
        return r;
    }

    bool operator==(const Cochain& o) const {
        if (degree_ != o.degree_ || !(dims_ == o.dims_) || alg_.get() != o.alg_.get()) return false;
        for (std::size_t ci = 0; ci < comps_.size(); ++ci)
            for (std::size_t t = 0; t < comps_[ci].mats.size(); ++t)
                if (!(comps_[ci].mats[t] == o.comps_[ci].mats[t])) return false;
        return true;
    }

    void check_compatible(const Cochain& o, int expected_degree) const {
        if (alg_.get() != o.alg_.get() || !(dims_ == o.dims_))
            throw std::invalid_argument("algebra/dims mismatch");
        if (o.degree_ != expected_degree) throw std::invalid_argument("cochain degree mismatch");
    }

private:
    AlgebraPtr alg_;
    DimensionVector dims_;
    int degree_;
    std::vector<CochainComponent<F>> comps_;
};

// A module point is a degree-1 cochain: the candidate action of m on V.
template <class F>
using ModulePoint = Cochain<F>;

// dim L^n = sum over components of (#tuples * alpha_i * alpha_j); zero for
// n > q - p because m is positively graded.
template <class F>
long long l_dimension(const GradedAlgebra<F>& a, const DimensionVector& dims, int n) {
    if (n < 0) throw std::invalid_argument("negative degree");
    const int p = dims.lo, q = dims.hi();
    if (a.degree_bound() < q - p) throw std::invalid_argument("algebra degree bound below window length");
    if (n > q - p) return 0;
    long long total = 0;
    for (int j = p; j <= q; ++j)
        for (const auto& comp : detail::all_compositions(n, q - j)) {
            long long tuples = 1;
            int target = j;
            for (int d : comp) {
                tuples *= a.dim(d);
                target += d;
            }
            total += tuples * dims.at(target) * dims.at(j);
        }
    return total;
}

namespace detail {

inline std::vector<std::size_t> decode_tuple(std::size_t index, const std::vector<std::size_t>& radices) {
    std::vector<std::size_t> t(radices.size());
    for (std::size_t k = radices.size(); k-- > 0;) {
        t[k] = index % radices[k];
        index /= radices[k];
    }
    return t;
}

inline std::size_t encode_tuple(const std::vector<std::size_t>& t, const std::vector<std::size_t>& radices) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < radices.size(); ++k) index = index * radices[k] + t[k];
    return index;
}

template <class F>
std::vector<std::size_t> tuple_radices(const GradedAlgebra<F>& a, const std::vector<int>& comp) {
    std::vector<std::size_t> r;
    r.reserve(comp.size());
    for (int d : comp) r.push_back(static_cast<std::size_t>(a.dim(d)));
    return r;
}

}  // namespace detail

// d : L^n -> L^{n+1},
//   d mu(a_1,...,a_{n+1}) = sum_{i=1}^{n} (-1)^{n-i} mu(..., a_i a_{i+1}, ...).
// In particular d = 0 on L^0 and (d mu)(a,b) = mu(ab) for mu in L^1.
template <class F>
Cochain<F> differential(const Cochain<F>& x) {
    const GradedAlgebra<F>& a = x.algebra();
    const F& k = a.field();
    const int n = x.degree();
    Cochain<F> out(x.algebra_ptr(), x.dims(), n + 1);
    if (n == 0) return out;

    for (auto& rc : out.components()) {
        const auto radices = detail::tuple_radices(a, rc.comp);
        const int parts = static_cast<int>(rc.comp.size());
        for (int i = 1; i <= parts - 1; ++i) {
            const bool negative = ((n - i) % 2) != 0;
            std::vector<int> merged;
            merged.reserve(rc.comp.size() - 1);
            for (int s = 0; s < parts; ++s) {
                if (s == i - 1)
                    merged.push_back(rc.comp[static_cast<std::size_t>(s)] + rc.comp[static_cast<std::size_t>(s + 1)]);
                else if (s != i)
                    merged.push_back(rc.comp[static_cast<std::size_t>(s)]);
            }
            const auto& src = x.component(rc.source, merged);
            const auto src_radices = detail::tuple_radices(a, merged);
            for (std::size_t ti = 0; ti < rc.mats.size(); ++ti) {
                auto t = detail::decode_tuple(ti, radices);
                const auto& prod =
                    a.product_basis(rc.comp[static_cast<std::size_t>(i - 1)], static_cast<int>(t[static_cast<std::size_t>(i - 1)]),
                                    rc.comp[static_cast<std::size_t>(i)], static_cast<int>(t[static_cast<std::size_t>(i)]));
                std::vector<std::size_t> st;
                st.reserve(merged.size());
                for (int s = 0; s < parts; ++s) {
                    if (s == i - 1)
                        st.push_back(0);  // placeholder for the merged slot
                    else if (s != i)
                        st.push_back(t[static_cast<std::size_t>(s)]);
                }
                const int merged_dim = a.dim(merged[static_cast<std::size_t>(i - 1)]);
                for (int s = 0; s < merged_dim; ++s) {
                    if (k.is_zero(prod[static_cast<std::size_t>(s)])) continue;
                    st[static_cast<std::size_t>(i - 1)] = static_cast<std::size_t>(s);
                    const auto c = negative ? k.neg(prod[static_cast<std::size_t>(s)]) : prod[static_cast<std::size_t>(s)];
                    const auto& sm = src.mats[detail::encode_tuple(st, src_radices)];
                    rc.mats[ti] = rc.mats[ti].add(sm.scale(c));
                }
            }
        }
    }
    return out;
}

// The associative cup-type product:
//   (x o y)(a_1..a_{m+n}) = (-1)^{mn} x(a_1..a_m) o y(a_{m+1}..a_{m+n}).
template <class F>
Cochain<F> compose(const Cochain<F>& x, const Cochain<F>& y) {
    if (x.algebra_ptr().get() != y.algebra_ptr().get() || !(x.dims() == y.dims()))
        throw std::invalid_argument("algebra/dims mismatch");
    const GradedAlgebra<F>& a = x.algebra();
    const int m = x.degree(), n = y.degree();
    const bool negative = (m % 2) != 0 && (n % 2) != 0;
    Cochain<F> out(x.algebra_ptr(), x.dims(), m + n);

    for (auto& rc : out.components()) {
        const std::vector<int> left(rc.comp.begin(), rc.comp.begin() + m);
        const std::vector<int> right(rc.comp.begin() + m, rc.comp.end());
        int mid = rc.source;
        for (int d : right) mid += d;
        const auto& xc = x.component(mid, left);
        const auto& yc = y.component(rc.source, right);
        const auto radices = detail::tuple_radices(a, rc.comp);
        const auto lrad = detail::tuple_radices(a, left);
        const auto rrad = detail::tuple_radices(a, right);
        for (std::size_t ti = 0; ti < rc.mats.size(); ++ti) {
            auto t = detail::decode_tuple(ti, radices);
            const std::vector<std::size_t> lt(t.begin(), t.begin() + m);
            const std::vector<std::size_t> rt(t.begin() + m, t.end());
            auto prod = xc.mats[detail::encode_tuple(lt, lrad)].mul(yc.mats[detail::encode_tuple(rt, rrad)]);
            rc.mats[ti] = negative ? rc.mats[ti].sub(prod) : rc.mats[ti].add(prod);
        }
    }
    return out;
}

// Graded commutator [x, y] = x o y - (-1)^{mn} y o x.
template <class F>
Cochain<F> bracket(const Cochain<F>& x, const Cochain<F>& y) {
    const bool odd = (x.degree() % 2) != 0 && (y.degree() % 2) != 0;
    auto xy = compose(x, y);
    auto yx = compose(y, x);
    return odd ? xy.add(yx) : xy.sub(yx);
}

// Maurer-Cartan residual d mu + mu o mu, stored in the simplified form
//   (a, b) |-> mu(ab) - mu(a) mu(b),
// which is equivalent in all characteristics (mu o mu = (1/2)[mu, mu] only
// away from characteristic 2, but equals the expression above always).
template <class F>
Cochain<F> mc_residual(const ModulePoint<F>& mu) {
    if (mu.degree() != 1) throw std::invalid_argument("module point must have degree 1");
    const GradedAlgebra<F>& a = mu.algebra();
    Cochain<F> out(mu.algebra_ptr(), mu.dims(), 2);

    for (auto& rc : out.components()) {
        const int d1 = rc.comp[0], d2 = rc.comp[1];
        const auto& merged = mu.component(rc.source, {d1 + d2});
        const auto& first = mu.component(rc.source + d2, {d1});
        const auto& second = mu.component(rc.source, {d2});
        const int dim2 = a.dim(d2);
        for (std::size_t ti = 0; ti < rc.mats.size(); ++ti) {
            const int t1 = static_cast<int>(ti) / dim2;
            const int t2 = static_cast<int>(ti) % dim2;
            const auto& prod = a.product_basis(d1, t1, d2, t2);
            auto acc = rc.mats[ti];
            for (int s = 0; s < a.dim(d1 + d2); ++s)
                if (!a.field().is_zero(prod[static_cast<std::size_t>(s)]))
                    acc = acc.add(merged.mats[static_cast<std::size_t>(s)].scale(prod[static_cast<std::size_t>(s)]));
            acc = acc.sub(first.mats[static_cast<std::size_t>(t1)].mul(second.mats[static_cast<std::size_t>(t2)]));
            rc.mats[ti] = acc;
        }
    }
    return out;
}

// mu is an m-module structure iff the residual vanishes.
template <class F>
bool is_module(const ModulePoint<F>& mu) {
    return mc_residual(mu).is_zero();
}

// Block-diagonal graded automorphism of V; the gauge group element.
template <class F>
class GaugeElement {
public:
    GaugeElement(DimensionVector dims, std::vector<Matrix<F>> blocks)
        : dims_(std::move(dims)), blocks_(std::move(blocks)) {
        if (blocks_.size() != static_cast<std::size_t>(dims_.length()))
            throw std::invalid_argument("gauge element needs one block per degree");
        inverses_.reserve(blocks_.size());
        for (int j = dims_.lo; j <= dims_.hi(); ++j) {
            const auto& b = block(j);
            if (b.rows() != static_cast<std::size_t>(dims_.at(j)) || b.rows() != b.cols())
                throw std::invalid_argument("gauge block shape mismatch");
            inverses_.push_back(inverse(b));  // throws if singular
        }
    }

    static GaugeElement identity(const F& k, const DimensionVector& dims) {
        std::vector<Matrix<F>> blocks;
        for (int j = dims.lo; j <= dims.hi(); ++j)
            blocks.push_back(Matrix<F>::identity(k, static_cast<std::size_t>(dims.at(j))));
        return GaugeElement(dims, std::move(blocks));
    }

    // The scalars t (Delta), which act trivially on every cochain.
    static GaugeElement scalar(const F& k, const DimensionVector& dims, const typename F::Element& t) {
        std::vector<Matrix<F>> blocks;
        for (int j = dims.lo; j <= dims.hi(); ++j)
            blocks.push_back(Matrix<F>::identity(k, static_cast<std::size_t>(dims.at(j))).scale(t));
        return GaugeElement(dims, std::move(blocks));
    }

    // The canonical one-parameter subgroup (t^p, ..., t^q), which scales the
    // (i, j) block of any cochain by t^{i-j}.
    static GaugeElement one_parameter(const F& k, const DimensionVector& dims, const typename F::Element& t) {
        std::vector<Matrix<F>> blocks;
        for (int j = dims.lo; j <= dims.hi(); ++j) {
            typename F::Element c = k.one();
            if (j >= 0)
                for (int s = 0; s < j; ++s) c = k.mul(c, t);
            else
                for (int s = 0; s < -j; ++s) c = k.mul(c, k.inv(t));
            blocks.push_back(Matrix<F>::identity(k, static_cast<std::size_t>(dims.at(j))).scale(c));
        }
        return GaugeElement(dims, std::move(blocks));
    }

    const DimensionVector& dims() const { return dims_; }
    const Matrix<F>& block(int j) const { return blocks_[static_cast<std::size_t>(j - dims_.lo)]; }
    const Matrix<F>& inverse_block(int j) const { return inverses_[static_cast<std::size_t>(j - dims_.lo)]; }

private:
    DimensionVector dims_;
    std::vector<Matrix<F>> blocks_;
    std::vector<Matrix<F>> inverses_;
};

// (g . x)_{ij} = g_i x_{ij} g_j^{-1}, blockwise on every component.
template <class F>
Cochain<F> gauge_act(const GaugeElement<F>& g, const Cochain<F>& x) {
    if (!(g.dims() == x.dims())) throw std::invalid_argument("gauge element dims mismatch");
    Cochain<F> out = x;
    for (auto& c : out.components()) {
        int target = c.source;
        for (int d : c.comp) target += d;
        for (auto& m : c.mats) m = g.block(target).mul(m).mul(g.inverse_block(c.source));
    }
    return out;
}

// Twisted differential d^mu(y) = dy + [mu, y].  When mu satisfies the
// Maurer-Cartan equation this squares to zero; in general the square is
// bracketing with the residual.
template <class F>
Cochain<F> twisted_differential(const ModulePoint<F>& mu, const Cochain<F>& y) {
    if (mu.degree() != 1) throw std::invalid_argument("module point must have degree 1");
    return differential(y).add(bracket(mu, y));
}

// ---- canonical coordinates on L^n ------------------------------------------

struct LBlock {
    int source = 0;
    std::vector<int> comp;
    std::size_t tuple_count = 0;
    std::size_t rows = 0, cols = 0;
    std::size_t offset = 0;
};

struct LLayout {
    std::vector<LBlock> blocks;
    std::size_t total = 0;
};

template <class F>
LLayout l_layout(const GradedAlgebra<F>& a, const DimensionVector& dims, int n) {
    if (a.degree_bound() < dims.hi() - dims.lo)
        throw std::invalid_argument("algebra degree bound below window length");
    LLayout layout;
    for (int j = dims.lo; j <= dims.hi(); ++j)
        for (const auto& comp : detail::all_compositions(n, dims.hi() - j)) {
            LBlock b;
            b.source = j;
            b.comp = comp;
            b.tuple_count = 1;
            int target = j;
            for (int d : comp) {
                b.tuple_count *= static_cast<std::size_t>(a.dim(d));
                target += d;
            }
            b.rows = static_cast<std::size_t>(dims.at(target));
            b.cols = static_cast<std::size_t>(dims.at(j));
            b.offset = layout.total;
            layout.total += b.tuple_count * b.rows * b.cols;
            layout.blocks.push_back(std::move(b));
        }
    return layout;
}

template <class F>
std::vector<typename F::Element> flatten(const Cochain<F>& x) {
    std::vector<typename F::Element> out;
    for (const auto& c : x.components())
        for (const auto& m : c.mats)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t cc = 0; cc < m.cols(); ++cc) out.push_back(m.at(r, cc));
    return out;
}

template <class F>
Cochain<F> unflatten(const std::shared_ptr<const GradedAlgebra<F>>& alg, const DimensionVector& dims,
                     int degree, const std::vector<typename F::Element>& coords) {
    Cochain<F> x(alg, dims, degree);
    std::size_t k = 0;
    for (auto& c : x.components())
        for (auto& m : c.mats)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t cc = 0; cc < m.cols(); ++cc) {
                    if (k >= coords.size()) throw std::invalid_argument("coordinate vector too short");
                    m.at(r, cc) = coords[k++];
                }
    if (k != coords.size()) throw std::invalid_argument("coordinate vector too long");
    return x;
}

// ---- standard module points -------------------------------------------------

// The window [p, q] of A itself (shifted by s), with the multiplication
// action: M_j = A_{j-s}, mu(a)|_{M_j} = (a . -).
template <class F>
ModulePoint<F> shifted_tautological_module(const std::shared_ptr<const GradedAlgebra<F>>& alg, int p,
                                           int q, int shift) {
    if (p < 0 || q < p) throw std::invalid_argument("bad window");
    if (q - shift > alg->degree_bound()) throw std::invalid_argument("window exceeds algebra degree bound");
    const F& k = alg->field();
    std::vector<int> d;
    for (int j = p; j <= q; ++j) d.push_back(j - shift >= 0 ? alg->dim(j - shift) : 0);
    DimensionVector dims(p, d);

    ModulePoint<F> mu(alg, dims, 1);
    for (auto& c : mu.components()) {
        const int e = c.comp[0];
        const int js = c.source - shift;   // source piece is A_{js}
        if (js < 0) continue;
        for (std::size_t t = 0; t < c.mats.size(); ++t) {
            Matrix<F>& m = c.mats[t];
            for (std::size_t col = 0; col < m.cols(); ++col) {
                std::vector<typename F::Element> coords;
                if (js == 0) {
                    coords.assign(static_cast<std::size_t>(alg->dim(e)), k.zero());
                    coords[t] = k.one();  // a * 1 = a
                } else {
                    coords = alg->product_basis(e, static_cast<int>(t), js, static_cast<int>(col));
                }
                for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, col) = coords[r];
            }
        }
    }
    return mu;
}

template <class F>
ModulePoint<F> tautological_module(const std::shared_ptr<const GradedAlgebra<F>>& alg, int p, int q) {
    return shifted_tautological_module(alg, p, q, 0);
}

template <class F>
ModulePoint<F> zero_module_point(const std::shared_ptr<const GradedAlgebra<F>>& alg,
                                 const DimensionVector& dims) {
    return ModulePoint<F>(alg, dims, 1);
}

// Block-diagonal sum of two cochains of the same degree over the same window.
template <class F>
Cochain<F> direct_sum(const Cochain<F>& x, const Cochain<F>& y) {
    if (x.algebra_ptr().get() != y.algebra_ptr().get()) throw std::invalid_argument("algebra mismatch");
    if (x.dims().lo != y.dims().lo || x.dims().length() != y.dims().length())
        throw std::invalid_argument("window mismatch");
    if (x.degree() != y.degree()) throw std::invalid_argument("degree mismatch");
    std::vector<int> d;
    for (int j = x.dims().lo; j <= x.dims().hi(); ++j) d.push_back(x.dims().at(j) + y.dims().at(j));
    DimensionVector dims(x.dims().lo, d);

    Cochain<F> out(x.algebra_ptr(), dims, x.degree());
    for (auto& c : out.components()) {
        int target = c.source;
        for (int dd : c.comp) target += dd;
        const auto& xc = x.component(c.source, c.comp);
        const auto& yc = y.component(c.source, c.comp);
        const std::size_t rx = static_cast<std::size_t>(x.dims().at(target));
        const std::size_t cx = static_cast<std::size_t>(x.dims().at(c.source));
        for (std::size_t t = 0; t < c.mats.size(); ++t) {
            Matrix<F>& m = c.mats[t];
            const Matrix<F>& a = xc.mats[t];
            const Matrix<F>& b = yc.mats[t];
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t cc = 0; cc < a.cols(); ++cc) m.at(r, cc) = a.at(r, cc);
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t cc = 0; cc < b.cols(); ++cc) m.at(rx + r, cx + cc) = b.at(r, cc);
        }
    }
    return out;
}

// Discard the pieces below p'; action components touching them go with them.
template <class F>
ModulePoint<F> truncate_module(const ModulePoint<F>& mu, int p_prime) {
    if (mu.degree() != 1) throw std::invalid_argument("module point must have degree 1");
    const int p = mu.dims().lo, q = mu.dims().hi();
    if (p_prime < p || p_prime > q) throw std::invalid_argument("truncation degree outside window");
    std::vector<int> d;
    for (int j = p_prime; j <= q; ++j) d.push_back(mu.dims().at(j));
    DimensionVector dims(p_prime, d);
    ModulePoint<F> out(mu.algebra_ptr(), dims, 1);
    for (auto& c : out.components()) {
        const auto& src = mu.component(c.source, c.comp);
        c.mats = src.mats;
    }
    return out;
}

}  // namespace mcmod
