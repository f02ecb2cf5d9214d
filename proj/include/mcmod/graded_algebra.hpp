#pragma once

// Presented graded algebras A = k (+) m with finite-dimensional pieces, stored
// as explicit per-degree basis lists and multiplication tables up to a degree
// bound.  The degree-zero piece is implicitly one-dimensional and the unit
// acts as the identity, so tables only cover positive-degree products.

#include "mcmod/fields.hpp"
#include "mcmod/matrix.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcmod {

// Dimensions of a graded vector space over a degree window [lo, hi].
struct DimensionVector {
    int lo = 0;
    std::vector<int> dims;

    DimensionVector() = default;
    DimensionVector(int lo_, std::vector<int> dims_) : lo(lo_), dims(std::move(dims_)) {
        if (dims.empty()) throw std::invalid_argument("empty dimension vector");
        bool positive = false;
        for (int d : dims) {
            if (d < 0) throw std::invalid_argument("negative dimension");
            if (d > 0) positive = true;
        }
        if (!positive) throw std::invalid_argument("dimension vector must have a positive entry");
    }

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    int length() const { return static_cast<int>(dims.size()); }

    int at(int j) const {
        if (j < lo || j > hi()) throw std::out_of_range("degree outside window");
        return dims[static_cast<std::size_t>(j - lo)];
    }

    int total() const { return std::accumulate(dims.begin(), dims.end(), 0); }

    bool operator==(const DimensionVector&) const = default;
};

// A homogeneous element, as coordinates over the basis of one piece.
template <class F>
struct HomogeneousElement {
    int degree = 0;
    std::vector<typename F::Element> coords;
};

template <class F>
class GradedAlgebra {
public:
    using Elt = typename F::Element;

    // basis[d] for 1 <= d <= D lists basis labels of A_d; mult[(d,e)] maps the
    // pair of basis indices (i,j) to the coordinate vector of b_i * b_j over
    // the basis of A_{d+e}.
    GradedAlgebra(F field, int degree_bound, std::vector<std::vector<std::string>> basis,
                  std::map<std::pair<int, int>, std::vector<std::vector<Elt>>> mult)
        : field_(std::move(field)),
          degree_bound_(degree_bound),
          basis_(std::move(basis)),
          mult_(std::move(mult)) {
        if (degree_bound_ < 1) throw std::invalid_argument("degree bound must be >= 1");
        if (static_cast<int>(basis_.size()) != degree_bound_ + 1)
            throw std::invalid_argument("basis table must cover degrees 0..D");
        validate();
    }

    const F& field() const { return field_; }
    int degree_bound() const { return degree_bound_; }

    // dim A_d; A_0 is the span of the unit.
    int dim(int d) const {
        if (d < 0 || d > degree_bound_) throw std::out_of_range("degree outside bound");
        if (d == 0) return 1;
        return static_cast<int>(basis_[static_cast<std::size_t>(d)].size());
    }

    const std::vector<std::string>& labels(int d) const {
        if (d < 1 || d > degree_bound_) throw std::out_of_range("degree outside bound");
        return basis_[static_cast<std::size_t>(d)];
    }

    // Coordinates of b_i^{(d)} * b_j^{(e)} over the basis of A_{d+e}.
    const std::vector<Elt>& product_basis(int d, int i, int e, int j) const {
        const auto it = mult_.find({d, e});
        if (it == mult_.end()) throw std::out_of_range("no product table for degrees");
        return it->second[static_cast<std::size_t>(i) * dim(e) + static_cast<std::size_t>(j)];
    }

    // Bilinear extension of the basis product.
    std::vector<Elt> product(int d, const std::vector<Elt>& a, int e, const std::vector<Elt>& b) const {
        std::vector<Elt> out(dim(d + e), field_.zero());
        for (int i = 0; i < dim(d); ++i) {
            if (field_.is_zero(a[static_cast<std::size_t>(i)])) continue;
            for (int j = 0; j < dim(e); ++j) {
                if (field_.is_zero(b[static_cast<std::size_t>(j)])) continue;
                const auto c = field_.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
                const auto& tab = product_basis(d, i, e, j);
                for (int s = 0; s < dim(d + e); ++s)
                    out[static_cast<std::size_t>(s)] =
                        field_.add(out[static_cast<std::size_t>(s)],
                                   field_.mul(c, tab[static_cast<std::size_t>(s)]));
            }
        }
        return out;
    }

    // Exact associativity check on all basis triples within the bound.
    void validate() const {
        for (auto& [key, table] : mult_) {
            auto [d, e] = key;
            if (d < 1 || e < 1 || d + e > degree_bound_)
                throw std::invalid_argument("product table outside degree bound");
            if (static_cast<int>(table.size()) != dim(d) * dim(e))
                throw std::invalid_argument("product table has wrong shape");
            for (const auto& v : table)
                if (static_cast<int>(v.size()) != dim(d + e))
                    throw std::invalid_argument("product table has wrong target dimension");
        }
        for (int d = 1; d <= degree_bound_; ++d)
            for (int e = 1; d + e <= degree_bound_; ++e)
                if (mult_.find({d, e}) == mult_.end())
                    throw std::invalid_argument("missing product table");

        for (int d = 1; d <= degree_bound_; ++d)
            for (int e = 1; e <= degree_bound_; ++e)
                for (int f = 1; d + e + f <= degree_bound_; ++f)
                    for (int i = 0; i < dim(d); ++i)
                        for (int j = 0; j < dim(e); ++j)
                            for (int l = 0; l < dim(f); ++l) {
                                auto ab = product_basis(d, i, e, j);
                                auto bc = product_basis(e, j, f, l);
                                auto left = product(d + e, ab, f, unit_vector(f, l));
                                auto right = product(d, unit_vector(d, i), e + f, bc);
                                for (int s = 0; s < dim(d + e + f); ++s)
                                    if (!field_.eq(left[static_cast<std::size_t>(s)],
                                                   right[static_cast<std::size_t>(s)]))
                                        throw std::invalid_argument("multiplication tables are not associative");
                            }
    }

    // The ring is not required to be commutative; callers that need a
    // coordinate ring can check and report.
    bool is_commutative() const {
        for (int d = 1; d <= degree_bound_; ++d)
            for (int e = d; d + e <= degree_bound_; ++e)
                for (int i = 0; i < dim(d); ++i)
                    for (int j = 0; j < dim(e); ++j) {
                        const auto& ab = product_basis(d, i, e, j);
                        const auto& ba = product_basis(e, j, d, i);
                        for (int s = 0; s < dim(d + e); ++s)
                            if (!field_.eq(ab[static_cast<std::size_t>(s)], ba[static_cast<std::size_t>(s)]))
                                return false;
                    }
        return true;
    }

    std::vector<Elt> unit_vector(int d, int i) const {
        std::vector<Elt> v(dim(d), field_.zero());
        v[static_cast<std::size_t>(i)] = field_.one();
        return v;
    }

private:
    F field_;
    int degree_bound_;
    std::vector<std::vector<std::string>> basis_;
    std::map<std::pair<int, int>, std::vector<std::vector<Elt>>> mult_;
};

template <class F>
int piece_dim(const GradedAlgebra<F>& a, int d) {
    return a.dim(d);
}

namespace detail {

// Monomials as exponent vectors; per-degree bases in descending
// lexicographic order on exponents (x^2 before x*y before y^2).
inline void enumerate_monomials(const std::vector<int>& var_degrees, int target, std::size_t var,
                                std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (var == var_degrees.size()) {
        if (target == 0) out.push_back(current);
        return;
    }
    const int w = var_degrees[var];
    const int max_e = target / w;
    for (int e = max_e; e >= 0; --e) {
        current[var] = e;
        enumerate_monomials(var_degrees, target - e * w, var + 1, current, out);
    }
    current[var] = 0;
}

inline std::string monomial_label(const std::vector<std::string>& names, const std::vector<int>& expo) {
    std::string s;
    for (std::size_t v = 0; v < expo.size(); ++v) {
        if (expo[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[v];
        if (expo[v] > 1) s += "^" + std::to_string(expo[v]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace detail

// Free commutative polynomial algebra on named weighted variables, truncated
// at degree D, with degree-lexicographic monomial bases.
template <class F>
GradedAlgebra<F> polynomial_algebra(F field, const std::vector<std::string>& var_names,
                                    const std::vector<int>& var_degrees, int degree_bound) {
    if (var_names.empty()) throw std::domain_error("trivial algebra: no variables");
    if (var_names.size() != var_degrees.size())
        throw std::invalid_argument("variable name/degree count mismatch");
    int min_deg = var_degrees[0];
    for (int w : var_degrees) {
        if (w <= 0) throw std::invalid_argument("variable degrees must be positive");
        min_deg = std::min(min_deg, w);
    }
    if (degree_bound < min_deg) throw std::invalid_argument("degree bound below lowest variable degree");

    using Elt = typename F::Element;
    std::vector<std::vector<std::vector<int>>> monos(static_cast<std::size_t>(degree_bound) + 1);
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(degree_bound) + 1);
    std::vector<std::vector<std::string>> basis(static_cast<std::size_t>(degree_bound) + 1);
    for (int d = 1; d <= degree_bound; ++d) {
        std::vector<int> cur(var_names.size(), 0);
        detail::enumerate_monomials(var_degrees, d, 0, cur, monos[static_cast<std::size_t>(d)]);
        int k = 0;
        for (const auto& m : monos[static_cast<std::size_t>(d)]) {
            index[static_cast<std::size_t>(d)][m] = k++;
            basis[static_cast<std::size_t>(d)].push_back(detail::monomial_label(var_names, m));
        }
    }

    std::map<std::pair<int, int>, std::vector<std::vector<Elt>>> mult;
    for (int d = 1; d <= degree_bound; ++d)
        for (int e = 1; d + e <= degree_bound; ++e) {
            const auto& md = monos[static_cast<std::size_t>(d)];
            const auto& me = monos[static_cast<std::size_t>(e)];
            std::vector<std::vector<Elt>> table;
            table.reserve(md.size() * me.size());
            for (const auto& a : md)
                for (const auto& b : me) {
                    std::vector<int> prod(a.size());
                    for (std::size_t v = 0; v < a.size(); ++v) prod[v] = a[v] + b[v];
                    std::vector<Elt> coords(monos[static_cast<std::size_t>(d + e)].size(), field.zero());
                    coords[static_cast<std::size_t>(index[static_cast<std::size_t>(d + e)].at(prod))] =
                        field.one();
                    table.push_back(std::move(coords));
                }
            mult[{d, e}] = std::move(table);
        }

    return GradedAlgebra<F>(field, degree_bound, std::move(basis), std::move(mult));
}

// Default variable names x1..xn.
template <class F>
GradedAlgebra<F> polynomial_algebra(F field, int var_count, const std::vector<int>& var_degrees,
                                    int degree_bound) {
    if (var_count <= 0) throw std::domain_error("trivial algebra: no variables");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(var_count));
    for (int v = 1; v <= var_count; ++v) names.push_back("x" + std::to_string(v));
    return polynomial_algebra<F>(std::move(field), names, var_degrees, degree_bound);
}

// Quotient by the two-sided homogeneous ideal generated by the relations,
// computed degree by degree: I_d is spanned by the degree-d relations
// together with A_e * I_{d-e} and I_{d-e} * A_e for all e >= 1.  The quotient
// basis in each degree is the echelon complement of the ideal piece, labelled
// by the surviving basis elements of A.
template <class F>
GradedAlgebra<F> quotient_algebra(const GradedAlgebra<F>& a,
                                  const std::vector<HomogeneousElement<F>>& relations) {
    using Elt = typename F::Element;
    const F& k = a.field();
    const int bound = a.degree_bound();

    for (const auto& r : relations) {
        if (r.degree < 1 || r.degree > bound)
            throw std::invalid_argument("relation degree outside (0, degreeBound]");
        if (static_cast<int>(r.coords.size()) != a.dim(r.degree))
            throw std::invalid_argument("relation coordinate length mismatch");
    }

    // ideal[d]: RREF rows spanning I_d inside A_d
    std::vector<Matrix<F>> ideal;
    ideal.reserve(static_cast<std::size_t>(bound) + 1);
    for (int d = 0; d <= bound; ++d) ideal.emplace_back(k, 0, static_cast<std::size_t>(a.dim(d)));

    for (int d = 1; d <= bound; ++d) {
        std::vector<std::vector<Elt>> rows;
        for (const auto& r : relations)
            if (r.degree == d) rows.push_back(r.coords);
        for (int e = 1; e < d; ++e) {
            const Matrix<F>& lower = ideal[static_cast<std::size_t>(d - e)];
            for (std::size_t ri = 0; ri < lower.rows(); ++ri) {
                const auto v = lower.row(ri);
                for (int i = 0; i < a.dim(e); ++i) {
                    rows.push_back(a.product(e, a.unit_vector(e, i), d - e, v));
                    rows.push_back(a.product(d - e, v, e, a.unit_vector(e, i)));
                }
            }
        }
        if (!rows.empty())
            ideal[static_cast<std::size_t>(d)] =
                row_space(Matrix<F>::from_rows(k, static_cast<std::size_t>(a.dim(d)), rows));
    }

    // Surviving (non-pivot) basis indices per degree, and the reduction map
    // A_d -> quotient coordinates.
    std::vector<std::vector<int>> survivors(static_cast<std::size_t>(bound) + 1);
    std::vector<std::vector<std::size_t>> pivots(static_cast<std::size_t>(bound) + 1);
    for (int d = 1; d <= bound; ++d) {
        auto r = rref(ideal[static_cast<std::size_t>(d)]);
        pivots[static_cast<std::size_t>(d)] = r.pivots;
        std::vector<bool> is_pivot(static_cast<std::size_t>(a.dim(d)), false);
        for (auto c : r.pivots) is_pivot[c] = true;
        for (int i = 0; i < a.dim(d); ++i)
            if (!is_pivot[static_cast<std::size_t>(i)]) survivors[static_cast<std::size_t>(d)].push_back(i);
    }

    auto reduce = [&](int d, std::vector<Elt> v) {
        const Matrix<F>& id_rows = ideal[static_cast<std::size_t>(d)];
        const auto& piv = pivots[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < piv.size(); ++i) {
            const Elt c = v[piv[i]];
            if (k.is_zero(c)) continue;
            for (int j = 0; j < a.dim(d); ++j)
                v[static_cast<std::size_t>(j)] =
                    k.sub(v[static_cast<std::size_t>(j)], k.mul(c, id_rows.at(i, static_cast<std::size_t>(j))));
        }
        std::vector<Elt> out;
        out.reserve(survivors[static_cast<std::size_t>(d)].size());
        for (int s : survivors[static_cast<std::size_t>(d)]) out.push_back(v[static_cast<std::size_t>(s)]);
        return out;
    };

    std::vector<std::vector<std::string>> basis(static_cast<std::size_t>(bound) + 1);
    for (int d = 1; d <= bound; ++d)
        for (int s : survivors[static_cast<std::size_t>(d)])
            basis[static_cast<std::size_t>(d)].push_back(a.labels(d)[static_cast<std::size_t>(s)]);

    std::map<std::pair<int, int>, std::vector<std::vector<Elt>>> mult;
    for (int d = 1; d <= bound; ++d)
        for (int e = 1; d + e <= bound; ++e) {
            std::vector<std::vector<Elt>> table;
            table.reserve(survivors[static_cast<std::size_t>(d)].size() *
                          survivors[static_cast<std::size_t>(e)].size());
            for (int i : survivors[static_cast<std::size_t>(d)])
                for (int j : survivors[static_cast<std::size_t>(e)])
                    table.push_back(reduce(d + e, a.product_basis(d, i, e, j)));
            mult[{d, e}] = std::move(table);
        }

    return GradedAlgebra<F>(k, bound, std::move(basis), std::move(mult));
}

}  // namespace mcmod
