#pragma once

// The derived structure attached to (A, V): the free graded-commutative
// algebra on the shifted duals of the L^n (n >= 1) with the derivation
// q = q0 + q1 + q2, the Maurer-Cartan ideal cutting the module locus out of
// L^1, and the cohomology of the twisted complex (L, d^mu) at a module point,
// which computes graded Hom/Ext of the module with itself inside the window.
//
// The presentation is global over L^1: the coordinates on L^1 are the
// degree-zero generators, so the q-image of an L^2 dual carries the
// corresponding Maurer-Cartan polynomial as its scalar part.

#include "mcmod/cochain.hpp"
#include "mcmod/gpoly.hpp"
#include "mcmod/graded_algebra.hpp"
#include "mcmod/matrix.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcmod {

namespace detail {

inline std::string level_letter(int level) {
    switch (level) {
        case 1: return "u";
        case 2: return "v";
        case 3: return "w";
        default: return "g" + std::to_string(level) + "_";
    }
}

}  // namespace detail

// One generator per dual basis vector of L^n for 1 <= n <= q - p, in layout
// order, with homological degree 1 - n.
template <class F>
std::shared_ptr<GeneratorTable> make_generator_table(const GradedAlgebra<F>& a,
                                                     const DimensionVector& dims) {
    auto table = std::make_shared<GeneratorTable>();
    const int window = dims.hi() - dims.lo;
    for (int n = 1; n <= window; ++n) {
        const auto layout = l_layout(a, dims, n);
        table->level_offset[n] = table->vars.size();
        table->level_count[n] = layout.total;
        std::size_t index_in_level = 0;
        for (const auto& block : layout.blocks) {
            const auto radices = [&] {
                std::vector<std::size_t> r;
                for (int d : block.comp) r.push_back(static_cast<std::size_t>(a.dim(d)));
                return r;
            }();
            for (std::size_t t = 0; t < block.tuple_count; ++t) {
                const auto tuple = detail::decode_tuple(t, radices);
                for (std::size_t r = 0; r < block.rows; ++r)
                    for (std::size_t c = 0; c < block.cols; ++c) {
                        GeneratorInfo g;
                        g.name = detail::level_letter(n) + std::to_string(index_in_level);
                        g.hdeg = 1 - n;
                        g.level = n;
                        g.source = block.source;
                        g.comp = block.comp;
                        for (std::size_t s = 0; s < tuple.size(); ++s) {
                            g.tuple.push_back(static_cast<int>(tuple[s]));
                            g.tuple_labels.push_back(
                                a.labels(block.comp[s])[tuple[s]]);
                        }
                        g.row = r;
                        g.col = c;
                        ++index_in_level;
                        table->vars.push_back(std::move(g));
                    }
            }
        }
    }
    return table;
}

namespace detail {

// Coordinate index of (source, comp, tuple, r, c) within the layout of L^n.
inline std::size_t layout_index(const LLayout& layout, int source, const std::vector<int>& comp,
                                std::size_t tuple, std::size_t r, std::size_t c) {
    for (const auto& b : layout.blocks)
        if (b.source == source && b.comp == comp)
            return b.offset + (tuple * b.rows + r) * b.cols + c;
    throw std::out_of_range("no such layout block");
}

}  // namespace detail

// The quadratic equations cutting the Maurer-Cartan locus out of L^1, one per
// dual basis vector of L^2: the (a, b) coordinate of mu(ab) - mu(a) mu(b)
// expanded symbolically in the coordinates of L^1.  Built directly from the
// residual formula; evaluating at a concrete mu reproduces mc_residual.
template <class F>
struct McIdeal {
    std::shared_ptr<const GeneratorTable> table;
    std::vector<GPoly<F>> generators;  // in L^2 layout order
};

template <class F>
McIdeal<F> mc_ideal(const std::shared_ptr<const GradedAlgebra<F>>& alg, const DimensionVector& dims) {
    const GradedAlgebra<F>& a = *alg;
    const F& k = a.field();
    McIdeal<F> out;
    out.table = make_generator_table(a, dims);
    const int window = dims.hi() - dims.lo;
    if (window < 2) return out;  // L^2 = 0

    const auto l1 = l_layout(a, dims, 1);
    const auto l2 = l_layout(a, dims, 2);
    auto var = [&](std::size_t coord) {
        return GPoly<F>::variable(k, out.table, coord);  // level-1 ids start at 0
    };

    for (const auto& block : l2.blocks) {
        const int d1 = block.comp[0], d2 = block.comp[1];
        const int j = block.source;
        const int mid = j + d2;
        for (std::size_t t = 0; t < block.tuple_count; ++t) {
            const int t1 = static_cast<int>(t) / a.dim(d2);
            const int t2 = static_cast<int>(t) % a.dim(d2);
            const auto& prod = a.product_basis(d1, t1, d2, t2);
            for (std::size_t r = 0; r < block.rows; ++r)
                for (std::size_t c = 0; c < block.cols; ++c) {
                    GPoly<F> p(k, out.table);
                    for (int s = 0; s < a.dim(d1 + d2); ++s)
                        if (!k.is_zero(prod[static_cast<std::size_t>(s)]))
                            p = p.add(var(detail::layout_index(l1, j, {d1 + d2},
                                                               static_cast<std::size_t>(s), r, c))
                                          .scale(prod[static_cast<std::size_t>(s)]));
                    const std::size_t mid_dim = static_cast<std::size_t>(dims.at(mid));
                    for (std::size_t m = 0; m < mid_dim; ++m) {
                        auto quad = var(detail::layout_index(l1, mid, {d1}, static_cast<std::size_t>(t1), r, m))
                                        .mul(var(detail::layout_index(l1, j, {d2}, static_cast<std::size_t>(t2), m, c)));
                        p = p.sub(quad);
                    }
                    out.generators.push_back(std::move(p));
                }
        }
    }
    return out;
}

// Free graded-commutative presentation with the derivation q.
template <class F>
struct DGAlgebraPresentation {
    std::shared_ptr<const GradedAlgebra<F>> algebra;
    DimensionVector dims;
    std::shared_ptr<const GeneratorTable> table;
    std::vector<GPoly<F>> q_images;  // one per generator, in table order
};

// q on the dual generator of a basis vector e_c of L^m:
//
//   q(xi^c) = (-1)^m [ sum_a  D_{c,a} xi^a
//                    + sum_{i+j=m} sum_{a,b} (-1)^{(1-i)j} C_{c,(a,b)} xi^a xi^b ],
//
// where D is the matrix of d : L^{m-1} -> L^m and C_{c,(a,b)} is the e_c
// coefficient of the associative product e_a o e_b (a in L^i, b in L^j).
// This is the coordinate form of the structure equation for the universal
// degree-one element, written with the o-product so that no division by two
// occurs and the construction works in every characteristic.
template <class F>
DGAlgebraPresentation<F> build_dg_presentation(const std::shared_ptr<const GradedAlgebra<F>>& alg,
                                               const DimensionVector& dims) {
    const GradedAlgebra<F>& a = *alg;
    const F& k = a.field();
    DGAlgebraPresentation<F> pres;
    pres.algebra = alg;
    pres.dims = dims;
    pres.table = make_generator_table(a, dims);
    pres.q_images.assign(pres.table->size(), GPoly<F>::zero(k, pres.table));
    const int window = dims.hi() - dims.lo;

    // basis cochains per level, constructed once
    std::vector<std::vector<Cochain<F>>> basis(static_cast<std::size_t>(window) + 1);
    std::vector<std::size_t> level_dim(static_cast<std::size_t>(window) + 1, 0);
    for (int n = 1; n <= window; ++n) {
        const std::size_t dim = static_cast<std::size_t>(l_dimension(a, dims, n));
        level_dim[static_cast<std::size_t>(n)] = dim;
        basis[static_cast<std::size_t>(n)].reserve(dim);
        for (std::size_t idx = 0; idx < dim; ++idx) {
            std::vector<typename F::Element> coords(dim, k.zero());
            coords[idx] = k.one();
            basis[static_cast<std::size_t>(n)].push_back(unflatten(alg, dims, n, coords));
        }
    }

    auto gen_id = [&](int level, std::size_t idx) {
        return pres.table->level_offset.at(level) + idx;
    };

    for (int m = 2; m <= window; ++m) {
        const std::size_t dim_m = level_dim[static_cast<std::size_t>(m)];
        std::vector<GPoly<F>> images(dim_m, GPoly<F>::zero(k, pres.table));

        // linear part: dual of d : L^{m-1} -> L^m
        for (std::size_t aidx = 0; aidx < level_dim[static_cast<std::size_t>(m - 1)]; ++aidx) {
            const auto col = flatten(differential(basis[static_cast<std::size_t>(m - 1)][aidx]));
            for (std::size_t c = 0; c < dim_m; ++c)
                if (!k.is_zero(col[c]))
                    images[c] = images[c].add(
                        GPoly<F>::variable(k, pres.table, gen_id(m - 1, aidx)).scale(col[c]));
        }

        // quadratic part: dual of the o-product, with the Koszul prefactor
        for (int i = 1; i <= m - 1; ++i) {
            const int j = m - i;
            const bool negate = (((1 - i) * j) % 2) != 0;
            for (std::size_t aidx = 0; aidx < level_dim[static_cast<std::size_t>(i)]; ++aidx)
                for (std::size_t bidx = 0; bidx < level_dim[static_cast<std::size_t>(j)]; ++bidx) {
                    const auto col = flatten(
                        compose(basis[static_cast<std::size_t>(i)][aidx], basis[static_cast<std::size_t>(j)][bidx]));
                    for (std::size_t c = 0; c < dim_m; ++c) {
                        if (k.is_zero(col[c])) continue;
                        auto mono = GPoly<F>::variable(k, pres.table, gen_id(i, aidx))
                                        .mul(GPoly<F>::variable(k, pres.table, gen_id(j, bidx)));
                        auto coeff = negate ? k.neg(col[c]) : col[c];
                        images[c] = images[c].add(mono.scale(coeff));
                    }
                }
        }

        const bool level_negate = (m % 2) != 0;
        for (std::size_t c = 0; c < dim_m; ++c) {
            pres.q_images[gen_id(m, c)] =
                level_negate ? images[c].scale(k.neg(k.one())) : images[c];
        }
    }
    return pres;
}

// Apply q twice to every generator, extending as an odd derivation; true iff
// all the results vanish identically.
template <class F>
bool verify_q_squared(const DGAlgebraPresentation<F>& pres) {
    for (std::size_t g = 0; g < pres.table->size(); ++g) {
        const auto once = pres.q_images[g];
        if (!apply_derivation(once, pres.q_images).is_zero()) return false;
    }
    return true;
}

// Every q-image must be homogeneous of degree hdeg(generator) + 1.
template <class F>
bool presentation_degrees_consistent(const DGAlgebraPresentation<F>& pres) {
    for (std::size_t g = 0; g < pres.table->size(); ++g) {
        if (pres.q_images[g].is_zero()) continue;
        try {
            if (pres.q_images[g].homogeneous_degree(pres.table->vars[g].hdeg + 1) !=
                pres.table->vars[g].hdeg + 1)
                return false;
        } catch (const std::domain_error&) {
            return false;
        }
    }
    return true;
}

// ---- tangent cohomology ------------------------------------------------------

struct CohomologyReport {
    int window_lo = 0;
    int window_hi = 0;
    std::vector<int> alpha;
    std::vector<long long> l_dims;  // dim L^n, n = 0..q-p
    std::vector<long long> dims;    // dim H^n, n = 0..q-p
    bool augmented = true;

    long long euler() const {
        long long e = 0;
        for (std::size_t n = 0; n < dims.size(); ++n) e += (n % 2 ? -1 : 1) * dims[n];
        return e;
    }
};

// Cohomology of (L, d^mu) by exact rank computation.  The augmented variant
// divides the degree-0 kernel by the scalars, so H^0 counts graded module
// endomorphisms modulo the identity and H^i (i >= 1) are the graded Ext
// spaces of the module with itself, inside the window.
template <class F>
CohomologyReport tangent_cohomology(const ModulePoint<F>& mu, bool augmented = true) {
    if (mu.degree() != 1) throw std::invalid_argument("module point must have degree 1");
    if (!is_module(mu)) throw std::domain_error("tangent complex requires a Maurer-Cartan point");

    const GradedAlgebra<F>& a = mu.algebra();
    const F& k = a.field();
    const DimensionVector& dims = mu.dims();
    const int window = dims.hi() - dims.lo;

    CohomologyReport report;
    report.window_lo = dims.lo;
    report.window_hi = dims.hi();
    report.alpha = dims.dims;
    report.augmented = augmented;

    std::vector<long long> ldims(static_cast<std::size_t>(window) + 1);
    for (int n = 0; n <= window; ++n) ldims[static_cast<std::size_t>(n)] = l_dimension(a, dims, n);
    report.l_dims = ldims;

    // ranks of d^mu : L^n -> L^{n+1}
    std::vector<std::size_t> ranks(static_cast<std::size_t>(window) + 1, 0);
    for (int n = 0; n < window; ++n) {
        const std::size_t cols = static_cast<std::size_t>(ldims[static_cast<std::size_t>(n)]);
        const std::size_t rows = static_cast<std::size_t>(ldims[static_cast<std::size_t>(n) + 1]);
        Matrix<F> mat(k, rows, cols);
        for (std::size_t idx = 0; idx < cols; ++idx) {
            std::vector<typename F::Element> coords(cols, k.zero());
            coords[idx] = k.one();
            auto image = flatten(twisted_differential(mu, unflatten(mu.algebra_ptr(), dims, n, coords)));
            for (std::size_t r = 0; r < rows; ++r) mat.at(r, idx) = image[r];
        }
        ranks[static_cast<std::size_t>(n)] = rank(mat);
    }

    report.dims.resize(static_cast<std::size_t>(window) + 1);
    for (int n = 0; n <= window; ++n) {
        long long h = ldims[static_cast<std::size_t>(n)];
        if (n < window) h -= static_cast<long long>(ranks[static_cast<std::size_t>(n)]);
        if (n > 0) h -= static_cast<long long>(ranks[static_cast<std::size_t>(n) - 1]);
        report.dims[static_cast<std::size_t>(n)] = h;
    }
    if (augmented) report.dims[0] -= 1;  // the scalars always survive in degree 0
    return report;
}

// (dim Ext^1, dim Ext^2) of the module with itself, inside the window.
template <class F>
std::pair<long long, long long> deformation_spaces(const ModulePoint<F>& mu) {
    auto report = tangent_cohomology(mu, true);
    const long long t = report.dims.size() > 1 ? report.dims[1] : 0;
    const long long o = report.dims.size() > 2 ? report.dims[2] : 0;
    return {t, o};
}

}  // namespace mcmod
