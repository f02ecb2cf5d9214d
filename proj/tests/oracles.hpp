#pragma once

// Independent oracles used by the unit and acceptance suites.  These assemble
// the objects they check from first principles (blockwise formulas, basis
// pairs) rather than through the library's generic cochain machinery, so an
// agreement is evidence and not a tautology.

#include "mcmod/cochain.hpp"
#include "mcmod/matrix.hpp"

#include <cstddef>

namespace oracles {

using namespace mcmod;

// Matrix of the twisted differential L^0 -> L^1 at mu, from
//   (d^mu y)(a) = mu(a) y_j - y_i mu(a).
template <class F>
Matrix<F> twisted_d0(const ModulePoint<F>& mu) {
    const auto& a = mu.algebra();
    const auto& dims = mu.dims();
    const F& k = a.field();
    const auto l0 = l_layout(a, dims, 0);
    const auto l1 = l_layout(a, dims, 1);
    Matrix<F> m(k, l1.total, l0.total);
    for (const auto& b1 : l1.blocks) {
        const int j = b1.source, e = b1.comp[0], i = j + e;
        for (std::size_t t = 0; t < b1.tuple_count; ++t) {
            const auto& act = mu.component(j, {e}).mats[t];
            for (std::size_t r = 0; r < b1.rows; ++r)
                for (std::size_t c = 0; c < b1.cols; ++c) {
                    const std::size_t out_row = b1.offset + (t * b1.rows + r) * b1.cols + c;
                    for (std::size_t s = 0; s < b1.cols; ++s) {
                        const std::size_t in = detail::layout_index(l0, j, {}, 0, s, c);
                        m.at(out_row, in) = k.add(m.at(out_row, in), act.at(r, s));
                    }
                    for (std::size_t s = 0; s < b1.rows; ++s) {
                        const std::size_t in = detail::layout_index(l0, i, {}, 0, r, s);
                        m.at(out_row, in) = k.sub(m.at(out_row, in), act.at(s, c));
                    }
                }
        }
    }
    return m;
}

// Matrix of the twisted differential L^1 -> L^2 at mu, from
//   (d^mu t)(a, b) = t(ab) - mu(a) t(b) - t(a) mu(b).
template <class F>
Matrix<F> twisted_d1(const ModulePoint<F>& mu) {
    const auto& a = mu.algebra();
    const auto& dims = mu.dims();
    const F& k = a.field();
    const auto l1 = l_layout(a, dims, 1);
    const auto l2 = l_layout(a, dims, 2);
    Matrix<F> m(k, l2.total, l1.total);
    for (const auto& b2 : l2.blocks) {
        const int j = b2.source, d1 = b2.comp[0], d2 = b2.comp[1];
        const int mid = j + d2;
        for (std::size_t t = 0; t < b2.tuple_count; ++t) {
            const int t1 = static_cast<int>(t) / a.dim(d2);
            const int t2 = static_cast<int>(t) % a.dim(d2);
            const auto& prod = a.product_basis(d1, t1, d2, t2);
            const auto& mu1 = mu.component(mid, {d1}).mats[static_cast<std::size_t>(t1)];
            const auto& mu2 = mu.component(j, {d2}).mats[static_cast<std::size_t>(t2)];
            for (std::size_t r = 0; r < b2.rows; ++r)
                for (std::size_t c = 0; c < b2.cols; ++c) {
                    const std::size_t out_row = b2.offset + (t * b2.rows + r) * b2.cols + c;
                    for (int s = 0; s < a.dim(d1 + d2); ++s)
                        if (!k.is_zero(prod[static_cast<std::size_t>(s)])) {
                            const std::size_t in =
                                detail::layout_index(l1, j, {d1 + d2}, static_cast<std::size_t>(s), r, c);
                            m.at(out_row, in) = k.add(m.at(out_row, in), prod[static_cast<std::size_t>(s)]);
                        }
                    for (std::size_t s = 0; s < mu1.cols(); ++s) {
                        const std::size_t in =
                            detail::layout_index(l1, j, {d2}, static_cast<std::size_t>(t2), s, c);
                        m.at(out_row, in) = k.sub(m.at(out_row, in), mu1.at(r, s));
                    }
                    for (std::size_t s = 0; s < mu2.rows(); ++s) {
                        const std::size_t in =
                            detail::layout_index(l1, mid, {d1}, static_cast<std::size_t>(t1), r, s);
                        m.at(out_row, in) = k.sub(m.at(out_row, in), mu2.at(s, c));
                    }
                }
        }
    }
    return m;
}

// Is mu an action of the augmentation ideal, judged pair by pair on the
// algebra basis: mu(ab)|_j = mu(a)|_{j+e} mu(b)|_j for every pair and source.
template <class F>
bool is_action_by_basis_pairs(const ModulePoint<F>& mu) {
    const auto& a = mu.algebra();
    const auto& dims = mu.dims();
    const F& k = a.field();
    const int window = dims.hi() - dims.lo;
    for (int d1 = 1; d1 <= window; ++d1)
        for (int d2 = 1; d1 + d2 <= window; ++d2)
            for (int j = dims.lo; j + d1 + d2 <= dims.hi(); ++j)
                for (int t1 = 0; t1 < a.dim(d1); ++t1)
                    for (int t2 = 0; t2 < a.dim(d2); ++t2) {
                        const auto& prod = a.product_basis(d1, t1, d2, t2);
                        Matrix<F> lhs(k, static_cast<std::size_t>(dims.at(j + d1 + d2)),
                                      static_cast<std::size_t>(dims.at(j)));
                        for (int s = 0; s < a.dim(d1 + d2); ++s)
                            if (!k.is_zero(prod[static_cast<std::size_t>(s)]))
                                lhs = lhs.add(mu.component(j, {d1 + d2})
                                                  .mats[static_cast<std::size_t>(s)]
                                                  .scale(prod[static_cast<std::size_t>(s)]));
                        const auto rhs =
                            mu.component(j + d2, {d1})
                                .mats[static_cast<std::size_t>(t1)]
                                .mul(mu.component(j, {d2}).mats[static_cast<std::size_t>(t2)]);
                        if (!(lhs == rhs)) return false;
                    }
    return true;
}

}  // namespace oracles
