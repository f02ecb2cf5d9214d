#pragma once

// Theta-stability of module points: characters of the gauge group, exhaustive
// enumeration of graded submodules over prime fields, and verdicts in the
// submodule-pairing form: mu is (semi)stable for the linearization theta iff
// every proper nonzero graded submodule W has theta(W) (>=) 0.
//
// Deciding stability over the rationals in general is out of reach here; the
// decision procedure is exhaustive and exact over each requested prime field,
// and instability witnesses are lifted entrywise and re-verified over the
// rationals.  Stable/semistable verdicts backed only by finite fields are
// labelled as evidence, never as proofs.

#include "mcmod/cochain.hpp"
#include "mcmod/fields.hpp"
#include "mcmod/graded_algebra.hpp"
#include "mcmod/matrix.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcmod {

// ---- characters --------------------------------------------------------------

// Integer weights theta_p..theta_q with sum theta_i alpha_i = 0.
struct Character {
    int lo = 0;
    std::vector<long long> weights;

    Character(const DimensionVector& alpha, std::vector<long long> w) : lo(alpha.lo), weights(std::move(w)) {
        if (weights.size() != static_cast<std::size_t>(alpha.length()))
            throw std::invalid_argument("character length mismatch");
        long long pairing = 0;
        for (int j = alpha.lo; j <= alpha.hi(); ++j)
            pairing += weights[static_cast<std::size_t>(j - alpha.lo)] * alpha.at(j);
        if (pairing != 0) throw std::invalid_argument("character does not annihilate the dimension vector");
    }

    long long at(int j) const { return weights[static_cast<std::size_t>(j - lo)]; }
};

inline long long theta_pairing(const Character& theta, const std::vector<int>& profile) {
    if (profile.size() != theta.weights.size()) throw std::invalid_argument("profile length mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) s += theta.weights[i] * profile[i];
    return s;
}

// theta_p = -alpha_q, theta_q = alpha_p, zero elsewhere.
inline Character extremal_character(const DimensionVector& alpha) {
    if (alpha.hi() == alpha.lo) throw std::domain_error("window of length 0 has no extremal character");
    std::vector<long long> w(static_cast<std::size_t>(alpha.length()), 0);
    w.front() = -alpha.at(alpha.hi());
    w.back() = alpha.at(alpha.lo);
    return Character(alpha, std::move(w));
}

// The determinant of the gauge action on L^1:
//   theta_i = sum_{j<i} dim A_{i-j} alpha_j - sum_{j>i} dim A_{j-i} alpha_j.
template <class F>
Character determinant_character(const GradedAlgebra<F>& a, const DimensionVector& alpha) {
    if (alpha.hi() == alpha.lo) throw std::domain_error("window of length 0 has no determinant character");
    if (a.degree_bound() < alpha.hi() - alpha.lo)
        throw std::invalid_argument("algebra degree bound below window length");
    std::vector<long long> w;
    for (int i = alpha.lo; i <= alpha.hi(); ++i) {
        long long t = 0;
        for (int j = alpha.lo; j < i; ++j) t += static_cast<long long>(a.dim(i - j)) * alpha.at(j);
        for (int j = i + 1; j <= alpha.hi(); ++j) t -= static_cast<long long>(a.dim(j - i)) * alpha.at(j);
        w.push_back(t);
    }
    return Character(alpha, std::move(w));
}

namespace detail {

// (g, x, y) with a x + b y = g >= 0, textbook iterative form.
inline std::tuple<long long, long long, long long> extended_gcd(long long a, long long b) {
    long long old_r = a, r = b;
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        const long long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

}  // namespace detail

// Bezout weights n_p..n_q with sum n_i alpha_i = 1, by left-to-right folding
// of the extended gcd.  Requires gcd(alpha) = 1.
inline std::vector<long long> coprime_character(const DimensionVector& alpha) {
    std::vector<long long> n(static_cast<std::size_t>(alpha.length()), 0);
    long long g = 0;
    for (int i = alpha.lo; i <= alpha.hi(); ++i) {
        auto [g2, u, v] = detail::extended_gcd(g, alpha.at(i));
        for (std::size_t j = 0; j < static_cast<std::size_t>(i - alpha.lo); ++j) n[j] *= u;
        n[static_cast<std::size_t>(i - alpha.lo)] = v;
        g = g2;
    }
    if (g != 1) throw std::domain_error("dimension vector not primitive");
    return n;
}

// ---- submodules ----------------------------------------------------------------

// A graded subspace W of V, one RREF basis matrix per degree (rows are basis
// vectors).  A witness additionally satisfies closure under the action and
// 0 < dim W < dim V; both are checked by the verifier below.
template <class F>
struct SubmoduleWitness {
    DimensionVector ambient;
    std::vector<Matrix<F>> bases;  // indexed by degree - ambient.lo

    std::vector<int> profile() const {
        std::vector<int> p;
        p.reserve(bases.size());
        for (const auto& b : bases) p.push_back(static_cast<int>(b.rows()));
        return p;
    }

    int total_dim() const {
        int t = 0;
        for (const auto& b : bases) t += static_cast<int>(b.rows());
        return t;
    }

    // The type invariant: one basis per degree, ambient widths, proper and
    // nonzero.  Closure is checked separately against a module point.
    void validate() const {
        if (bases.size() != static_cast<std::size_t>(ambient.length()))
            throw std::invalid_argument("witness needs one basis per degree");
        for (int j = ambient.lo; j <= ambient.hi(); ++j)
            if (bases[static_cast<std::size_t>(j - ambient.lo)].cols() !=
                static_cast<std::size_t>(ambient.at(j)))
                throw std::invalid_argument("witness basis has wrong ambient dimension");
        const int t = total_dim();
        if (t <= 0 || t >= ambient.total())
            throw std::invalid_argument("witness must be a proper nonzero subspace");
    }
};

// Closure of per-degree seed row spaces under the action: one ascending pass,
// since the action strictly raises degree.
template <class F>
std::vector<Matrix<F>> module_closure(const ModulePoint<F>& mu, const std::vector<Matrix<F>>& seeds) {
    const DimensionVector& dims = mu.dims();
    const GradedAlgebra<F>& a = mu.algebra();
    const F& k = a.field();
    if (seeds.size() != static_cast<std::size_t>(dims.length()))
        throw std::invalid_argument("one seed per degree required");

    std::vector<Matrix<F>> spans;
    for (int i = dims.lo; i <= dims.hi(); ++i) {
        std::vector<std::vector<typename F::Element>> rows;
        const Matrix<F>& seed = seeds[static_cast<std::size_t>(i - dims.lo)];
        if (seed.cols() != static_cast<std::size_t>(dims.at(i)))
            throw std::invalid_argument("seed has wrong ambient dimension");
        for (std::size_t r = 0; r < seed.rows(); ++r) rows.push_back(seed.row(r));
        for (int j = dims.lo; j < i; ++j) {
            const int e = i - j;
            if (e > a.degree_bound()) continue;
            const Matrix<F>& lower = spans[static_cast<std::size_t>(j - dims.lo)];
            for (int t = 0; t < a.dim(e); ++t) {
                const auto& act = mu.component(j, {e}).mats[static_cast<std::size_t>(t)];
                for (std::size_t r = 0; r < lower.rows(); ++r) rows.push_back(act.apply(lower.row(r)));
            }
        }
        spans.push_back(rows.empty() ? Matrix<F>(k, 0, static_cast<std::size_t>(dims.at(i)))
                                     : row_space(Matrix<F>::from_rows(k, static_cast<std::size_t>(dims.at(i)), rows)));
    }
    return spans;
}

// Exact containment mu(a)(W_j) <= W_i for all basis elements and degrees.
template <class F>
bool witness_closed(const ModulePoint<F>& mu, const SubmoduleWitness<F>& w) {
    const DimensionVector& dims = mu.dims();
    if (!(w.ambient == dims)) throw std::invalid_argument("witness ambient dims mismatch");
    const GradedAlgebra<F>& a = mu.algebra();
    for (int j = dims.lo; j <= dims.hi(); ++j) {
        const Matrix<F>& wj = w.bases[static_cast<std::size_t>(j - dims.lo)];
        for (int i = j + 1; i <= dims.hi(); ++i) {
            const int e = i - j;
            const Matrix<F>& wi = w.bases[static_cast<std::size_t>(i - dims.lo)];
            for (int t = 0; t < a.dim(e); ++t) {
                const auto& act = mu.component(j, {e}).mats[static_cast<std::size_t>(t)];
                for (std::size_t r = 0; r < wj.rows(); ++r) {
                    auto img = Matrix<F>::from_rows(a.field(), static_cast<std::size_t>(dims.at(i)),
                                                    {act.apply(wj.row(r))});
                    if (!row_space_contains(wi, img)) return false;
                }
            }
        }
    }
    return true;
}

// ---- subspace enumeration over prime fields -----------------------------------

namespace detail {

// All subspaces of F_p^m as RREF matrices: dimension ascending, pivot-column
// sets in lexicographic order, free entries counting in base p.
inline std::vector<Matrix<PrimeField>> all_subspaces(const PrimeField& k, std::size_t m) {
    std::vector<Matrix<PrimeField>> out;
    const std::uint64_t p = k.modulus();
    for (std::size_t dim = 0; dim <= m; ++dim) {
        std::vector<std::size_t> comb(dim);
        for (std::size_t i = 0; i < dim; ++i) comb[i] = i;
        for (;;) {
            // free positions: (r, c) with c > comb[r] and c not a pivot
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = comb[r] + 1; c < m; ++c) {
                    bool pivot = false;
                    for (std::size_t x : comb)
                        if (x == c) pivot = true;
                    if (!pivot) free_pos.emplace_back(r, c);
                }
            std::uint64_t codes = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i) codes *= p;
            for (std::uint64_t code = 0; code < codes; ++code) {
                Matrix<PrimeField> mat(k, dim, m);
                for (std::size_t r = 0; r < dim; ++r) mat.at(r, comb[r]) = 1;
                std::uint64_t rest = code;
                for (const auto& [r, c] : free_pos) {
                    mat.at(r, c) = rest % p;
                    rest /= p;
                }
                out.push_back(std::move(mat));
            }
            // next combination in lex order
            if (dim == 0) break;
            std::size_t i = dim;
            while (i > 0 && comb[i - 1] == m - dim + (i - 1)) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < dim; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

// All subspaces W with F <= W <= F_p^m, via subspaces of the complement
// coordinates of the RREF of F.
inline std::vector<Matrix<PrimeField>> subspaces_containing(const PrimeField& k, std::size_t m,
                                                            const Matrix<PrimeField>& f_rref,
                                                            const std::vector<std::size_t>& f_pivots) {
    std::vector<std::size_t> complement;
    for (std::size_t c = 0; c < m; ++c) {
        bool pivot = false;
        for (std::size_t x : f_pivots)
            if (x == c) pivot = true;
        if (!pivot) complement.push_back(c);
    }
    std::vector<Matrix<PrimeField>> out;
    for (const auto& u : all_subspaces(k, complement.size())) {
        Matrix<PrimeField> lifted(k, f_rref.rows() + u.rows(), m);
        for (std::size_t r = 0; r < f_rref.rows(); ++r)
            for (std::size_t c = 0; c < m; ++c) lifted.at(r, c) = f_rref.at(r, c);
        for (std::size_t r = 0; r < u.rows(); ++r)
            for (std::size_t c = 0; c < complement.size(); ++c)
                lifted.at(f_rref.rows() + r, complement[c]) = u.at(r, c);
        out.push_back(row_space(lifted));
    }
    return out;
}

inline BigInt subspace_count(std::uint32_t p, int m) {
    BigInt total = 0;
    for (int k = 0; k <= m; ++k) {
        BigInt num = 1, den = 1;
        for (int i = 0; i < k; ++i) {
            num *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m - i)) - 1;
            den *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(i + 1)) - 1;
        }
        total += num / den;
    }
    return total;
}

}  // namespace detail

// Upper bound on the number of graded subspaces scanned for the given module.
inline BigInt submodule_scan_bound(std::uint32_t p, const DimensionVector& dims) {
    BigInt bound = 1;
    for (int j = dims.lo; j <= dims.hi(); ++j) bound *= detail::subspace_count(p, dims.at(j));
    return bound;
}

// Visit every proper nonzero graded submodule of (V, mu) exactly once, in
// canonical order: choose W_p by echelon enumeration, then at each higher
// degree enumerate the subspaces containing the span forced by closure.
template <class Visitor>
void enumerate_submodules(const ModulePoint<PrimeField>& mu, std::size_t budget, Visitor&& visit) {
    const DimensionVector& dims = mu.dims();
    const PrimeField& k = mu.field();
    if (static_cast<std::size_t>(dims.total()) > budget)
        throw std::domain_error("submodule enumeration budget exceeded: total dimension " +
                                std::to_string(dims.total()) + " > " + std::to_string(budget) +
                                "; scan bound " + submodule_scan_bound(k.modulus(), dims).str() +
                                " subspaces");
    if (!is_module(mu)) throw std::domain_error("submodule enumeration requires a module point");
    const GradedAlgebra<PrimeField>& a = mu.algebra();
    const int total = dims.total();

    std::vector<Matrix<PrimeField>> chosen;
    auto recurse = [&](auto&& self, int degree, int dim_so_far) -> void {
        if (degree > dims.hi()) {
            if (dim_so_far > 0 && dim_so_far < total) {
                SubmoduleWitness<PrimeField> w;
                w.ambient = dims;
                w.bases = chosen;
                visit(static_cast<const SubmoduleWitness<PrimeField>&>(w));
            }
            return;
        }
        // span forced by closure from the lower degrees
        std::vector<std::vector<PrimeField::Element>> forced_rows;
        for (int j = dims.lo; j < degree; ++j) {
            const int e = degree - j;
            if (e > a.degree_bound()) continue;
            const auto& w_j = chosen[static_cast<std::size_t>(j - dims.lo)];
            for (int t = 0; t < a.dim(e); ++t) {
                const auto& act = mu.component(j, {e}).mats[static_cast<std::size_t>(t)];
                for (std::size_t r = 0; r < w_j.rows(); ++r) forced_rows.push_back(act.apply(w_j.row(r)));
            }
        }
        const std::size_t m = static_cast<std::size_t>(dims.at(degree));
        Matrix<PrimeField> forced =
            forced_rows.empty() ? Matrix<PrimeField>(k, 0, m)
                                : row_space(Matrix<PrimeField>::from_rows(k, m, forced_rows));
        auto fr = rref(forced);
        for (auto& w_i : detail::subspaces_containing(k, m, fr.mat, fr.pivots)) {
            chosen.push_back(std::move(w_i));
            self(self, degree + 1, dim_so_far + static_cast<int>(chosen.back().rows()));
            chosen.pop_back();
        }
    };
    recurse(recurse, dims.lo, 0);
}

inline std::vector<SubmoduleWitness<PrimeField>> enumerate_submodules(const ModulePoint<PrimeField>& mu,
                                                                      std::size_t budget = 10) {
    std::vector<SubmoduleWitness<PrimeField>> out;
    enumerate_submodules(mu, budget, [&](const SubmoduleWitness<PrimeField>& w) { out.push_back(w); });
    return out;
}

// ---- verdicts ------------------------------------------------------------------

enum class StabilityStatus { Unstable, StrictlySemistable, Stable };

inline std::string to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Unstable: return "Unstable";
        case StabilityStatus::StrictlySemistable: return "StrictlySemistable";
        default: return "Stable";
    }
}

// One exhaustive scan over a prime field.
struct FieldScan {
    std::uint32_t p = 0;
    StabilityStatus status = StabilityStatus::Stable;
    long long min_theta = 0;
    std::size_t submodule_count = 0;
    std::optional<SubmoduleWitness<PrimeField>> witness;  // first negative, else first zero
};

inline FieldScan scan_stability(const ModulePoint<PrimeField>& mu, const Character& theta,
                                std::size_t budget = 10) {
    if (theta.weights.size() != static_cast<std::size_t>(mu.dims().length()) || theta.lo != mu.dims().lo)
        throw std::invalid_argument("character window mismatch");
    FieldScan scan;
    scan.p = mu.field().modulus();
    bool any = false;
    std::optional<SubmoduleWitness<PrimeField>> first_negative, first_zero;
    enumerate_submodules(mu, budget, [&](const SubmoduleWitness<PrimeField>& w) {
        ++scan.submodule_count;
        const long long t = theta_pairing(theta, w.profile());
        if (!any || t < scan.min_theta) scan.min_theta = t;
        any = true;
        if (t < 0 && !first_negative) first_negative = w;
        if (t == 0 && !first_zero) first_zero = w;
    });
    if (!any) {
        // no proper nonzero submodules at all: stable vacuously
        scan.status = StabilityStatus::Stable;
        scan.min_theta = 0;
        return scan;
    }
    if (scan.min_theta < 0) {
        scan.status = StabilityStatus::Unstable;
        scan.witness = first_negative;
    } else if (scan.min_theta == 0) {
        scan.status = StabilityStatus::StrictlySemistable;
        scan.witness = first_zero;
    } else {
        scan.status = StabilityStatus::Stable;
    }
    return scan;
}

enum class StabilityMode { ExactLift, FiniteField };

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Stable;
    bool exact_rational = false;  // certificate level; otherwise finite-field evidence
    std::vector<std::uint32_t> evidence_primes;
    std::optional<SubmoduleWitness<RationalField>> rational_witness;
    std::vector<FieldScan> scans;
    std::string note;
};

// ---- reduction mod p and witness lifting ----------------------------------------

inline PrimeField::Element reduce_rational(const PrimeField& k, const BigRational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    const BigInt p(k.modulus());
    if (den % p == 0)
        throw std::domain_error("cannot reduce " + v.str() + " modulo " + std::to_string(k.modulus()));
    BigInt n = num % p;
    if (n < 0) n += p;
    BigInt d = den % p;
    return k.mul(static_cast<PrimeField::Element>(n), k.inv(static_cast<PrimeField::Element>(d)));
}

inline GradedAlgebra<PrimeField> reduce_algebra(const GradedAlgebra<RationalField>& a, std::uint32_t p) {
    PrimeField k(p);
    std::vector<std::vector<std::string>> basis(static_cast<std::size_t>(a.degree_bound()) + 1);
    for (int d = 1; d <= a.degree_bound(); ++d) basis[static_cast<std::size_t>(d)] = a.labels(d);
    std::map<std::pair<int, int>, std::vector<std::vector<PrimeField::Element>>> mult;
    for (int d = 1; d <= a.degree_bound(); ++d)
        for (int e = 1; d + e <= a.degree_bound(); ++e) {
            std::vector<std::vector<PrimeField::Element>> table;
            for (int i = 0; i < a.dim(d); ++i)
                for (int j = 0; j < a.dim(e); ++j) {
                    const auto& src = a.product_basis(d, i, e, j);
                    std::vector<PrimeField::Element> row;
                    row.reserve(src.size());
                    for (const auto& v : src) row.push_back(reduce_rational(k, v));
                    table.push_back(std::move(row));
                }
            mult[{d, e}] = std::move(table);
        }
    return GradedAlgebra<PrimeField>(k, a.degree_bound(), std::move(basis), std::move(mult));
}

inline ModulePoint<PrimeField> reduce_module(const ModulePoint<RationalField>& mu,
                                             const std::shared_ptr<const GradedAlgebra<PrimeField>>& alg_p) {
    const PrimeField& k = alg_p->field();
    ModulePoint<PrimeField> out(alg_p, mu.dims(), mu.degree());
    auto& comps = out.components();
    const auto& src = mu.components();
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t t = 0; t < comps[c].mats.size(); ++t)
            for (std::size_t r = 0; r < comps[c].mats[t].rows(); ++r)
                for (std::size_t cc = 0; cc < comps[c].mats[t].cols(); ++cc)
                    comps[c].mats[t].at(r, cc) = reduce_rational(k, src[c].mats[t].at(r, cc));
    return out;
}

// Entrywise lift to integers in [0, p); the RREF shape survives verbatim.
inline SubmoduleWitness<RationalField> lift_witness(const SubmoduleWitness<PrimeField>& w) {
    RationalField q;
    SubmoduleWitness<RationalField> out;
    out.ambient = w.ambient;
    for (const auto& b : w.bases) {
        Matrix<RationalField> m(q, b.rows(), b.cols());
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                m.at(r, c) = q.from_long(static_cast<long long>(b.at(r, c)));
        out.bases.push_back(std::move(m));
    }
    return out;
}

// Exact closure check and pairing value for a rational witness.
inline std::pair<bool, long long> verify_witness_rational(const ModulePoint<RationalField>& mu,
                                                          const SubmoduleWitness<RationalField>& w,
                                                          const Character& theta) {
    return {witness_closed(mu, w), theta_pairing(theta, w.profile())};
}

// Decide stability of a rational module point over the requested primes.  In
// ExactLift mode a finite-field instability witness is lifted and re-verified
// exactly; a verified lift upgrades the certificate to ExactRational.
inline StabilityVerdict check_stability(const ModulePoint<RationalField>& mu, const Character& theta,
                                        const std::vector<std::uint32_t>& primes,
                                        StabilityMode mode = StabilityMode::ExactLift,
                                        std::size_t budget = 10) {
    if (primes.empty()) throw std::invalid_argument("no prime fields requested");
    if (!is_module(mu)) throw std::domain_error("stability requires a Maurer-Cartan point");

    StabilityVerdict verdict;
    verdict.evidence_primes = primes;
    std::optional<long long> best_value;

    for (std::uint32_t p : primes) {
        auto alg_p = std::make_shared<const GradedAlgebra<PrimeField>>(reduce_algebra(mu.algebra(), p));
        auto mu_p = reduce_module(mu, alg_p);
        auto scan = scan_stability(mu_p, theta, budget);

        if (mode == StabilityMode::ExactLift && scan.status != StabilityStatus::Stable && scan.witness) {
            auto candidate = lift_witness(*scan.witness);
            auto [closed, value] = verify_witness_rational(mu, candidate, theta);
            if (closed && value <= 0 && (!best_value || value < *best_value)) {
                verdict.rational_witness = std::move(candidate);
                best_value = value;
            } else if (!closed) {
                verdict.note += "witness over F_" + std::to_string(p) +
                                " did not lift to a rational witness; ";
            }
        }
        verdict.scans.push_back(std::move(scan));
    }

    verdict.status = StabilityStatus::Stable;
    for (const auto& s : verdict.scans)
        if (s.status < verdict.status) verdict.status = s.status;

    // A verified rational witness certifies the verdict exactly when its
    // pairing value exhibits the combined status.
    verdict.exact_rational = false;
    if (verdict.rational_witness) {
        if ((verdict.status == StabilityStatus::Unstable && *best_value < 0) ||
            (verdict.status == StabilityStatus::StrictlySemistable && *best_value == 0)) {
            verdict.exact_rational = true;
        } else {
            verdict.rational_witness.reset();
        }
    }
    return verdict;
}

}  // namespace mcmod
