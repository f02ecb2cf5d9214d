#pragma once

// Hilbert polynomials in the binomial basis, Macaulay representations and
// bounds, Gotzmann persistence checks, and the extension of a window module
// generated in lowest degree to arbitrary target degrees via its degree-p
// presentation.  The sheaf side enters only through these graded dimensions:
// the pipeline at the bottom stitches the checks together into a module-level
// certificate for the associated sheaf, stamped with all its parameters.

#include "mcmod/cochain.hpp"
#include "mcmod/fields.hpp"
#include "mcmod/graded_algebra.hpp"
#include "mcmod/matrix.hpp"
#include "mcmod/stability.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcmod {

// C(t, i) as the polynomial t(t-1)...(t-i+1)/i!, defined for every integer t.
inline BigInt binomial_poly(const BigInt& t, int i) {
    if (i < 0) return 0;
    BigInt num = 1;
    for (int s = 0; s < i; ++s) num *= t - s;
    BigInt den = 1;
    for (int s = 2; s <= i; ++s) den *= s;
    return num / den;
}

// alpha(t) = a_0 C(t,0) + ... + a_k C(t,k), integer coefficients.
struct HilbertPolynomial {
    std::vector<long long> coeffs;

    HilbertPolynomial() = default;
    explicit HilbertPolynomial(std::vector<long long> c) : coeffs(std::move(c)) {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline BigInt evaluate(const HilbertPolynomial& h, long long t) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
        acc += BigInt(h.coeffs[i]) * binomial_poly(BigInt(t), static_cast<int>(i));
    return acc;
}

// gcd of the coefficients equals 1; cross-checked against the gcd of the
// k+1 consecutive values alpha(0..k), which must agree.
inline bool is_primitive(const HilbertPolynomial& h) {
    if (h.is_zero()) throw std::domain_error("zero polynomial has no primitivity");
    BigInt coeff_gcd = 0;
    for (long long c : h.coeffs) coeff_gcd = boost::multiprecision::gcd(coeff_gcd, BigInt(c));
    BigInt value_gcd = 0;
    for (int t = 0; t <= h.degree(); ++t)
        value_gcd = boost::multiprecision::gcd(value_gcd, evaluate(h, t));
    if (coeff_gcd != value_gcd)
        throw std::logic_error("coefficient gcd and value gcd disagree");  // cannot happen
    return coeff_gcd == 1;
}

// The unique strictly decreasing expansion a = sum_{i=1}^t C(m_i, i).
struct MacaulayRep {
    int t = 1;
    std::vector<long long> terms;  // m_t, m_{t-1}, ..., m_1
};

inline MacaulayRep macaulay_rep(long long a, int t) {
    if (a < 0 || t < 1) throw std::invalid_argument("macaulay_rep needs a >= 0 and t >= 1");
    MacaulayRep rep;
    rep.t = t;
    BigInt remaining = a;
    for (int i = t; i >= 1; --i) {
        long long m = i - 1;  // C(i-1, i) = 0
        while (binomial_poly(BigInt(m + 1), i) <= remaining) ++m;
        rep.terms.push_back(m);
        remaining -= binomial_poly(BigInt(m), i);
    }
    return rep;
}

// a^<t> = sum_i C(m_i + 1, i + 1) over the representation of a.
inline long long macaulay_bound(long long a, int t) {
    const auto rep = macaulay_rep(a, t);
    BigInt acc = 0;
    for (std::size_t k = 0; k < rep.terms.size(); ++k) {
        const int i = rep.t - static_cast<int>(k);
        acc += binomial_poly(BigInt(rep.terms[k] + 1), i + 1);
    }
    return static_cast<long long>(acc);
}

struct GotzmannReport {
    bool macaulay_ok = true;
    std::optional<int> first_violation;   // least d with h_{d+1} > h_d^<d-p>
    std::optional<int> persistent_from;   // least d with equality at every later step
    int skipped_pairs = 0;                // leading pairs with d - p < 1
};

// Check h_{d+1} <= h_d^<d-p> along the sequence; comparisons need t = d - p
// >= 1, so the pair starting at d = p is skipped and reported.
inline GotzmannReport gotzmann_check(const std::vector<long long>& values, int p) {
    if (values.size() < 2) throw std::invalid_argument("gotzmann_check needs at least two values");
    for (long long v : values)
        if (v < 0) throw std::invalid_argument("negative dimension in sequence");
    GotzmannReport report;
    const int last_d = p + static_cast<int>(values.size()) - 2;  // last pair (h_d, h_{d+1})
    std::vector<std::pair<int, bool>> equalities;                // (d, exact equality)
    for (int d = p; d <= last_d; ++d) {
        if (d - p < 1) {
            ++report.skipped_pairs;
            continue;
        }
        const long long h_d = values[static_cast<std::size_t>(d - p)];
        const long long h_next = values[static_cast<std::size_t>(d - p) + 1];
        const long long bound = macaulay_bound(h_d, d - p);
        if (h_next > bound) {
            report.macaulay_ok = false;
            if (!report.first_violation) report.first_violation = d;
        }
        equalities.emplace_back(d, h_next == bound);
    }
    for (std::size_t k = equalities.size(); k-- > 0;) {
        if (!equalities[k].second) break;
        report.persistent_from = equalities[k].first;
    }
    return report;
}

// The window dimensions alpha_p..alpha_q of the module point.
template <class F>
std::vector<int> hilbert_function_of_module(const ModulePoint<F>& mu) {
    return mu.dims().dims;
}

// Does V_p generate V under the action?
template <class F>
bool is_generated_in_lowest_degree(const ModulePoint<F>& mu) {
    if (!is_module(mu)) throw std::domain_error("generation check requires a module point");
    const DimensionVector& dims = mu.dims();
    const F& k = mu.field();
    std::vector<Matrix<F>> seeds;
    seeds.push_back(Matrix<F>::identity(k, static_cast<std::size_t>(dims.at(dims.lo))));
    for (int j = dims.lo + 1; j <= dims.hi(); ++j)
        seeds.emplace_back(k, 0, static_cast<std::size_t>(dims.at(j)));
    const auto spans = module_closure(mu, seeds);
    for (int j = dims.lo; j <= dims.hi(); ++j)
        if (static_cast<int>(spans[static_cast<std::size_t>(j - dims.lo)].rows()) != dims.at(j))
            return false;
    return true;
}

// Dimensions of the module extended beyond the window: with K_e the kernel of
// A_{e-p} (x) M_p -> M_e, the degree-d piece of the extension is
// (A_{d-p} (x) M_p) / sum_e A_{d-e} K_e.  Inside the window these must
// reproduce alpha; that consistency is enforced.
template <class F>
std::vector<long long> extend_module(const ModulePoint<F>& mu, int target_degree) {
    const DimensionVector& dims = mu.dims();
    const GradedAlgebra<F>& a = mu.algebra();
    const F& k = a.field();
    const int p = dims.lo, q = dims.hi();
    if (target_degree < q) throw std::invalid_argument("target degree below window top");
    if (a.degree_bound() < target_degree - p)
        throw std::invalid_argument("algebra degree bound below target degree");
    if (!is_generated_in_lowest_degree(mu))
        throw std::domain_error("extension requires a module generated in lowest degree");

    const std::size_t mp = static_cast<std::size_t>(dims.at(p));

    // K_e as kernel rows in the coordinates of A_{e-p} (x) M_p (basis-major)
    std::vector<Matrix<F>> kernels;  // index e - (p+1)
    for (int e = p + 1; e <= q; ++e) {
        const int de = e - p;
        Matrix<F> map(k, static_cast<std::size_t>(dims.at(e)), static_cast<std::size_t>(a.dim(de)) * mp);
        for (int t = 0; t < a.dim(de); ++t) {
            const auto& act = mu.component(p, {de}).mats[static_cast<std::size_t>(t)];
            for (std::size_t m = 0; m < mp; ++m)
                for (std::size_t r = 0; r < act.rows(); ++r)
                    map.at(r, static_cast<std::size_t>(t) * mp + m) = act.at(r, m);
        }
        kernels.push_back(kernel_basis(map));
    }

    std::vector<long long> out;
    for (int d = p; d <= target_degree; ++d) {
        const std::size_t ambient = static_cast<std::size_t>(a.dim(d - p)) * mp;
        std::vector<std::vector<typename F::Element>> rows;
        for (int e = p + 1; e <= std::min(q, d); ++e) {
            const Matrix<F>& ker = kernels[static_cast<std::size_t>(e - p - 1)];
            if (ker.rows() == 0) continue;
            const int push_deg = d - e;
            if (push_deg == 0) {
                for (std::size_t r = 0; r < ker.rows(); ++r) rows.push_back(ker.row(r));
                continue;
            }
            for (int b = 0; b < a.dim(push_deg); ++b)
                for (std::size_t r = 0; r < ker.rows(); ++r) {
                    std::vector<typename F::Element> pushed(ambient, k.zero());
                    for (int t = 0; t < a.dim(e - p); ++t) {
                        const auto& prod = a.product_basis(push_deg, b, e - p, t);
                        for (std::size_t m = 0; m < mp; ++m) {
                            const auto& c = ker.at(r, static_cast<std::size_t>(t) * mp + m);
                            if (k.is_zero(c)) continue;
                            for (int s = 0; s < a.dim(d - p); ++s)
                                if (!k.is_zero(prod[static_cast<std::size_t>(s)]))
                                    pushed[static_cast<std::size_t>(s) * mp + m] = k.add(
                                        pushed[static_cast<std::size_t>(s) * mp + m],
                                        k.mul(prod[static_cast<std::size_t>(s)], c));
                        }
                    }
                    rows.push_back(std::move(pushed));
                }
        }
        const std::size_t relation_rank =
            rows.empty() ? 0 : rank(Matrix<F>::from_rows(k, ambient, rows));
        const long long dim_d = static_cast<long long>(ambient) - static_cast<long long>(relation_rank);
        if (d <= q && dim_d != dims.at(d))
            throw std::domain_error("presentation mismatch: extension disagrees with the window at degree " +
                                    std::to_string(d));
        out.push_back(dim_d);
    }
    return out;
}

// ---- the composite certificate ----------------------------------------------

struct PipelineReport {
    int window_lo = 0, window_hi = 0;
    int truncation_degree = 0;
    int target_degree = 0;
    std::vector<std::uint32_t> fields;
    bool generated_in_lowest_degree = false;
    std::optional<std::vector<long long>> extended_hilbert;
    std::optional<GotzmannReport> gotzmann;
    bool hypothesis_holds = false;  // equality at every comparable step of the extension
    std::optional<StabilityVerdict> stability;
    std::optional<StabilityVerdict> truncated_stability;
    std::string combined = "Inconclusive";
};

// Runs, in order: generation check, extension, Gotzmann checks, stability of
// the module and of its truncation under their extremal characters.  The
// combined flag is a module-level (semi)stability certificate for the
// associated sheaf, valid in the regime where the window parameters are
// large enough; the report carries every parameter so the caller can judge.
inline PipelineReport sheaf_stability_pipeline(const ModulePoint<RationalField>& mu, int p_prime,
                                               int target_degree,
                                               const std::vector<std::uint32_t>& fields,
                                               std::size_t budget = 10) {
    const DimensionVector& dims = mu.dims();
    if (p_prime < dims.lo || p_prime > dims.hi())
        throw std::invalid_argument("truncation degree outside window");
    if (!is_module(mu)) throw std::domain_error("pipeline requires a Maurer-Cartan point");

    PipelineReport report;
    report.window_lo = dims.lo;
    report.window_hi = dims.hi();
    report.truncation_degree = p_prime;
    report.target_degree = target_degree;
    report.fields = fields;

    report.generated_in_lowest_degree = is_generated_in_lowest_degree(mu);
    if (report.generated_in_lowest_degree) {
        report.extended_hilbert = extend_module(mu, target_degree);
        report.gotzmann = gotzmann_check(*report.extended_hilbert, dims.lo);
        report.hypothesis_holds = report.gotzmann->macaulay_ok &&
                                  report.gotzmann->persistent_from.has_value() &&
                                  *report.gotzmann->persistent_from == dims.lo + 1;
    }

    report.stability = check_stability(mu, extremal_character(dims), fields, StabilityMode::ExactLift, budget);
    auto truncated = truncate_module(mu, p_prime);
    report.truncated_stability = check_stability(truncated, extremal_character(truncated.dims()), fields,
                                                 StabilityMode::ExactLift, budget);

    const auto worst = std::min(report.stability->status, report.truncated_stability->status);
    if (worst == StabilityStatus::Unstable) {
        report.combined = "Unstable";
    } else if (!report.generated_in_lowest_degree || !report.gotzmann ||
               !report.gotzmann->macaulay_ok || !report.hypothesis_holds) {
        report.combined = "Inconclusive";
    } else {
        report.combined = to_string(worst);
    }
    return report;
}

}  // namespace mcmod
