#pragma once

// Free graded-commutative polynomials on a finite set of generators with
// homological degrees: generators of even degree commute, generators of odd
// degree anticommute and square to zero.  Monomials are kept sorted by
// generator id; multiplication tracks the Koszul sign of the merge.

#include "mcmod/fields.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcmod {

struct GeneratorInfo {
    std::string name;        // short display name, e.g. "u3"
    int hdeg = 0;            // homological degree (1 - n for an L^n dual)
    int level = 0;           // n: which L^n the generator is dual to
    int source = 0;          // j of the underlying coordinate block
    std::vector<int> comp;   // composition (d_1..d_n)
    std::vector<int> tuple;  // basis indices per slot
    std::vector<std::string> tuple_labels;
    std::size_t row = 0, col = 0;  // matrix entry within the block
};

struct GeneratorTable {
    std::vector<GeneratorInfo> vars;
    // first generator id of each level, for slicing; level_offset[n] with n >= 1
    std::map<int, std::size_t> level_offset;
    std::map<int, std::size_t> level_count;

    bool odd(std::size_t id) const { return vars[id].hdeg % 2 != 0; }
    std::size_t size() const { return vars.size(); }
};

// (generator id, exponent), strictly increasing ids, exponents >= 1,
// odd generators never exceed exponent 1.
using GMonomial = std::vector<std::pair<std::size_t, int>>;

namespace detail {

// Merge two sorted monomials; returns the Koszul sign, or 0 if an odd
// generator repeats.  Each odd letter of b crosses the odd letters of a that
// remain to its right.
inline int merge_monomials(const GeneratorTable& table, const GMonomial& a, const GMonomial& b,
                           GMonomial& out) {
    out.clear();
    int odd_remaining = 0;
    for (const auto& [v, e] : a)
        if (table.odd(v)) ++odd_remaining;
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            if (table.odd(a[i].first)) --odd_remaining;
            out.push_back(a[i]);
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            if (table.odd(b[j].first) && (odd_remaining % 2) != 0) sign = -sign;
            out.push_back(b[j]);
            ++j;
        } else {
            if (table.odd(a[i].first)) return 0;  // odd generator squared
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return sign;
}

}  // namespace detail

template <class F>
class GPoly {
public:
    using Elt = typename F::Element;
    using TablePtr = std::shared_ptr<const GeneratorTable>;

    GPoly(F field, TablePtr table) : field_(std::move(field)), table_(std::move(table)) {}

    static GPoly zero(const F& k, const TablePtr& t) { return GPoly(k, t); }

    static GPoly constant(const F& k, const TablePtr& t, const Elt& c) {
        GPoly p(k, t);
        p.add_term({}, c);
        return p;
    }

    static GPoly variable(const F& k, const TablePtr& t, std::size_t id) {
        GPoly p(k, t);
        p.add_term({{id, 1}}, k.one());
        return p;
    }

    const F& field() const { return field_; }
    const TablePtr& table() const { return table_; }
    const std::map<GMonomial, Elt>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    void add_term(const GMonomial& m, const Elt& c) {
        if (field_.is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    GPoly add(const GPoly& o) const {
        GPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    GPoly sub(const GPoly& o) const {
        GPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
        return r;
    }

    GPoly scale(const Elt& c) const {
        GPoly r(field_, table_);
        for (const auto& [m, v] : terms_) r.add_term(m, field_.mul(v, c));
        return r;
    }

    GPoly mul(const GPoly& o) const {
        GPoly r(field_, table_);
        GMonomial merged;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                const int sign = detail::merge_monomials(*table_, ma, mb, merged);
                if (sign == 0) continue;
                Elt c = field_.mul(ca, cb);
                if (sign < 0) c = field_.neg(c);
                r.add_term(merged, c);
            }
        return r;
    }

    bool operator==(const GPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        for (; a != terms_.end(); ++a, ++b)
            if (a->first != b->first || !field_.eq(a->second, b->second)) return false;
        return true;
    }

    // Total homological degree if homogeneous; throws otherwise (constants
    // count as degree deg0).
    int homogeneous_degree(int deg_of_empty) const {
        bool first = true;
        int deg = deg_of_empty;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (const auto& [v, e] : m) d += table_->vars[v].hdeg * e;
            if (m.empty()) d = deg_of_empty;
            if (first) {
                deg = d;
                first = false;
            } else if (d != deg) {
                throw std::domain_error("polynomial is not homogeneous");
            }
        }
        return deg;
    }

    // Substitute values for every generator that occurs (intended for the
    // degree-zero coordinates on L^1).
    Elt evaluate(const std::vector<Elt>& values) const {
        Elt acc = field_.zero();
        for (const auto& [m, c] : terms_) {
            Elt t = c;
            for (const auto& [v, e] : m) {
                if (v >= values.size()) throw std::invalid_argument("missing value for generator");
                for (int i = 0; i < e; ++i) t = field_.mul(t, values[v]);
            }
            acc = field_.add(acc, t);
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            std::string cs = field_.str(c);
            bool negative = !cs.empty() && cs[0] == '-';
            std::string body = negative ? cs.substr(1) : cs;
            std::string mono;
            for (const auto& [v, e] : m) {
                if (!mono.empty()) mono += "*";
                mono += table_->vars[v].name;
                if (e > 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty())
                mono = body;
            else if (body != "1")
                mono = body + "*" + mono;
            if (s.empty())
                s = (negative ? "-" : "") + mono;
            else
                s += (negative ? " - " : " + ") + mono;
        }
        return s;
    }

private:
    F field_;
    TablePtr table_;
    std::map<GMonomial, Elt> terms_;
};

// Extend generator images to a derivation and apply once: for a monomial
// x_1 ... x_k (letters expanded), q hits each letter in turn with the sign
// (-1)^{degree of the skipped prefix}.
template <class F>
GPoly<F> apply_derivation(const GPoly<F>& p, const std::vector<GPoly<F>>& images) {
    const F& k = p.field();
    GPoly<F> out(k, p.table());
    const GeneratorTable& table = *p.table();
    for (const auto& [mono, coeff] : p.terms()) {
        // expanded letter sequence
        std::vector<std::size_t> letters;
        for (const auto& [v, e] : mono)
            for (int i = 0; i < e; ++i) letters.push_back(v);
        int prefix_deg = 0;
        for (std::size_t r = 0; r < letters.size(); ++r) {
            const std::size_t v = letters[r];
            if (!images[v].is_zero()) {
                GMonomial prefix, suffix;
                for (std::size_t s = 0; s < r; ++s) {
                    if (!prefix.empty() && prefix.back().first == letters[s])
                        prefix.back().second += 1;
                    else
                        prefix.emplace_back(letters[s], 1);
                }
                for (std::size_t s = r + 1; s < letters.size(); ++s) {
                    if (!suffix.empty() && suffix.back().first == letters[s])
                        suffix.back().second += 1;
                    else
                        suffix.emplace_back(letters[s], 1);
                }
                GPoly<F> term(k, p.table());
                typename F::Element c = coeff;
                if (prefix_deg % 2 != 0) c = k.neg(c);
                term.add_term(prefix, c);
                term = term.mul(images[v]);
                GPoly<F> suff(k, p.table());
                suff.add_term(suffix, k.one());
                term = term.mul(suff);
                out = out.add(term);
            }
            prefix_deg += table.vars[v].hdeg;
        }
    }
    return out;
}

}  // namespace mcmod
