#pragma once

#include "pipgns/linalg.hpp"
#include "pipgns/sequence.hpp"

#include <set>
#include <string>
#include <vector>

namespace pipgns {

enum class Backend { Finite, Symbolic };

/// The space all elements of a model live in: C^dim, or the exp-rational sequences.
struct Ambient {
    Backend backend = Backend::Symbolic;
    int dim = 0;

    static Ambient finite(int d) { return {Backend::Finite, d}; }
    static Ambient symbolic() { return {Backend::Symbolic, 0}; }
    bool is_finite() const { return backend == Backend::Finite; }
    friend bool operator==(const Ambient& a, const Ambient& b) { return a.backend == b.backend && a.dim == b.dim; }

    void check(const Sequence& s) const {
        if (!is_finite()) return;
        if (!s.eventually_zero() || s.max_index() > dim)
            throw Error("element " + s.to_string() + " is not a vector of C^" + std::to_string(dim));
    }
    std::string render(const Sequence& s) const { return is_finite() ? s.to_vector_string(dim) : s.to_string(); }
};

/// Linear coordinates for a finite family of sequences: correction values at the occurring
/// indices, then for each occurring base r the polynomial coefficients of f * Q_r, where Q_r is
/// the lcm of the denominators seen at r. The map is injective on sequences the frame was built for.
class Frame {
public:
    Frame(const std::vector<Sequence>& family, bool with_corrections) : with_corr_(with_corrections) {
        std::set<long> idx;
        for (const auto& s : family) {
            if (with_corr_)
                for (const auto& [k, v] : s.correction()) idx.insert(k);
            for (const auto& t : s.tail().terms()) {
                Block* b = find(t.base);
                if (!b) {
                    blocks_.push_back({t.base, Poly(Scalar(1)), 0});
                    b = &blocks_.back();
                }
                Poly g = Poly::gcd(b->lcm, t.coeff.den());
                b->lcm = Poly::divmod(b->lcm * t.coeff.den(), g).first.monic();
            }
        }
        idx_.assign(idx.begin(), idx.end());
        std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return canonical_less(a.base, b.base); });
        for (const auto& s : family)
            for (const auto& t : s.tail().terms()) {
                Block* b = find(t.base);
                Poly p = scaled(*b, t.coeff);
                b->max_deg = std::max(b->max_deg, p.degree());
            }
        std::size_t off = idx_.size();
        for (auto& b : blocks_) {
            b.offset = off;
            off += static_cast<std::size_t>(b.max_deg) + 1;
        }
        size_ = off;
    }

    std::size_t size() const { return size_; }

    Vec coords(const Sequence& s) const {
        Vec v(size_);
        if (with_corr_)
            for (const auto& [k, val] : s.correction()) {
                auto it = std::lower_bound(idx_.begin(), idx_.end(), k);
                if (it == idx_.end() || *it != k) throw Error("frame does not cover correction index");
                v[static_cast<std::size_t>(it - idx_.begin())] = val;
            }
        for (const auto& t : s.tail().terms()) {
            const Block* b = find(t.base);
            if (!b) throw Error("frame does not cover base " + t.base.to_string());
            Poly p = scaled(*b, t.coeff);
            if (p.degree() > b->max_deg) throw Error("frame degree exceeded");
            for (int k = 0; k <= p.degree(); ++k) v[b->offset + static_cast<std::size_t>(k)] = p.coeff(k);
        }
        return v;
    }

    Sequence from_coords(const Vec& v) const {
        std::map<long, Scalar> corr;
        for (std::size_t k = 0; k < idx_.size(); ++k)
            if (!v[k].is_zero()) corr[idx_[k]] = v[k];
        std::vector<TailTerm> terms;
        for (const auto& b : blocks_) {
            Vec c(v.begin() + static_cast<long>(b.offset), v.begin() + static_cast<long>(b.offset) + b.max_deg + 1);
            Poly p(c);
            if (!p.is_zero()) terms.push_back({b.base, RatFunc(p, b.lcm)});
        }
        return Sequence(std::move(corr), TailExpr(std::move(terms)));
    }

private:
    struct Block {
        Scalar base;
        Poly lcm;
        int max_deg;
        std::size_t offset = 0;
    };
    Block* find(const Scalar& r) {
        for (auto& b : blocks_)
            if (b.base == r) return &b;
        return nullptr;
    }
    const Block* find(const Scalar& r) const {
        for (const auto& b : blocks_)
            if (b.base == r) return &b;
        return nullptr;
    }
    static Poly scaled(const Block& b, const RatFunc& f) {
        auto [q, r] = Poly::divmod(f.num() * b.lcm, f.den());
        if (!r.is_zero()) throw Error("frame denominator does not divide lcm");
        return q;
    }

    bool with_corr_;
    std::vector<long> idx_;
    std::vector<Block> blocks_;
    std::size_t size_ = 0;
};

inline std::vector<Sequence> tails_of(const std::vector<Sequence>& v) {
    std::vector<Sequence> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.tail_part());
    return out;
}

/// Coefficients c with sum c_j gens_j = x, working modulo phi when mod_phi is set.
inline std::optional<Vec> span_coefficients(const std::vector<Sequence>& gens, const Sequence& x, bool mod_phi) {
    std::vector<Sequence> fam = gens;
    fam.push_back(x);
    Frame f(fam, !mod_phi);
    std::vector<Vec> cols;
    for (const auto& g : gens) cols.push_back(f.coords(g));
    return solve(Matrix::from_columns(cols, f.size()), f.coords(x));
}

/// Basis of {c ; sum c_j s_j = 0} (modulo phi when mod_phi is set).
inline std::vector<Vec> relations(const std::vector<Sequence>& s, bool mod_phi) {
    Frame f(s, !mod_phi);
    std::vector<Vec> cols;
    for (const auto& g : s) cols.push_back(f.coords(g));
    return kernel(Matrix::from_columns(cols, f.size()));
}

inline Sequence combine(const std::vector<Sequence>& gens, const Vec& c) {
    Sequence out;
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (!c[j].is_zero()) out = out + gens[j] * c[j];
    return out;
}

/// A subspace of the ambient space: optionally all of phi, plus the span of a canonical basis.
/// With the phi flag the basis consists of pure tails, independent modulo phi; the finite
/// backend never carries the flag.
class Subspace {
public:
    Subspace() = default;
    Subspace(Ambient amb, std::vector<Sequence> gens, bool phi = false) : amb_(amb), phi_(phi) {
        if (amb_.is_finite() && phi_) throw Error("phi flag is not available in the finite backend");
        for (const auto& g : gens) amb_.check(g);
        basis_ = canonical_basis(std::move(gens), phi_);
    }
    static Subspace zero(Ambient amb) { return Subspace(amb, {}); }
    static Subspace phi(Ambient amb = Ambient::symbolic()) { return Subspace(amb, {}, true); }
    static Subspace full(int dim) {
        std::vector<Sequence> g;
        for (int k = 1; k <= dim; ++k) g.push_back(Sequence::unit(k));
        return Subspace(Ambient::finite(dim), g);
    }

    const Ambient& ambient() const { return amb_; }
    bool has_phi() const { return phi_; }
    const std::vector<Sequence>& basis() const { return basis_; }
    bool is_zero() const { return !phi_ && basis_.empty(); }
    /// Dimension, or dimension modulo phi when the phi flag is set.
    std::size_t rank() const { return basis_.size(); }

    bool contains(const Sequence& x) const {
        if (x.is_zero()) return true;
        if (amb_.is_finite() && (!x.eventually_zero() || x.max_index() > amb_.dim)) return false;
        if (phi_) return x.tail().is_zero() || span_coefficients(basis_, x.tail_part(), true).has_value();
        return !basis_.empty() && span_coefficients(basis_, x, false).has_value();
    }
    bool contains(const Subspace& t) const {
        same_ambient(t);
        if (t.phi_ && !phi_) return false;
        for (const auto& b : t.basis_)
            if (!contains(b)) return false;
        return true;
    }
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.amb_ == b.amb_ && a.phi_ == b.phi_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        a.same_ambient(b);
        std::vector<Sequence> g = a.basis_;
        g.insert(g.end(), b.basis_.begin(), b.basis_.end());
        return Subspace(a.amb_, std::move(g), a.phi_ || b.phi_);
    }
    Subspace plus(const Sequence& x) const { return *this + Subspace(amb_, {x}); }

    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        a.same_ambient(b);
        if (a.phi_ && b.phi_) return Subspace(a.amb_, meet(a.basis_, b.basis_, true), true);
        if (!a.phi_ && !b.phi_) return Subspace(a.amb_, meet(a.basis_, b.basis_, false), false);
        const Subspace& fin = a.phi_ ? b : a;
        const Subspace& inf = a.phi_ ? a : b;
        return Subspace(a.amb_, meet(fin.basis_, inf.basis_, true), false);
    }

    Subspace conj() const {
        std::vector<Sequence> g;
        for (const auto& b : basis_) g.push_back(b.conj());
        return Subspace(amb_, std::move(g), phi_);
    }

    /// Generators used to discharge quantifiers: the basis, plus e_1..e_K under the phi flag.
    std::vector<Sequence> probe_generators(long K) const {
        std::vector<Sequence> g;
        if (phi_)
            for (long k = 1; k <= K; ++k) g.push_back(Sequence::unit(k));
        g.insert(g.end(), basis_.begin(), basis_.end());
        return g;
    }

    long max_index() const {
        long m = 0;
        for (const auto& b : basis_) m = std::max(m, b.max_index());
        return m;
    }

    std::string to_string() const {
        std::string out = phi_ ? "phi" : "";
        if (basis_.empty()) return phi_ ? out : "{0}";
        std::string span = "span{";
        for (std::size_t k = 0; k < basis_.size(); ++k) span += (k ? ", " : "") + amb_.render(basis_[k]);
        span += "}";
        return phi_ ? out + " + " + span : span;
    }

private:
    void same_ambient(const Subspace& o) const {
        if (!(amb_ == o.amb_)) throw Error("subspaces from different backends or ambient spaces");
    }

    static std::vector<Sequence> canonical_basis(std::vector<Sequence> gens, bool mod_phi) {
        if (mod_phi) gens = tails_of(gens);
        std::vector<Sequence> nz;
        for (auto& g : gens)
            if (!g.is_zero()) nz.push_back(std::move(g));
        if (nz.empty()) return {};
        Frame f(nz, !mod_phi);
        std::vector<Vec> rows;
        for (const auto& g : nz) rows.push_back(f.coords(g));
        Rref r = rref(Matrix::from_rows(rows, f.size()));
        std::vector<Sequence> out;
        for (std::size_t k = 0; k < r.rank(); ++k) out.push_back(f.from_coords(r.m.row(k)));
        return out;
    }

    /// Elements sum a_i s_i lying in span(t) (modulo phi when mod_phi is set).
    static std::vector<Sequence> meet(const std::vector<Sequence>& s, const std::vector<Sequence>& t, bool mod_phi) {
        if (s.empty() || (t.empty() && !mod_phi)) return {};
        std::vector<Sequence> fam = mod_phi ? tails_of(s) : s;
        for (const auto& x : t) fam.push_back(mod_phi ? x.tail_part() : x);
        std::vector<Sequence> out;
        for (const auto& c : relations(fam, mod_phi)) {
            Vec a(c.begin(), c.begin() + static_cast<long>(s.size()));
            out.push_back(combine(s, a));
        }
        return out;
    }

    Ambient amb_;
    bool phi_ = false;
    std::vector<Sequence> basis_;
};

inline std::ostream& operator<<(std::ostream& os, const Subspace& s) { return os << s.to_string(); }

}  // namespace pipgns
