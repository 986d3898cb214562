#pragma once

#include "pipgns/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pipgns {

struct Rect {
    Subspace left, right;
};

/// Witness that the partner set of some element is a union of subspaces that is not a subspace.
struct ChainFailure {
    bool left_slot;  // true: partners of x in the first slot, i.e. {y ; (x,y) in relation}
    Subspace cell;
    Sequence witness;
    std::vector<std::size_t> rects;
    std::string describe(const Ambient& amb) const;
};

/// Finite union of subspace rectangles S_i x T_i inside carrier x carrier.
///
/// Elements x in the first slot are grouped by J(x) = {i ; x in S_i}. The sets with a fixed J are
/// cells of the intersection closure of the S_i: every closure member P owns the nonempty cell
/// P minus the union of the closure members strictly inside it.
class RectangleRelation {
public:
    RectangleRelation() = default;
    RectangleRelation(Subspace carrier, std::vector<Rect> rects) : carrier_(std::move(carrier)), rects_(std::move(rects)) {
        for (const auto& r : rects_)
            if (!carrier_.contains(r.left) || !carrier_.contains(r.right))
                throw Error("rectangle side is not inside the carrier");
        build(true);
        build(false);
    }

    const Subspace& carrier() const { return carrier_; }
    const std::vector<Rect>& rects() const { return rects_; }
    const Ambient& ambient() const { return carrier_.ambient(); }

    bool related(const Sequence& x, const Sequence& y) const {
        for (const auto& r : rects_)
            if (r.left.contains(x) && r.right.contains(y)) return true;
        return false;
    }

    RectangleRelation transpose() const {
        std::vector<Rect> t;
        for (const auto& r : rects_) t.push_back({r.right, r.left});
        return RectangleRelation(carrier_, std::move(t));
    }

    std::optional<ChainFailure> chain_failure() const {
        for (bool left : {true, false})
            for (const auto& c : cells(left))
                if (!c.rects.empty() && !c.max) return ChainFailure{left, c.P, witness(c, left), c.rects};
        return std::nullopt;
    }

    /// {y ; (x,y) in relation for all x in N}; nullopt when some x in N has no partner at all.
    std::optional<Subspace> right_partner(const Subspace& N) const { return partner(N, true); }
    /// {x ; (x,y) in relation for all y in N}.
    std::optional<Subspace> left_partner(const Subspace& N) const { return partner(N, false); }

    /// U x W contained in the relation.
    bool contains_rectangle(const Subspace& U, const Subspace& W) const {
        Subspace Uc = intersect(U, carrier_);
        if (Uc != U) return false;
        for (const auto& c : cells(true)) {
            if (!meets(c, U, true)) continue;
            bool ok = false;
            for (auto i : c.rects)
                if (rects_[i].right.contains(W)) ok = true;
            if (!ok) return false;
        }
        return true;
    }

    /// Closure members of the chosen slot together with their maximal partners.
    struct Cell {
        Subspace P;
        std::vector<std::size_t> rects;
        std::optional<std::size_t> max;  // rectangle whose opposite side contains all others
    };
    const std::vector<Cell>& cells(bool left) const { return left ? left_cells_ : right_cells_; }

    const Subspace& opposite(const Cell& c, bool left) const {
        return left ? rects_[*c.max].right : rects_[*c.max].left;
    }

    /// Cells whose open part meets N.
    std::vector<const Cell*> cells_meeting(const Subspace& N, bool left) const {
        std::vector<const Cell*> out;
        for (const auto& c : cells(left))
            if (meets(c, N, left)) out.push_back(&c);
        return out;
    }

    /// An explicit element of the open part of a cell.
    Sequence witness(const Cell& c, bool left) const {
        const auto& all = cells(left);
        std::vector<const Subspace*> below;
        long K = 2;
        for (const auto& q : all) {
            K = std::max<long>(K, q.P.max_index() + static_cast<long>(q.P.rank()) + 2);
            if (q.P != c.P && c.P.contains(q.P)) below.push_back(&q.P);
        }
        auto gens = c.P.probe_generators(K);
        for (long t = 1; t <= 200; ++t) {
            Sequence x;
            Scalar w(1);
            for (const auto& g : gens) {
                x = x + g * w;
                w *= Scalar(t);
            }
            bool inside = false;
            for (auto* q : below) inside = inside || q->contains(x);
            if (!inside) return x;
        }
        throw Error("no witness found for cell " + c.P.to_string());
    }

private:
    bool meets(const Cell& c, const Subspace& N, bool left) const {
        Subspace NP = intersect(N, c.P);
        for (const auto& q : cells(left))
            if (q.P != c.P && c.P.contains(q.P) && intersect(N, q.P) == NP) return false;
        return true;
    }

    std::optional<Subspace> partner(const Subspace& N, bool left) const {
        Subspace out = carrier_;
        for (const auto* c : cells_meeting(N, left)) {
            if (c->rects.empty()) return std::nullopt;
            if (!c->max) throw Error("chain condition fails; partner set is not a subspace");
            out = intersect(out, opposite(*c, left));
        }
        return out;
    }

    void build(bool left) {
        std::vector<Subspace> members{carrier_};
        auto add = [&](const Subspace& s) {
            for (const auto& m : members)
                if (m == s) return false;
            members.push_back(s);
            return true;
        };
        for (const auto& r : rects_) add(intersect(left ? r.left : r.right, carrier_));
        for (bool grew = true; grew;) {
            grew = false;
            std::size_t n = members.size();
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) grew = add(intersect(members[a], members[b])) || grew;
        }
        std::vector<Cell>& out = left ? left_cells_ : right_cells_;
        for (auto& P : members) {
            Cell c{P, {}, std::nullopt};
            for (std::size_t i = 0; i < rects_.size(); ++i)
                if ((left ? rects_[i].left : rects_[i].right).contains(P)) c.rects.push_back(i);
            for (auto i : c.rects) {
                const Subspace& Ti = left ? rects_[i].right : rects_[i].left;
                bool all = true;
                for (auto j : c.rects) all = all && Ti.contains(left ? rects_[j].right : rects_[j].left);
                if (all) {
                    c.max = i;
                    break;
                }
            }
            out.push_back(std::move(c));
        }
    }

    Subspace carrier_;
    std::vector<Rect> rects_;
    std::vector<Cell> left_cells_, right_cells_;
};

inline std::string ChainFailure::describe(const Ambient& amb) const {
    std::string s = std::string(left_slot ? "right" : "left") + " partners of " + amb.render(witness) +
                    " form a union of rectangles";
    for (auto i : rects) s += " #" + std::to_string(i);
    return s + " with no member containing the others";
}

}  // namespace pipgns
