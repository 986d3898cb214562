#pragma once

#include "pipgns/corpus.hpp"
#include "pipgns/verdicts.hpp"

#include <string>

namespace pipgns::corpus {

namespace detail {

inline VerdictRecord record(const std::string& name, const Subspace& N1, const Subspace& N2, const Subspace& Ngns,
                            int star, int bullet, int circ) {
    VerdictRecord r;
    r.name = name;
    r.N1 = N1.to_string();
    r.N2 = N2.to_string();
    r.Ngns = Ngns.to_string();
    r.criterion = N1 == N2 && N2 == Ngns;
    r.gns_exit = {{"star", star}, {"bullet", bullet}, {"circ", circ}};
    return r;
}

}  // namespace detail

/// Hand-derived verdicts for each bundled entry.
inline VerdictRecord expected(const std::string& name) {
    using detail::coord_span;
    const Ambient S = Ambient::symbolic();
    const Subspace phi = Subspace::phi(S);
    const Subspace zero_s(S, {});
    if (name == "ex24" || name == "prop2-demo") {
        const Subspace second = coord_span(8, 5, 8);
        return detail::record(name, Subspace(Ambient::finite(8), {}), second, second, 11, 11, 11);
    }
    if (name == "ex25") {
        const Sequence n = Sequence::identity_index();
        const Sequence inv(TailExpr::geometric(Scalar(1), RatFunc(Poly(Scalar(1)), Poly::n())));
        return detail::record(name, phi, Subspace(S, {inv}, true), Subspace(S, {inv, n}, true), 11, 11, 11);
    }
    if (name == "ex45") {
        const Subspace e1 = coord_span(5, 1, 1);
        const Ambient F = Ambient::finite(5);
        return detail::record(name, e1, e1, Subspace(F, {Sequence::unit(1), Sequence::unit(3), Sequence::unit(4)}), 11,
                              11, 11);
    }
    if (name == "ex46") {
        VerdictRecord r = detail::record(name, zero_s, zero_s, zero_s, 0, 0, 17);
        r.queries = {{"pi(a) star pi(a)", "= pi(a^2)"},
                     {"pi(a) bullet pi(a)", "= pi(a^2)"},
                     {"pi(a) circ pi(a)", "NotFactorizable"},
                     {"id bullet pi(a)", "= pi(a)"},
                     {"pi(e[2]) circ pi(e[2])", "= pi(patch{2:1})"}};
        return r;
    }
    if (name == "desk-ex2") {
        VerdictRecord r = detail::record(name, zero_s, zero_s, zero_s, 15, 15, 15);
        r.queries = {{"|u><u| circ |u><u|", "= |(1/2)^n*1/3><(1/2)^n|"}, {"|u><u| star |u><u|", "= |(1/2)^n*1/3><(1/2)^n|"}};
        return r;
    }
    throw Error("no expected record for '" + name + "'");
}

}  // namespace pipgns::corpus
