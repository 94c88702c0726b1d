#pragma once

#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "metsub/common.hpp"

namespace metsub {

// A space backend pairs a distance with a binary average on one element kind.
template <class S>
concept SpaceBackend = requires(const S s, const typename S::element_type& a,
                                const typename S::element_type& b, double w) {
    { s.distance(a, b) } -> std::convertible_to<double>;
    { s.average(w, a, b) } -> std::convertible_to<typename S::element_type>;
    { s.intrinsic() } -> std::convertible_to<bool>;
};

enum class Boundary { closed, open };

// Finite stand-in for the bi-infinite sequences of the underlying theory.
// Closed sequences wrap modulo length; open sequences are trimmed by the
// refinement operators so that only points with a full stencil are emitted.
template <class E>
struct ElementSequence {
    std::vector<E> elems;
    Boundary boundary = Boundary::open;

    std::size_t size() const { return elems.size(); }
    bool closed() const { return boundary == Boundary::closed; }

    const E& at_wrapped(std::ptrdiff_t i) const {
        const auto n = static_cast<std::ptrdiff_t>(elems.size());
        std::ptrdiff_t m = ((i % n) + n) % n;
        return elems[static_cast<std::size_t>(m)];
    }
};

// Sup of consecutive distances (the wrap pair included for closed sequences).
template <SpaceBackend S>
double delta(const ElementSequence<typename S::element_type>& seq, const S& space) {
    const auto n = seq.size();
    if (n == 0) throw invalid_input("delta: empty sequence");
    if (n == 1) {
        if (!seq.closed())
            throw invalid_input("delta: undefined for a singleton open sequence");
        return 0.0;
    }
    double best = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j)
        best = std::max(best, space.distance(seq.elems[j], seq.elems[j + 1]));
    if (seq.closed())
        best = std::max(best, space.distance(seq.elems[n - 1], seq.elems[0]));
    return best;
}

}  // namespace metsub
