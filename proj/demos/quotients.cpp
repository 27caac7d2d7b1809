// Builds a small quotient of subspaces and prints the canonical data:
// dimensions, class representatives, and an induced map between quotients.

#include <iostream>

#include "gpl/gpl.hpp"

using namespace gpl;

int main() {
    // num = span{e0, e1, e2}, den = span{e0 + e1} inside Q(i)^4.
    Mat num_vecs(4, 3), den_vecs(4, 1);
    num_vecs.set(0, 0, Scalar(1));
    num_vecs.set(1, 1, Scalar(1));
    num_vecs.set(2, 2, Scalar(1));
    den_vecs.set(0, 0, Scalar(1));
    den_vecs.set(1, 0, Scalar(1));

    Quotient q(Subspace::span(num_vecs), Subspace::span(den_vecs));
    std::cout << "quotient dimension: " << q.dim() << "\n";

    Vec v = zero_vec(4);
    v[0] = Scalar(2);
    v[1] = Scalar(3);
    Vec cls = q.reduce(v);
    std::cout << "class of 2e0+3e1:";
    for (const auto& c : cls) std::cout << " " << c.str();
    std::cout << "\n";

    // The map swapping e0 and e1 fixes den, so it descends to the quotient.
    Mat swap(4, 4);
    swap.set(0, 1, Scalar(1));
    swap.set(1, 0, Scalar(1));
    swap.set(2, 2, Scalar(1));
    swap.set(3, 3, Scalar(1));
    auto ind = induced_map(swap, q, q);
    std::cout << "induced map well-defined: " << (ind.well_defined ? "yes" : "no")
              << ", rank " << ind.rank << "\n";
    return 0;
}
