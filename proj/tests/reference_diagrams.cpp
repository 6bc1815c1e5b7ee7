#include "reference_diagrams.hpp"

#include "knotdecomp/tangle_calculus.hpp"

namespace test_support {

using namespace knot;

LinkDiagram four_piece_ring() {
    Tangle a = reciprocal(cardan_to_diagram({2, 2}));
    Tangle b = octahedral_tangle();
    Tangle c = reciprocal(tangle_sum(tangle_sum(Tangle::vertical(2), Tangle::integer(1)), Tangle::vertical(2)));
    Tangle d = Tangle::vertical(3);
    return ring_diagram({a, b, c, d}, {1, 1, 1, 1});
}

LinkDiagram eight_piece_ring() {
    return ring_diagram(std::vector<Tangle>(8, Tangle::vertical(2)), std::vector<int>(8, 1));
}

LinkDiagram double_octahedron() {
    return finish(numerator(tangle_sum(octahedral_tangle(), octahedral_tangle())));
}

LinkDiagram twisted_pretzel333() {
    return ring_diagram(std::vector<Tangle>(3, Tangle::vertical(3)), {2, 2, 2});
}

LinkDiagram three_piece_ring() {
    Tangle y = reciprocal(cardan_to_diagram({2, 2}));
    return ring_diagram({y, y, y}, {3, 3, 3});
}

}  // namespace test_support
