// Complete the E6 star presentation and check a few reductions.
#include <preproj/rewrite.hpp>
#include <preproj/constructs.hpp>

#include <iostream>

using namespace preproj;

int main() {
    auto A = star_algebra({2, 2, 2});
    auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(3), 12);
    std::cout << sys.listing(true) << "\n";

    auto x = Element<Integer>::parse(A.quiver, "x x x x");
    std::cout << "x^4 -> " << sys.reduce(x).str() << "\n";
    auto w = Element<Integer>::parse(A.quiver, "y x y x x");
    std::cout << "yxyx^2 -> " << sys.reduce(w).str() << "\n";

    auto counts = sys.normal_counts(12);
    std::cout << "dims:";
    for (int d = 0; d <= 12; ++d) std::cout << " " << counts[d][0][0];
    std::cout << "\n";
}
