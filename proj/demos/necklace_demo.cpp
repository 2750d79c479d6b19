#include <preproj/necklace.hpp>

#include <iostream>

using namespace preproj;

int main() {
    auto q = make_double(catalog::free_loops(2));
    using CE = CyclicElement<Integer>;
    CE u = CE::parse(q, "[x1 y1 x2 y2]"), v = CE::parse(q, "[x1 x1 y2]");
    std::cout << "{u, v} = " << bracket(u, v).str() << "\n";
    std::cout << "delta u = " << cobracket(u).str() << "\n";
    std::cout << "d_x1 u = " << partial_derivative(0, u).str() << "\n";

    // Poisson bracket on i0 Pi i0 for ~A2
    auto dq = make_double(catalog::affine_a(3));
    auto ctx = poisson_context(dq, 0, 10);
    auto X = Element<Integer>::parse(dq, "a0 a1 a2"), Y = Element<Integer>::parse(dq, "a2* a1* a0*"),
         Z = Element<Integer>::parse(dq, "a0 a0*");
    std::cout << "{X,Y} = " << poisson_i0(ctx, X, Y).str() << "\n";
    std::cout << "{X,Z} = " << poisson_i0(ctx, X, Z).str() << "\n";
}
