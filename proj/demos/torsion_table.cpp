// Print the graded structure of Lambda for a few quivers.
#include <preproj/homology.hpp>

#include <iostream>

using namespace preproj;

static void show(const std::string& name, const Quiver& q, int D) {
    auto rep = lambda_graded(make_double(q), {}, D);
    std::cout << name << "\n";
    for (int d = 0; d <= D; ++d) std::cout << "  " << d << ": " << rep.at(d).str() << "\n";
}

int main(int argc, char** argv) {
    int D = argc > 1 ? std::stoi(argv[1]) : 6;
    show("two loop pairs", catalog::free_loops(2), D);
    show("E6", catalog::dynkin_e(6), D);
    show("~D4", catalog::affine_d(4), D);
}
