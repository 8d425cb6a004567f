#include "dq/catalog.hpp"

namespace dq {

SymplecticLieAlgebra catalog_abelian2() {
    LieAlgebra g(2, {"e1", "e2"});
    return SymplecticLieAlgebra(g, AltForm::wedge2(0, 1, Scalar(1), 2));
}

SymplecticLieAlgebra catalog_n2() {
    LieAlgebra g(2, {"e1", "e2"});
    g.set_structure(0, 1, 0, Scalar(1));
    return SymplecticLieAlgebra(g, AltForm::wedge2(0, 1, Scalar(1), 2));
}

SymplecticLieAlgebra catalog_n2_r2() {
    LieAlgebra g(4, {"e1", "e2", "e3", "e4"});
    g.set_structure(0, 1, 0, Scalar(1));
    AltForm w(4, 2);
    w.add({0, 1}, Scalar(1));
    w.add({2, 3}, Scalar(1));
    return SymplecticLieAlgebra(g, w);
}

CentralExtension catalog_heisenberg() { return central_extension(catalog_abelian2()); }

CentralExtension catalog_e3() { return central_extension(catalog_n2()); }

std::vector<std::pair<std::string, SymplecticLieAlgebra>> symplectic_catalog() {
    return {{"abelian2", catalog_abelian2()}, {"n2", catalog_n2()}};
}

}  // namespace dq
