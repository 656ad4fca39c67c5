#include "deckwalk/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace deckwalk {

MatX expm(const MatX& m) { return m.exp(); }

}  // namespace deckwalk
