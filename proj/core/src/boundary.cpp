#include "rampflow/boundary.hpp"

#include <algorithm>
#include <stdexcept>

#include "rampflow/errors.hpp"

namespace rampflow {

void BoundaryConditions::validate() const {
    for (const BoundarySide* side : {&left, &right}) {
        if (side->kind == BoundarySide::Kind::Dirichlet && !(side->value >= 0.0 && side->value <= 1.0)) {
            throw ConfigError("Dirichlet boundary density must lie in [0, 1]");
        }
    }
}

PaddedField::PaddedField(int n, int pad_left, int pad_right)
    : n_(n),
      pad_left_(pad_left),
      pad_right_(pad_right),
      data_(static_cast<std::size_t>(n + pad_left + pad_right), 0.0) {
    if (n < 1 || pad_left < 0 || pad_right < 0) throw std::logic_error("invalid padded field shape");
}

void PaddedField::assign_interior(std::span<const double> values) {
    if (static_cast<int>(values.size()) != n_) throw std::logic_error("padded field size mismatch");
    std::copy(values.begin(), values.end(), data_.begin() + pad_left_);
}

void PaddedField::fill_ghosts(const BoundaryConditions& bc) {
    auto& self = *this;
    if (bc.periodic) {
        for (int g = 1; g <= pad_left_; ++g) self[-g] = self[((-g) % n_ + n_) % n_];
        for (int g = 0; g < pad_right_; ++g) self[n_ + g] = self[g % n_];
        return;
    }
    const double left =
        bc.left.kind == BoundarySide::Kind::Dirichlet ? bc.left.value : self[0];
    const double right =
        bc.right.kind == BoundarySide::Kind::Dirichlet ? bc.right.value : self[n_ - 1];
    for (int g = 1; g <= pad_left_; ++g) self[-g] = left;
    for (int g = 0; g < pad_right_; ++g) self[n_ + g] = right;
}

}  // namespace rampflow
