#include "romlab/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace romlab {

namespace {

enum class Form { mass, stiffness };

// Scalar element matrices (upper triangle mirrored) pushed into both
// diagonal blocks of the vector operator.
SymmetricOperator assemble(const VelocitySpace& space, const QuadratureRule& rule, Form form,
                           std::size_t components) {
  const std::size_t ns = space.num_scalar_dofs();
  std::vector<P2Shape> shapes;
  shapes.reserve(rule.size());
  for (const auto& q : rule.points) {
    shapes.push_back(p2_shape(q.x, q.y));
  }

  std::vector<SymmetricOperator::Triplet> triplets;
  triplets.reserve(space.num_elements() * 36 * components);
  double local[6][6];
  for (std::size_t e = 0; e < space.num_elements(); ++e) {
    const ElementGeometry& g = space.geometry(e);
    const double area_scale = std::abs(g.det);
    for (auto& row : local) {
      for (double& v : row) v = 0.0;
    }
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const P2Shape& sh = shapes[q];
      const double w = rule.weights[q] * area_scale;
      if (form == Form::mass) {
        for (std::size_t a = 0; a < 6; ++a) {
          for (std::size_t b = a; b < 6; ++b) {
            local[a][b] += w * sh.value[a] * sh.value[b];
          }
        }
      } else {
        double gx[6];
        double gy[6];
        for (std::size_t a = 0; a < 6; ++a) {
          gx[a] = g.inv_jac_t[0][0] * sh.d_ds[a] + g.inv_jac_t[0][1] * sh.d_dt[a];
          gy[a] = g.inv_jac_t[1][0] * sh.d_ds[a] + g.inv_jac_t[1][1] * sh.d_dt[a];
        }
        for (std::size_t a = 0; a < 6; ++a) {
          for (std::size_t b = a; b < 6; ++b) {
            local[a][b] += w * (gx[a] * gx[b] + gy[a] * gy[b]);
          }
        }
      }
    }
    const auto& dofs = space.element_dofs(e);
    for (std::size_t c = 0; c < components; ++c) {
      const std::size_t offset = c * ns;
      for (std::size_t a = 0; a < 6; ++a) {
        triplets.push_back({offset + dofs[a], offset + dofs[a], local[a][a]});
        for (std::size_t b = a + 1; b < 6; ++b) {
          triplets.push_back({offset + dofs[a], offset + dofs[b], local[a][b]});
          triplets.push_back({offset + dofs[b], offset + dofs[a], local[a][b]});
        }
      }
    }
  }
  return SymmetricOperator(components * ns, std::move(triplets));
}

void check_dims(const SymmetricOperator& op, const Vector& u, const Vector& v) {
  if (static_cast<std::size_t>(u.size()) != op.dim() ||
      static_cast<std::size_t>(v.size()) != op.dim()) {
    throw std::invalid_argument("norm: dimension mismatch");
  }
}

}  // namespace

SymmetricOperator assemble_mass(const VelocitySpace& space) {
  return assemble(space, space.quadrature(), Form::mass, 2);
}

SymmetricOperator assemble_mass(const VelocitySpace& space, const QuadratureRule& rule) {
  return assemble(space, rule, Form::mass, 2);
}

SymmetricOperator assemble_stiffness(const VelocitySpace& space) {
  return assemble(space, space.quadrature(), Form::stiffness, 2);
}

SymmetricOperator assemble_stiffness(const VelocitySpace& space, const QuadratureRule& rule) {
  return assemble(space, rule, Form::stiffness, 2);
}

SymmetricOperator assemble_scalar_mass(const VelocitySpace& space) {
  return assemble(space, space.quadrature(), Form::mass, 1);
}

double l2_inner(const SymmetricOperator& mass, const Vector& u, const Vector& v) {
  check_dims(mass, u, v);
  return mass.bilinear(u, v);
}

double l2_norm(const SymmetricOperator& mass, const Vector& u) {
  check_dims(mass, u, u);
  return std::sqrt(std::max(0.0, mass.bilinear(u, u)));
}

double h1_semi_norm(const SymmetricOperator& stiffness, const Vector& u) {
  check_dims(stiffness, u, u);
  return std::sqrt(std::max(0.0, stiffness.bilinear(u, u)));
}

double trilinear_bstar(const FEField& u, const FEField& v, const FEField& w) {
  if (u.space == nullptr) {
    throw std::invalid_argument("trilinear_bstar: field without a space");
  }
  return trilinear_bstar(u, v, w, u.space->quadrature());
}

double trilinear_bstar(const FEField& u, const FEField& v, const FEField& w,
                       const QuadratureRule& rule) {
  if (u.space == nullptr || u.space != v.space || u.space != w.space) {
    throw std::invalid_argument("trilinear_bstar: fields live on different spaces");
  }
  const VelocitySpace& space = *u.space;
  const auto ns = static_cast<Eigen::Index>(space.num_scalar_dofs());

  std::vector<P2Shape> shapes;
  shapes.reserve(rule.size());
  for (const auto& q : rule.points) {
    shapes.push_back(p2_shape(q.x, q.y));
  }

  double total = 0.0;
  for (std::size_t e = 0; e < space.num_elements(); ++e) {
    const ElementGeometry& g = space.geometry(e);
    const auto& dofs = space.element_dofs(e);
    double elem = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const P2Shape& sh = shapes[q];
      double uq[2] = {0.0, 0.0};
      double vq[2] = {0.0, 0.0};
      double wq[2] = {0.0, 0.0};
      double dv[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // dv[c][d] = d v_c / d x_d
      double dw[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (std::size_t a = 0; a < 6; ++a) {
        const double gx = g.inv_jac_t[0][0] * sh.d_ds[a] + g.inv_jac_t[0][1] * sh.d_dt[a];
        const double gy = g.inv_jac_t[1][0] * sh.d_ds[a] + g.inv_jac_t[1][1] * sh.d_dt[a];
        const auto d = static_cast<Eigen::Index>(dofs[a]);
        for (int c = 0; c < 2; ++c) {
          const Eigen::Index idx = d + c * ns;
          uq[c] += sh.value[a] * u.coeffs(idx);
          vq[c] += sh.value[a] * v.coeffs(idx);
          wq[c] += sh.value[a] * w.coeffs(idx);
          dv[c][0] += gx * v.coeffs(idx);
          dv[c][1] += gy * v.coeffs(idx);
          dw[c][0] += gx * w.coeffs(idx);
          dw[c][1] += gy * w.coeffs(idx);
        }
      }
      double conv_v = 0.0;  // ((u . grad) v) . w
      double conv_w = 0.0;  // ((u . grad) w) . v
      for (int c = 0; c < 2; ++c) {
        conv_v += (uq[0] * dv[c][0] + uq[1] * dv[c][1]) * wq[c];
        conv_w += (uq[0] * dw[c][0] + uq[1] * dw[c][1]) * vq[c];
      }
      elem += rule.weights[q] * (conv_v - conv_w);
    }
    total += 0.5 * elem * std::abs(g.det);
  }
  return total;
}

}  // namespace romlab
