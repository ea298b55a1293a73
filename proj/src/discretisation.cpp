#include "gdm/discretisation.hpp"

#include <cmath>

namespace gdm {

TimeGrid::TimeGrid(std::vector<double> instants) : instants_(std::move(instants)) {
  if (instants_.size() < 1 || instants_.front() != 0.0)
    throw InvalidParams("time grid must start at t = 0");
  for (std::size_t n = 1; n < instants_.size(); ++n) {
    const double dt = instants_[n] - instants_[n - 1];
    if (dt <= 0.0) throw InvalidParams("time instants must be strictly increasing");
    max_dt_ = std::max(max_dt_, dt);
  }
}

TimeGrid TimeGrid::uniform(double T, int steps) {
  if (T < 0.0 || steps < 0 || (steps == 0 && T != 0.0))
    throw InvalidParams("invalid uniform time grid");
  std::vector<double> t(steps + 1);
  for (int n = 0; n <= steps; ++n) t[n] = T * n / std::max(steps, 1);
  t.back() = T;
  return TimeGrid(std::move(t));
}

std::vector<int> Discretisation::boundary_dofs() const {
  std::vector<int> dofs;
  const PolytopalMesh& m = mesh();
  for (int f = 0; f < m.n_faces(); ++f)
    if (m.face(f).boundary()) dofs.push_back(face_dof(f));
  return dofs;
}

double discrete_norm(const SparseMatrix& mass, const SparseMatrix& stiffness_identity,
                     const DofVector& v) {
  const double pi_part = std::sqrt(std::max(0.0, v.dot(mass * v)));
  const double grad_part = std::sqrt(std::max(0.0, v.dot(stiffness_identity * v)));
  return pi_part + grad_part;
}

double discrete_norm(const Discretisation& d, const DofVector& v) {
  return discrete_norm(d.assemble_mass(), d.assemble_stiffness(DiffusionField::identity()), v);
}

SpaceTimeDofs::SpaceTimeDofs(TimeGrid g, std::vector<DofVector> s)
    : grid(std::move(g)), states(std::move(s)) {
  if (static_cast<int>(states.size()) != grid.n_steps() + 1)
    throw InvalidParams("space-time dofs: one state per time instant required");
  for (std::size_t n = 1; n < states.size(); ++n)
    if (states[n].size() != states[0].size())
      throw InvalidParams("space-time dofs: inconsistent dimensions");
}

const DofVector& time_reconstruction(const SpaceTimeDofs& s, double t) {
  if (t < 0.0 || t > s.grid.final_time()) throw OutOfRangeTime("t outside [0, T]");
  if (t == 0.0) return s.states.front();
  // c^(n+1) on (t^n, t^(n+1)]: find the first instant >= t
  for (int n = 0; n < s.grid.n_steps(); ++n)
    if (t <= s.grid.t(n + 1)) return s.states[n + 1];
  return s.states.back();
}

DofVector delta_derivative(const SpaceTimeDofs& s, int n) {
  if (n < 0 || n >= s.grid.n_steps()) throw OutOfRangeTime("step index out of range");
  return (s.states[n + 1] - s.states[n]) / s.grid.dt(n);
}

}  // namespace gdm
