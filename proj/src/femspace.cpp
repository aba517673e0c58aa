#include "shapecur/femspace.hpp"

#include "shapecur/quadrature.hpp"

#include <Eigen/SparseCholesky>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shapecur {

// ---------------------------------------------------------------------------
// StructuredMesh

StructuredMesh::StructuredMesh(int cells_per_side, Rect domain)
    : m_(cells_per_side), domain_(domain) {
  if (cells_per_side < 1) throw ConfigurationError("mesh needs at least one cell per side");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw ConfigurationError("mesh domain must have positive extent");
  }
  hx_ = domain.width() / m_;
  hy_ = domain.height() / m_;
}

StructuredMesh build_mesh(int cells_per_side, Rect domain) {
  return StructuredMesh(cells_per_side, domain);
}

Vec2 StructuredMesh::vertex(int i, int j) const {
  // exact endpoints on the last lattice line
  const double x = i == m_ ? domain_.x1 : domain_.x0 + i * hx_;
  const double y = j == m_ ? domain_.y1 : domain_.y0 + j * hy_;
  return {x, y};
}

std::array<std::array<int, 2>, 3> StructuredMesh::triangle_lattice(int cell) const {
  const int sq = cell / 2;
  const int i = sq % m_;
  const int j = sq / m_;
  if (cell % 2 == 0) return {{{i, j}, {i + 1, j}, {i + 1, j + 1}}};
  return {{{i, j}, {i + 1, j + 1}, {i, j + 1}}};
}

std::array<Vec2, 3> StructuredMesh::triangle_vertices(int cell) const {
  const auto l = triangle_lattice(cell);
  return {vertex(l[0][0], l[0][1]), vertex(l[1][0], l[1][1]), vertex(l[2][0], l[2][1])};
}

double StructuredMesh::triangle_area(int cell) const {
  const auto v = triangle_vertices(cell);
  const Vec2 a = v[1] - v[0];
  const Vec2 b = v[2] - v[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Vec2 StructuredMesh::centroid(int cell) const {
  const auto v = triangle_vertices(cell);
  return (v[0] + v[1] + v[2]) / 3.0;
}

int StructuredMesh::locate(const Vec2& p) const {
  if (!domain_.contains(p)) throw OutOfDomain(0, p);
  const double u = (p.x() - domain_.x0) / hx_;
  const double v = (p.y() - domain_.y0) / hy_;
  int i = static_cast<int>(std::ceil(u)) - 1;
  int j = static_cast<int>(std::ceil(v)) - 1;
  i = std::clamp(i, 0, m_ - 1);
  j = std::clamp(j, 0, m_ - 1);
  const double a = u - i;
  const double b = v - j;
  const int base = 2 * (j * m_ + i);
  return b <= a ? base : base + 1;
}

int StructuredMesh::neighbor(int cell, int edge) const {
  const int sq = cell / 2;
  const int i = sq % m_;
  const int j = sq / m_;
  auto id = [this](int ii, int jj, int type) { return 2 * (jj * m_ + ii) + type; };
  if (cell % 2 == 0) {
    switch (edge) {
      case 0: return i + 1 < m_ ? id(i + 1, j, 1) : -1;
      case 1: return id(i, j, 1);
      case 2: return j > 0 ? id(i, j - 1, 1) : -1;
    }
  } else {
    switch (edge) {
      case 0: return j + 1 < m_ ? id(i, j + 1, 0) : -1;
      case 1: return i > 0 ? id(i - 1, j, 0) : -1;
      case 2: return id(i, j, 0);
    }
  }
  throw ConfigurationError("edge index out of range");
}

std::array<Vec2, 2> StructuredMesh::edge(int cell, int edge) const {
  const auto v = triangle_vertices(cell);
  return {v[static_cast<std::size_t>((edge + 1) % 3)], v[static_cast<std::size_t>((edge + 2) % 3)]};
}

std::array<double, 3> StructuredMesh::barycentric(int cell, const Vec2& p) const {
  const int sq = cell / 2;
  const int i = sq % m_;
  const int j = sq / m_;
  const double a = (p.x() - domain_.x0) / hx_ - i;
  const double b = (p.y() - domain_.y0) / hy_ - j;
  if (cell % 2 == 0) return {1.0 - a, a - b, b};
  return {1.0 - b, a, b - a};
}

std::array<Vec2, 3> StructuredMesh::barycentric_gradients(int cell) const {
  const double gx = 1.0 / hx_;
  const double gy = 1.0 / hy_;
  if (cell % 2 == 0) return {Vec2(-gx, 0.0), Vec2(gx, -gy), Vec2(0.0, gy)};
  return {Vec2(0.0, -gy), Vec2(gx, 0.0), Vec2(-gx, gy)};
}

// ---------------------------------------------------------------------------
// SpaceDescriptor

std::string SpaceDescriptor::to_json() const {
  nlohmann::ordered_json j;
  if (kind == SpaceKind::Lagrange) {
    j["kind"] = "lagrange";
    j["M"] = mesh;
    j["degree"] = degree;
  } else {
    j["kind"] = "monomial";
    j["N"] = max_total;
  }
  j["domain"] = {domain.x0, domain.x1, domain.y0, domain.y1};
  return j.dump();
}

SpaceDescriptor SpaceDescriptor::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid space descriptor: ") + e.what());
  }
  SpaceDescriptor d;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lagrange") {
      d.kind = SpaceKind::Lagrange;
      d.mesh = j.at("M").get<int>();
      d.degree = j.value("degree", 1);
    } else if (kind == "monomial") {
      d.kind = SpaceKind::Monomial;
      d.max_total = j.at("N").get<int>();
    } else {
      throw ConfigurationError("unknown space kind '" + kind + "'");
    }
    if (j.contains("domain")) {
      const auto dom = j.at("domain").get<std::vector<double>>();
      if (dom.size() != 4) throw ConfigurationError("domain must have 4 entries");
      d.domain = {dom[0], dom[1], dom[2], dom[3]};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid space descriptor: ") + e.what());
  }
  return d;
}

// ---------------------------------------------------------------------------
// FormSpace

double lagrange_factor(int m, int degree, double l) {
  double v = 1.0;
  for (int k = 0; k < m; ++k) v *= (degree * l - k) / (k + 1);
  return v;
}

double lagrange_factor_derivative(int m, int degree, double l) {
  double sum = 0.0;
  for (int skip = 0; skip < m; ++skip) {
    double v = static_cast<double>(degree) / (skip + 1);
    for (int k = 0; k < m; ++k) {
      if (k != skip) v *= (degree * l - k) / (k + 1);
    }
    sum += v;
  }
  return sum;
}

FormSpace FormSpace::lagrange(int cells_per_side, int degree, Rect domain) {
  if (degree < 1 || degree > 4) throw ConfigurationError("Lagrange degree must lie in 1..4");
  FormSpace s;
  s.desc_.kind = SpaceKind::Lagrange;
  s.desc_.mesh = cells_per_side;
  s.desc_.degree = degree;
  s.desc_.domain = domain;
  s.mesh_ = std::make_shared<const StructuredMesh>(cells_per_side, domain);

  for (int a = degree; a >= 0; --a) {
    for (int b = degree - a; b >= 0; --b) s.local_indices_.push_back({a, b, degree - a - b});
  }
  s.local_count_ = static_cast<int>(s.local_indices_.size());
  const int fine = degree * cells_per_side + 1;
  s.dof_count_ = static_cast<std::size_t>(fine) * static_cast<std::size_t>(fine);

  const int cells = s.mesh_->triangle_count();
  s.cell_dofs_.resize(static_cast<std::size_t>(cells) * s.local_indices_.size());
  std::size_t k = 0;
  for (int c = 0; c < cells; ++c) {
    const auto v = s.mesh_->triangle_lattice(c);
    for (const auto& idx : s.local_indices_) {
      const int fi = idx[0] * v[0][0] + idx[1] * v[1][0] + idx[2] * v[2][0];
      const int fj = idx[0] * v[0][1] + idx[1] * v[1][1] + idx[2] * v[2][1];
      s.cell_dofs_[k++] = fj * fine + fi;
    }
  }
  return s;
}

FormSpace FormSpace::monomial(int max_total_degree, Rect domain) {
  if (max_total_degree < 1) throw ConfigurationError("monomial space needs N >= 1");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw ConfigurationError("domain must have positive extent");
  }
  FormSpace s;
  s.desc_.kind = SpaceKind::Monomial;
  s.desc_.max_total = max_total_degree;
  s.desc_.domain = domain;
  for (int total = 0; total < max_total_degree; ++total) {
    for (int m = total; m >= 0; --m) s.exponents_.push_back({m, total - m});
  }
  s.dof_count_ = s.exponents_.size();
  s.local_count_ = static_cast<int>(s.dof_count_);
  s.cell_dofs_.resize(s.dof_count_);
  for (std::size_t i = 0; i < s.dof_count_; ++i) s.cell_dofs_[i] = static_cast<int>(i);
  return s;
}

FormSpace FormSpace::from_descriptor(const SpaceDescriptor& d) {
  if (d.kind == SpaceKind::Lagrange) return lagrange(d.mesh, d.degree, d.domain);
  return monomial(d.max_total, d.domain);
}

FormSpace build_space(const SpaceDescriptor& d) { return FormSpace::from_descriptor(d); }

int FormSpace::cell_count() const {
  return kind() == SpaceKind::Lagrange ? mesh_->triangle_count() : 1;
}

const StructuredMesh& FormSpace::mesh() const {
  if (!mesh_) throw ConfigurationError("monomial spaces have no mesh");
  return *mesh_;
}

int FormSpace::degree() const {
  return kind() == SpaceKind::Lagrange ? desc_.degree : desc_.max_total - 1;
}

int FormSpace::locate(const Vec2& p) const {
  if (kind() == SpaceKind::Monomial) {
    if (!desc_.domain.contains(p)) throw OutOfDomain(0, p);
    return 0;
  }
  return mesh_->locate(p);
}

std::span<const int> FormSpace::cell_dofs(int cell) const {
  const auto n = static_cast<std::size_t>(local_count_);
  return {cell_dofs_.data() + static_cast<std::size_t>(cell) * n, n};
}

void FormSpace::evaluate(int cell, const Vec2& p, BasisEval& out, bool with_gradients) const {
  const auto n = static_cast<std::size_t>(local_count_);
  const auto dofs = cell_dofs(cell);
  out.dofs.assign(dofs.begin(), dofs.end());
  out.values.resize(n);
  if (with_gradients) {
    out.dx.resize(n);
    out.dy.resize(n);
  }
  if (kind() == SpaceKind::Monomial) {
    const int top = desc_.max_total;
    std::array<double, 64> px{};
    std::array<double, 64> py{};
    if (top + 1 > 64) throw ConfigurationError("monomial degree too large");
    px[0] = py[0] = 1.0;
    for (int k = 1; k <= top; ++k) {
      px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k - 1)] * p.x();
      py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k - 1)] * p.y();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = static_cast<std::size_t>(exponents_[i][0]);
      const auto q = static_cast<std::size_t>(exponents_[i][1]);
      out.values[i] = px[m] * py[q];
      if (with_gradients) {
        out.dx[i] = m > 0 ? static_cast<double>(m) * px[m - 1] * py[q] : 0.0;
        out.dy[i] = q > 0 ? static_cast<double>(q) * px[m] * py[q - 1] : 0.0;
      }
    }
    return;
  }

  const int d = desc_.degree;
  const auto lam = mesh_->barycentric(cell, p);
  std::array<std::array<double, 5>, 3> f{};
  std::array<std::array<double, 5>, 3> df{};
  for (std::size_t k = 0; k < 3; ++k) {
    for (int m = 0; m <= d; ++m) {
      f[k][static_cast<std::size_t>(m)] = lagrange_factor(m, d, lam[k]);
      if (with_gradients) df[k][static_cast<std::size_t>(m)] = lagrange_factor_derivative(m, d, lam[k]);
    }
  }
  std::array<Vec2, 3> grad{};
  if (with_gradients) grad = mesh_->barycentric_gradients(cell);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(local_indices_[i][0]);
    const auto b = static_cast<std::size_t>(local_indices_[i][1]);
    const auto c = static_cast<std::size_t>(local_indices_[i][2]);
    const double fa = f[0][a];
    const double fb = f[1][b];
    const double fc = f[2][c];
    out.values[i] = fa * fb * fc;
    if (with_gradients) {
      const Vec2 g = df[0][a] * fb * fc * grad[0] + fa * df[1][b] * fc * grad[1] +
                     fa * fb * df[2][c] * grad[2];
      out.dx[i] = g.x();
      out.dy[i] = g.y();
    }
  }
}

Vec2 FormSpace::dof_coordinate(std::size_t dof) const {
  if (kind() != SpaceKind::Lagrange) throw ConfigurationError("monomial dofs have no nodes");
  const int d = desc_.degree;
  const int fine = d * desc_.mesh + 1;
  const int fi = static_cast<int>(dof % static_cast<std::size_t>(fine));
  const int fj = static_cast<int>(dof / static_cast<std::size_t>(fine));
  const auto& r = desc_.domain;
  const double x = fi == fine - 1 ? r.x1 : r.x0 + fi * mesh_->hx() / d;
  const double y = fj == fine - 1 ? r.y1 : r.y0 + fj * mesh_->hy() / d;
  return {x, y};
}

std::array<int, 2> FormSpace::monomial_exponents(std::size_t dof) const {
  if (kind() != SpaceKind::Monomial) throw ConfigurationError("not a monomial space");
  return exponents_.at(dof);
}

double FormSpace::evaluate_field(const Vector& coeffs, const Vec2& p) const {
  BasisEval e;
  evaluate(locate(p), p, e);
  double v = 0.0;
  for (std::size_t i = 0; i < e.dofs.size(); ++i) v += coeffs[e.dofs[i]] * e.values[i];
  return v;
}

// ---------------------------------------------------------------------------
// Gram operator

struct GramOperator::Impl {
  SparseMatrix g;
  SparseMatrix mass;
  SparseMatrix stiffness;
  double sigma = 0.0;
  SpaceDescriptor space;
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> mass_llt;
};

const SparseMatrix& GramOperator::matrix() const { return impl_->g; }
const SparseMatrix& GramOperator::mass() const { return impl_->mass; }
const SparseMatrix& GramOperator::stiffness() const { return impl_->stiffness; }
double GramOperator::sigma() const { return impl_->sigma; }
const SpaceDescriptor& GramOperator::space() const { return impl_->space; }
std::size_t GramOperator::size() const { return static_cast<std::size_t>(impl_->g.rows()); }

Vector GramOperator::apply(const Vector& x) const { return impl_->g * x; }

Vector GramOperator::solve(const Vector& rhs) const {
  if (rhs.size() != impl_->g.rows()) throw ConfigurationError("right-hand side has wrong size");
  Vector x = impl_->llt.solve(rhs);
  return x;
}

Vector GramOperator::solve_power(const Vector& rhs, int s) const {
  if (s < 0) throw ConfigurationError("Sobolev order must be nonnegative");
  Vector x = rhs;
  for (int k = 0; k < s; ++k) x = solve(x);
  return x;
}

Vector GramOperator::half_solve(const Vector& rhs) const {
  if (rhs.size() != impl_->g.rows()) throw ConfigurationError("right-hand side has wrong size");
  Vector x = impl_->llt.permutationP() * rhs;
  impl_->llt.matrixL().solveInPlace(x);
  return x;
}

Vector GramOperator::root(const Vector& u) const {
  Vector x = impl_->llt.permutationP() * u;
  return impl_->llt.matrixU() * x;
}

Vector GramOperator::apply_mass(const Vector& x) const { return impl_->mass * x; }

Vector GramOperator::mass_root(const Vector& u) const {
  Vector x = impl_->mass_llt.permutationP() * u;
  return impl_->mass_llt.matrixU() * x;
}

Vector GramOperator::representer_solve(const Vector& rhs, int s) const {
  if (s < 1) throw ConfigurationError("Sobolev order must be at least 1");
  Vector b = solve(rhs);
  for (int k = 1; k < s; ++k) b = solve(impl_->mass * b);
  return b;
}

namespace {

std::shared_ptr<GramOperator::Impl> factorize(SparseMatrix g, SparseMatrix mass, SparseMatrix stiff,
                                              double sigma, const SpaceDescriptor& space) {
  auto impl = std::make_shared<GramOperator::Impl>();
  impl->g = std::move(g);
  impl->mass = std::move(mass);
  impl->stiffness = std::move(stiff);
  impl->sigma = sigma;
  impl->space = space;
  impl->llt.compute(impl->g);
  if (impl->llt.info() != Eigen::Success) {
    throw AssemblyFailure("Gram matrix is not symmetric positive definite");
  }
  impl->mass_llt.compute(impl->mass);
  if (impl->mass_llt.info() != Eigen::Success) {
    throw AssemblyFailure("mass matrix is not symmetric positive definite");
  }
  return impl;
}

void assemble_lagrange(const FormSpace& space, SparseMatrix& mass, SparseMatrix& stiff) {
  const auto& mesh = space.mesh();
  const int d = space.degree();
  const auto rule = triangle_rule(2 * d);
  const int cells = mesh.triangle_count();
  const auto nloc = space.cell_dofs(0).size();

  // Element matrices depend only on the triangle type.
  std::array<Matrix, 2> me;
  std::array<Matrix, 2> ke;
  BasisEval e;
  for (int type = 0; type < 2; ++type) {
    me[static_cast<std::size_t>(type)] = Matrix::Zero(static_cast<Eigen::Index>(nloc), static_cast<Eigen::Index>(nloc));
    ke[static_cast<std::size_t>(type)] = Matrix::Zero(static_cast<Eigen::Index>(nloc), static_cast<Eigen::Index>(nloc));
    const int cell = type;
    const auto v = mesh.triangle_vertices(cell);
    const double jac = 2.0 * mesh.triangle_area(cell);
    for (const auto& q : rule) {
      const Vec2 p = v[0] + q.x.x() * (v[1] - v[0]) + q.x.y() * (v[2] - v[0]);
      space.evaluate(cell, p, e, true);
      const double w = q.w * jac;
      for (std::size_t a = 0; a < nloc; ++a) {
        for (std::size_t b = 0; b < nloc; ++b) {
          me[static_cast<std::size_t>(type)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
              w * e.values[a] * e.values[b];
          ke[static_cast<std::size_t>(type)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
              w * (e.dx[a] * e.dx[b] + e.dy[a] * e.dy[b]);
        }
      }
    }
  }

  std::vector<Eigen::Triplet<double>> tm;
  std::vector<Eigen::Triplet<double>> tk;
  tm.reserve(static_cast<std::size_t>(cells) * nloc * nloc);
  tk.reserve(static_cast<std::size_t>(cells) * nloc * nloc);
  for (int c = 0; c < cells; ++c) {
    const auto dofs = space.cell_dofs(c);
    const auto& m = me[static_cast<std::size_t>(c % 2)];
    const auto& k = ke[static_cast<std::size_t>(c % 2)];
    for (std::size_t a = 0; a < nloc; ++a) {
      for (std::size_t b = 0; b < nloc; ++b) {
        const auto ia = static_cast<Eigen::Index>(a);
        const auto ib = static_cast<Eigen::Index>(b);
        tm.emplace_back(dofs[a], dofs[b], m(ia, ib));
        tk.emplace_back(dofs[a], dofs[b], k(ia, ib));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(space.dof_count());
  mass.resize(n, n);
  stiff.resize(n, n);
  mass.setFromTriplets(tm.begin(), tm.end());
  stiff.setFromTriplets(tk.begin(), tk.end());
}

double power_integral(double lo, double hi, int p) {
  if (p < 0) return 0.0;
  return (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / (p + 1);
}

void assemble_monomial(const FormSpace& space, SparseMatrix& mass, SparseMatrix& stiff) {
  const auto n = space.dof_count();
  const auto& r = space.domain();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Matrix k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const auto ea = space.monomial_exponents(a);
    for (std::size_t b = 0; b < n; ++b) {
      const auto eb = space.monomial_exponents(b);
      const int px = ea[0] + eb[0];
      const int py = ea[1] + eb[1];
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      m(ia, ib) = power_integral(r.x0, r.x1, px) * power_integral(r.y0, r.y1, py);
      double s = 0.0;
      if (ea[0] > 0 && eb[0] > 0) {
        s += ea[0] * eb[0] * power_integral(r.x0, r.x1, px - 2) * power_integral(r.y0, r.y1, py);
      }
      if (ea[1] > 0 && eb[1] > 0) {
        s += ea[1] * eb[1] * power_integral(r.x0, r.x1, px) * power_integral(r.y0, r.y1, py - 2);
      }
      k(ia, ib) = s;
    }
  }
  mass = m.sparseView(0.0, 0.0);
  stiff = k.sparseView(0.0, 0.0);
}

}  // namespace

GramOperator assemble_gram(const FormSpace& space, double sigma) {
  if (!(sigma > 0.0)) throw ConfigurationError("length scale sigma must be positive");
  SparseMatrix mass;
  SparseMatrix stiff;
  if (space.kind() == SpaceKind::Lagrange) {
    assemble_lagrange(space, mass, stiff);
  } else {
    assemble_monomial(space, mass, stiff);
  }
  SparseMatrix g = mass + (sigma * sigma) * stiff;
  g.makeCompressed();
  return GramOperator(factorize(std::move(g), std::move(mass), std::move(stiff), sigma, space.descriptor()));
}

GramOperator gram_from_matrix(const SparseMatrix& g, const SpaceDescriptor& space, double sigma) {
  SparseMatrix zero(g.rows(), g.cols());
  return GramOperator(factorize(g, g, zero, sigma, space));
}

std::string to_coordinate_text(const SparseMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
  return os.str();
}

}  // namespace shapecur
