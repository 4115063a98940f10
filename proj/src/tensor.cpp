#include "formcalc/tensor.hpp"

#include <algorithm>
#include <numeric>

#include "formcalc/error.hpp"

namespace formcalc {

namespace {

void check_degree(int k) {
  if (k < 0) throw DimensionError("negative tensor degree");
  if (k > kMaxTensorDegree) {
    throw DimensionError("tensor degree " + std::to_string(k) + " exceeds the supported maximum of " +
                         std::to_string(kMaxTensorDegree));
  }
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Calls fn(index) for every ordered index in {0..n-1}^k, lexicographically.
template <typename Fn>
void for_each_index(int n, int k, Fn&& fn) {
  std::vector<int> index(static_cast<std::size_t>(k), 0);
  if (k == 0) {
    fn(std::span<const int>(index));
    return;
  }
  if (n == 0) return;
  while (true) {
    fn(std::span<const int>(index));
    int pos = k - 1;
    while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == n) {
      index[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

template <typename Fn>
void for_each_increasing(int n, int k, Fn&& fn) {
  std::vector<int> index(static_cast<std::size_t>(k));
  std::iota(index.begin(), index.end(), 0);
  if (k > n) return;
  while (true) {
    fn(index);
    int pos = k - 1;
    while (pos >= 0 && index[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) return;
    ++index[static_cast<std::size_t>(pos)];
    for (int r = pos + 1; r < k; ++r) index[static_cast<std::size_t>(r)] = index[static_cast<std::size_t>(r - 1)] + 1;
  }
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

void check_vectors(int n, int k, std::span<const Eigen::VectorXd> vectors) {
  if (static_cast<int>(vectors.size()) != k) {
    throw DimensionError("tensor of degree " + std::to_string(k) + " applied to " + std::to_string(vectors.size()) +
                         " vectors");
  }
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionError("vector of dimension " + std::to_string(v.size()) + " for a tensor on R^" + std::to_string(n));
  }
}

}  // namespace

double wedge_constant(int k, int l, WedgeConvention convention) {
  if (convention == WedgeConvention::AltProduct) return 1.0;
  return factorial(k + l) / (factorial(k) * factorial(l));
}

long alt_dimension(int dimension, int degree) {
  if (degree < 0 || degree > dimension) return 0;
  long c = 1;
  for (int i = 1; i <= degree; ++i) c = c * (dimension - degree + i) / i;
  return c;
}

// ---------------------------------------------------------------------------

GenericTensor::GenericTensor(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  if (dimension < 0) throw DimensionError("negative tensor dimension");
  check_degree(degree);
  std::size_t size = 1;
  for (int i = 0; i < degree; ++i) size *= static_cast<std::size_t>(dimension);
  data_.assign(size, 0.0);
}

GenericTensor GenericTensor::scalar(int dimension, double value) {
  GenericTensor t(dimension, 0);
  t.data_[0] = value;
  return t;
}

GenericTensor GenericTensor::coordinate(int dimension, int axis) {
  GenericTensor t(dimension, 1);
  t.data_.at(static_cast<std::size_t>(axis)) = 1.0;
  return t;
}

GenericTensor GenericTensor::covector(std::span<const double> components) {
  GenericTensor t(static_cast<int>(components.size()), 1);
  std::copy(components.begin(), components.end(), t.data_.begin());
  return t;
}

GenericTensor GenericTensor::inner_product(int dimension) {
  GenericTensor t(dimension, 2);
  for (int i = 0; i < dimension; ++i) {
    const int index[] = {i, i};
    t[index] = 1.0;
  }
  return t;
}

GenericTensor GenericTensor::determinant(int dimension) {
  std::vector<int> all(static_cast<std::size_t>(dimension));
  std::iota(all.begin(), all.end(), 0);
  return AltTensor::basis(dimension, all).expand();
}

std::size_t GenericTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != degree_) throw DimensionError("tensor index of wrong length");
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dimension_) throw DimensionError("tensor index out of range");
    off = off * static_cast<std::size_t>(dimension_) + static_cast<std::size_t>(i);
  }
  return off;
}

double& GenericTensor::operator[](std::span<const int> index) { return data_[offset(index)]; }

double GenericTensor::operator[](std::span<const int> index) const { return data_[offset(index)]; }

double GenericTensor::evaluate(std::span<const Eigen::VectorXd> vectors) const {
  check_vectors(dimension_, degree_, vectors);
  double sum = 0;
  std::size_t flat = 0;
  for_each_index(dimension_, degree_, [&](std::span<const int> index) {
    const double c = data_[flat++];
    if (c == 0) return;
    double term = c;
    for (std::size_t r = 0; r < index.size(); ++r) term *= vectors[r](index[r]);
    sum += term;
  });
  return sum;
}

bool GenericTensor::is_alternating(double tol) const {
  bool ok = true;
  for_each_index(dimension_, degree_, [&](std::span<const int> index) {
    std::vector<int> swapped(index.begin(), index.end());
    for (std::size_t r = 0; r + 1 < swapped.size() && ok; ++r) {
      std::swap(swapped[r], swapped[r + 1]);
      if (std::abs((*this)[swapped] + (*this)[index]) > tol) ok = false;
      std::swap(swapped[r], swapped[r + 1]);
    }
  });
  return ok;
}

// ---------------------------------------------------------------------------

AltTensor::AltTensor(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  if (dimension < 0) throw DimensionError("negative tensor dimension");
  check_degree(degree);
}

AltTensor AltTensor::basis(int dimension, const MultiIndex& index) {
  AltTensor t(dimension, static_cast<int>(index.size()));
  Canonical c = canonicalize(index);
  if (c.sign != 0) t.set(c.index, c.sign);
  return t;
}

AltTensor AltTensor::covector(std::span<const double> components) {
  AltTensor t(static_cast<int>(components.size()), 1);
  for (std::size_t i = 0; i < components.size(); ++i) t.set({static_cast<int>(i)}, components[i]);
  return t;
}

AltTensor AltTensor::from_form(const DifferentialForm& form, std::span<const double> point) {
  AltTensor t(form.dimension(), form.degree());
  for (const auto& [index, f] : form.terms()) t.set(index, formcalc::evaluate(f, point));
  return t;
}

double AltTensor::coefficient(const MultiIndex& index) const {
  auto it = coefficients_.find(index);
  return it == coefficients_.end() ? 0.0 : it->second;
}

void AltTensor::set(const MultiIndex& index, double value) {
  if (static_cast<int>(index.size()) != degree_) throw DimensionError("AltTensor index of wrong length");
  for (std::size_t r = 0; r < index.size(); ++r) {
    if (index[r] < 0 || index[r] >= dimension_ || (r > 0 && index[r] <= index[r - 1])) {
      throw DimensionError("AltTensor index must be strictly increasing and in range");
    }
  }
  if (value == 0) {
    coefficients_.erase(index);
  } else {
    coefficients_[index] = value;
  }
}

double AltTensor::evaluate(std::span<const Eigen::VectorXd> vectors) const {
  check_vectors(dimension_, degree_, vectors);
  double sum = 0;
  Eigen::MatrixXd minor(degree_, degree_);
  for (const auto& [index, c] : coefficients_) {
    if (degree_ == 0) {
      sum += c;
      continue;
    }
    for (int r = 0; r < degree_; ++r) {
      for (int s = 0; s < degree_; ++s) minor(s, r) = vectors[static_cast<std::size_t>(r)](index[static_cast<std::size_t>(s)]);
    }
    sum += c * minor.determinant();
  }
  return sum;
}

GenericTensor AltTensor::expand() const {
  GenericTensor out(dimension_, degree_);
  for_each_index(dimension_, degree_, [&](std::span<const int> index) {
    Canonical c = canonicalize(index);
    if (c.sign == 0) return;
    const double v = coefficient(c.index);
    if (v != 0) out[index] = c.sign * v;
  });
  return out;
}

AltTensor AltTensor::compress(const GenericTensor& t) {
  AltTensor out(t.dimension(), t.degree());
  for_each_increasing(t.dimension(), t.degree(), [&](const std::vector<int>& index) { out.set(index, t[index]); });
  return out;
}

// ---------------------------------------------------------------------------

GenericTensor tensor_product(const GenericTensor& a, const GenericTensor& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("tensor_product: tensors on different spaces");
  GenericTensor out(a.dimension(), a.degree() + b.degree());
  const auto& da = a.data();
  const auto& db = b.data();
  auto& d = out.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    for (std::size_t j = 0; j < db.size(); ++j) d[i * db.size() + j] = da[i] * db[j];
  }
  return out;
}

GenericTensor alt(const GenericTensor& t) {
  const int k = t.degree();
  GenericTensor out(t.dimension(), k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    perms.emplace_back(perm, permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double scale = 1.0 / factorial(k);
  std::vector<int> permuted(static_cast<std::size_t>(k));
  for_each_index(t.dimension(), k, [&](std::span<const int> index) {
    double sum = 0;
    for (const auto& [p, sign] : perms) {
      for (std::size_t r = 0; r < p.size(); ++r) permuted[r] = index[static_cast<std::size_t>(p[r])];
      sum += sign * t[permuted];
    }
    out[index] = sum * scale;
  });
  return out;
}

AltTensor wedge_alt(const AltTensor& a, const AltTensor& b, WedgeConvention convention) {
  if (a.dimension() != b.dimension()) throw DimensionError("wedge_alt: tensors on different spaces");
  const GenericTensor product = tensor_product(a.expand(), b.expand());
  GenericTensor w = alt(product);
  const double c = wedge_constant(a.degree(), b.degree(), convention);
  for (double& v : w.data()) v *= c;
  return AltTensor::compress(w);
}

GenericTensor pullback_linear(const Eigen::MatrixXd& a, const GenericTensor& t) {
  if (a.rows() != t.dimension()) {
    throw DimensionError("pullback_linear: matrix has " + std::to_string(a.rows()) + " rows, tensor lives on R^" +
                         std::to_string(t.dimension()));
  }
  const int n = static_cast<int>(a.cols());
  const int k = t.degree();
  GenericTensor out(n, k);
  for_each_index(n, k, [&](std::span<const int> index) {
    double sum = 0;
    std::size_t flat = 0;
    for_each_index(t.dimension(), k, [&](std::span<const int> j) {
      const double c = t.data()[flat++];
      if (c == 0) return;
      double term = c;
      for (std::size_t r = 0; r < j.size(); ++r) term *= a(j[r], index[r]);
      sum += term;
    });
    out[index] = sum;
  });
  return out;
}

AltTensor pullback_linear(const Eigen::MatrixXd& a, const AltTensor& t) {
  return AltTensor::compress(pullback_linear(a, t.expand()));
}

WedgeDeterminant covector_wedge_det(const Eigen::MatrixXd& covectors, const Eigen::MatrixXd& vectors) {
  if (covectors.cols() != vectors.rows() || covectors.rows() != vectors.cols()) {
    throw DimensionError("covector_wedge_det: need k covectors and k vectors in the same R^n");
  }
  const int n = static_cast<int>(covectors.cols());
  const int k = static_cast<int>(covectors.rows());
  AltTensor w(n, 0);
  w.set({}, 1.0);
  for (int i = 0; i < k; ++i) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = covectors(i, j);
    w = wedge_alt(w, AltTensor::covector(row));
  }
  std::vector<Eigen::VectorXd> vs;
  for (int j = 0; j < k; ++j) vs.push_back(vectors.col(j));
  return {w.evaluate(vs), (covectors * vectors).determinant()};
}

std::array<AltTensor, 3> projection_areas_decomposition() {
  return {AltTensor::basis(3, {0, 1}), AltTensor::basis(3, {0, 2}), AltTensor::basis(3, {1, 2})};
}

}  // namespace formcalc
